#include <doctest.h>

#include "gbv/cli.hpp"
#include "gbv/serialize.hpp"

#include <sstream>
#include <string>
#include <vector>

using gbv::Json;

namespace {

struct Outcome {
  int code;
  std::string out;
  Json doc() const { return Json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "gbv");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = gbv::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str()};
}

const char* kTetrahedron = R"({"n":4,"edges":[[1,4],[1,3],[1,2],[2,4],[2,3],[4,3]]})";

}  // namespace

TEST_CASE("wick: cubic pair") {
  auto r = run({"wick", "--json", R"({"vertex_degrees":[3,3]})"});
  REQUIRE(r.code == 0);
  auto d = r.doc();
  REQUIRE(d["correlator"].size() == 1);
  CHECK(d["correlator"][0]["alpha_power"] == -3);
  CHECK(d["correlator"][0]["coeff"] == "5/24");
  CHECK(d["diagrams"].size() == 2);
}

TEST_CASE("wick: explicit vertices and caps") {
  auto r = run({"wick", "--json",
                R"({"coords":["y"],"vertices":[{"terms":[{"coeff":"1","factors":[["y",4]]}]}],"quadratic_form":[["2"]]})"});
  REQUIRE(r.code == 0);
  CHECK(r.doc()["correlator"][0]["coeff"] == "3/4");
  CHECK(run({"wick", "--max-legs", "4", "--json", R"({"vertex_degrees":[3,3]})"}).code == 3);
  CHECK(run({"wick", "--json", R"({"coords":["y"]})"}).code == 2);
}

TEST_CASE("graph-diff: tetrahedron") {
  auto r = run({"graph-diff", "--json", kTetrahedron});
  REQUIRE(r.code == 0);
  auto d = r.doc();
  REQUIRE(d["boundary"].size() == 1);
  CHECK(d["boundary"][0]["graph"]["n"] == 3);
  // The given labelling is -1 times its canonical form.
  CHECK(d["chain"][0]["coeff"] == "-1");
  CHECK(d["boundary"][0]["coeff"] == "6");
  CHECK(d["boundary_squared"].empty());
  CHECK(run({"graph-diff", "--max-vertices", "3", "--json", kTetrahedron}).code == 3);
  CHECK(run({"graph-diff", "--json", R"({"n":2,"edges":[[1,3]]})"}).code == 2);
  CHECK(run({"graph-diff"}).code == 2);
}

TEST_CASE("kontsevich: two cubics") {
  auto r = run({"kontsevich", "--json",
                R"({"data":{"n":1},"chain":[{"terms":[{"coeff":"1","factors":[["x1",3]]}]},)"
                R"({"terms":[{"coeff":"1","factors":[["x2",3]]}]}]})"});
  REQUIRE(r.code == 0);
  auto d = r.doc();
  CHECK(d["equal"] == true);
  CHECK(d["residue"]["terms"].empty());
  CHECK(d["graph_chain"][0]["coeff"] == "-6");
}

TEST_CASE("bv-check: form and seeded batch") {
  auto r = run({"bv-check", "--seed", "3", "--json",
                R"({"n":2,"form":{"terms":[{"coeff":"1","factors":[["x1",1],["th1",1],["th2",1]]}]}})"});
  REQUIRE(r.code == 0);
  auto d = r.doc();
  CHECK(d["form"]["round_trip"] == true);
  CHECK(d["form"]["fourier"]["rho_power"] == -1);
  for (const auto& [k, v] : d["batch"]["failures"].items()) CHECK_MESSAGE(v == 0, k);
  CHECK(run({"bv-check", "--json", R"({"n":0})"}).code == 2);
}

TEST_CASE("frobenius actions") {
  auto v = run({"frobenius", "validate"});
  REQUIRE(v.code == 0);
  CHECK(v.doc()["all_passed"] == true);
  CHECK(v.doc()["cohomology"]["3"] == 1);

  auto p = run({"frobenius", "propagator"});
  REQUIRE(p.code == 0);
  CHECK(p.doc()["symmetric"] == true);

  auto z2 = run({"frobenius", "partition"});
  REQUIRE(z2.code == 0);
  CHECK(z2.doc()["Z"] == "6");
  auto z4 = run({"frobenius", "partition", "--json", R"({"chain":{"su2_cycle":4}})"});
  CHECK(z4.doc()["Z"] == "360");

  auto c = run({"frobenius", "cocycle-check"});
  REQUIRE(c.code == 0);
  CHECK(c.doc()["closed"] == true);
  CHECK(run({"frobenius", "cocycle-check", "--json", R"({"min_valence":1})"}).code == 4);

  auto e = run({"frobenius", "evaluate", "--json", R"({"chain":{"n":2,"edges":[[1,2],[1,2],[1,2]]}})"});
  CHECK(e.doc()["total"] == "6");
  CHECK(run({"frobenius", "partition", "--json", R"({"chain":{"n":2,"edges":[[1,2]]}})"}).code == 2);
  CHECK(run({"frobenius", "nonsense"}).code == 2);

  auto bad = run({"frobenius", "validate", "--json", R"({"algebra":{"p":3}})"});
  CHECK(bad.code == 2);
  CHECK(bad.doc()["error"]["code"] == "validation");
}

TEST_CASE("output is deterministic and re-parses") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"bv-check", "--seed", "11"},
           {"wick", "--json", R"({"vertex_degrees":[3,5]})"},
           {"graph-diff", "--json", kTetrahedron},
           {"frobenius", "propagator"}}) {
    auto a = run(args), b = run(args);
    CHECK(a.out == b.out);
    CHECK(a.doc().dump(2) + "\n" == a.out);
  }
  CHECK(run({"bv-check", "--seed", "11"}).out != run({"bv-check", "--seed", "12"}).out);
}

TEST_CASE("text format") {
  auto r = run({"frobenius", "partition", "--format", "text"});
  CHECK(r.code == 0);
  CHECK(r.out == "Z: 6\n");
  CHECK(run({"wick", "--format", "xml"}).code == 2);
}
