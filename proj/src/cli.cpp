#include "gbv/cli.hpp"

#include "gbv/acceptance.hpp"
#include "gbv/bv_calculus.hpp"
#include "gbv/errors.hpp"
#include "gbv/frobenius.hpp"
#include "gbv/graph_complex.hpp"
#include "gbv/kontsevich.hpp"
#include "gbv/random_inputs.hpp"
#include "gbv/serialize.hpp"
#include "gbv/wick.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace gbv::cli {

namespace {

struct RunConfig {
  std::string input;
  std::string inline_json;
  std::string format = "json";
  int max_legs = wick::kDefaultLegCap;
  int max_vertices = 0;  // 0: per-subcommand default
  std::uint64_t seed = acceptance::kDefaultSeed;
  std::string action;
};

Json load_input(const RunConfig& c) {
  std::string text;
  if (!c.inline_json.empty()) {
    text = c.inline_json;
  } else if (c.input == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else if (!c.input.empty()) {
    std::ifstream f(c.input);
    if (!f) throw ValidationError("cannot read input file " + c.input);
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  } else {
    return Json::object();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("input is not valid JSON: ") + e.what());
  }
}

template <class T>
T field(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ValidationError(std::string("field '") + key + "' has the wrong type");
  }
}

Json series_to_json(const wick::AlphaSeries& s) {
  Json out = Json::array();
  for (const auto& [k, c] : s) out.push_back({{"alpha_power", -k}, {"coeff", rational_to_json(c)}});
  return out;
}

void check_vertex_cap(const graph::GraphChain& c, int cap) {
  for (const auto& [g, coeff] : c.terms())
    if (g.n > cap)
      throw CapExceeded("graph with " + std::to_string(g.n) + " vertices exceeds --max-vertices " +
                        std::to_string(cap));
}

graph::GraphChain read_chain(const Json& j) {
  if (j.is_object() && j.contains("su2_cycle"))
    return kontsevich::lie_algebra_cycle(kontsevich::su2(), field<int>(j, "su2_cycle", 2));
  if (j.is_object()) {
    graph::GraphChain c;
    c.add(graph::graph_from_json(j), 1);
    return c;
  }
  return graph::chain_from_json(j);
}

// ---- subcommands ----------------------------------------------------------

Json run_wick(const RunConfig& c) {
  Json in = load_input(c);
  std::vector<Generator> coords;
  std::vector<GradedPoly> vertices;
  std::vector<std::vector<int>> groups;
  Matrix q;
  if (in.contains("vertex_degrees")) {
    // One coordinate x, vertices x^k / k!, equal degrees form identical groups.
    coords.push_back(Generator::make("x", 0));
    std::map<int, std::vector<int>> by_degree;
    auto degs = field<std::vector<int>>(in, "vertex_degrees", {});
    for (std::size_t v = 0; v < degs.size(); ++v) {
      if (degs[v] < 1) throw ValidationError("vertex degrees must be positive");
      auto k = static_cast<unsigned>(degs[v]);
      vertices.push_back(GradedPoly::term(Rational(1) / Rational(factorial(k)), Monomial::of(coords[0], k)));
      by_degree[degs[v]].push_back(static_cast<int>(v));
    }
    for (const auto& [d, vs] : by_degree)
      if (vs.size() > 1) groups.push_back(vs);
    q = in.contains("quadratic_form") ? matrix_from_json(in["quadratic_form"]) : identity_matrix(1);
  } else {
    for (const auto& name : field<std::vector<std::string>>(in, "coords", {})) coords.push_back(Generator::make(name, 0));
    if (coords.empty()) throw ValidationError("wick input needs 'vertex_degrees' or 'coords'");
    if (!in.contains("vertices")) throw ValidationError("wick input needs 'vertices'");
    for (const auto& p : in["vertices"]) vertices.push_back(poly_from_json(p, coords));
    groups = field<std::vector<std::vector<int>>>(in, "identical_groups", {});
    q = in.contains("quadratic_form") ? matrix_from_json(in["quadratic_form"]) : identity_matrix(coords.size());
  }
  auto kernel = wick::QuadraticKernel::from_quadratic_form(q);
  auto classes = wick::diagram_expansion(vertices, coords, kernel, groups, c.max_legs);
  auto total = wick::correlator(vertices, coords, kernel, groups, c.max_legs);
  if (wick::resum(classes, groups) != total) throw InvariantViolation("diagram table does not resum to the correlator");

  Json table = Json::array();
  for (const auto& d : classes) {
    table.push_back({{"graph", graph::graph_to_json(d.shape)},
                     {"colors", d.colors},
                     {"count", d.count},
                     {"inverse_aut", rational_to_json(Rational(1, d.symmetry.aut()))},
                     {"weight", series_to_json(d.weight)}});
  }
  return {{"correlator", series_to_json(total)}, {"diagrams", table}};
}

Json run_bv_check(const RunConfig& c) {
  using namespace bv;
  Json in = load_input(c);
  int n = field<int>(in, "n", 2);
  if (n < 1 || n > 6) throw ValidationError("n must be between 1 and 6");
  BVSpace plain = BVSpace::make(n);
  GradedPoly sigma = in.contains("sigma") ? poly_from_json(in["sigma"], plain.x) : GradedPoly();
  BVSpace s = BVSpace::make(n, sigma);
  Json out{{"n", n}};

  if (in.contains("form")) {
    FormFunction f{poly_from_json(in["form"], s.form_alphabet()), 0};
    auto ff = odd_fourier(s, f);
    bool round = odd_fourier_inverse(s, ff) == f;
    bool intertwine = d_delta_intertwine_check(s, f);
    out["form"] = {{"de_rham", poly_to_json(de_rham(s, f).poly)},
                   {"fourier", {{"poly", poly_to_json(ff.poly)}, {"rho_power", ff.rho_power}}},
                   {"round_trip", round},
                   {"intertwines", intertwine}};
    if (!round || !intertwine) throw InvariantViolation("Fourier identities fail on the given form");
  }
  if (in.contains("multivector")) {
    MultivectorFunction g{poly_from_json(in["multivector"], s.multivector_alphabet()), 0};
    auto dg = odd_laplacian(s, g);
    bool nil = odd_laplacian(s, dg).poly.is_zero();
    out["multivector"] = {{"laplacian", poly_to_json(dg.poly)}, {"laplacian_squared_zero", nil}};
    if (!nil) throw InvariantViolation("Delta does not square to zero");
  }

  // Seeded batch over the core identities.
  int instances = field<int>(in, "instances", 50);
  if (instances < 0) throw ValidationError("instances must be nonnegative");
  Rng rng(c.seed);
  std::map<std::string, long> failures{{"delta_squared", 0}, {"schouten", 0}, {"fourier_round_trip", 0},
                                       {"intertwine", 0}};
  for (int i = 0; i < instances; ++i) {
    auto mv = [](GradedPoly p) { return MultivectorFunction{std::move(p), 0}; };
    GradedPoly h = random_poly(rng, s.multivector_alphabet(), 4, 0, 4);
    if (!odd_laplacian(s, odd_laplacian(s, mv(h))).poly.is_zero()) ++failures["delta_squared"];
    GradedPoly a = random_poly(rng, s.multivector_alphabet(), 3, 1, 4);
    GradedPoly b = random_poly(rng, s.multivector_alphabet(), 3, 1, 4);
    if (!(schouten(s, mv(a), mv(b)) == bracket_from_delta(s, mv(a), mv(b)))) ++failures["schouten"];
    FormFunction f{random_poly(rng, s.form_alphabet(), 4, 0, 4), 0};
    if (!(odd_fourier_inverse(s, odd_fourier(s, f)) == f)) ++failures["fourier_round_trip"];
    if (!d_delta_intertwine_check(s, f)) ++failures["intertwine"];
  }
  Json fails = Json::object();
  long total = 0;
  for (const auto& [k, v] : failures) {
    fails[k] = v;
    total += v;
  }
  out["batch"] = {{"seed", c.seed}, {"instances", instances}, {"failures", fails}};
  if (total > 0) throw InvariantViolation("randomized BV identities failed");
  return out;
}

Json run_graph_diff(const RunConfig& c) {
  Json in = load_input(c);
  if (in.is_object() && in.empty()) throw ValidationError("graph-diff needs a graph or chain as input");
  graph::GraphChain chain = read_chain(in.is_object() && in.contains("chain") ? in["chain"] : in);
  check_vertex_cap(chain, c.max_vertices > 0 ? c.max_vertices : graph::kDefaultVertexCap);
  auto d = graph::boundary(chain);
  auto dd = graph::boundary(d);
  if (!dd.is_zero()) throw InvariantViolation("boundary does not square to zero");
  return {{"chain", graph::chain_to_json(chain)},
          {"boundary", graph::chain_to_json(d)},
          {"boundary_squared", graph::chain_to_json(dd)}};
}

Json run_kontsevich(const RunConfig& c) {
  using namespace kontsevich;
  Json in = load_input(c);
  if (!in.contains("data") || !in.contains("chain")) throw ValidationError("kontsevich input needs 'data' and 'chain'");
  SymplecticData d = data_from_json(in["data"]);
  std::vector<GradedPoly> chain;
  for (const auto& p : in["chain"]) chain.push_back(poly_from_json(p, d.alphabet()));
  validate_chain(chain, d);
  if (c.max_vertices > 0 && static_cast<int>(chain.size()) > c.max_vertices)
    throw CapExceeded("chain length exceeds --max-vertices " + std::to_string(c.max_vertices));
  GradedPoly poly = evaluate_chain(chain, d);
  auto r = homomorphism_check(chain, d);
  GradedPoly residue = r.lhs - r.rhs;
  Json out{{"graph_polynomial", poly_to_json(poly)},
           {"graph_chain", graph::chain_to_json(graph::from_polynomial(poly))},
           {"ce_side", poly_to_json(r.lhs)},
           {"graph_side", poly_to_json(r.rhs)},
           {"residue", poly_to_json(residue)},
           {"equal", r.equal}};
  if (!r.equal) throw InvariantViolation("homomorphism residue is nonzero");
  return out;
}

Json run_frobenius(const RunConfig& c) {
  using namespace frobenius;
  Json in = load_input(c);
  int max_vertices = c.max_vertices > 0 ? c.max_vertices : 4;
  DGFrobeniusAlgebra a = in.contains("algebra") ? algebra_from_json(in["algebra"]) : build_su2();
  Matrix metric = in.contains("metric") ? matrix_from_json(in["metric"]) : Matrix{};

  if (c.action == "validate") {
    auto r = validate(a);
    Json checks = Json::array();
    for (const auto& ch : r.checks) checks.push_back({{"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
    Json out{{"checks", checks}, {"all_passed", r.all_passed()}};
    if (r.all_passed()) {
      Json coh = Json::object();
      for (const auto& [k, dim] : cohomology_dims(a)) coh[std::to_string(k)] = dim;
      out["cohomology"] = coh;
    }
    return out;
  }

  auto prop = hodge_propagator(a, metric);
  if (c.action == "propagator") {
    return {{"K", matrix_to_json(prop.K)},
            {"inverse_d", matrix_to_json(prop.inverse_d)},
            {"harmonic", matrix_to_json(prop.harmonic)},
            {"metric", matrix_to_json(prop.metric)},
            {"symmetric", propagator_symmetric(a, prop.K)}};
  }
  if (c.action == "cocycle-check") {
    int max_edges = field<int>(in, "max_edges", -1);
    int min_valence = field<int>(in, "min_valence", 2);
    auto r = cocycle_check(prop.K, a, max_vertices, max_edges, min_valence);
    Json res = Json::array();
    for (const auto& x : r.residues)
      res.push_back({{"graph", graph::graph_to_json(x.graph)}, {"residue", rational_to_json(x.residue)}});
    return {{"max_vertices", max_vertices},
            {"min_valence", min_valence},
            {"graphs_checked", r.graphs_checked},
            {"graphs_skipped", r.graphs_skipped},
            {"boundaries_with_support", r.boundaries_with_support},
            {"residues", res},
            {"closed", r.closed()}};
  }

  graph::GraphChain chain = in.contains("chain") ? read_chain(in["chain"]) : read_chain(Json{{"su2_cycle", 2}});
  check_vertex_cap(chain, c.max_vertices > 0 ? c.max_vertices : graph::kDefaultVertexCap);
  if (c.action == "evaluate") {
    Json values = Json::array();
    for (const auto& [g, coeff] : chain.terms())
      values.push_back({{"graph", graph::graph_to_json(g)},
                        {"coeff", rational_to_json(coeff)},
                        {"value", rational_to_json(evaluate_cochain(prop.K, a, g))}});
    return {{"values", values}, {"total", rational_to_json(evaluate_cochain(prop.K, a, chain))}};
  }
  // partition
  Json out{{"Z", rational_to_json(partition_function(a, prop.K, chain))}};
  if (in.contains("variation")) {
    Matrix j = matrix_from_json(in["variation"]);
    validate_variation(a, j);
    out["first_order_variation"] = rational_to_json(propagator_variation_check(a, prop.K, j, chain));
    out["finite_difference"] = rational_to_json(propagator_difference(a, prop.K, j, chain));
  }
  return out;
}

Json run_selftest(const RunConfig& c, bool& all_pass) {
  Json rows = Json::array();
  all_pass = true;
  for (const auto& r : acceptance::run_acceptance(c.seed)) {
    rows.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"checks", r.checks}, {"detail", r.detail}});
    all_pass = all_pass && r.passed;
  }
  return {{"seed", c.seed}, {"criteria", rows}, {"passed", all_pass}};
}

// ---- rendering -----------------------------------------------------------

// Scalars and arrays built only from scalars and arrays print on one line.
bool inline_value(const Json& v) {
  if (!v.is_structured()) return true;
  if (!v.is_array()) return false;
  for (const auto& x : v)
    if (!inline_value(x)) return false;
  return true;
}

std::string inline_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (!v.is_array()) return v.dump();
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + inline_text(v[i]);
  return s + "]";
}

void render_text(const Json& j, std::ostream& os, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (inline_value(v)) {
        os << pad << k << ": " << inline_text(v) << "\n";
      } else {
        os << pad << k << ":\n";
        render_text(v, os, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (inline_value(v)) {
        os << pad << "- " << inline_text(v) << "\n";
      } else {
        os << pad << "-\n";
        render_text(v, os, indent + 2);
      }
    }
  } else {
    os << pad << inline_text(j) << "\n";
  }
}

void emit(const Json& doc, const std::string& format, std::ostream& out) {
  if (format == "text")
    render_text(doc, out, 0);
  else
    out << doc.dump(2) << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Exact graph, BV and Gaussian-integral computations", "gbv"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--input", c.input, "JSON input file, '-' for stdin")->envname("BVG_INPUT");
  app.add_option("--json", c.inline_json, "inline JSON input");
  app.add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->envname("BVG_FORMAT");
  app.add_option("--max-legs", c.max_legs, "leg cap for Wick contractions")
      ->check(CLI::PositiveNumber)
      ->envname("BVG_MAX_LEGS");
  app.add_option("--max-vertices", c.max_vertices, "vertex cap for graph inputs; cocycle-check enumeration bound (default 4)")
      ->check(CLI::PositiveNumber)
      ->envname("BVG_MAX_VERTICES");
  app.add_option("--seed", c.seed, "seed for randomized batches")->envname("BVG_SEED");

  auto* wick_cmd = app.add_subcommand("wick", "Gaussian correlator and diagram table");
  auto* bv_cmd = app.add_subcommand("bv-check", "BV operators on given input and a seeded identity batch");
  auto* graph_cmd = app.add_subcommand("graph-diff", "boundary of a graph chain");
  auto* kont_cmd = app.add_subcommand("kontsevich", "graph polynomial of a chain and the homomorphism residue");
  auto* frob_cmd = app.add_subcommand("frobenius", "graph cochains from a dG Frobenius algebra");
  frob_cmd->add_option("action", c.action, "validate | propagator | evaluate | cocycle-check | partition")
      ->required()
      ->check(CLI::IsMember({"validate", "propagator", "evaluate", "cocycle-check", "partition"}));
  auto* self_cmd = app.add_subcommand("selftest", "run the acceptance criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    Json doc{{"error", {{"code", "usage"}, {"message", e.what()}}}};
    emit(doc, c.format == "text" ? "text" : "json", out);
    err << e.what() << "\n";
    return 2;
  }

  try {
    Json doc;
    int code = 0;
    if (wick_cmd->parsed()) {
      doc = run_wick(c);
    } else if (bv_cmd->parsed()) {
      doc = run_bv_check(c);
    } else if (graph_cmd->parsed()) {
      doc = run_graph_diff(c);
    } else if (kont_cmd->parsed()) {
      doc = run_kontsevich(c);
    } else if (frob_cmd->parsed()) {
      doc = run_frobenius(c);
      if (c.action == "validate" && !doc["all_passed"].get<bool>()) code = 2;
      if (c.action == "cocycle-check" && !doc["closed"].get<bool>()) code = 4;
    } else if (self_cmd->parsed()) {
      bool pass = false;
      doc = run_selftest(c, pass);
      if (c.format == "text") {
        for (const auto& row : doc["criteria"])
          out << (row["passed"].get<bool>() ? "PASS" : "FAIL") << " [" << row["id"].get<int>() << "] "
              << row["title"].get<std::string>() << ": " << row["detail"].get<std::string>() << "\n";
        return pass ? 0 : 4;
      }
      code = pass ? 0 : 4;
    }
    emit(doc, c.format, out);
    return code;
  } catch (const Error& e) {
    Json doc{{"error", {{"code", e.code()}, {"message", e.what()}}}};
    emit(doc, c.format, out);
    err << e.what() << "\n";
    return e.exit_code();
  } catch (const Json::exception& e) {
    Json doc{{"error", {{"code", "validation"}, {"message", e.what()}}}};
    emit(doc, c.format, out);
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    Json doc{{"error", {{"code", "invariant"}, {"message", e.what()}}}};
    emit(doc, c.format, out);
    err << e.what() << "\n";
    return 4;
  }
}

}  // namespace gbv::cli
