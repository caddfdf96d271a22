#include "mhv/algebra.hpp"
#include "mhv/derivation_solver.hpp"
#include "mhv/errors.hpp"
#include "mhv/registry.hpp"
#include "mhv/two_local.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace mhv;

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFailed = 3;
constexpr int kExitIo = 4;

struct Config {
  int outer = 10;
  int interior = 5;
  std::uint64_t seed = 0;
  std::string format = "text";

  bool json() const { return format == "json"; }
  Window window() const { return Window(outer, interior); }
};

class IoFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string map_line(const GradedMap& m) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [b, img] : m.images()) {
    os << (first ? "" : "; ") << basis_key(b) << " -> " << format_element(img);
    first = false;
  }
  return first ? "0" : os.str();
}

Json report_json(const SolveReport& r) {
  Json reps = Json::array();
  for (const auto& m : r.representatives) reps.push_back(graded_map_to_json(m));
  Json out = Json::object();
  out["codomain"] = to_string(r.codomain);
  out["delta"] = r.delta;
  out["window"] = window_to_json(r.window);
  out["space_dim"] = r.space_dim;
  out["inner_dim"] = r.inner_dim;
  out["outer_dim"] = r.outer_dim;
  out["stable"] = r.stable;
  out["representatives"] = std::move(reps);
  return out;
}

void print_report_text(const SolveReport& r) {
  std::cout << "codomain " << to_string(r.codomain) << ", degree " << r.delta << ", window (" << r.window.outer()
            << ", " << r.window.interior() << ")\n";
  std::cout << "space_dim " << r.space_dim << "\ninner_dim " << r.inner_dim << "\nouter_dim " << r.outer_dim << "\n";
  std::cout << "stable " << (r.stable ? "yes" : "no") << "\n";
  const Window interior(r.window.interior());
  const GradedMap d1(0, r.codomain, interior, make_D1(interior).images());
  std::cout << "representatives:";
  if (r.representatives.empty()) std::cout << " none";
  std::cout << "\n";
  for (std::size_t i = 0; i < r.representatives.size(); ++i) {
    const auto& m = r.representatives[i];
    std::cout << "  [" << i + 1 << "]" << (m == d1 ? " D1:" : "") << " " << map_line(m) << "\n";
  }
}

Json membership_json(const MembershipVerdict& m) {
  Json coords = Json::array();
  for (const auto& c : m.inner_coordinates) coords.push_back(to_pq_string(c));
  return {{"in_space", m.in_space}, {"in_inner", m.in_inner}, {"inner_coordinates", coords}};
}

std::string membership_text(const MembershipVerdict& m) {
  std::string s = m.in_space ? "derivation" : "not a derivation";
  s += m.in_inner ? ", inner (coordinates" : ", not inner";
  if (m.in_inner) {
    for (const auto& c : m.inner_coordinates) s += " " + to_string(c);
    s += ")";
  }
  return s;
}

int cmd_bracket(const Config& cfg, const std::string& a, const std::string& b) {
  const Element x = parse_element(a);
  const Element y = parse_element(b);
  const Element z = bracket(x, y);
  if (cfg.json()) {
    print_json({{"x", format_element(x)}, {"y", format_element(y)}, {"bracket", format_element(z)},
                {"element", element_to_json(z)}});
  } else {
    std::cout << format_element(z) << "\n";
  }
  return 0;
}

int cmd_degree(const Config& cfg, const std::string& text) {
  const Element x = parse_element(text);
  const Degree d = degree(x);
  if (cfg.json()) {
    Json out = {{"element", format_element(x)}, {"zero", d.zero}, {"homogeneous", d.homogeneous()}};
    out["degree"] = d.value ? Json(*d.value) : Json(nullptr);
    print_json(out);
  } else if (d.zero) {
    std::cout << "zero element (every degree)\n";
  } else if (d.value) {
    std::cout << *d.value << "\n";
  } else {
    std::cout << "inhomogeneous\n";
  }
  return 0;
}

int cmd_solve(const Config& cfg, const std::string& codomain, int delta) {
  const auto r = solve_graded_derivations(parse_codomain(codomain), delta, cfg.window());
  if (cfg.json()) {
    print_json(report_json(r));
  } else {
    print_report_text(r);
  }
  return r.stable ? 0 : kExitFailed;
}

int cmd_h1(const Config& cfg, const std::string& codomain, int delta) {
  const auto h1 = h1_component(parse_codomain(codomain), delta, cfg.window());
  if (cfg.json()) {
    Json out = report_json(h1.report);
    if (h1.d1) out["D1"] = membership_json(*h1.d1);
    if (h1.d2) out["D2"] = membership_json(*h1.d2);
    print_json(out);
  } else {
    print_report_text(h1.report);
    if (h1.d1) std::cout << "D1: " << membership_text(*h1.d1) << "\n";
    if (h1.d2) std::cout << "D2: " << membership_text(*h1.d2) << "\n";
  }
  return h1.report.stable ? 0 : kExitFailed;
}

int cmd_hom(const Config& cfg, int m, int n) {
  const auto r = hom_D0(m, n);
  if (cfg.json()) {
    Json basis = Json::array();
    for (const auto& f : r.basis) {
      Json jf = Json::object();
      for (const auto& [b, img] : f) jf[basis_key(b)] = element_to_json(img);
      basis.push_back(std::move(jf));
    }
    print_json({{"m", m}, {"n", n}, {"dim", r.dim}, {"basis", basis}});
  } else {
    std::cout << "dim " << r.dim << "\n";
    for (const auto& f : r.basis) {
      std::cout << " ";
      for (const auto& [b, img] : f) std::cout << " " << basis_key(b) << " -> " << format_element(img) << ";";
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_verify(const Config& cfg, const std::vector<std::string>& lemmas, const std::string& json_path) {
  const Json report = run_lemma_registry(cfg.window(), cfg.seed, lemmas);
  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) throw IoFailure("cannot open '" + json_path + "' for writing");
    out << report.dump(2) << "\n";
    if (!out) throw IoFailure("cannot write '" + json_path + "'");
  }
  if (cfg.json()) {
    print_json(report);
  } else {
    for (const auto& r : report.at("results")) {
      const std::string verdict = r.at("verdict").get<std::string>();
      std::cout << r.at("lemma").get<std::string>() << "\t" << verdict
                << (verdict == "discrepancy" ? "\t(finding: computed value differs from the stated claim)" : "")
                << "\n";
    }
  }
  return registry_has_violation(report) ? kExitViolation : 0;
}

int cmd_recover(const Config& cfg, const std::string& path, int t) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot read oracle file '" + path + "'");
  const TwoLocalOracle o = oracle_from_json(Json::parse(in));
  RecoveryReport r;
  try {
    r = recover_derivation(o, t);
  } catch (const NotTwoLocal& e) {
    if (cfg.json()) {
      print_json({{"verdict", "violation"}, {"witness", {{"kind", "unfittable"}, {"points", {"d[0]", "d[1]"}}}},
                  {"detail", e.what()}});
    } else {
      std::cout << "verdict violation\nwitness d[0], d[1]: " << e.what() << "\n";
    }
    return kExitFailed;
  }
  if (cfg.json()) {
    print_json(recovery_to_json(r));
  } else {
    std::cout << "base u " << format_element(r.base.u) << ", alpha " << to_string(r.base.alpha) << ", beta "
              << to_string(r.base.beta) << "\n";
    std::cout << "lambda " << to_string(r.lambda) << "\n";
    std::cout << "verdict " << (r.verdict == Verdict::Derivation ? "derivation" : "violation") << "\n";
    if (r.witness) {
      std::cout << "witness " << format_element(*r.witness) << " (" << r.violation_kind
                << "), residual " << format_element(r.witness_residual) << "\n";
    }
  }
  return r.verdict == Verdict::Derivation ? 0 : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations on the mirror Heisenberg-Virasoro algebra"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--window", cfg.outer, "Outer window bound N")->capture_default_str();
  app.add_option("--interior", cfg.interior, "Interior window bound M")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Seed for randomized checks (default: $MHV_SEED, else 0)");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  std::string a, b;
  auto* bracket_cmd = app.add_subcommand("bracket", "Bracket of two elements");
  bracket_cmd->add_option("x", a)->required();
  bracket_cmd->add_option("y", b)->required();

  auto* degree_cmd = app.add_subcommand("degree", "Degree of an element");
  degree_cmd->add_option("x", a)->required();

  std::string codomain = "H";
  int delta = 0;
  auto* solve_cmd = app.add_subcommand("solve", "Graded derivations of one degree");
  auto* h1_cmd = app.add_subcommand("h1", "First cohomology component of one degree");
  for (auto* cmd : {solve_cmd, h1_cmd}) {
    cmd->add_option("--codomain", codomain, "H or D")->check(CLI::IsMember({"H", "D"}))->capture_default_str();
    cmd->add_option("--degree", delta, "Degree of the maps")->required();
  }

  int m = 0, n = 0;
  auto* hom_cmd = app.add_subcommand("hom", "Equivariant maps between degree components");
  hom_cmd->add_option("--m", m)->required();
  hom_cmd->add_option("--n", n)->required();

  std::vector<std::string> lemmas;
  std::string json_path;
  auto* verify_cmd = app.add_subcommand("verify", "Run the check registry");
  verify_cmd->add_option("--lemma", lemmas, "Restrict to these ids (repeatable)");
  verify_cmd->add_option("--json", json_path, "Write the JSON report here");

  std::string oracle_path;
  int t = 2;
  auto* recover_cmd = app.add_subcommand("recover", "Recover a derivation from a 2-local oracle");
  recover_cmd->add_option("--oracle", oracle_path)->required();
  recover_cmd->add_option("--t", t)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  if (app.count("--seed") == 0) {
    if (const char* env = std::getenv("MHV_SEED")) {
    try {
      std::size_t used = 0;
      cfg.seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      std::cerr << "error: MHV_SEED must be an unsigned 64-bit integer\n";
      return kExitUsage;
    }
    }
  }
  // Enough room for every degree |delta| <= 3 at the configured interior.
  constexpr int kDefaultDegreeReach = 3;
  const int min_outer = cfg.interior + kDefaultDegreeReach + kBufferMargin;
  if (cfg.interior < 1 || cfg.outer < min_outer) {
    std::cerr << "error: need --interior >= 1 and --window >= --interior + " << min_outer - cfg.interior
              << " (got " << cfg.outer << ", " << cfg.interior << ")\n";
    return kExitUsage;
  }

  try {
    if (*bracket_cmd) return cmd_bracket(cfg, a, b);
    if (*degree_cmd) return cmd_degree(cfg, a);
    if (*solve_cmd) return cmd_solve(cfg, codomain, delta);
    if (*h1_cmd) return cmd_h1(cfg, codomain, delta);
    if (*hom_cmd) return cmd_hom(cfg, m, n);
    if (*verify_cmd) return cmd_verify(cfg, lemmas, json_path);
    if (*recover_cmd) return cmd_recover(cfg, oracle_path, t);
  } catch (const IoFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConsistencyError& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return kExitFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
