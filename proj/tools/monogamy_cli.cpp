// Command-line front end. Exit status: 0 success, 1 a check failed,
// 2 usage or input error, 3 internal failure (e.g. an LP breakdown).

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "monogamy/bell.hpp"
#include "monogamy/entanglement.hpp"
#include "monogamy/io.hpp"
#include "monogamy/localpoly.hpp"
#include "monogamy/monogamy.hpp"
#include "monogamy/quantum.hpp"
#include "monogamy/sharing.hpp"

using namespace monogamy;
using io::Json;

namespace {

constexpr double kPi = std::numbers::pi;

struct Args {
  std::string in;
  std::string out;
  std::optional<double> tol;
  int n = 2;
  std::string mode = "ns";
  std::optional<int> grid;
  int restarts = 50;
  std::uint64_t seed = 1;
  std::string cls;
  std::string state;
  double mu = 0.9;
  std::string angles;
  int pivot = 0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(const Args& a, const std::string& text) {
  if (a.out.empty()) {
    std::cout << text;
  } else {
    io::write_file(a.out, text);
  }
}

void emit(const Args& a, const Json& j) { emit(a, j.dump(2) + "\n"); }

std::vector<double> parse_angles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--angles: cannot parse \"" + item + "\" as radians");
    }
  }
  return out;
}

std::vector<double> angles_or(const Args& a, std::vector<double> fallback, std::size_t count) {
  auto v = a.angles.empty() ? std::move(fallback) : parse_angles(a.angles);
  if (v.size() != count)
    throw UsageError("--angles: expected " + std::to_string(count) + " values, got " +
                     std::to_string(v.size()));
  return v;
}

DensityMatrix state_of(const Args& a) {
  if (!a.in.empty()) return io::state_from_json(io::parse_json(io::read_file(a.in)));
  if (a.state == "singlet") return named_state(NamedStateKind::Singlet);
  if (a.state == "phi_plus") return named_state(NamedStateKind::PhiPlus);
  if (a.state == "ghz") return named_state(NamedStateKind::Ghz);
  if (a.state == "w") return named_state(NamedStateKind::W);
  if (a.state == "cg") return named_state(NamedStateKind::Cg, a.mu);
  throw UsageError("a state is required: --state or --in");
}

std::vector<std::vector<Observable>> planar_observables(std::span<const double> angles,
                                                        int parties, int settings) {
  std::vector<std::vector<Observable>> obs(static_cast<std::size_t>(parties));
  for (int p = 0; p < parties; ++p)
    for (int x = 0; x < settings; ++x)
      obs[p].push_back(Observable::planar(angles[static_cast<std::size_t>(p * settings + x)]));
  return obs;
}

Behavior behavior_in(const Args& a) {
  if (a.in.empty()) throw UsageError("--in is required");
  return io::read_behavior(a.in, a.tol.value_or(kDefaultTolerance));
}

int cmd_validate(const Args& a) {
  const Behavior b = behavior_in(a);
  const auto r = validate_behavior(b, a.tol.value_or(kDefaultTolerance));
  emit(a, io::to_json(r));
  return r.valid ? 0 : 1;
}

int cmd_nstest(const Args& a) {
  const Behavior b = behavior_in(a);
  const double tol = a.tol.value_or(kDefaultTolerance);
  const auto v = validate_behavior(b, tol);
  const auto r = is_no_signalling(b, tol);
  emit(a, Json{{"validation", io::to_json(v)}, {"signalling", io::to_json(r)}});
  return v.valid && r.is_no_signalling ? 0 : 1;
}

int cmd_localtest(const Args& a) {
  const Behavior b = behavior_in(a);
  const auto d = local_decomposition(b, a.tol.value_or(lp::kDefaultFeasibilityTol));
  emit(a, io::to_json(d));
  return d.is_local() ? 0 : 1;
}

int cmd_share(const Args& a) {
  const Behavior b = behavior_in(a);
  ExtensionSpec spec{b, a.n, a.mode == "ns" ? ShareMode::NoSignalling : ShareMode::Unrestricted,
                     a.tol.value_or(lp::kDefaultFeasibilityTol)};
  const auto r = extend(spec);
  Json j{{"status", r.feasible() ? "Feasible" : "Infeasible"},
         {"clones", a.n},
         {"mode", a.mode},
         {"score", r.score}};
  if (r.certificate) j["certificate"] = io::to_json(*r.certificate);
  emit(a, j);
  return r.feasible() ? 0 : 1;
}

Json checks_json(const TradeoffPoint& p, bool quantum, bool& ok) {
  Json checks = Json::array();
  auto add = [&](const CheckReport& r, bool gate) {
    checks.push_back(io::to_json(r));
    if (gate && !r.pass) ok = false;
  };
  add(check_ns_tradeoff(p), true);
  if (quantum) {
    add(check_tv_tradeoff(p), true);
    add(check_strengthened(p), true);
    add(check_key_corollary(p.ab(), p.corr_ac.value_or(0.0)), true);
    const auto t = check_triple(p);
    add(t.triple, true);
    add(t.naive, false);
    for (const auto& c : t.cylinders) add(c, false);
  }
  return checks;
}

int cmd_chsh(const Args& a) {
  const auto f = BellFunctional::chsh();
  if (!a.in.empty() && a.state.empty()) {
    const Behavior b = behavior_in(a);
    if (b.scenario().parties() == 2) {
      emit(a, Json{{"functional", f.name}, {"value", bell_value(b, f)}});
      return 0;
    }
    const auto p = pair_values(b);
    bool ok = true;
    Json checks = checks_json(p, false, ok);
    emit(a, Json{{"point", io::to_json(p)}, {"checks", checks}});
    return ok ? 0 : 1;
  }
  const DensityMatrix rho = state_of(a);
  if (rho.qubits() == 2) {
    const auto ang = angles_or(a, {0, kPi / 2, kPi / 4, -kPi / 4}, 4);
    const double v = bell_value(born_behavior(rho, planar_observables(ang, 2, 2)), f);
    emit(a, Json{{"functional", f.name}, {"value", v}, {"angles", ang}});
    return 0;
  }
  if (rho.qubits() == 3) {
    const auto ang = angles_or(a, {0, kPi / 2, kPi / 4, -kPi / 4, kPi / 4, -kPi / 4}, 6);
    const auto p = quantum_point(rho, ang);
    bool ok = true;
    Json checks = checks_json(p, true, ok);
    emit(a, Json{{"point", io::to_json(p)}, {"angles", ang}, {"checks", checks}});
    return ok ? 0 : 1;
  }
  throw UsageError("chsh needs a 2- or 3-qubit state");
}

int cmd_cg(const Args& a) {
  const auto f = BellFunctional::collins_gisin();
  if (!a.in.empty() && a.state.empty()) {
    const Behavior b = behavior_in(a);
    Json j{{"functional", f.name}};
    if (b.scenario().parties() == 2) {
      j["value"] = bell_value(b, f);
    } else {
      for (int k = 1; k < b.scenario().parties(); ++k)
        j[std::string("C_a") + static_cast<char>('a' + k)] = bell_value(b, f, 0, k);
    }
    emit(a, j);
    return 0;
  }
  if (a.state == "cg") {
    const auto ang = angles_or(a, {}, 9);
    std::array<double, 9> arr{};
    std::copy(ang.begin(), ang.end(), arr.begin());
    emit(a, io::to_json(cg_values(a.mu, arr)));
    return 0;
  }
  const DensityMatrix rho = state_of(a);
  if (rho.qubits() != 2) throw UsageError("cg needs --state cg or a 2-qubit state");
  const auto ang = angles_or(a, {}, 6);
  const double v = bell_value(born_behavior(rho, planar_observables(ang, 2, 3)), f);
  emit(a, Json{{"functional", f.name}, {"value", v}, {"angles", ang}});
  return 0;
}

int cmd_ckw(const Args& a) {
  const DensityMatrix rho = state_of(a);
  const auto r = ckw_check(rho, a.pivot, a.tol.value_or(1e-9));
  emit(a, io::to_json(r));
  return r.passes ? 0 : 1;
}

int cmd_sweep(const Args& a) {
  const auto cls = parse_region_class(a.cls);
  if (!cls) throw UsageError("--class must be local, quantum, ns or separable-orthogonal");
  const auto thetas = theta_grid(a.grid.value_or(360));
  SearchOptions so;
  so.restarts = a.restarts;
  so.seed = a.seed;
  const auto pts = support_sweep(*cls, thetas, so);
  emit(a, sweep_csv(pts, *cls));
  return 0;
}

int cmd_cgsearch(const Args& a) {
  const int g = a.grid.value_or(11);
  if (g < 1) throw UsageError("--grid must be positive");
  std::vector<double> mus;
  for (int i = 0; i < g; ++i) mus.push_back(g == 1 ? a.mu : static_cast<double>(i) / (g - 1));
  SearchOptions so;
  so.restarts = a.restarts;
  so.seed = a.seed;
  const auto r = cg_double_violation_search(mus, so);
  Json per = Json::array();
  for (const auto& c : r.per_mu) per.push_back(io::to_json(c));
  const bool violated = r.best.min_value() > 4.0;
  emit(a, Json{{"best", io::to_json(r.best)}, {"per_mu", per}, {"double_violation", violated}});
  return violated ? 0 : 1;
}

int cmd_pbprobe(const Args& a) {
  const auto r = pb_probe();
  std::fprintf(stderr, "pbprobe: 9 LPs solved in %.1f s\n", r.seconds);
  emit(a, io::to_json(r));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monogamy of Bell correlations: behaviors, polytopes, quantum states"};
  app.require_subcommand(1);
  Args a;

  auto add_in = [&](CLI::App* c, bool required) {
    auto* o = c->add_option("--in", a.in, "input JSON file");
    if (required) o->required();
  };
  auto add_out = [&](CLI::App* c) { c->add_option("--out", a.out, "output file (default stdout)"); };
  auto add_tol = [&](CLI::App* c) { c->add_option("--tol", a.tol, "tolerance"); };
  auto add_state = [&](CLI::App* c) {
    c->add_option("--state", a.state, "named state")
        ->check(CLI::IsMember({"singlet", "phi_plus", "ghz", "w", "cg"}));
    c->add_option("--mu", a.mu, "cg state parameter in [0,1]")->check(CLI::Range(0.0, 1.0));
    c->add_option("--angles", a.angles, "comma-separated planar angles in radians");
  };
  auto add_search = [&](CLI::App* c) {
    c->add_option("--grid", a.grid, "grid size");
    c->add_option("--restarts", a.restarts, "random restarts per grid point")
        ->check(CLI::PositiveNumber);
    c->add_option("--seed", a.seed, "random seed");
  };

  std::vector<std::pair<CLI::App*, int (*)(const Args&)>> commands;
  auto sub = [&](const char* name, const char* help, int (*fn)(const Args&)) {
    auto* c = app.add_subcommand(name, help);
    commands.emplace_back(c, fn);
    return c;
  };

  auto* c = sub("validate", "positivity and normalization of a behavior", cmd_validate);
  add_in(c, true);
  add_out(c);
  add_tol(c);
  c = sub("nstest", "no-signalling test of a behavior", cmd_nstest);
  add_in(c, true);
  add_out(c);
  add_tol(c);
  c = sub("localtest", "local hidden-variable decomposition", cmd_localtest);
  add_in(c, true);
  add_out(c);
  add_tol(c);
  c = sub("share", "N-shareability with respect to the second party", cmd_share);
  add_in(c, true);
  add_out(c);
  add_tol(c);
  c->add_option("--n", a.n, "number of copies of the second party")->check(CLI::PositiveNumber);
  c->add_option("--mode", a.mode, "unrestricted or ns")
      ->check(CLI::IsMember({"unrestricted", "ns"}));
  c = sub("chsh", "CHSH value of a behavior or of a state at planar angles", cmd_chsh);
  add_in(c, false);
  add_out(c);
  add_state(c);
  c = sub("cg", "Collins-Gisin value of a behavior or state", cmd_cg);
  add_in(c, false);
  add_out(c);
  add_state(c);
  c = sub("ckw", "tangles and the distributed-entanglement check", cmd_ckw);
  add_in(c, false);
  add_out(c);
  add_tol(c);
  add_state(c);
  c->add_option("--pivot", a.pivot, "pivot qubit");
  c = sub("sweep", "support function of a correlation region", cmd_sweep);
  add_out(c);
  add_search(c);
  c->add_option("--class", a.cls, "local, quantum, ns or separable-orthogonal")->required();
  c = sub("cgsearch", "search for a double Collins-Gisin violation", cmd_cgsearch);
  add_out(c);
  add_search(c);
  c->add_option("--mu", a.mu, "mu when --grid is 1")->check(CLI::Range(0.0, 1.0));
  c = sub("pbprobe", "four-party no-signalling LP probe", cmd_pbprobe);
  add_out(c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  for (const auto& [cmd, fn] : commands) {
    if (!cmd->parsed()) continue;
    try {
      return fn(a);
    } catch (const io::ParseError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    } catch (const UsageError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "internal error: " << e.what() << "\n";
      return 3;
    }
  }
  return 2;
}
