// Trade-off relations between Bell values of overlapping pairs, support
// functions of the correlation regions in the (B_ab, B_ac) plane, and the
// numerical searches built on them.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "monogamy/bell.hpp"
#include "monogamy/model.hpp"
#include "monogamy/quantum.hpp"

namespace monogamy {

inline constexpr double kCheckTolerance = 1e-9;

enum class InequalityId {
  NsTradeoff,      // NS-13:  |B_ab| + |B_ac| <= 4
  TvTradeoff,      // TV-14:  B_ab^2 + B_ac^2 <= 8
  Strengthened,    // STRONG-21: B_ab^2 + B_ac^2 <= 8 (1 - <sigma_y>_a^2)
  NaiveTriple,     // NAIVE-23: B_ab^2 + B_ac^2 + B_bc^2 <= 8 (does not hold)
  Triple,          // TRIPLE-25: ... <= 12 - 4 sum <sigma_y>^2
  Cylinder,        // CYL: one pair of the triple, <= 8
  PawlowskiBrukner,  // PB-30: |C_ab| + |C_ac| + |C_ad| <= 3 LR
  KeyCorollary,    // KEY-31: B_ab^2 + 4 <AC>^2 <= 8
};

std::string to_string(InequalityId id);

struct CheckReport {
  InequalityId id = InequalityId::NsTradeoff;
  std::string label;  // e.g. the pair a cylinder refers to
  double lhs = 0.0;
  double bound = 0.0;
  double slack = 0.0;  // bound - lhs
  bool pass = true;    // slack >= -tol
};

CheckReport make_report(InequalityId id, double lhs, double bound, double tol = kCheckTolerance,
                        std::string label = {});

struct TradeoffPoint {
  std::vector<std::string> labels;  // "B_ab", "B_ac"[, "B_bc"]
  std::vector<double> values;
  std::optional<double> sigma_y_a, sigma_y_b, sigma_y_c;
  std::optional<double> corr_ac;  // <A C>: first setting of a and of c

  static TradeoffPoint pair(double b_ab, double b_ac);
  static TradeoffPoint triple(double b_ab, double b_ac, double b_bc);
  double ab() const { return values.at(0); }
  double ac() const { return values.at(1); }
  double bc() const { return values.at(2); }
};

/// CHSH on (a,b) and on (a,c) with a's settings shared; also <A C>.
/// Requires a 3-party scenario with 2 settings and 2 outcomes per party.
TradeoffPoint pair_values(const Behavior& b);
/// pair_values plus CHSH on (b,c), b taking the role of the first party.
TradeoffPoint triple_values(const Behavior& b);

/// Born behavior of a 3-qubit state under planar settings
/// angles = {a0, a1, b0, b1, c0, c1}, with the triple of CHSH values and the
/// sigma_y expectations of each qubit filled in.
TradeoffPoint quantum_point(const DensityMatrix& rho, std::span<const double> angles);

CheckReport check_ns_tradeoff(const TradeoffPoint& p, double tol = kCheckTolerance);
CheckReport check_tv_tradeoff(const TradeoffPoint& p, double tol = kCheckTolerance);
/// Throws std::invalid_argument without sigma_y_a.
CheckReport check_strengthened(const TradeoffPoint& p, double tol = kCheckTolerance);

struct TripleReport {
  CheckReport triple;  // TRIPLE-25
  CheckReport naive;   // NAIVE-23, expected to fail on some quantum states
  std::array<CheckReport, 3> cylinders;  // ab/ac, ab/bc, ac/bc
};
/// Needs a triple point; missing sigma_y values count as 0.
TripleReport check_triple(const TradeoffPoint& p, double tol = kCheckTolerance);

CheckReport check_key_corollary(double b_ab, double corr_ac, double tol = kCheckTolerance);

CheckReport check_pb(double c_ab, double c_ac, double c_ad, double local_bound,
                     double tol = kCheckTolerance);

// ---- operators ----

/// Two-qubit (or embedded) Bell operator sum c_xy A_x B_y + sum f_x A_x + sum s_y B_y
/// acting on qubits (qa, qb) of an n-qubit register.
ComplexMatrix bell_operator(const BellFunctional& f, std::span<const ComplexMatrix> first, int qa,
                            std::span<const ComplexMatrix> second, int qb, int qubits);

// ---- support functions in the (B_ab, B_ac) plane ----

enum class RegionClass { Local, Quantum, NoSignalling, SeparableOrthogonal };

std::string to_string(RegionClass c);
std::optional<RegionClass> parse_region_class(std::string_view s);

/// theta_k = 2 pi k / grid, k = 0..grid-1.
std::vector<double> theta_grid(int grid);

struct SupportPoint {
  double theta = 0.0;
  double value = 0.0;  // max of cos(theta) B_ab + sin(theta) B_ac
  double b_ab = 0.0;   // coordinates of the maximizer
  double b_ac = 0.0;
  std::vector<double> parameters;  // angles or state parameters, if any
  std::optional<Behavior> argmax;
};

struct SearchOptions {
  int restarts = 50;
  std::uint64_t seed = 1;
  /// Early stop once this many restarts agree on the best value (0: never).
  int agreeing = 4;
};

/// Exact: maximum over the 64 deterministic 3-party strategies.
std::vector<SupportPoint> local_support(std::span<const double> thetas);
/// LP over the 3-party no-signalling polytope.
std::vector<SupportPoint> ns_support(std::span<const double> thetas);
/// Lower bound: for planar angles the best state is the top eigenvector of
/// cos(theta) B_ab + sin(theta) B_ac, so the search runs over the 6 angles
/// only. The reported value is recomputed from the Born behavior of that
/// eigenvector.
std::vector<SupportPoint> quantum_boundary_search(std::span<const double> thetas,
                                                  const SearchOptions& opts = {});
/// Product states with settings {sigma_x, sigma_z} for every party.
std::vector<SupportPoint> separable_orthogonal_support(std::span<const double> thetas,
                                                       const SearchOptions& opts = {});
std::vector<SupportPoint> support_sweep(RegionClass c, std::span<const double> thetas,
                                        const SearchOptions& opts = {});

/// Largest |CHSH| over product two-qubit states, settings {sigma_x, sigma_z}
/// on both sides. Returns the value and the Bloch angles (theta_a, phi_a,
/// theta_b, phi_b).
std::pair<double, std::vector<double>> separable_orthogonal_chsh(const SearchOptions& opts = {});

/// theta,max_value,class with a header row and LF line endings.
std::string sweep_csv(std::span<const SupportPoint> points, RegionClass c);

// ---- Collins-Gisin double violation ----

struct CgCandidate {
  double mu = 0.0;
  std::array<double, 9> angles{};  // a0 a1 a2 b0 b1 b2 c0 c1 c2
  double c_ab = 0.0;
  double c_ac = 0.0;
  double min_value() const { return std::min(c_ab, c_ac); }
};

/// C_ab and C_ac of cg(mu) at the given planar angles.
CgCandidate cg_values(double mu, const std::array<double, 9>& angles);

struct CgSearchResult {
  CgCandidate best;
  std::vector<CgCandidate> per_mu;  // best for every fixed grid value
};

/// Maximizes min(C_ab, C_ac) at every mu of the grid, then refines the best
/// grid point with mu free.
CgSearchResult cg_double_violation_search(std::span<const double> mus,
                                          const SearchOptions& opts = {});

// ---- four-party probe ----

struct PbSignPattern {
  std::array<int, 3> signs{};  // sign applied to C_ab, C_ac, C_ad
  double value = 0.0;
  std::array<double, 3> c{};   // C_ab, C_ac, C_ad at the optimum
};

struct PbProbeReport {
  double local_bound = 0.0;                 // LR of the functional
  std::vector<PbSignPattern> patterns;      // 8 sign patterns
  double max_abs_sum = 0.0;                 // max |C_ab| + |C_ac| + |C_ad|
  CheckReport abs_sum_check;                // against 3 LR
  double one_sided_max = 0.0;               // pattern (+,+,+)
  double t_star = 0.0;                      // max t: C_ab + C_ac >= t, C_ab + C_ad >= t
  std::array<double, 3> t_star_c{};
  double pair_bound = 0.0;                  // 2 LR
  Behavior abs_sum_argmax;
  Behavior t_star_argmax;
  double seconds = 0.0;
};

/// Four parties, three settings, two outcomes, C on the pairs (a,b), (a,c),
/// (a,d) with a's settings shared.
PbProbeReport pb_probe(const BellFunctional& f = BellFunctional::collins_gisin());

}  // namespace monogamy
