#include "monogamy/sharing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace monogamy {

std::vector<lp::Row> normalization_rows(const Scenario& s) {
  std::vector<lp::Row> rows;
  rows.reserve(s.context_count());
  const std::size_t nout = s.outcome_count();
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    lp::Row r{std::vector<double>(s.table_size(), 0.0), 1.0};
    std::fill_n(r.coeffs.begin() + static_cast<std::ptrdiff_t>(c * nout), nout, 1.0);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<lp::Row> no_signalling_rows(const Scenario& s) {
  std::vector<lp::Row> rows;
  const int n = s.parties();
  if (n < 2) return rows;
  std::vector<int> settings(static_cast<std::size_t>(n)), outcomes(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    std::vector<int> rest;
    for (int p = 0; p < n; ++p)
      if (p != k) rest.push_back(p);
    const Scenario rs = s.subset(rest);
    for (int x = 1; x < s.settings(k); ++x)
      for (std::size_t rc = 0; rc < rs.context_count(); ++rc) {
        const auto rset = rs.context(rc);
        for (std::size_t i = 0; i < rest.size(); ++i) settings[rest[i]] = rset[i];
        for (std::size_t ro = 0; ro < rs.outcome_count(); ++ro) {
          const auto rout = rs.outcome(ro);
          for (std::size_t i = 0; i < rest.size(); ++i) outcomes[rest[i]] = rout[i];
          lp::Row r{std::vector<double>(s.table_size(), 0.0), 0.0};
          for (int ak = 0; ak < s.outcomes(k); ++ak) {
            outcomes[k] = ak;
            settings[k] = x;
            r.coeffs[s.entry_index(settings, outcomes)] += 1.0;
            settings[k] = 0;
            r.coeffs[s.entry_index(settings, outcomes)] -= 1.0;
          }
          rows.push_back(std::move(r));
        }
      }
  }
  return rows;
}

lp::LinearProgram no_signalling_program(const Scenario& s) {
  lp::LinearProgram prog;
  prog.variables = s.table_size();
  prog.equalities = normalization_rows(s);
  auto ns = no_signalling_rows(s);
  prog.equalities.insert(prog.equalities.end(), std::make_move_iterator(ns.begin()),
                         std::make_move_iterator(ns.end()));
  return prog;
}

Scenario extension_scenario(const Scenario& base, int clones) {
  if (base.parties() != 2) throw StructuralError("shareability needs a two-party base");
  if (clones < 1) throw StructuralError("clone count must be >= 1");
  std::vector<int> settings{base.settings(0)}, outcomes{base.outcomes(0)};
  settings.insert(settings.end(), static_cast<std::size_t>(clones), base.settings(1));
  outcomes.insert(outcomes.end(), static_cast<std::size_t>(clones), base.outcomes(1));
  return Scenario(std::move(settings), std::move(outcomes));
}

namespace {

// Index of the entry with clones i and i+1 (party indices i, i+1 with
// i >= 1) exchanged in both setting and outcome.
std::size_t swapped_entry(const Scenario& s, std::size_t entry, int i) {
  const std::size_t nout = s.outcome_count();
  auto ctx = s.context(entry / nout);
  auto out = s.outcome(entry % nout);
  std::swap(ctx[i], ctx[i + 1]);
  std::swap(out[i], out[i + 1]);
  return s.entry_index(ctx, out);
}

}  // namespace

double lifted_base(const Behavior& base, int a, int b, int setting_a,
                   std::span<const int> clone_settings) {
  const int sb = *std::min_element(clone_settings.begin(), clone_settings.end());
  const int o[] = {a, b};
  const int x[] = {setting_a, sb};
  return base.prob(o, x);
}

ExtensionCertificate verify_extension(const Behavior& base, Behavior extension, int clones,
                                      ShareMode mode) {
  const Scenario s = extension_scenario(base.scenario(), clones);
  if (!(extension.scenario() == s)) throw StructuralError("extension scenario mismatch");
  ExtensionCertificate cert;
  cert.clones = clones;
  cert.mode = mode;

  const auto& table = extension.table();
  for (int i = 1; i < clones; ++i)
    for (std::size_t e = 0; e < table.size(); ++e)
      cert.symmetry_residual =
          std::max(cert.symmetry_residual, std::abs(table[e] - table[swapped_entry(s, e, i)]));

  for (int i = 1; i <= clones; ++i) {
    const int keep[] = {0, i};
    for (std::size_t c = 0; c < s.context_count(); ++c) {
      const auto ctx = s.context(c);
      const auto m = marginal(extension, keep, ctx);
      const std::span<const int> clone_settings(ctx.begin() + 1, ctx.end());
      for (int a = 0; a < base.scenario().outcomes(0); ++a)
        for (int b = 0; b < base.scenario().outcomes(1); ++b) {
          double target;
          if (mode == ShareMode::NoSignalling) {
            const int o[] = {a, b};
            const int x[] = {ctx[0], ctx[i]};
            target = base.prob(o, x);
          } else {
            target = lifted_base(base, a, b, ctx[0], clone_settings);
          }
          const int ab[] = {a, b};
          const double got = m.probabilities[m.scenario.outcome_index(ab)];
          cert.marginal_residual = std::max(cert.marginal_residual, std::abs(got - target));
        }
    }
  }
  cert.signalling = is_no_signalling(extension).max_violation;
  cert.extension = std::move(extension);
  return cert;
}

ExtensionCertificate unrestricted_extension(const Behavior& base, int clones) {
  const Scenario s = extension_scenario(base.scenario(), clones);
  const std::size_t nout = s.outcome_count();
  std::vector<double> table(s.table_size(), 0.0);
  std::vector<int> out(static_cast<std::size_t>(clones) + 1);
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    const auto ctx = s.context(c);
    const std::span<const int> clone_settings(ctx.begin() + 1, ctx.end());
    for (int a = 0; a < s.outcomes(0); ++a)
      for (int b = 0; b < s.outcomes(1); ++b) {
        out[0] = a;
        std::fill(out.begin() + 1, out.end(), b);
        table[c * nout + s.outcome_index(out)] = lifted_base(base, a, b, ctx[0], clone_settings);
      }
  }
  return verify_extension(base, Behavior(s, std::move(table)), clones, ShareMode::Unrestricted);
}

ExtensionResult ns_extension(const Behavior& base, int clones, double tol,
                             std::size_t variable_cap) {
  if (base.scenario().parties() != 2) throw StructuralError("shareability needs a two-party base");
  if (!validate_behavior(base, 1e-9).valid) throw StructuralError("base behavior does not validate");
  if (!is_no_signalling(base, 1e-9).is_no_signalling)
    throw StructuralError("base behavior is signalling");
  const Scenario s = extension_scenario(base.scenario(), clones);
  if (s.table_size() > variable_cap) throw StructuralError("extension LP exceeds variable cap");

  lp::LinearProgram prog = no_signalling_program(s);
  const std::size_t nv = s.table_size();

  for (int i = 1; i < clones; ++i)
    for (std::size_t e = 0; e < nv; ++e) {
      const std::size_t f = swapped_entry(s, e, i);
      if (f <= e) continue;
      lp::Row r{std::vector<double>(nv, 0.0), 0.0};
      r.coeffs[e] = 1.0;
      r.coeffs[f] = -1.0;
      prog.equalities.push_back(std::move(r));
    }

  // (a, b_1) marginal with the other clones at setting 0.
  const Scenario& bs = base.scenario();
  const std::size_t nout = s.outcome_count();
  std::vector<int> ctx(static_cast<std::size_t>(clones) + 1, 0);
  for (int x = 0; x < bs.settings(0); ++x)
    for (int y = 0; y < bs.settings(1); ++y) {
      ctx[0] = x;
      ctx[1] = y;
      const std::size_t ci = s.context_index(ctx);
      for (int a = 0; a < bs.outcomes(0); ++a)
        for (int b = 0; b < bs.outcomes(1); ++b) {
          const int o[] = {a, b};
          const int xy[] = {x, y};
          lp::Row r{std::vector<double>(nv, 0.0), base.prob(o, xy)};
          for (std::size_t oi = 0; oi < nout; ++oi) {
            const auto out = s.outcome(oi);
            if (out[0] == a && out[1] == b) r.coeffs[ci * nout + oi] = 1.0;
          }
          prog.equalities.push_back(std::move(r));
        }
    }

  lp::Options opts;
  opts.feasibility_tol = tol;
  opts.phase_one_only = true;
  const auto res = lp::solve(prog, opts);
  ExtensionResult result;
  if (res.status == lp::Status::Infeasible) {
    result.score = res.infeasibility;
    return result;
  }
  if (res.status != lp::Status::Optimal)
    throw std::runtime_error("extension LP failed: " + res.diagnostics);

  std::vector<double> table = res.solution;
  for (double& v : table)
    if (v < 0.0) v = 0.0;
  result.certificate =
      verify_extension(base, Behavior(s, std::move(table)), clones, ShareMode::NoSignalling);
  return result;
}

ExtensionResult extend(const ExtensionSpec& spec) {
  if (spec.mode == ShareMode::Unrestricted) {
    ExtensionResult r;
    r.certificate = unrestricted_extension(spec.base, spec.clones);
    return r;
  }
  return ns_extension(spec.base, spec.clones, spec.tol);
}

ShareabilityResult is_n_shareable(const Behavior& base, int clones, ShareMode mode, double tol) {
  const auto r = extend({base, clones, mode, tol});
  return {r.feasible(), r.feasible() ? 0.0 : r.score};
}

ExtensionCertificate drop_last_clone(const Behavior& base, const ExtensionCertificate& cert) {
  if (cert.clones < 2) throw StructuralError("need at least two clones to drop one");
  std::vector<int> keep(static_cast<std::size_t>(cert.clones));
  std::iota(keep.begin(), keep.end(), 0);
  return verify_extension(base, reduce(cert.extension, keep, 0), cert.clones - 1, cert.mode);
}

}  // namespace monogamy
