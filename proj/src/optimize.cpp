#include "monogamy/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace monogamy {

namespace {

struct Simplex {
  std::vector<std::vector<double>> pts;
  std::vector<double> vals;
};

}  // namespace

OptimizeResult nelder_mead(const Objective& f, std::vector<double> x0,
                           const NelderMeadOptions& opts) {
  const std::size_t n = x0.size();
  if (n == 0) throw std::invalid_argument("nelder_mead: empty parameter vector");
  OptimizeResult best;
  best.x = std::move(x0);
  best.value = f(best.x);
  best.evaluations = 1;

  auto eval = [&](const std::vector<double>& x) {
    ++best.evaluations;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  for (int round = 0; round <= opts.rebuilds; ++round) {
    const double step = opts.initial_step / std::pow(4.0, round);
    Simplex s;
    s.pts.push_back(best.x);
    s.vals.push_back(best.value);
    for (std::size_t i = 0; i < n; ++i) {
      auto p = best.x;
      p[i] += step;
      s.vals.push_back(eval(p));
      s.pts.push_back(std::move(p));
    }
    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);

    while (best.evaluations < opts.max_evaluations) {
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return s.vals[a] < s.vals[b]; });
      const std::size_t lo = order.front(), hi = order.back(), second = order[n - 1];
      if (std::abs(s.vals[hi] - s.vals[lo]) <= opts.value_tol) break;

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t k = 0; k <= n; ++k)
        if (k != hi)
          for (std::size_t i = 0; i < n; ++i) centroid[i] += s.pts[k][i] / static_cast<double>(n);

      for (std::size_t i = 0; i < n; ++i) trial[i] = 2.0 * centroid[i] - s.pts[hi][i];
      const double fr = eval(trial);
      if (fr < s.vals[lo]) {
        for (std::size_t i = 0; i < n; ++i) trial2[i] = 3.0 * centroid[i] - 2.0 * s.pts[hi][i];
        const double fe = eval(trial2);
        if (fe < fr) {
          s.pts[hi] = trial2;
          s.vals[hi] = fe;
        } else {
          s.pts[hi] = trial;
          s.vals[hi] = fr;
        }
        continue;
      }
      if (fr < s.vals[second]) {
        s.pts[hi] = trial;
        s.vals[hi] = fr;
        continue;
      }
      const bool outside = fr < s.vals[hi];
      for (std::size_t i = 0; i < n; ++i)
        trial2[i] = outside ? 0.5 * (centroid[i] + trial[i]) : 0.5 * (centroid[i] + s.pts[hi][i]);
      const double fc = eval(trial2);
      if (fc < std::min(fr, s.vals[hi])) {
        s.pts[hi] = trial2;
        s.vals[hi] = fc;
        continue;
      }
      for (std::size_t k = 0; k <= n; ++k) {
        if (k == lo) continue;
        for (std::size_t i = 0; i < n; ++i) s.pts[k][i] = 0.5 * (s.pts[k][i] + s.pts[lo][i]);
        s.vals[k] = eval(s.pts[k]);
      }
    }
    const auto it = std::min_element(s.vals.begin(), s.vals.end());
    if (*it < best.value) {
      best.value = *it;
      best.x = s.pts[static_cast<std::size_t>(it - s.vals.begin())];
    }
  }
  return best;
}

OptimizeResult multistart_minimize(const Objective& f,
                                   const std::function<std::vector<double>(std::mt19937_64&)>& sample,
                                   std::mt19937_64& rng, const MultiStartOptions& opts,
                                   const std::vector<std::vector<double>>& seeds) {
  OptimizeResult best;
  best.value = std::numeric_limits<double>::infinity();
  int agree = 0;
  const int runs = std::max(opts.restarts, 1);
  for (int r = 0; r < runs; ++r) {
    auto x0 = static_cast<std::size_t>(r) < seeds.size() ? seeds[static_cast<std::size_t>(r)]
                                                         : sample(rng);
    auto res = nelder_mead(f, std::move(x0), opts.local);
    const std::size_t evals = best.evaluations + res.evaluations;
    if (res.value < best.value - opts.agree_tol) {
      best = std::move(res);
      agree = 1;
    } else {
      if (res.value < best.value) best = std::move(res);
      ++agree;
    }
    best.evaluations = evals;
    if (opts.agreeing > 0 && agree >= opts.agreeing) break;
  }
  return best;
}

}  // namespace monogamy
