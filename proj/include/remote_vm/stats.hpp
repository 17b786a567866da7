#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "remote_vm/error.hpp"

namespace remote_vm {

struct Summary {
  std::size_t count = 0;
  double mean = 0;
  double ci95_low = 0;
  double ci95_high = 0;
  double min = 0;
  double max = 0;
};

/// Mean with a two-sided 95% Student-t interval on k-1 degrees of freedom.
/// A single value gives a degenerate interval.
inline Summary aggregate(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorKind::empty_sample, "aggregate of no values");
  Summary s;
  s.count = values.size();
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(s.count);
  auto [lo, hi] = std::ranges::minmax(values);
  s.min = lo;
  s.max = hi;
  s.ci95_low = s.ci95_high = s.mean;
  if (s.count > 1) {
    double ss = 0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    double sd = std::sqrt(ss / static_cast<double>(s.count - 1));
    if (sd > 0) {
      boost::math::students_t dist(static_cast<double>(s.count - 1));
      double half = boost::math::quantile(dist, 0.975) * sd / std::sqrt(static_cast<double>(s.count));
      s.ci95_low = s.mean - half;
      s.ci95_high = s.mean + half;
    }
  }
  return s;
}

namespace detail {

// 1-based ranks, ties get their average rank
inline std::vector<double> average_ranks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::ranges::stable_sort(order, {}, [&](std::size_t i) { return xs[i]; });
  std::vector<double> ranks(xs.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

}  // namespace detail

/// Spearman rank correlation (Pearson on average ranks). Returns 0 when either
/// sample is constant.
inline double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw Error(ErrorKind::invalid_argument, "spearman needs paired samples");
  auto rx = detail::average_ranks(xs);
  auto ry = detail::average_ranks(ys);
  double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / static_cast<double>(rx.size());
  double my = std::accumulate(ry.begin(), ry.end(), 0.0) / static_cast<double>(ry.size());
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace remote_vm
