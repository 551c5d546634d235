#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace ergm {

inline double sample_mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("sample_mean: empty input");
  double s = 0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

// Unbiased (n-1) sample variance.
inline double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) throw std::invalid_argument("sample_variance: need at least 2 values");
  const double m = sample_mean(xs);
  double s = 0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

inline double sample_sd(std::span<const double> xs) { return std::sqrt(sample_variance(xs)); }

// Standard error of the mean via batch means; robust to autocorrelated
// MCMC output. With batches == 0, uses about sqrt(n) batches.
inline double batch_means_se(std::span<const double> xs, int batches = 0) {
  const auto n = xs.size();
  if (n < 4) throw std::invalid_argument("batch_means_se: need at least 4 values");
  if (batches <= 1) batches = static_cast<int>(std::sqrt(static_cast<double>(n)));
  if (batches < 2) batches = 2;
  const std::size_t len = n / static_cast<std::size_t>(batches);
  std::vector<double> means;
  means.reserve(static_cast<std::size_t>(batches));
  for (int b = 0; b < batches; ++b) {
    double s = 0;
    for (std::size_t i = static_cast<std::size_t>(b) * len; i < static_cast<std::size_t>(b + 1) * len; ++i)
      s += xs[i];
    means.push_back(s / static_cast<double>(len));
  }
  return sample_sd(means) / std::sqrt(static_cast<double>(batches));
}

struct LineFit {
  double slope = 0;
  double intercept = 0;
};

inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line: bad input");
  const double mx = sample_mean(x), my = sample_mean(y);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) throw std::invalid_argument("fit_line: degenerate x");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  return f;
}

}  // namespace ergm
