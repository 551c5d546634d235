#include "ergm/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ergm/stats.hpp"

namespace ergm {

Observable Observable::edge_count() {
  Observable o;
  o.kind_ = ObservableKind::EdgeCount;
  o.name_ = "edge_count";
  return o;
}

Observable Observable::degree(int v) {
  Observable o;
  o.kind_ = ObservableKind::Degree;
  o.vertex_ = v;
  o.name_ = "degree_" + std::to_string(v);
  return o;
}

Observable Observable::hom_count(MotifGraph g) {
  Observable o;
  o.kind_ = ObservableKind::HomCount;
  o.name_ = "hom_" + g.name;
  o.motif_ = std::move(g);
  return o;
}

Observable Observable::rooted_hom_count(MotifGraph g, int rho, int v) {
  Observable o;
  o.kind_ = ObservableKind::RootedHomCount;
  o.rho_ = rho;
  o.vertex_ = v;
  o.name_ = "hom_" + g.name + "_" + std::to_string(rho) + "to" + std::to_string(v);
  o.motif_ = std::move(g);
  return o;
}

Observable Observable::vertex_hom_count(MotifGraph g, int v) {
  Observable o;
  o.kind_ = ObservableKind::VertexHomCount;
  o.vertex_ = v;
  o.name_ = "hom_" + g.name + "_at" + std::to_string(v);
  o.motif_ = std::move(g);
  return o;
}

Observable Observable::hajek_global(MotifGraph g, double p) {
  Observable o;
  o.kind_ = ObservableKind::HajekResidualGlobal;
  o.p_ = p;
  o.name_ = "hajek_" + g.name;
  o.motif_ = std::move(g);
  return o;
}

Observable Observable::hajek_rooted(MotifGraph g, int rho, int v, double p) {
  Observable o;
  o.kind_ = ObservableKind::HajekResidualRooted;
  o.rho_ = rho;
  o.vertex_ = v;
  o.p_ = p;
  o.name_ = "hajek_" + g.name + "_" + std::to_string(rho) + "to" + std::to_string(v);
  o.motif_ = std::move(g);
  return o;
}

Observable Observable::r_stat(MotifGraph g, EdgeId e) {
  Observable o;
  o.kind_ = ObservableKind::RStat;
  o.edge_ = e;
  o.name_ = "r_" + g.name + "_" + std::to_string(e.u) + "_" + std::to_string(e.w);
  o.motif_ = std::move(g);
  return o;
}

double Observable::evaluate(const GraphState& x) const {
  switch (kind_) {
    case ObservableKind::EdgeCount:
      return static_cast<double>(x.edge_count());
    case ObservableKind::Degree:
      return static_cast<double>(x.degree(vertex_));
    case ObservableKind::HomCount:
      return static_cast<double>(count_hom(x, motif_));
    case ObservableKind::RootedHomCount:
      return static_cast<double>(count_hom_rooted(x, motif_, rho_, vertex_));
    case ObservableKind::VertexHomCount:
      return static_cast<double>(count_hom_at_vertex(x, motif_, vertex_));
    case ObservableKind::HajekResidualGlobal:
      return hajek_residual_global(x, motif_, p_);
    case ObservableKind::HajekResidualRooted:
      return hajek_residual_rooted(x, motif_, rho_, vertex_, p_);
    case ObservableKind::RStat:
      return r_statistic(x, motif_, edge_).value;
  }
  throw std::logic_error("Observable: unknown kind");
}

void Observable::validate(int n) const {
  switch (kind_) {
    case ObservableKind::EdgeCount:
      return;
    case ObservableKind::Degree:
      if (vertex_ < 0 || vertex_ >= n) throw std::invalid_argument(name_ + ": vertex out of range");
      return;
    case ObservableKind::HomCount:
      return;
    case ObservableKind::RootedHomCount:
    case ObservableKind::HajekResidualRooted:
      if (rho_ < 0 || rho_ >= motif_.vertex_count)
        throw std::invalid_argument(name_ + ": motif vertex out of range");
      [[fallthrough]];
    case ObservableKind::VertexHomCount:
      if (vertex_ < 0 || vertex_ >= n) throw std::invalid_argument(name_ + ": vertex out of range");
      return;
    case ObservableKind::HajekResidualGlobal:
      if (!(p_ > 0 && p_ < 1)) throw std::invalid_argument(name_ + ": p must lie in (0,1)");
      return;
    case ObservableKind::RStat:
      if (edge_.u < 0 || edge_.w >= n || edge_.u >= edge_.w)
        throw std::invalid_argument(name_ + ": edge out of range");
      return;
  }
}

std::vector<double> SampleBatch::column(std::size_t j) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.at(j));
  return out;
}

double hajek_residual_global(const GraphState& x, const MotifGraph& g, double p) {
  const double scale = 2.0 * g.edge_count() * std::pow(p, g.edge_count() - 1) *
                       std::pow(x.n(), g.vertex_count - 2);
  return static_cast<double>(count_hom(x, g)) - scale * static_cast<double>(x.edge_count());
}

double hajek_residual_rooted(const GraphState& x, const MotifGraph& g, int rho, int v, double p) {
  const double scale = g.degree[static_cast<std::size_t>(rho)] *
                       std::pow(p, g.edge_count() - 1) * std::pow(x.n(), g.vertex_count - 2);
  return static_cast<double>(count_hom_rooted(x, g, rho, v)) -
         scale * static_cast<double>(x.degree(v));
}

std::vector<double> standardize(std::span<const double> values, double proxy, bool* degenerate) {
  if (values.empty()) throw std::invalid_argument("standardize: empty batch");
  if (!(proxy > 0)) throw std::domain_error("standardize: proxy must be positive");
  const double m = sample_mean(values);
  if (degenerate) {
    double var = 0;
    for (double v : values) var += (v - m) * (v - m);
    var /= std::max<std::size_t>(values.size() - 1, 1);
    *degenerate = var < 1e-12;
  }
  const double sd = std::sqrt(proxy);
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) out.push_back((v - m) / sd);
  return out;
}

double normal_cdf(double s) { return 0.5 * std::erfc(-s / std::sqrt(2.0)); }

double normal_pdf(double s) { return std::exp(-0.5 * s * s) / std::sqrt(2.0 * M_PI); }

namespace {

// Acklam's rational approximation, polished by two Newton steps against the
// erfc-based CDF; absolute error well below 1e-13 on (0, 1).
double quantile_acklam(double u) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1 - plow;
  double x;
  if (u < plow) {
    const double q = std::sqrt(-2 * std::log(u));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (u <= phigh) {
    const double q = u - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  } else {
    const double q = std::sqrt(-2 * std::log(1 - u));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  for (int it = 0; it < 2; ++it) {
    const double err = normal_cdf(x) - u;
    x -= err / normal_pdf(x);
  }
  return x;
}

// Antiderivative of Phi: s Phi(s) + phi(s).
double cdf_integral(double s) { return s * normal_cdf(s) + normal_pdf(s); }

}  // namespace

double normal_quantile(double u) {
  if (!(u > 0 && u < 1)) throw std::domain_error("normal_quantile: u must lie in (0, 1)");
  return quantile_acklam(u);
}

double kolmogorov_distance_to_normal(std::span<const double> z) {
  if (z.empty()) throw std::invalid_argument("kolmogorov_distance_to_normal: empty sample");
  std::vector<double> zs(z.begin(), z.end());
  std::sort(zs.begin(), zs.end());
  const double m = static_cast<double>(zs.size());
  double sup = 0;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const double phi = normal_cdf(zs[i]);
    sup = std::max(sup, std::abs(static_cast<double>(i) / m - phi));
    sup = std::max(sup, std::abs(static_cast<double>(i + 1) / m - phi));
  }
  return sup;
}

double wasserstein_distance_to_normal(std::span<const double> z) {
  if (z.empty()) throw std::invalid_argument("wasserstein_distance_to_normal: empty sample");
  std::vector<double> zs(z.begin(), z.end());
  std::sort(zs.begin(), zs.end());
  const double m = static_cast<double>(zs.size());
  // left tail: ECDF is 0, integral of Phi up to the first point
  double total = cdf_integral(zs.front());
  for (std::size_t i = 0; i + 1 < zs.size(); ++i) {
    const double a = zs[i], b = zs[i + 1];
    if (a == b) continue;
    const double c = static_cast<double>(i + 1) / m;
    const double fa = normal_cdf(a), fb = normal_cdf(b);
    if (fb <= c) {
      total += c * (b - a) - (cdf_integral(b) - cdf_integral(a));
    } else if (fa >= c) {
      total += (cdf_integral(b) - cdf_integral(a)) - c * (b - a);
    } else {
      const double s = std::clamp(normal_quantile(c), a, b);
      total += c * (s - a) - (cdf_integral(s) - cdf_integral(a));
      total += (cdf_integral(b) - cdf_integral(s)) - c * (b - s);
    }
  }
  // right tail: integral of 1 - Phi beyond the last point
  const double zl = zs.back();
  total += normal_pdf(zl) - zl * (0.5 * std::erfc(zl / std::sqrt(2.0)));
  return total;
}

}  // namespace ergm
