#pragma once

#include <span>
#include <string>
#include <vector>

#include "ergm/graph_state.hpp"
#include "ergm/hom_count.hpp"
#include "ergm/motif.hpp"

namespace ergm {

enum class ObservableKind {
  EdgeCount,
  Degree,
  HomCount,
  RootedHomCount,
  VertexHomCount,
  HajekResidualGlobal,
  HajekResidualRooted,
  RStat,
};

// A named scalar function of a graph, evaluated per retained sample.
class Observable {
 public:
  static Observable edge_count();
  static Observable degree(int v);
  static Observable hom_count(MotifGraph g);
  static Observable rooted_hom_count(MotifGraph g, int rho, int v);
  static Observable vertex_hom_count(MotifGraph g, int v);
  static Observable hajek_global(MotifGraph g, double p);
  static Observable hajek_rooted(MotifGraph g, int rho, int v, double p);
  static Observable r_stat(MotifGraph g, EdgeId e);

  ObservableKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  double evaluate(const GraphState& x) const;
  void validate(int n) const;  // parameter ranges for the configured n

 private:
  ObservableKind kind_ = ObservableKind::EdgeCount;
  MotifGraph motif_;
  int rho_ = -1;
  int vertex_ = -1;
  EdgeId edge_{0, 1};
  double p_ = 0.5;
  std::string name_;
};

// One row per retained sample, one column per observable.
struct SampleBatch {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  int n = 0;
  double p_star = 0;

  std::vector<double> column(std::size_t j) const;
};

// N_G(x) - 2 e p^{e-1} n^{v-2} E(x).
double hajek_residual_global(const GraphState& x, const MotifGraph& g, double p);

// N_G^{rho->v}(x) - d_rho p^{e-1} n^{v-2} deg_v(x).
double hajek_residual_rooted(const GraphState& x, const MotifGraph& g, int rho, int v, double p);

// (x_i - mean(x)) / sqrt(proxy). Centers at the batch empirical mean. Sets
// *degenerate when the sample variance falls below 1e-12.
std::vector<double> standardize(std::span<const double> values, double proxy,
                                bool* degenerate = nullptr);

double normal_cdf(double s);
double normal_pdf(double s);
double normal_quantile(double u);

// sup_s |ECDF(s) - Phi(s)|, evaluated at both one-sided limits of each jump.
double kolmogorov_distance_to_normal(std::span<const double> z);

// Exact 1-D transport cost between the empirical measure and Phi:
// integral of |ECDF - Phi| with analytic Gaussian segments.
double wasserstein_distance_to_normal(std::span<const double> z);

}  // namespace ergm
