#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ergm {

// A fixed small graph whose homomorphism density enters the Hamiltonian.
// Vertices are 0..vertex_count-1; edges are stored as (lo, hi) pairs.
struct MotifGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> degree;
  bool is_forest = false;
  std::string name;

  int edge_count() const { return static_cast<int>(edges.size()); }

  // Validates (simple graph, indices in range, at least one edge), normalizes
  // edge orientation, and fills the degree table and forest flag.
  static MotifGraph from_edges(int vertex_count, std::vector<std::pair<int, int>> edges,
                               std::string name = {});
};

MotifGraph single_edge();
MotifGraph wedge();  // path on 3 vertices
MotifGraph triangle();
MotifGraph path_graph(int vertices);
MotifGraph star_graph(int leaves);
MotifGraph cycle_graph(int vertices);
MotifGraph complete_graph(int vertices);

// One representative per isomorphism class of connected graphs on
// 2..max_vertices vertices (max_vertices <= 6).
std::vector<MotifGraph> connected_graph_catalog(int max_vertices);

// Ferromagnetic model: motifs G_0..G_K with G_0 a single edge, parameters
// beta_0..beta_K with beta_j >= 0 for j >= 1.
struct ErgmSpec {
  std::vector<MotifGraph> motifs;
  std::vector<double> beta;

  static ErgmSpec make(std::vector<MotifGraph> motifs, std::vector<double> beta);

  int motif_count() const { return static_cast<int>(motifs.size()); }
  bool all_forests() const;
  int max_motif_vertices() const;
};

}  // namespace ergm
