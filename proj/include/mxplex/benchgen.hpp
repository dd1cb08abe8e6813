#pragma once

// Planted-partition multiplex benchmarks with common and private
// communities, and population block models with their exact factors.

#include "mxplex/factorize.hpp"
#include "mxplex/multiplex.hpp"
#include "mxplex/numerics.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace mxplex {

struct BenchmarkSpec {
  std::size_t n = 256;
  std::size_t layers = 3;
  std::size_t common = 2;
  /// common x layers; row j lists the layers holding common community j.
  /// Empty means every common community is in every layer.
  std::vector<std::vector<bool>> presence;
  /// Nodes reserved for common communities; defaults to
  /// n * k_c / (k_c + max k_p).
  std::optional<std::size_t> common_nodes;
  /// Private community count per layer (one value broadcasts).
  std::vector<std::size_t> private_counts{2};
  double mu = 0.1;
  double p1 = 1.0;
  double avg_degree = 16.0;
  /// Optional per-node expected-degree multipliers; empty means 1.
  std::vector<double> degree_propensity;

  std::vector<std::size_t> private_counts_per_layer() const;
  std::vector<std::vector<bool>> presence_matrix() const;
  std::size_t common_node_count() const;
  /// Throws DimensionError describing the first violated constraint.
  void validate() const;
};

struct Benchmark {
  MultiplexNetwork network;
  /// Per-layer labels in the global id scheme.
  std::vector<NodeLabels> truth;
};

/// Stream use: derive(0) picks the common nodes, derive(1 + l) assigns
/// layer l, derive(1 + L + l) samples layer l's edges.
Benchmark generate(const BenchmarkSpec& spec, const RandomStream& stream);

/// E(A_l) = Z_l Theta_l Z_l^T with the first k_c columns of every Z_l
/// shared across layers.
struct PopulationSBM {
  std::size_t common = 0;
  std::vector<Matrix> memberships;  // Z_l, n x (k_c + k_p[l]), one-hot rows
  std::vector<Matrix> blocks;       // Theta_l, block diagonal

  std::vector<std::size_t> private_counts() const;
  void validate() const;
};

/// Exact expectation layers; the diagonal is kept.
MultiplexNetwork population_adjacency(const PopulationSBM& p);

/// Z_l (Z_l^T Z_l)^{-1/2} and (Z_l^T Z_l)^{1/2} Theta_l (Z_l^T Z_l)^{1/2}
/// split into the common and private blocks.
FactorSet analytic_factors(const PopulationSBM& p);

/// Random population model: n_c = n k_c / (k_c + max k_p) common nodes split
/// evenly, the rest re-split per layer into private blocks; block entries
/// uniform in (0, 1). Every private count must be positive unless all are 0.
PopulationSBM random_population_sbm(RandomStream& stream, std::size_t n, std::size_t common,
                                    const std::vector<std::size_t>& private_counts);

}  // namespace mxplex
