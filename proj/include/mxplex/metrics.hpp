#pragma once

#include "mxplex/multiplex.hpp"
#include "mxplex/numerics.hpp"

#include <cstddef>
#include <vector>

namespace mxplex {

/// Contingency counts between two labelings of the same nodes. Rows follow
/// the distinct labels of `a` in ascending order, columns those of `b`.
struct ConfusionTable {
  std::vector<int> row_labels;
  std::vector<int> col_labels;
  std::vector<std::vector<std::size_t>> counts;
  std::vector<std::size_t> row_totals;
  std::vector<std::size_t> col_totals;
  std::size_t total = 0;
};

ConfusionTable confusion(const NodeLabels& a, const NodeLabels& b);

/// Normalized mutual information, 2 I(a;b) / (H(a) + H(b)). Two single-cluster
/// partitions score 1; exactly one single-cluster partition scores 0.
double nmi(const NodeLabels& a, const NodeLabels& b);

/// Per-layer NMI averaged over layers. A single reference partition is
/// compared against every layer. With `pooled`, the concatenated labels
/// are scored once instead.
double multiplex_nmi(const std::vector<NodeLabels>& found, const std::vector<NodeLabels>& truth,
                     bool pooled = false);

/// sum over communities c of (2 in(c) - out(c)) / |c|, where in(c) sums
/// each internal pair once and out(c) sums the weight leaving c.
double modularity_density(const Matrix& a, const NodeLabels& labels);

/// Unweighted mean of per-layer modularity density.
double multiplex_modularity_density(const MultiplexNetwork& net,
                                    const std::vector<NodeLabels>& labels);

}  // namespace mxplex
