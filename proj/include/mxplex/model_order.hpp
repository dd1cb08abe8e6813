#pragma once

// Estimation of per-layer, common and private community counts: a
// null-calibrated eigengap per layer, single-layer embeddings, and a
// dendrogram cut over the stacked embedding rows.

#include "mxplex/factorize.hpp"
#include "mxplex/multiplex.hpp"
#include "mxplex/numerics.hpp"
#include "mxplex/order.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace mxplex {

/// Merge log of an agglomerative clustering over m points. Leaves carry ids
/// 1..m; the cluster created by merge i (1-based) gets id m + i.
struct Linkage {
  struct Merge {
    std::size_t a;
    std::size_t b;
    double distance;
  };
  std::size_t leaf_count = 0;
  std::vector<Merge> merges;
};

enum class LinkageMethod { kSingle, kAverage, kComplete };
enum class CutRule { kProse, kLiteral };

LinkageMethod parse_linkage_method(const std::string& name);
CutRule parse_cut_rule(const std::string& name);

/// Spectrum used by the eigengap rule: |1 - lambda| over the eigenvalues of
/// the normalized Laplacian (the normalized-adjacency spectrum), sorted
/// descending. Connected components show up as leading ones.
std::vector<double> gap_spectrum(const Matrix& a);

/// 0.95 quantile over `trials` Erdos-Renyi G(n, density) graphs of the
/// largest gap at position i >= 2 of gap_spectrum. Trial t samples from
/// stream.derive(t).
double null_threshold(std::size_t n, double density, const RandomStream& stream,
                      std::size_t trials = 50, double q = 0.95);

/// Position k (1-based) of the first largest gap of gap_spectrum(a), or 1
/// when no gap exceeds delta.
std::size_t estimate_k_layer(const Matrix& a, double delta);

struct EmbedOptions {
  /// Scale every row of X to unit Euclidean norm.
  bool normalize_rows = true;
  /// Single-layer fits per layer; the lowest final residual is kept.
  std::size_t fits = 5;
  RunOptions run;
};

/// X = [U_1, ..., U_L]^T, m x n with m = sum k_l. Fit r of every layer draws
/// from stream.derive(r), so identical layers get identical rows.
Matrix embed_layers(const MultiplexNetwork& net, const std::vector<std::size_t>& k_l,
                    const RandomStream& stream, const EmbedOptions& options = {});

/// Agglomerative clustering of the rows of x under Euclidean distance.
/// Ties go to the lowest (row, column) pair of the active-cluster table.
Linkage linkage(const Matrix& x, LinkageMethod method = LinkageMethod::kSingle);

/// Reads k_c and k_p from the merge log. Requires m = sum k_l >= 2.
ModelOrder count_common(const Linkage& f, const std::vector<std::size_t>& k_l,
                        CutRule rule = CutRule::kProse);

struct OrderOptions {
  std::size_t null_trials = 50;
  double null_quantile = 0.95;
  LinkageMethod method = LinkageMethod::kSingle;
  CutRule rule = CutRule::kProse;
  EmbedOptions embed;
};

struct OrderReport {
  ModelOrder order;
  std::vector<double> thresholds;  // delta per layer
  std::vector<double> densities;
  Linkage merges;
};

/// Full estimation. Layer l's null draws from stream.derive(l); the
/// embedding uses stream.derive(L).
OrderReport estimate_order(const MultiplexNetwork& net, const RandomStream& stream,
                           const OrderOptions& options = {});

}  // namespace mxplex
