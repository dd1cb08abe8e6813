#pragma once

#include "mxplex/numerics.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mxplex {

/// Input file that cannot be opened or read.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. The message carries the path and line number.
class ParseError : public InputError {
 public:
  using InputError::InputError;
};

/// n nodes shared by L symmetric, nonnegative layer adjacency matrices.
///
/// Sampled and loaded networks have a zero diagonal. Expectation networks
/// built from a population SBM keep their diagonal, which is why the check is
/// switchable.
class MultiplexNetwork {
 public:
  enum class Diagonal { kZero, kAllowed };

  MultiplexNetwork() = default;
  explicit MultiplexNetwork(std::vector<Matrix> layers, Diagonal diagonal = Diagonal::kZero);

  std::size_t node_count() const { return n_; }
  std::size_t layer_count() const { return layers_.size(); }
  const Matrix& layer(std::size_t l) const { return layers_.at(l); }
  const std::vector<Matrix>& layers() const { return layers_; }

  friend bool operator==(const MultiplexNetwork& a, const MultiplexNetwork& b);

 private:
  std::size_t n_ = 0;
  std::vector<Matrix> layers_;
};

/// Node -> community id.
struct NodeLabels {
  std::vector<int> labels;

  std::size_t size() const { return labels.size(); }
  int operator[](std::size_t i) const { return labels[i]; }
  /// Number of distinct ids.
  std::size_t community_count() const;
  /// Relabels to 0..K-1 in order of first appearance.
  NodeLabels canonical() const;
  friend bool operator==(const NodeLabels&, const NodeLabels&) = default;
};

struct LoadOptions {
  std::optional<std::size_t> n_hint;
  /// Divide every layer by its largest weight so entries land in [0, 1].
  bool normalize_max = false;
};

/// Reads the `layer u v [weight]` edge-list format. Edges listed in both
/// directions merge with max; self-loops are dropped with a warning.
MultiplexNetwork load_multiplex(const std::filesystem::path& path, const LoadOptions& options = {},
                                std::vector<std::string>* warnings = nullptr);

/// Writes a `%mxplex` header and the upper triangle of every layer with
/// weights at 17 significant digits, so loading reproduces the network.
void save_multiplex(const std::filesystem::path& path, const MultiplexNetwork& net);

/// `node_id community_id` per line. Node ids must cover 0..n-1.
NodeLabels load_labels(const std::filesystem::path& path);
void save_labels(const std::filesystem::path& path, const NodeLabels& labels);

/// Sidecar for string-labelled datasets: `node_id name` per line.
std::vector<std::string> load_name_map(const std::filesystem::path& path);

/// Diagonal matrix of row sums.
Matrix degree_matrix(const Matrix& a);

/// D^{-1/2} (D - A) D^{-1/2}. Isolated nodes get an all-zero row and column.
Matrix normalized_laplacian(const Matrix& a);

/// Entrywise mean of the layers.
Matrix aggregate_average(const MultiplexNetwork& net);

/// Mean off-diagonal entry, i.e. the edge density of a binary layer.
double edge_density(const Matrix& a);

}  // namespace mxplex
