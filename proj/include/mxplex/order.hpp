#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace mxplex {

/// Community counts for a multiplex factorization.
///
/// `per_layer[l]` is the total number of communities seen in layer l, of
/// which `private_counts[l]` are private; the remaining
/// per_layer[l] - private_counts[l] are common communities present there.
struct ModelOrder {
  std::vector<std::size_t> per_layer;
  std::size_t common = 0;
  std::vector<std::size_t> private_counts;
  /// Dendrogram stop index (number of merges below the cut); 0 when the
  /// order was given rather than estimated.
  std::size_t cut = 0;

  std::size_t layer_count() const { return private_counts.size(); }
  /// Number of common communities present in layer l.
  std::size_t common_present(std::size_t l) const;

  /// Order with every common community present in every layer.
  static ModelOrder all_common(std::size_t common, std::vector<std::size_t> private_counts);

  /// Throws DimensionError when counts are inconsistent or the order is
  /// empty for some layer.
  void validate(std::size_t layers) const;

  /// `k_l=[..] k_c=.. k_p=[..] cut=..`
  std::string record() const;

  friend bool operator==(const ModelOrder&, const ModelOrder&) = default;
};

}  // namespace mxplex
