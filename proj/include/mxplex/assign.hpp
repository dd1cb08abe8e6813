#pragma once

// Turning converged factors into labels: which common communities are
// present in each layer, then one community per node per layer.

#include "mxplex/factorize.hpp"
#include "mxplex/multiplex.hpp"
#include "mxplex/order.hpp"

#include <cstddef>
#include <vector>

namespace mxplex {

enum class PresenceRule {
  kCorrected,  // within / boundary density, top k_l - k_p columns
  kLegacy,     // boundary / within with swapped normalizers, top k_p columns
};

struct CommonPresence {
  /// Per layer: indices of the columns of H judged present, in descending
  /// score order.
  std::vector<std::vector<std::size_t>> columns;
  /// Per layer: density score of every common community.
  std::vector<std::vector<double>> scores;

  /// layer x common 0/1 table.
  std::vector<std::vector<int>> matrix(std::size_t common) const;
};

/// Density ratio guard.
inline constexpr double kScoreGuard = 1e-12;

CommonPresence common_presence(const MultiplexNetwork& net, const FactorSet& f,
                               const ModelOrder& order,
                               PresenceRule rule = PresenceRule::kCorrected);

/// Per-layer labels under the global id scheme: common communities take ids
/// 0..k_c-1 and layer l's private communities follow at
/// k_c + sum_{m<l} k_p[m].
struct LabeledPartition {
  std::vector<NodeLabels> layers;
  std::size_t common = 0;
  std::vector<std::size_t> private_counts;

  std::size_t private_offset(std::size_t l) const;
  /// All layers concatenated.
  NodeLabels pooled() const;
};

LabeledPartition final_labels(const FactorSet& f, const CommonPresence& presence,
                              const ModelOrder& order);

}  // namespace mxplex
