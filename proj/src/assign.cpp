#include "mxplex/assign.hpp"

#include <algorithm>
#include <numeric>

namespace mxplex {

std::vector<std::vector<int>> CommonPresence::matrix(std::size_t common) const {
  std::vector<std::vector<int>> out(columns.size(), std::vector<int>(common, 0));
  for (std::size_t l = 0; l < columns.size(); ++l) {
    for (std::size_t j : columns[l]) out[l][j] = 1;
  }
  return out;
}

namespace {

double presence_score(const Matrix& a, const std::vector<int>& member, double total,
                      PresenceRule rule) {
  const auto n = static_cast<double>(a.rows());
  std::vector<Eigen::Index> nodes;
  for (std::size_t i = 0; i < member.size(); ++i) {
    if (member[i]) nodes.push_back(static_cast<Eigen::Index>(i));
  }
  const auto m = static_cast<double>(nodes.size());
  if (nodes.size() <= 1) return 0.0;
  double within = 0.0;  // sum of B0
  for (Eigen::Index v : nodes) {
    for (Eigen::Index w : nodes) within += a(v, w);
  }
  const double outside = total - within;  // sum of B1
  if (rule == PresenceRule::kCorrected) {
    const double boundary = m < n ? outside / (m * (n - m)) : 0.0;
    return (within / (m * (m - 1.0))) / (boundary + kScoreGuard);
  }
  const double denom = m < n ? within / (m * (n - m)) : 0.0;
  return (outside / (m * (m - 1.0))) / (denom + kScoreGuard);
}

}  // namespace

CommonPresence common_presence(const MultiplexNetwork& net, const FactorSet& f,
                               const ModelOrder& order, PresenceRule rule) {
  f.check_shapes(net);
  order.validate(net.layer_count());
  const std::size_t kc = static_cast<std::size_t>(f.common.cols());
  if (order.common != kc) {
    throw DimensionError("common_presence: order has k_c=" + std::to_string(order.common) +
                         " but H has " + std::to_string(kc) + " columns");
  }
  CommonPresence out;
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    const Matrix& hl = f.private_members[l];
    Matrix joined(f.common.rows(), f.common.cols() + hl.cols());
    joined << f.common, hl;
    const std::vector<int> idx = row_argmax(joined);
    const Matrix& a = net.layer(l);
    const double total = a.sum();

    std::vector<double> scores(kc, 0.0);
    for (std::size_t j = 0; j < kc; ++j) {
      std::vector<int> member(idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i) member[i] = idx[i] == static_cast<int>(j);
      scores[j] = presence_score(a, member, total, rule);
    }
    std::vector<std::size_t> ranked(kc);
    std::iota(ranked.begin(), ranked.end(), 0);
    std::stable_sort(ranked.begin(), ranked.end(),
                     [&](std::size_t x, std::size_t y) { return scores[x] > scores[y]; });
    const std::size_t take = rule == PresenceRule::kCorrected
                                 ? order.common_present(l)
                                 : std::min(order.private_counts[l], kc);
    ranked.resize(take);
    out.columns.push_back(std::move(ranked));
    out.scores.push_back(std::move(scores));
  }
  return out;
}

std::size_t LabeledPartition::private_offset(std::size_t l) const {
  std::size_t offset = common;
  for (std::size_t m = 0; m < l; ++m) offset += private_counts.at(m);
  return offset;
}

NodeLabels LabeledPartition::pooled() const {
  NodeLabels out;
  for (const auto& layer : layers) {
    out.labels.insert(out.labels.end(), layer.labels.begin(), layer.labels.end());
  }
  return out;
}

LabeledPartition final_labels(const FactorSet& f, const CommonPresence& presence,
                              const ModelOrder& order) {
  LabeledPartition out;
  out.common = order.common;
  out.private_counts = order.private_counts;
  const Eigen::Index n = f.common.rows();
  for (std::size_t l = 0; l < f.layer_count(); ++l) {
    const Matrix& hl = f.private_members[l];
    std::vector<std::size_t> cols = presence.columns.at(l);
    std::sort(cols.begin(), cols.end());
    const std::size_t offset = out.private_offset(l);
    NodeLabels labels;
    labels.labels.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      int best_common = -1;
      double common_value = 0.0;
      for (std::size_t j : cols) {
        const double v = f.common(i, static_cast<Eigen::Index>(j));
        if (best_common < 0 || v > common_value) {
          best_common = static_cast<int>(j);
          common_value = v;
        }
      }
      int best_private = -1;
      double private_value = 0.0;
      for (Eigen::Index j = 0; j < hl.cols(); ++j) {
        if (best_private < 0 || hl(i, j) > private_value) {
          best_private = static_cast<int>(j);
          private_value = hl(i, j);
        }
      }
      int label;
      if (best_private < 0) {
        label = std::max(best_common, 0);
      } else if (best_common >= 0 && common_value > private_value) {
        label = best_common;
      } else {
        label = static_cast<int>(offset) + best_private;
      }
      labels.labels[static_cast<std::size_t>(i)] = label;
    }
    out.layers.push_back(std::move(labels));
  }
  return out;
}

}  // namespace mxplex
