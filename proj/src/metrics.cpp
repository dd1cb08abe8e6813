#include "mxplex/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace mxplex {

namespace {

std::map<int, std::size_t> index_labels(const NodeLabels& x) {
  std::map<int, std::size_t> ids;
  for (int v : x.labels) ids.emplace(v, 0);
  std::size_t k = 0;
  for (auto& [label, slot] : ids) slot = k++;
  return ids;
}

}  // namespace

ConfusionTable confusion(const NodeLabels& a, const NodeLabels& b) {
  if (a.size() != b.size()) {
    throw DimensionError("confusion: label vectors have lengths " + std::to_string(a.size()) +
                         " and " + std::to_string(b.size()));
  }
  const auto rows = index_labels(a);
  const auto cols = index_labels(b);
  ConfusionTable t;
  for (const auto& [label, slot] : rows) t.row_labels.push_back(label);
  for (const auto& [label, slot] : cols) t.col_labels.push_back(label);
  t.counts.assign(rows.size(), std::vector<std::size_t>(cols.size(), 0));
  t.row_totals.assign(rows.size(), 0);
  t.col_totals.assign(cols.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t r = rows.at(a[i]);
    const std::size_t c = cols.at(b[i]);
    ++t.counts[r][c];
    ++t.row_totals[r];
    ++t.col_totals[c];
  }
  t.total = a.size();
  return t;
}

double nmi(const NodeLabels& a, const NodeLabels& b) {
  if (a.size() == 0) throw DimensionError("nmi: empty label vectors");
  const ConfusionTable t = confusion(a, b);
  const bool a_trivial = t.row_labels.size() == 1;
  const bool b_trivial = t.col_labels.size() == 1;
  if (a_trivial && b_trivial) return 1.0;
  if (a_trivial || b_trivial) return 0.0;

  const auto n = static_cast<double>(t.total);
  double num = 0.0;
  for (std::size_t i = 0; i < t.counts.size(); ++i) {
    for (std::size_t j = 0; j < t.counts[i].size(); ++j) {
      const auto nij = static_cast<double>(t.counts[i][j]);
      if (nij == 0.0) continue;
      num += nij * std::log(nij * n / (static_cast<double>(t.row_totals[i]) *
                                       static_cast<double>(t.col_totals[j])));
    }
  }
  double den = 0.0;
  for (std::size_t r : t.row_totals) den += static_cast<double>(r) * std::log(static_cast<double>(r) / n);
  for (std::size_t c : t.col_totals) den += static_cast<double>(c) * std::log(static_cast<double>(c) / n);
  return std::clamp(-2.0 * num / den, 0.0, 1.0);
}

double multiplex_nmi(const std::vector<NodeLabels>& found, const std::vector<NodeLabels>& truth,
                     bool pooled) {
  if (found.empty() || truth.empty()) throw DimensionError("multiplex_nmi: no layers");
  if (truth.size() != 1 && truth.size() != found.size()) {
    throw DimensionError("multiplex_nmi: " + std::to_string(found.size()) + " layers against " +
                         std::to_string(truth.size()) + " reference layers");
  }
  auto reference = [&](std::size_t l) -> const NodeLabels& {
    return truth.size() == 1 ? truth[0] : truth[l];
  };
  if (pooled) {
    NodeLabels x, y;
    for (std::size_t l = 0; l < found.size(); ++l) {
      x.labels.insert(x.labels.end(), found[l].labels.begin(), found[l].labels.end());
      y.labels.insert(y.labels.end(), reference(l).labels.begin(), reference(l).labels.end());
    }
    return nmi(x, y);
  }
  double sum = 0.0;
  for (std::size_t l = 0; l < found.size(); ++l) sum += nmi(found[l], reference(l));
  return sum / static_cast<double>(found.size());
}

double modularity_density(const Matrix& a, const NodeLabels& labels) {
  if (static_cast<std::size_t>(a.rows()) != labels.size() || a.rows() != a.cols()) {
    throw DimensionError("modularity_density: " + std::to_string(labels.size()) +
                         " labels for a " + shape_of(a) + " matrix");
  }
  const auto ids = index_labels(labels);
  const std::size_t k = ids.size();
  std::vector<double> in(k, 0.0), out(k, 0.0), size(k, 0.0);
  std::vector<std::size_t> slot(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    slot[i] = ids.at(labels[i]);
    size[slot[i]] += 1.0;
  }
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const std::size_t ci = slot[static_cast<std::size_t>(i)];
    for (Eigen::Index j = i + 1; j < a.cols(); ++j) {
      const std::size_t cj = slot[static_cast<std::size_t>(j)];
      if (ci == cj) {
        in[ci] += a(i, j);
      } else {
        out[ci] += a(i, j);
        out[cj] += a(i, j);
      }
    }
  }
  double q = 0.0;
  for (std::size_t c = 0; c < k; ++c) q += (2.0 * in[c] - out[c]) / size[c];
  return q;
}

double multiplex_modularity_density(const MultiplexNetwork& net,
                                    const std::vector<NodeLabels>& labels) {
  if (labels.size() != net.layer_count()) {
    throw DimensionError("multiplex_modularity_density: " + std::to_string(labels.size()) +
                         " label sets for " + std::to_string(net.layer_count()) + " layers");
  }
  double sum = 0.0;
  for (std::size_t l = 0; l < labels.size(); ++l) sum += modularity_density(net.layer(l), labels[l]);
  return sum / static_cast<double>(labels.size());
}

}  // namespace mxplex
