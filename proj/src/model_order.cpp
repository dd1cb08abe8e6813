#include "mxplex/model_order.hpp"

#include "mxplex/log.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <set>

namespace mxplex {

LinkageMethod parse_linkage_method(const std::string& name) {
  if (name == "single") return LinkageMethod::kSingle;
  if (name == "average") return LinkageMethod::kAverage;
  if (name == "complete") return LinkageMethod::kComplete;
  throw std::invalid_argument("unknown linkage method '" + name + "'");
}

CutRule parse_cut_rule(const std::string& name) {
  if (name == "prose") return CutRule::kProse;
  if (name == "literal") return CutRule::kLiteral;
  throw std::invalid_argument("unknown cut rule '" + name + "'");
}

std::vector<double> gap_spectrum(const Matrix& a) {
  const Vector lambda = sym_eigenvalues(normalized_laplacian(a));
  std::vector<double> out(static_cast<std::size_t>(lambda.size()));
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    out[static_cast<std::size_t>(i)] = std::abs(1.0 - lambda(i));
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

namespace {

Matrix erdos_renyi(std::size_t n, double density, RandomStream& stream) {
  const auto nn = static_cast<Eigen::Index>(n);
  Matrix a = Matrix::Zero(nn, nn);
  for (Eigen::Index i = 0; i < nn; ++i) {
    for (Eigen::Index j = i + 1; j < nn; ++j) {
      if (stream.bernoulli(density)) a(i, j) = a(j, i) = 1.0;
    }
  }
  return a;
}

}  // namespace

double null_threshold(std::size_t n, double density, const RandomStream& stream,
                      std::size_t trials, double q) {
  if (n < 3) throw DimensionError("null_threshold: need at least 3 nodes, got " + std::to_string(n));
  if (!(density > 0.0 && density < 1.0)) {
    throw DimensionError("null_threshold: density must lie in (0, 1), got " +
                         std::to_string(density));
  }
  if (trials == 0) throw DimensionError("null_threshold: trials must be positive");
  std::vector<double> maxima;
  maxima.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    RandomStream s = stream.derive(t);
    const std::vector<double> mu = gap_spectrum(erdos_renyi(n, density, s));
    double best = 0.0;
    // gaps at 1-based positions i >= 2
    for (std::size_t i = 1; i + 1 < mu.size(); ++i) best = std::max(best, mu[i] - mu[i + 1]);
    maxima.push_back(best);
  }
  return quantile(maxima, q);
}

std::size_t estimate_k_layer(const Matrix& a, double delta) {
  const std::vector<double> mu = gap_spectrum(a);
  if (mu.size() < 2) return 1;
  std::size_t best = 0;
  for (std::size_t i = 1; i + 1 < mu.size(); ++i) {
    if (mu[i] - mu[i + 1] > mu[best] - mu[best + 1]) best = i;
  }
  return mu[best] - mu[best + 1] > delta ? best + 1 : 1;
}

Matrix embed_layers(const MultiplexNetwork& net, const std::vector<std::size_t>& k_l,
                    const RandomStream& stream, const EmbedOptions& options) {
  if (k_l.size() != net.layer_count()) {
    throw DimensionError("embed_layers: " + std::to_string(k_l.size()) + " counts for " +
                         std::to_string(net.layer_count()) + " layers");
  }
  const std::size_t fits = std::max<std::size_t>(options.fits, 1);
  auto embed_one = [&](std::size_t l) {
    SingleLayerFit best;
    double best_residual = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < fits; ++r) {
      RandomStream s = stream.derive(r);
      SingleLayerFit fit = single_layer_onmtf(net.layer(l), k_l[l], s, options.run);
      if (fit.residual_trace.back() < best_residual) {
        best_residual = fit.residual_trace.back();
        best = std::move(fit);
      }
    }
    return best.membership;
  };
  std::vector<std::future<Matrix>> jobs;
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    jobs.push_back(std::async(std::launch::async, embed_one, l));
  }

  Eigen::Index m = 0;
  for (std::size_t k : k_l) m += static_cast<Eigen::Index>(k);
  Matrix x(m, static_cast<Eigen::Index>(net.node_count()));
  Eigen::Index offset = 0;
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    const Matrix u = jobs[l].get();
    x.middleRows(offset, u.cols()) = u.transpose();
    offset += u.cols();
  }
  if (options.normalize_rows) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const double norm = x.row(i).norm();
      if (norm > 0.0) x.row(i) /= norm;
    }
  }
  return x;
}

Linkage linkage(const Matrix& x, LinkageMethod method) {
  const std::size_t m = static_cast<std::size_t>(x.rows());
  if (m < 2) throw DimensionError("linkage: need at least 2 rows, got " + std::to_string(m));
  Linkage out;
  out.leaf_count = m;

  Matrix d(x.rows(), x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.rows(); ++j) d(i, j) = (x.row(i) - x.row(j)).norm();
  }
  // Active clusters by table position; a merge keeps the lower position.
  std::vector<std::size_t> ids(m), sizes(m, 1);
  std::vector<bool> alive(m, true);
  for (std::size_t i = 0; i < m; ++i) ids[i] = i + 1;

  for (std::size_t step = 1; step < m; ++step) {
    std::size_t bi = 0, bj = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      if (!alive[i]) continue;
      for (std::size_t j = i + 1; j < m; ++j) {
        if (alive[j] && d(i, j) < best) {
          best = d(i, j);
          bi = i;
          bj = j;
        }
      }
    }
    out.merges.push_back({ids[bi], ids[bj], best});
    for (std::size_t k = 0; k < m; ++k) {
      if (!alive[k] || k == bi || k == bj) continue;
      double v = 0.0;
      switch (method) {
        case LinkageMethod::kSingle: v = std::min(d(bi, k), d(bj, k)); break;
        case LinkageMethod::kComplete: v = std::max(d(bi, k), d(bj, k)); break;
        case LinkageMethod::kAverage:
          v = (static_cast<double>(sizes[bi]) * d(bi, k) + static_cast<double>(sizes[bj]) * d(bj, k)) /
              static_cast<double>(sizes[bi] + sizes[bj]);
          break;
      }
      d(bi, k) = d(k, bi) = v;
    }
    sizes[bi] += sizes[bj];
    alive[bj] = false;
    ids[bi] = m + step;
  }
  return out;
}

ModelOrder count_common(const Linkage& f, const std::vector<std::size_t>& k_l, CutRule rule) {
  std::size_t m = 0;
  for (std::size_t k : k_l) m += k;
  if (m < 2) throw DimensionError("count_common: need at least 2 leaves");
  if (f.leaf_count != m || f.merges.size() != m - 1) {
    throw DimensionError("count_common: linkage over " + std::to_string(f.leaf_count) +
                         " leaves does not match sum k_l = " + std::to_string(m));
  }
  // 1-based accessors matching the merge-table convention.
  auto dist = [&](std::size_t i) { return f.merges[i - 1].distance; };
  auto leaf_leaf = [&](std::size_t i) {
    return std::max(f.merges[i - 1].a, f.merges[i - 1].b) <= m;
  };
  auto jump = [&](std::size_t i) {
    const double prev = dist(i - 1);
    // Zero-height predecessors come from duplicated rows; keep scanning.
    const double d = prev == 0.0 ? 0.0 : (dist(i) - prev) / prev;
    return d >= 0.5;
  };

  ModelOrder order;
  order.per_layer = k_l;
  const std::size_t last = m >= 2 ? m - 2 : 0;
  std::size_t cut = last;
  if (rule == CutRule::kProse) {
    for (std::size_t i = 2; i <= last; ++i) {
      if (jump(i)) {
        cut = i == 2 ? 0 : i - 1;
        break;
      }
    }
    for (std::size_t i = 1; i <= cut; ++i) order.common += leaf_leaf(i) ? 1 : 0;
  } else {
    for (std::size_t i = 2; i <= last; ++i) {
      if (!jump(i)) {
        cut = i;
        break;
      }
      order.common += leaf_leaf(i) ? 1 : 0;
    }
  }
  order.cut = cut;

  std::size_t offset = 0;
  for (std::size_t k : k_l) {
    std::set<std::size_t> seen;
    for (std::size_t i = 1; i <= cut; ++i) {
      for (std::size_t id : {f.merges[i - 1].a, f.merges[i - 1].b}) {
        if (id > offset && id <= offset + k) seen.insert(id);
      }
    }
    order.private_counts.push_back(k - seen.size());
    offset += k;
  }
  return order;
}

OrderReport estimate_order(const MultiplexNetwork& net, const RandomStream& stream,
                           const OrderOptions& options) {
  OrderReport report;
  const std::size_t layers = net.layer_count();
  std::vector<std::future<std::pair<double, std::size_t>>> jobs;
  for (std::size_t l = 0; l < layers; ++l) {
    report.densities.push_back(edge_density(net.layer(l)));
    jobs.push_back(std::async(std::launch::async, [&, l, density = report.densities.back()] {
      const double delta = null_threshold(net.node_count(), density, stream.derive(l),
                                          options.null_trials, options.null_quantile);
      return std::make_pair(delta, estimate_k_layer(net.layer(l), delta));
    }));
  }
  std::vector<std::size_t> k_l;
  for (auto& job : jobs) {
    const auto [delta, k] = job.get();
    report.thresholds.push_back(delta);
    k_l.push_back(k);
  }
  const Matrix x = embed_layers(net, k_l, stream.derive(layers), options.embed);
  report.merges = linkage(x, options.method);
  report.order = count_common(report.merges, k_l, options.rule);
  log_info("estimated order " + report.order.record());
  return report;
}

}  // namespace mxplex
