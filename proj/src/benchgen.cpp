#include "mxplex/benchgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace mxplex {

namespace {

// Sizes of `parts` near-equal groups, remainder to the first groups.
std::vector<std::size_t> even_split(std::size_t count, std::size_t parts) {
  std::vector<std::size_t> sizes(parts, parts ? count / parts : 0);
  for (std::size_t i = 0; i < (parts ? count % parts : 0); ++i) ++sizes[i];
  return sizes;
}

// Label of each position in a sequence split by even_split.
std::vector<std::size_t> even_labels(std::size_t count, std::size_t parts) {
  std::vector<std::size_t> out;
  out.reserve(count);
  const auto sizes = even_split(count, parts);
  for (std::size_t j = 0; j < parts; ++j) out.insert(out.end(), sizes[j], j);
  return out;
}

std::vector<std::size_t> shuffled_nodes(std::size_t n, RandomStream& stream) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  stream.shuffle(v);
  return v;
}

}  // namespace

std::vector<std::size_t> BenchmarkSpec::private_counts_per_layer() const {
  if (private_counts.size() == 1) return std::vector<std::size_t>(layers, private_counts[0]);
  return private_counts;
}

std::vector<std::vector<bool>> BenchmarkSpec::presence_matrix() const {
  if (presence.empty()) return std::vector<std::vector<bool>>(common, std::vector<bool>(layers, true));
  return presence;
}

std::size_t BenchmarkSpec::common_node_count() const {
  if (common_nodes) return *common_nodes;
  const auto kp = private_counts_per_layer();
  const std::size_t max_kp = kp.empty() ? 0 : *std::max_element(kp.begin(), kp.end());
  if (common + max_kp == 0) return 0;
  return n * common / (common + max_kp);
}

void BenchmarkSpec::validate() const {
  auto fail = [](const std::string& msg) { throw DimensionError("BenchmarkSpec: " + msg); };
  if (n < 2) fail("n must be at least 2");
  if (layers == 0) fail("at least one layer is required");
  if (!(mu >= 0.0 && mu <= 1.0)) fail("mu must lie in [0, 1]");
  if (!(p1 >= 0.0 && p1 <= 1.0)) fail("p1 must lie in [0, 1]");
  if (!(avg_degree >= 0.0)) fail("avg_degree must be nonnegative");
  const auto kp = private_counts_per_layer();
  if (kp.size() != layers) fail("private_counts needs 1 or " + std::to_string(layers) + " values");
  const auto pres = presence_matrix();
  if (pres.size() != common) fail("presence needs one row per common community");
  for (std::size_t j = 0; j < common; ++j) {
    if (pres[j].size() != layers) fail("presence row " + std::to_string(j) + " has wrong length");
    if (std::count(pres[j].begin(), pres[j].end(), true) < 2) {
      fail("common community " + std::to_string(j) + " must occupy at least two layers");
    }
  }
  const std::size_t nc = common_node_count();
  if (nc > n) fail("common_nodes exceeds n");
  if (nc < common) fail("fewer common nodes than common communities");
  if (common > 0 && nc == 0) fail("common communities need nodes");
  for (std::size_t l = 0; l < layers; ++l) {
    std::size_t pool = n - nc;
    const auto sizes = even_split(nc, common);
    for (std::size_t j = 0; j < common; ++j) pool += pres[j][l] ? 0 : sizes[j];
    if (pool > 0 && kp[l] == 0) {
      fail("layer " + std::to_string(l) + " has " + std::to_string(pool) +
           " nodes outside common communities but no private communities");
    }
    if (pool < kp[l]) fail("layer " + std::to_string(l) + " has more private communities than nodes");
  }
  if (!degree_propensity.empty()) {
    if (degree_propensity.size() != n) fail("degree_propensity needs one value per node");
    for (double w : degree_propensity) {
      if (!(w >= 0.0) || !std::isfinite(w)) fail("degree_propensity must be finite and nonnegative");
    }
  }
}

Benchmark generate(const BenchmarkSpec& spec, const RandomStream& stream) {
  spec.validate();
  const std::size_t n = spec.n;
  const std::size_t layers = spec.layers;
  const auto kp = spec.private_counts_per_layer();
  const auto pres = spec.presence_matrix();
  const std::size_t nc = spec.common_node_count();

  RandomStream pick = stream.derive(0);
  const std::vector<std::size_t> order = shuffled_nodes(n, pick);
  const std::vector<std::size_t> home = even_labels(nc, spec.common);

  Benchmark out;
  std::vector<Matrix> adjacency;
  std::size_t offset = spec.common;
  for (std::size_t l = 0; l < layers; ++l) {
    RandomStream s = stream.derive(1 + l);
    std::vector<int> label(n, -1);
    std::vector<std::size_t> pool(order.begin() + static_cast<std::ptrdiff_t>(nc), order.end());
    std::vector<int> present;
    for (std::size_t j = 0; j < spec.common; ++j) {
      if (pres[j][l]) present.push_back(static_cast<int>(j));
    }
    for (std::size_t i = 0; i < nc; ++i) {
      if (!pres[home[i]][l]) pool.push_back(order[i]);
    }
    s.shuffle(pool);
    const std::vector<std::size_t> priv = even_labels(pool.size(), kp[l]);
    for (std::size_t i = 0; i < pool.size(); ++i) {
      label[pool[i]] = static_cast<int>(offset + priv[i]);
    }
    const std::size_t choices = present.size() + kp[l];
    for (std::size_t i = 0; i < nc; ++i) {
      if (!pres[home[i]][l]) continue;
      if (s.bernoulli(spec.p1)) {
        label[order[i]] = static_cast<int>(home[i]);
      } else {
        const std::size_t c = s.below(choices);
        label[order[i]] = c < present.size() ? present[c] : static_cast<int>(offset + c - present.size());
      }
    }
    offset += kp[l];
    out.truth.push_back(NodeLabels{label});
  }

  const double d = spec.avg_degree;
  const double background = spec.mu * d / static_cast<double>(n - 1);
  for (std::size_t l = 0; l < layers; ++l) {
    const std::vector<int>& label = out.truth[l].labels;
    std::vector<std::size_t> size(static_cast<std::size_t>(*std::max_element(label.begin(), label.end())) + 1, 0);
    for (int c : label) ++size[static_cast<std::size_t>(c)];
    auto probability = [&](std::size_t i, std::size_t j) {
      double p = background;
      const std::size_t c = static_cast<std::size_t>(label[i]);
      if (label[i] == label[j] && size[c] > 1) {
        p += (1.0 - spec.mu) * d / static_cast<double>(size[c] - 1);
      }
      if (!spec.degree_propensity.empty()) p *= spec.degree_propensity[i] * spec.degree_propensity[j];
      return p;
    };
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double p = probability(i, j);
        if (p > 1.0) {
          std::ostringstream os;
          os << "generate: edge probability " << p << " in layer " << l
             << " exceeds 1; lower avg_degree (currently " << d << ")";
          throw DimensionError(os.str());
        }
      }
    }
    RandomStream s = stream.derive(1 + layers + l);
    Matrix a = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (s.bernoulli(probability(i, j))) {
          a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
          a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = 1.0;
        }
      }
    }
    adjacency.push_back(std::move(a));
  }
  out.network = MultiplexNetwork(std::move(adjacency));
  return out;
}

std::vector<std::size_t> PopulationSBM::private_counts() const {
  std::vector<std::size_t> out;
  for (const auto& z : memberships) out.push_back(static_cast<std::size_t>(z.cols()) - common);
  return out;
}

void PopulationSBM::validate() const {
  auto fail = [](const std::string& msg) { throw DimensionError("PopulationSBM: " + msg); };
  if (memberships.empty() || memberships.size() != blocks.size()) fail("need one Z and one Theta per layer");
  const Eigen::Index n = memberships[0].rows();
  const auto kc = static_cast<Eigen::Index>(common);
  for (std::size_t l = 0; l < memberships.size(); ++l) {
    const Matrix& z = memberships[l];
    const Matrix& theta = blocks[l];
    if (z.rows() != n || z.cols() < kc) fail("layer " + std::to_string(l) + " Z has shape " + shape_of(z));
    if (theta.rows() != z.cols() || theta.cols() != z.cols()) fail("layer " + std::to_string(l) + " Theta has shape " + shape_of(theta));
    for (Eigen::Index i = 0; i < n; ++i) {
      int ones = 0;
      for (Eigen::Index j = 0; j < z.cols(); ++j) {
        if (z(i, j) == 1.0) ++ones;
        else if (z(i, j) != 0.0) fail("Z entries must be 0 or 1");
      }
      if (ones != 1) fail("row " + std::to_string(i) + " of Z in layer " + std::to_string(l) + " is not one-hot");
    }
    for (Eigen::Index j = 0; j < z.cols(); ++j) {
      if (z.col(j).sum() == 0.0) fail("empty block " + std::to_string(j) + " in layer " + std::to_string(l));
    }
    if (z.leftCols(kc) != memberships[0].leftCols(kc)) fail("common columns differ across layers");
    if ((theta - theta.transpose()).cwiseAbs().maxCoeff() > 0.0) fail("Theta must be symmetric");
    if (theta.minCoeff() < 0.0 || theta.maxCoeff() > 1.0) fail("Theta entries must lie in [0, 1]");
    if (theta.topRightCorner(kc, theta.cols() - kc).cwiseAbs().sum() != 0.0) fail("Theta must be block diagonal");
  }
}

MultiplexNetwork population_adjacency(const PopulationSBM& p) {
  p.validate();
  std::vector<Matrix> layers;
  for (std::size_t l = 0; l < p.memberships.size(); ++l) {
    Matrix e = p.memberships[l] * p.blocks[l] * p.memberships[l].transpose();
    layers.push_back(0.5 * (e + e.transpose()));
  }
  return MultiplexNetwork(std::move(layers), MultiplexNetwork::Diagonal::kAllowed);
}

FactorSet analytic_factors(const PopulationSBM& p) {
  p.validate();
  const auto kc = static_cast<Eigen::Index>(p.common);
  FactorSet f;
  for (std::size_t l = 0; l < p.memberships.size(); ++l) {
    const Matrix& z = p.memberships[l];
    const Vector counts = z.colwise().sum().transpose();
    const Vector root = counts.cwiseSqrt();
    const Matrix h = z * root.cwiseInverse().asDiagonal();
    const Matrix fl = root.asDiagonal() * p.blocks[l] * root.asDiagonal();
    const Eigen::Index kp = z.cols() - kc;
    if (l == 0) f.common = h.leftCols(kc);
    f.private_members.push_back(h.rightCols(kp));
    f.common_affinity.push_back(fl.topLeftCorner(kc, kc));
    f.private_affinity.push_back(fl.bottomRightCorner(kp, kp));
  }
  return f;
}

PopulationSBM random_population_sbm(RandomStream& stream, std::size_t n, std::size_t common,
                                    const std::vector<std::size_t>& private_counts) {
  if (private_counts.empty()) throw DimensionError("random_population_sbm: no layers");
  const std::size_t max_kp = *std::max_element(private_counts.begin(), private_counts.end());
  const std::size_t min_kp = *std::min_element(private_counts.begin(), private_counts.end());
  if (min_kp == 0 && max_kp > 0) {
    throw DimensionError("random_population_sbm: private counts must be all positive or all zero");
  }
  if (common + max_kp == 0) throw DimensionError("random_population_sbm: empty order");
  const std::size_t nc = max_kp == 0 ? n : n * common / (common + max_kp);
  if (nc < common || n - nc < max_kp) {
    throw DimensionError("random_population_sbm: n=" + std::to_string(n) + " too small for the order");
  }

  PopulationSBM p;
  p.common = common;
  const std::vector<std::size_t> order = shuffled_nodes(n, stream);
  const std::vector<std::size_t> home = even_labels(nc, common);
  auto random_block = [&](std::size_t k) {
    const auto kk = static_cast<Eigen::Index>(k);
    Matrix b(kk, kk);
    for (Eigen::Index i = 0; i < kk; ++i) {
      for (Eigen::Index j = i; j < kk; ++j) b(i, j) = b(j, i) = stream.uniform();
    }
    return b;
  };
  for (std::size_t kp : private_counts) {
    const auto width = static_cast<Eigen::Index>(common + kp);
    Matrix z = Matrix::Zero(static_cast<Eigen::Index>(n), width);
    for (std::size_t i = 0; i < nc; ++i) {
      z(static_cast<Eigen::Index>(order[i]), static_cast<Eigen::Index>(home[i])) = 1.0;
    }
    std::vector<std::size_t> rest(order.begin() + static_cast<std::ptrdiff_t>(nc), order.end());
    stream.shuffle(rest);
    const std::vector<std::size_t> priv = even_labels(rest.size(), kp);
    for (std::size_t i = 0; i < rest.size(); ++i) {
      z(static_cast<Eigen::Index>(rest[i]), static_cast<Eigen::Index>(common + priv[i])) = 1.0;
    }
    Matrix theta = Matrix::Zero(width, width);
    const auto kc = static_cast<Eigen::Index>(common);
    theta.topLeftCorner(kc, kc) = random_block(common);
    theta.bottomRightCorner(width - kc, width - kc) = random_block(kp);
    p.memberships.push_back(std::move(z));
    p.blocks.push_back(std::move(theta));
  }
  return p;
}

}  // namespace mxplex
