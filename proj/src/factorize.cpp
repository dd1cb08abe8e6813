#include "mxplex/factorize.hpp"

#include "mxplex/log.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace mxplex {

void FactorSet::check_shapes(const MultiplexNetwork& net) const {
  const auto n = static_cast<Eigen::Index>(net.node_count());
  const std::size_t layers = net.layer_count();
  if (private_members.size() != layers || common_affinity.size() != layers ||
      private_affinity.size() != layers) {
    throw DimensionError("FactorSet: factor lists do not match " + std::to_string(layers) +
                         " layers");
  }
  const Eigen::Index kc = common.cols();
  if (common.rows() != n) throw DimensionError("FactorSet: H is " + shape_of(common));
  for (std::size_t l = 0; l < layers; ++l) {
    const Eigen::Index kp = private_members[l].cols();
    if (private_members[l].rows() != n || common_affinity[l].rows() != kc ||
        common_affinity[l].cols() != kc || private_affinity[l].rows() != kp ||
        private_affinity[l].cols() != kp) {
      throw DimensionError("FactorSet: inconsistent shapes in layer " + std::to_string(l) +
                           " (H_l " + shape_of(private_members[l]) + ", S_l " +
                           shape_of(common_affinity[l]) + ", G_l " +
                           shape_of(private_affinity[l]) + ")");
    }
  }
}

Matrix FactorSet::layer_model(std::size_t l) const {
  Matrix m = (common * common_affinity[l]) * common.transpose();
  m.noalias() += (private_members[l] * private_affinity[l]) * private_members[l].transpose();
  return m;
}

namespace {

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

Matrix random_affinity(RandomStream& stream, std::size_t k, const InitOptions& opt) {
  const auto kk = static_cast<Eigen::Index>(k);
  Matrix m = rand_matrix(stream, kk, kk, opt.lo, opt.hi);
  for (Eigen::Index i = 0; i < kk; ++i) {
    for (Eigen::Index j = 0; j < kk; ++j) {
      if (i != j) m(i, j) *= opt.affinity_offdiag_scale;
    }
  }
  return symmetrized(m);
}

// Elementwise factor .* num ./ (den + guard). Subnormal results are flushed
// to zero: decaying entries otherwise drift into the subnormal range, where
// arithmetic is an order of magnitude slower.
Matrix multiplicative(const Matrix& factor, const Matrix& num, const Matrix& den, double guard) {
  Matrix out = factor.cwiseProduct(num).cwiseQuotient((den.array() + guard).matrix());
  out = (out.array() < std::numeric_limits<double>::min()).select(0.0, out);
  return out;
}

void require_finite(const Matrix& m, const char* what, std::size_t iteration) {
  if (!m.allFinite()) {
    std::ostringstream os;
    os << "non-finite value in " << what << " at iteration " << iteration;
    throw NumericalError(os.str());
  }
}

// Coefficient-based product for operands with a thin (k-sized) dimension.
// The blocked GEMM path packs its operands first, which dominates the cost
// of these small products.
template <typename A, typename B>
Matrix thin(const A& a, const B& b) {
  return a.lazyProduct(b);
}

// Per-layer products A_l H, A_l H_l and the k x k Gram blocks derived from
// them. A membership update refreshes exactly the entries that depend on
// it, so every n-sized product is formed once per sweep.
struct SweepCache {
  std::vector<Matrix> ah;     // A_l H
  std::vector<Matrix> ahl;    // A_l H_l
  Matrix h_h;                 // H^T H
  std::vector<Matrix> q;      // H^T A_l H
  std::vector<Matrix> cross;  // H^T H_l
  std::vector<Matrix> p;      // H_l^T A_l H_l
  std::vector<Matrix> hl_hl;  // H_l^T H_l

  SweepCache(const MultiplexNetwork& net, const FactorSet& f) {
    const std::size_t layers = net.layer_count();
    ah.resize(layers);
    ahl.resize(layers);
    q.resize(layers);
    cross.resize(layers);
    p.resize(layers);
    hl_hl.resize(layers);
    for (std::size_t l = 0; l < layers; ++l) refresh_private(net, f, l);
    refresh_common(net, f);
  }

  void refresh_common(const MultiplexNetwork& net, const FactorSet& f) {
    h_h = thin(f.common.transpose(), f.common);
    for (std::size_t l = 0; l < net.layer_count(); ++l) {
      ah[l].noalias() = net.layer(l) * f.common;
      q[l] = thin(f.common.transpose(), ah[l]);
      cross[l] = thin(f.common.transpose(), f.private_members[l]);
    }
  }

  void refresh_private(const MultiplexNetwork& net, const FactorSet& f, std::size_t l) {
    const Matrix& hl = f.private_members[l];
    ahl[l].noalias() = net.layer(l) * hl;
    p[l] = thin(hl.transpose(), ahl[l]);
    hl_hl[l] = thin(hl.transpose(), hl);
    cross[l] = thin(f.common.transpose(), hl);
  }
};

// The update kernels. cross[l] = H^T H_l stands in for both H^T H_l and its
// transpose H_l^T H.

Matrix common_membership_step(const FactorSet& f, const SweepCache& c, double guard) {
  const Matrix& h = f.common;
  if (h.cols() == 0) return h;
  const Eigen::Index k = h.cols();
  Matrix num = Matrix::Zero(h.rows(), k);
  Matrix den = Matrix::Zero(h.rows(), k);
  Matrix h_num = Matrix::Zero(k, k);
  Matrix h_den = Matrix::Zero(k, k);
  for (std::size_t l = 0; l < f.layer_count(); ++l) {
    const Matrix& s = f.common_affinity[l];
    // A_l H S_l + H (H^T H_l G_l^T H_l^T H S_l)
    const Matrix g_c_s = thin(thin(f.private_affinity[l].transpose(), c.cross[l].transpose()), s);
    num += thin(c.ah[l], s);
    h_num += thin(c.cross[l], g_c_s);
    // H_l G_l^T H_l^T H S_l + H (H^T A_l H S_l)
    den += thin(f.private_members[l], g_c_s);
    h_den += thin(c.q[l], s);
  }
  num += thin(h, h_num);
  den += thin(h, h_den);
  return multiplicative(h, num, den, guard);
}

Matrix private_membership_step(const FactorSet& f, std::size_t l, const SweepCache& c,
                               double guard) {
  const Matrix& hl = f.private_members[l];
  if (hl.cols() == 0) return hl;
  const Matrix& s = f.common_affinity[l];
  const Matrix& g = f.private_affinity[l];
  const Matrix& cr = c.cross[l];
  // A_l H_l G_l + H_l (H_l^T H S_l^T H^T H_l G_l)
  Matrix num = thin(c.ahl[l], g);
  num += thin(hl, thin(thin(thin(cr.transpose(), s.transpose()), cr), g));
  // H (S_l^T H^T H_l G_l^T) + H_l (H_l^T A_l H_l G_l)
  Matrix den = thin(f.common, thin(thin(s.transpose(), cr), g.transpose()));
  den += thin(hl, thin(c.p[l], g));
  return multiplicative(hl, num, den, guard);
}

Matrix common_affinity_step(const FactorSet& f, std::size_t l, const SweepCache& c,
                            double guard) {
  const Matrix& s = f.common_affinity[l];
  if (f.common.cols() == 0) return s;
  const Matrix& cr = c.cross[l];
  Matrix den = thin(thin(c.h_h, s), c.h_h);
  den += thin(thin(cr, f.private_affinity[l]), cr.transpose());
  return symmetrized(multiplicative(s, c.q[l], den, guard));
}

Matrix private_affinity_step(const FactorSet& f, std::size_t l, const SweepCache& c,
                             double guard) {
  const Matrix& g = f.private_affinity[l];
  if (f.private_members[l].cols() == 0) return g;
  const Matrix& cr = c.cross[l];
  Matrix den = thin(thin(c.hl_hl[l], g), c.hl_hl[l]);
  den += thin(thin(cr.transpose(), f.common_affinity[l]), cr);
  return symmetrized(multiplicative(g, c.p[l], den, guard));
}

// ||A_l - M_l||^2 expanded as ||A||^2 - 2<A, M> + ||M||^2, with <A, M> and
// ||M||^2 reduced to k x k traces through the cache.
double objective_from_cache(const std::vector<double>& layer_norms, const FactorSet& f,
                            const SweepCache& c) {
  double total = 0.0;
  for (std::size_t l = 0; l < f.layer_count(); ++l) {
    const Matrix& s = f.common_affinity[l];
    const Matrix& g = f.private_affinity[l];
    const Matrix& cr = c.cross[l];
    const double fit = thin(c.q[l], s).trace() + thin(c.p[l], g).trace();
    const Matrix hs = thin(c.h_h, s);
    const Matrix lg = thin(c.hl_hl[l], g);
    const double model = thin(hs, hs).trace() +
                         2.0 * thin(thin(thin(cr, g), cr.transpose()), s).trace() +
                         thin(lg, lg).trace();
    total += layer_norms[l] - 2.0 * fit + model;
  }
  return std::max(total, 0.0);
}

// Reseeds membership columns whose entries all fell below the smallest
// normal double, together with the matching affinity rows and columns so
// the multiplicative updates can move them again.
std::size_t rescue_dead_columns(Matrix& m, std::vector<Matrix*> affinities, RandomStream& stream,
                                const InitOptions& init) {
  std::size_t rescued = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (m.rows() == 0 || m.col(j).maxCoeff() >= std::numeric_limits<double>::min()) continue;
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = stream.uniform(init.lo, init.hi);
    for (Matrix* a : affinities) {
      for (Eigen::Index i = 0; i < a->rows(); ++i) {
        const double v = stream.uniform(init.lo, init.hi);
        (*a)(i, j) = (*a)(j, i) = i == j ? v : v * init.affinity_offdiag_scale;
      }
    }
    ++rescued;
  }
  return rescued;
}

void report_rescues(std::size_t count, const char* what, std::size_t first_iteration) {
  if (count == 0) return;
  std::ostringstream os;
  os << "reseeded " << count << " collapsed column(s) of " << what << ", first at iteration "
     << first_iteration;
  log_warning(os.str());
}

}  // namespace

FactorSet init_factors(RandomStream& stream, std::size_t n, std::size_t common,
                       const std::vector<std::size_t>& private_counts, const InitOptions& options) {
  bool any = common > 0;
  for (std::size_t kp : private_counts) any = any || kp > 0;
  if (!any) throw DimensionError("init_factors: all community counts are zero");
  const auto nn = static_cast<Eigen::Index>(n);
  FactorSet f;
  f.common = rand_matrix(stream, nn, static_cast<Eigen::Index>(common), options.lo, options.hi);
  for (std::size_t kp : private_counts) {
    f.private_members.push_back(
        rand_matrix(stream, nn, static_cast<Eigen::Index>(kp), options.lo, options.hi));
  }
  for (std::size_t l = 0; l < private_counts.size(); ++l) {
    f.common_affinity.push_back(random_affinity(stream, common, options));
  }
  for (std::size_t kp : private_counts) {
    f.private_affinity.push_back(random_affinity(stream, kp, options));
  }
  return f;
}

double objective(const MultiplexNetwork& net, const FactorSet& f) {
  f.check_shapes(net);
  double total = 0.0;
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    total += (net.layer(l) - f.layer_model(l)).squaredNorm();
  }
  return total;
}

Matrix update_common_membership(const MultiplexNetwork& net, const FactorSet& f, double guard) {
  f.check_shapes(net);
  Matrix out = common_membership_step(f, SweepCache(net, f), guard);
  require_finite(out, "H", 0);
  return out;
}

Matrix update_private_membership(const MultiplexNetwork& net, const FactorSet& f, std::size_t l,
                                 double guard) {
  f.check_shapes(net);
  Matrix out = private_membership_step(f, l, SweepCache(net, f), guard);
  require_finite(out, "H_l", 0);
  return out;
}

Matrix update_common_affinity(const MultiplexNetwork& net, const FactorSet& f, std::size_t l,
                              double guard) {
  f.check_shapes(net);
  Matrix out = common_affinity_step(f, l, SweepCache(net, f), guard);
  require_finite(out, "S_l", 0);
  return out;
}

Matrix update_private_affinity(const MultiplexNetwork& net, const FactorSet& f, std::size_t l,
                               double guard) {
  f.check_shapes(net);
  Matrix out = private_affinity_step(f, l, SweepCache(net, f), guard);
  require_finite(out, "G_l", 0);
  return out;
}

void update_sweep(const MultiplexNetwork& net, FactorSet& f, double guard) {
  f.check_shapes(net);
  f.common = update_common_membership(net, f, guard);
  for (std::size_t l = 0; l < f.layer_count(); ++l) {
    f.private_members[l] = update_private_membership(net, f, l, guard);
  }
  for (std::size_t l = 0; l < f.layer_count(); ++l) {
    f.common_affinity[l] = update_common_affinity(net, f, l, guard);
  }
  for (std::size_t l = 0; l < f.layer_count(); ++l) {
    f.private_affinity[l] = update_private_affinity(net, f, l, guard);
  }
}

RunResult run_once(const MultiplexNetwork& net, const ModelOrder& order, RandomStream& stream,
                   const RunOptions& options) {
  order.validate(net.layer_count());
  RunResult result;
  result.seed_index = stream.stream_index();
  result.factors =
      init_factors(stream, net.node_count(), order.common, order.private_counts, options.init);
  FactorSet& f = result.factors;

  std::vector<double> layer_norms;
  for (const auto& a : net.layers()) layer_norms.push_back(a.squaredNorm());

  SweepCache cache(net, f);
  double previous = objective_from_cache(layer_norms, f, cache);
  result.objective_trace.push_back(previous);

  std::size_t calm = 0;
  std::size_t first_rescue = 0;
  for (std::size_t it = 1; it <= options.max_iters; ++it) {
    f.common = common_membership_step(f, cache, options.guard);
    require_finite(f.common, "H", it);
    if (options.rescue_dead_columns) {
      std::vector<Matrix*> s_blocks;
      for (auto& s : f.common_affinity) s_blocks.push_back(&s);
      const std::size_t r = rescue_dead_columns(f.common, s_blocks, stream, options.init);
      if (r && !first_rescue) first_rescue = it;
      result.rescued_columns += r;
    }
    cache.refresh_common(net, f);

    for (std::size_t l = 0; l < net.layer_count(); ++l) {
      f.private_members[l] = private_membership_step(f, l, cache, options.guard);
      require_finite(f.private_members[l], "H_l", it);
      if (options.rescue_dead_columns) {
        const std::size_t r = rescue_dead_columns(f.private_members[l], {&f.private_affinity[l]},
                                                  stream, options.init);
        if (r && !first_rescue) first_rescue = it;
        result.rescued_columns += r;
      }
      cache.refresh_private(net, f, l);
    }
    for (std::size_t l = 0; l < net.layer_count(); ++l) {
      f.common_affinity[l] = common_affinity_step(f, l, cache, options.guard);
      require_finite(f.common_affinity[l], "S_l", it);
    }
    for (std::size_t l = 0; l < net.layer_count(); ++l) {
      f.private_affinity[l] = private_affinity_step(f, l, cache, options.guard);
      require_finite(f.private_affinity[l], "G_l", it);
    }

    const double current = objective_from_cache(layer_norms, f, cache);
    result.objective_trace.push_back(current);
    result.iterations_used = it;
    const double scale = std::max(std::abs(previous), std::numeric_limits<double>::min());
    calm = std::abs(previous - current) / scale < options.tol ? calm + 1 : 0;
    previous = current;
    if (calm >= options.window) break;
  }
  report_rescues(result.rescued_columns, "H/H_l", first_rescue);
  return result;
}

double orthogonality_gap(const Matrix& membership) {
  const Matrix gram = membership.transpose() * membership;
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).norm();
}

SingleLayerFit single_layer_onmtf(const Matrix& a, std::size_t k, RandomStream& stream,
                                  const RunOptions& options) {
  if (k == 0) throw DimensionError("single_layer_onmtf: k must be at least 1");
  if (a.rows() != a.cols()) {
    throw DimensionError("single_layer_onmtf: adjacency is not square (" + shape_of(a) + ")");
  }
  const auto kk = static_cast<Eigen::Index>(k);
  SingleLayerFit fit;
  fit.membership = rand_matrix(stream, a.rows(), kk, options.init.lo, options.init.hi);
  fit.affinity = random_affinity(stream, k, options.init);
  Matrix& u = fit.membership;
  Matrix& s = fit.affinity;

  const double a_norm = a.squaredNorm();
  Matrix au = a * u;
  auto residual = [&] {
    const Matrix u_u = u.transpose() * u;
    const double cross = ((u.transpose() * au) * s).trace();
    return std::max(a_norm - 2.0 * cross + (u_u * s * u_u * s).trace(), 0.0);
  };
  double previous = residual();
  fit.residual_trace.push_back(previous);

  std::size_t calm = 0;
  std::size_t rescued = 0, first_rescue = 0;
  for (std::size_t it = 1; it <= options.max_iters; ++it) {
    // U <- U .* (A U S) ./ (U U^T A U S)
    const Matrix au_s = au * s;
    const Matrix den_u = u * ((u.transpose() * au) * s);
    u = multiplicative(u, au_s, den_u, options.guard);
    require_finite(u, "U", it);
    if (options.rescue_dead_columns) {
      const std::size_t r = rescue_dead_columns(u, {&s}, stream, options.init);
      if (r && !first_rescue) first_rescue = it;
      rescued += r;
    }
    au.noalias() = a * u;
    // S <- S .* (U^T A U) ./ (U^T U S U^T U)
    const Matrix u_u = u.transpose() * u;
    s = symmetrized(multiplicative(s, u.transpose() * au, u_u * s * u_u, options.guard));
    require_finite(s, "S", it);

    const double current = residual();
    fit.residual_trace.push_back(current);
    fit.iterations_used = it;
    const double scale = std::max(std::abs(previous), std::numeric_limits<double>::min());
    calm = std::abs(previous - current) / scale < options.tol ? calm + 1 : 0;
    previous = current;
    if (calm >= options.window) break;
  }
  report_rescues(rescued, "U", first_rescue);
  return fit;
}

std::vector<int> row_argmax(const Matrix& m) {
  std::vector<int> out(static_cast<std::size_t>(m.rows()), 0);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < m.cols(); ++j) {
      if (m(i, j) > m(i, best)) best = j;
    }
    out[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return out;
}

}  // namespace mxplex
