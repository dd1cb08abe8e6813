#pragma once

// Tri-factorization of every layer into a shared common-community term plus
// a layer-private term:
//
//   A_l ~ H S_l H^T + H_l G_l H_l^T
//
// H holds common memberships, H_l private memberships, and S_l / G_l are
// the symmetric affinity blocks. All four are fitted with multiplicative
// updates, which keep every factor nonnegative.

#include "mxplex/multiplex.hpp"
#include "mxplex/numerics.hpp"
#include "mxplex/order.hpp"

#include <cstddef>
#include <vector>

namespace mxplex {

struct FactorSet {
  Matrix common;                        // H,   n x k_c
  std::vector<Matrix> private_members;  // H_l, n x k_p[l]
  std::vector<Matrix> common_affinity;  // S_l, k_c x k_c
  std::vector<Matrix> private_affinity; // G_l, k_p[l] x k_p[l]

  std::size_t layer_count() const { return private_members.size(); }
  /// Throws DimensionError on any shape inconsistency with `net`.
  void check_shapes(const MultiplexNetwork& net) const;
  /// Reconstruction of layer l.
  Matrix layer_model(std::size_t l) const;
};

struct InitOptions {
  double lo = 0.1;
  double hi = 1.0;
  /// Off-diagonal entries of S_l and G_l are drawn in [lo, hi] and then
  /// scaled by this factor. 1.0 gives a fully uniform affinity init.
  double affinity_offdiag_scale = 0.1;
};

/// Random strictly positive factors with symmetric affinity blocks.
FactorSet init_factors(RandomStream& stream, std::size_t n, std::size_t common,
                       const std::vector<std::size_t>& private_counts,
                       const InitOptions& options = {});

/// sum_l ||A_l - H S_l H^T - H_l G_l H_l^T||_F^2, evaluated entrywise.
double objective(const MultiplexNetwork& net, const FactorSet& f);

/// Guard added to every elementwise denominator.
inline constexpr double kDenominatorGuard = 1e-12;

// One multiplicative step for each block, holding the others fixed. Each
// returns the new block; the FactorSet is not modified.
Matrix update_common_membership(const MultiplexNetwork& net, const FactorSet& f,
                                double guard = kDenominatorGuard);
Matrix update_private_membership(const MultiplexNetwork& net, const FactorSet& f, std::size_t l,
                                 double guard = kDenominatorGuard);
Matrix update_common_affinity(const MultiplexNetwork& net, const FactorSet& f, std::size_t l,
                              double guard = kDenominatorGuard);
Matrix update_private_affinity(const MultiplexNetwork& net, const FactorSet& f, std::size_t l,
                               double guard = kDenominatorGuard);

/// One Gauss-Seidel sweep: H, then every H_l, every S_l, every G_l.
void update_sweep(const MultiplexNetwork& net, FactorSet& f, double guard = kDenominatorGuard);

struct RunOptions {
  std::size_t max_iters = 1000;
  /// Stop once |obj_{t-1} - obj_t| / obj_{t-1} < tol for `window`
  /// consecutive iterations.
  double tol = 1e-6;
  std::size_t window = 10;
  double guard = kDenominatorGuard;
  InitOptions init;
  /// Reseed membership columns that collapse to zero.
  bool rescue_dead_columns = true;
};

struct RunResult {
  FactorSet factors;
  /// Objective at initialization followed by one sample per sweep.
  std::vector<double> objective_trace;
  std::size_t iterations_used = 0;
  std::size_t seed_index = 0;
  std::size_t rescued_columns = 0;
};

/// Initialize from `stream` and iterate sweeps until convergence or
/// max_iters. Throws NumericalError if a factor becomes non-finite.
RunResult run_once(const MultiplexNetwork& net, const ModelOrder& order, RandomStream& stream,
                   const RunOptions& options = {});

/// ||H^T H - I||_F, reported as a diagnostic; orthogonality is not enforced.
double orthogonality_gap(const Matrix& membership);

/// Single-layer tri-factorization A ~ U S U^T used for embeddings and the
/// aggregated baseline.
struct SingleLayerFit {
  Matrix membership;  // U, n x k
  Matrix affinity;    // S, k x k
  std::vector<double> residual_trace;  // ||A - U S U^T||_F^2 per iteration
  std::size_t iterations_used = 0;
};

SingleLayerFit single_layer_onmtf(const Matrix& a, std::size_t k, RandomStream& stream,
                                  const RunOptions& options = {});

/// Row-wise argmax with ties to the lowest column.
std::vector<int> row_argmax(const Matrix& m);

}  // namespace mxplex
