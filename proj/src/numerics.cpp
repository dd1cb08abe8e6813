#include "mxplex/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace mxplex {

std::string shape_of(const Matrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: cannot multiply " + shape_of(a) + " by " + shape_of(b));
  }
  Matrix out = a * b;
  return out;
}

namespace {

void check_symmetric(const Matrix& a, const char* who) {
  if (a.rows() != a.cols()) {
    throw DimensionError(std::string(who) + ": matrix is not square (" + shape_of(a) + ")");
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale) {
    std::ostringstream os;
    os << who << ": matrix is not symmetric (max |a - a^T| = " << asym << ")";
    throw DimensionError(os.str());
  }
}

std::vector<Eigen::Index> order_by_magnitude(const Vector& ascending) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(ascending.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return std::abs(ascending[i]) > std::abs(ascending[j]);
  });
  return order;
}

}  // namespace

EigenDecomposition sym_eig(const Matrix& a) {
  check_symmetric(a, "sym_eig");
  EigenDecomposition out;
  if (a.rows() == 0) return out;
  const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NumericalError("sym_eig: eigensolver did not converge");
  const auto order = order_by_magnitude(solver.eigenvalues());
  out.values.resize(a.rows());
  out.vectors.resize(a.rows(), a.cols());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto idx = static_cast<Eigen::Index>(k);
    out.values[idx] = solver.eigenvalues()[order[k]];
    out.vectors.col(idx) = solver.eigenvectors().col(order[k]);
  }
  return out;
}

Vector sym_eigenvalues(const Matrix& a) {
  check_symmetric(a, "sym_eigenvalues");
  if (a.rows() == 0) return Vector{};
  const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("sym_eigenvalues: eigensolver did not converge");
  }
  const auto order = order_by_magnitude(solver.eigenvalues());
  Vector out(a.rows());
  for (std::size_t k = 0; k < order.size(); ++k) {
    out[static_cast<Eigen::Index>(k)] = solver.eigenvalues()[order[k]];
  }
  return out;
}

double quantile(std::span<const double> xs, double q) {
  if (xs.empty()) throw DimensionError("quantile: empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw DimensionError("quantile: q must lie in [0, 1]");
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

bool all_finite(const Matrix& m) { return m.allFinite(); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed),
      stream_index_(stream_index),
      engine_(splitmix64(splitmix64(master_seed) ^ splitmix64(~stream_index))) {}

RandomStream RandomStream::derive(std::uint64_t child_index) const {
  // Child seeds hash the full parent identity so grandchildren never collide
  // with siblings of the parent.
  const std::uint64_t parent = splitmix64(master_seed_ ^ splitmix64(stream_index_));
  return RandomStream(parent, child_index);
}

double RandomStream::uniform() {
  // 53 random mantissa bits, offset by half a step to exclude 0 and 1.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t RandomStream::below(std::uint64_t bound) {
  if (bound == 0) throw DimensionError("RandomStream::below: bound must be positive");
  // Rejection sampling on the top of the range keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

Matrix rand_matrix(RandomStream& stream, Eigen::Index rows, Eigen::Index cols, double lo,
                   double hi) {
  if (!(lo < hi)) throw DimensionError("rand_matrix: requires lo < hi");
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = stream.uniform(lo, hi);
  }
  return m;
}

}  // namespace mxplex
