#pragma once

// Dense matrix kernel shared by every module: storage, products, the
// symmetric eigensolver, quantiles and the seeded random streams.

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mxplex {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Raised for shape and domain violations detected at an API boundary.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an iterative kernel produces NaN/Inf.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string shape_of(const Matrix& m);

/// Checked matrix product. Throws DimensionError naming both shapes.
Matrix matmul(const Matrix& a, const Matrix& b);

/// Eigenpairs of a real symmetric matrix. Column i of `vectors` pairs with
/// `values[i]`; ordering is by descending |lambda|, ties keep the solver's
/// ascending-value order.
struct EigenDecomposition {
  Vector values;
  Matrix vectors;
};

/// Householder tridiagonalisation followed by implicit-shift QL/QR
/// (Eigen's SelfAdjointEigenSolver). Input must be square and symmetric to
/// 1e-10 relative to its largest entry.
EigenDecomposition sym_eig(const Matrix& a);

/// Eigenvalues only, same ordering as sym_eig. Cheaper for spectra.
Vector sym_eigenvalues(const Matrix& a);

/// Linear-interpolation quantile on the sorted sample with inclusive
/// endpoints (q=0 is the minimum, q=1 the maximum).
double quantile(std::span<const double> xs, double q);

bool all_finite(const Matrix& m);

/// Deterministic per-(master_seed, stream_index) random source.
///
/// Seeds are spread with SplitMix64 before feeding a mt19937_64 engine, so
/// neighbouring stream indices give unrelated sequences. All conversions to
/// floating point and bounded integers are done here rather than through
/// <random> distributions, whose output is implementation-defined.
class RandomStream {
 public:
  RandomStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  /// Independent child stream, e.g. one per layer or per trial.
  RandomStream derive(std::uint64_t child_index) const;

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in the open interval (0, 1).
  double uniform();
  /// Uniform in (lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  bool bernoulli(double p) { return uniform() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// i.i.d. uniform entries in (lo, hi). Throws DimensionError if lo >= hi.
Matrix rand_matrix(RandomStream& stream, Eigen::Index rows, Eigen::Index cols, double lo,
                   double hi);

}  // namespace mxplex
