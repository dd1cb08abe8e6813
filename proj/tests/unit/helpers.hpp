#pragma once

#include "mxplex/numerics.hpp"

#include <cstddef>
#include <filesystem>
#include <string>

namespace testing {

inline mxplex::Matrix random_symmetric(mxplex::RandomStream& s, Eigen::Index n, double lo = -1.0,
                                       double hi = 1.0) {
  mxplex::Matrix a = mxplex::rand_matrix(s, n, n, lo, hi);
  return (0.5 * (a + a.transpose())).eval();
}

// Binary symmetric layer with zero diagonal.
inline mxplex::Matrix random_graph(mxplex::RandomStream& s, Eigen::Index n, double p) {
  mxplex::Matrix a = mxplex::Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (s.bernoulli(p)) a(i, j) = a(j, i) = 1.0;
    }
  }
  return a;
}

// Fresh scratch directory under the system temp dir, removed on scope exit.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() / ("mxplex_unit_" + tag);
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace testing
