#pragma once

#include <cstddef>
#include <vector>

namespace gramnet {

// Dense square matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

}  // namespace gramnet
