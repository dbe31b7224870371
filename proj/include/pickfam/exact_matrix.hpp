#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "pickfam/rational.hpp"

namespace pickfam {

/// Dense row-major matrix over Q(i).
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ExactMatrix identity(std::size_t n);
  static ExactMatrix from_rows(const std::vector<std::vector<GaussRational>>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  GaussRational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const GaussRational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<GaussRational> row(std::size_t r) const;
  ExactMatrix adjoint() const;
  ExactMatrix transpose() const;
  bool is_hermitian() const;

  Eigen::MatrixXcd to_complex() const;

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GaussRational> data_;
};

struct RowEchelon {
  ExactMatrix reduced;               // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

RowEchelon row_reduce(ExactMatrix m);
std::size_t rank(const ExactMatrix& m);

/// Some solution x of A x = b, or nullopt when the system is inconsistent.
std::optional<std::vector<GaussRational>> solve(const ExactMatrix& a, const std::vector<GaussRational>& b);
/// Basis of {x : A x = 0}, one vector per free column.
std::vector<std::vector<GaussRational>> null_space(const ExactMatrix& a);
std::optional<ExactMatrix> inverse(const ExactMatrix& a);
GaussRational determinant(ExactMatrix a);

/// Indices of a maximal linearly independent subset of the rows, chosen
/// greedily in order.
std::vector<std::size_t> independent_rows(const std::vector<std::vector<GaussRational>>& rows);

}  // namespace pickfam
