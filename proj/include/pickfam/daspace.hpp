#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "pickfam/exact_matrix.hpp"
#include "pickfam/polynomial.hpp"
#include "pickfam/quotient.hpp"

namespace pickfam {

/// Finite Blaschke product prod ((z - a)/(1 - conj(a) z))^k.
class BlaschkeProduct {
 public:
  explicit BlaschkeProduct(std::vector<Root> zeros);

  const std::vector<Root>& zeros() const { return zeros_; }
  int degree() const;
  /// Exact Taylor coefficients b_0, ..., b_{count-1} at the origin.
  std::vector<GaussRational> coefficients(std::size_t count) const;
  Complex operator()(Complex z) const;
  GaussRational evaluate(const GaussRational& z) const;
  /// max |a| over the zeros.
  double max_zero_modulus() const;

 private:
  std::vector<Root> zeros_;
};

/// Tail kernels of the common subspace closure(c H^2_d).
struct NoTail {};
/// z^m conj(w)^m / (1 - z conj(w)).
struct MonomialTail {
  int exponent = 0;
};
/// B(z) conj(B(w)) / (1 - z conj(w)).
struct BlaschkeTail {
  BlaschkeProduct product;
};
/// (w conj(v) + z^2 conj(u)^2 + z w conj(u v)) / (1 - z conj(u) - w conj(v)).
struct TwoVarTail {};
using TailKernel = std::variant<NoTail, MonomialTail, BlaschkeTail, TwoVarTail>;

/// One entry of a finite-part basis function: poly - B * correction, where B
/// is the Blaschke product of the tail (correction is zero for other tails).
/// This is the orthogonal projection of `poly` off B H^2.
struct BasisEntry {
  MultiPoly poly;
  MultiPoly correction;
};

/// k x s matrix of basis entries; k = s = 1 in the scalar case.
struct BasisMatrix {
  std::size_t rows = 1;
  std::size_t cols = 1;
  std::vector<BasisEntry> entries;
  const BasisEntry& operator()(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

/// Reproducing kernel of span{M_r} (+) M_{k,s}(C):
///   K(z,w) = sum_{r,t} Ginv(r,t) M_r(z) M_t(w)^* + s tail(z,w) I_k,
/// with gram(r,t) = <M_t, M_r> under the entrywise-sum inner product.
class KernelModel {
 public:
  KernelModel(int vars, std::size_t block, std::size_t rank, std::vector<BasisMatrix> basis, TailKernel tail,
              double truncation_bound = 0.0);

  int vars() const { return vars_; }
  std::size_t block_size() const { return block_; }
  std::size_t value_rank() const { return rank_; }
  const std::vector<BasisMatrix>& finite_basis() const { return basis_; }
  const ExactMatrix& gram() const { return gram_; }
  const ExactMatrix& gram_inverse() const { return gram_inverse_; }
  const TailKernel& tail() const { return tail_; }
  /// Certified l2 error of the degree-N series truncation of the basis.
  double truncation_bound() const { return truncation_bound_; }

  /// K(z, w); k x k. Throws PointOutsideBall.
  Eigen::MatrixXcd evaluate(const Point& z, const Point& w) const;
  Complex scalar(const Point& z, const Point& w) const;
  /// Exact value at Gaussian-rational points.
  ExactMatrix evaluate_exact(const ExactPoint& z, const ExactPoint& w) const;

  /// Column c of every basis function at z, laid out k x (#basis).
  Eigen::MatrixXcd basis_column_values(const Point& z, std::size_t column) const;
  Complex tail_value(const Point& z, const Point& w) const;
  GaussRational tail_value_exact(const ExactPoint& z, const ExactPoint& w) const;
  const Eigen::MatrixXcd& gram_inverse_numeric() const { return gram_inverse_numeric_; }

  /// Degree-N series truncation of basis entry (r; row, col).
  MultiPoly truncated_entry(std::size_t r, std::size_t row, std::size_t col, int degree) const;

 private:
  struct NumericPoly {
    std::vector<std::pair<Exponent, Complex>> terms;
    Complex operator()(const Point& z) const;
  };

  Complex entry_value(std::size_t flat, const Point& z) const;
  void check_point(const Point& z) const;

  int vars_;
  std::size_t block_;
  std::size_t rank_;
  std::vector<BasisMatrix> basis_;
  ExactMatrix gram_;
  ExactMatrix gram_inverse_;
  TailKernel tail_;
  double truncation_bound_;
  Eigen::MatrixXcd gram_inverse_numeric_;
  std::vector<NumericPoly> poly_cache_;        // per (basis, entry)
  std::vector<NumericPoly> correction_cache_;  // per (basis, entry)
};

/// Default series truncation for Blaschke projections and its tolerance.
inline constexpr int kDefaultTruncation = 128;
inline constexpr double kTruncationTolerance = 1e-12;

/// Kernel of the cyclic module (A/c) u (+) closure(c H^2). Throws NotAUnit.
KernelModel submodule_kernel(const SubalgebraSpec& spec, const JetElement& u, int truncation = kDefaultTruncation);

/// Kernel of the module generated by an arbitrary nonzero v; used for the
/// compactified (boundary) part of the family. Requires dim (A/c) v = dim A/c.
KernelModel cyclic_kernel(const SubalgebraSpec& spec, const JetElement& v, int truncation = kDefaultTruncation);

/// M_k-valued kernel of the M_k(A/c)-module generated by X = Z^T, where Z is
/// an s x k surjective parameter. One-variable specs only.
KernelModel matrix_submodule_kernel(const SubalgebraSpec& spec, const JetMatrix& z,
                                    int truncation = kDefaultTruncation);

/// Szego kernel 1/(1 - <z,w>) of H^2_d.
Complex szego(const Point& z, const Point& w);

}  // namespace pickfam
