#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "pickfam/pick.hpp"
#include "pickfam/quotient.hpp"

namespace pickfam {

/// Constrained minimal sup-norm interpolation on the unit circle, d = 1.
/// Unknowns are the coefficients c_0..c_N of f; constraints force f into the
/// subalgebra, interpolation forces f(node_i) = target_i.
struct MinimaxInstance {
  Eigen::MatrixXcd constraints;  // rows: functionals on (c_0, ..., c_N)
  std::vector<Complex> nodes;
  std::vector<Complex> targets;
  int degree = 24;
  int grid = 512;
  double delta = 1e-6;
  int max_iterations = 20000;
};

/// Membership functionals of `spec` at the given degree: annihilator of A/c
/// applied to the jets of each monomial z^n.
Eigen::MatrixXcd membership_constraints(const SubalgebraSpec& spec, int degree);

MinimaxInstance make_instance(const SubalgebraSpec& spec, std::vector<Complex> nodes, std::vector<Complex> targets,
                              int degree = 24, int grid = 512, double delta = 1e-6);

struct MinimaxResult {
  /// Largest grid modulus of the witness.
  double value = 0.0;
  /// Certified lower bound on the discrete optimum.
  double lower_bound = 0.0;
  /// value / cos(pi N / M): bound on the witness's sup over the whole circle.
  double continuous_bound = 0.0;
  std::vector<Complex> witness;  // ascending coefficients
  int iterations = 0;
  bool converged = false;
};

/// Lawson iteration on the affine solution space, stopped when the gap
/// between the attained value and the weighted least-squares lower bound
/// drops below delta. Throws InfeasibleConstraints.
MinimaxResult min_sup_norm(const MinimaxInstance& inst);

/// Random element of the unit ball of A: random coefficients on the
/// degree-`degree` part of A, scaled by a certified bound on its sup norm.
std::vector<Complex> sample_member(const SubalgebraSpec& spec, std::uint64_t seed, int degree = 12);

/// Values of sample_member(spec, seed) at the nodes.
std::vector<Complex> sample_attainable(const SubalgebraSpec& spec, const std::vector<Complex>& nodes,
                                       std::uint64_t seed, int degree = 12);

/// Matrix targets W_i = U diag(f_1, ..., f_k)(z_i) V with unitary U, V and
/// independent scalar members f_j; F = U diag(f_j) V lies in the unit ball of
/// M_k(A).
std::vector<Eigen::MatrixXcd> sample_attainable_matrix(const SubalgebraSpec& spec, const std::vector<Complex>& nodes,
                                                       std::size_t k, std::uint64_t seed, int degree = 12);

/// Horner evaluation of ascending coefficients.
Complex evaluate_polynomial(const std::vector<Complex>& coeffs, Complex z);

/// Largest modulus on M equally spaced points of the unit circle.
double grid_sup(const std::vector<Complex>& coeffs, int grid);

/// Oracle summary for a scalar one-variable Pick problem at the default
/// degree and grid; empty for matrix or two-variable problems.
std::optional<OracleRecord> oracle_cross_check(const PickProblem& problem);

}  // namespace pickfam
