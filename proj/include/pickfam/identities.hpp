#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pickfam/polynomial.hpp"

namespace pickfam {

/// Result of checking that sum_f M_f M_f^* = I - P_1 - P_z on monomials
/// z^m w^n, for the sequence f in {w, z^2, zw} of H^2_2.
struct InnerSequenceReport {
  int degree = 0;
  std::size_t monomials_checked = 0;
  /// Monomials where the operator sum does not act as expected.
  std::vector<Exponent> violations;
  /// y + x^2 + x y reduces to 1 under y = 1 - x.
  bool sphere_identity = false;
  bool ok() const { return violations.empty() && sphere_identity; }
};

InnerSequenceReport inner_sequence_check(int degree);

/// Coefficient c with sum_f M_f M_f^* z^m w^n = c z^m w^n (always diagonal).
Rational inner_sequence_coefficient(int m, int n);

/// M_{z^a}^* z^b = (||z^b||^2 / ||z^{b-a}||^2) z^{b-a}, or zero.
MultiPoly monomial_adjoint(const Exponent& a, const MultiPoly& p);

/// ||z1 f||^2 + ||z2 f||^2 - ||f||^2 - sum |a_mn|^2 (m! n!/(m+n)!)/(m+n+1).
/// Identically zero; f must have two variables.
GaussRational defect_identity(const MultiPoly& f);

enum class CloseStatus { Holds, Violated, HypothesisNotMet };
const char* to_string(CloseStatus s);

/// Homogeneous form of the closeness lemma for f in H^2_2:
/// if ||z_i f||^2 > (1 - eps) ||f||^2 for i = 1, 2 then
/// |a_00|^2 >= (1 - 4 eps) ||f||^2 and ||f||^2 - |a_00|^2 <= 4 eps ||f||^2.
struct CloseReport {
  CloseStatus status = CloseStatus::HypothesisNotMet;
  Rational norm2;
  Rational constant2;  // |a_00|^2
  Rational z1_norm2;
  Rational z2_norm2;
};

CloseReport must_be_close_check(const MultiPoly& f, const Rational& eps);

/// For f, g meeting the hypotheses with real positive constant terms:
/// |<f, g>|^2 >= (1 - 8 eps)^2 ||f||^2 ||g||^2 whenever eps <= 1/8.
CloseStatus pair_overlap_check(const MultiPoly& f, const MultiPoly& g, const Rational& eps);

struct CloseTrialStats {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t hypotheses_met = 0;
  std::size_t violations = 0;
  std::size_t pair_trials = 0;
  std::size_t pair_violations = 0;
  /// Smallest observed |<f,g>| / (||f|| ||g||) over the pair trials.
  double min_overlap = 1.0;
  /// Largest eps for which a pair was tested.
  double max_eps = 0.0;
};

/// Random trials: eps uniform in (0, eps_max] on a 2^-16 grid, f = 1 + small
/// perturbation shrunk until the hypotheses hold. One pair test per trial.
CloseTrialStats must_be_close_trials(std::size_t trials, const Rational& eps_max, std::uint64_t seed);

/// Random polynomial in `vars` variables with at most `max_terms` terms of
/// total degree <= degree and small rational coefficients.
MultiPoly random_polynomial(int vars, int degree, std::size_t max_terms, std::uint64_t seed);

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::size_t cases = 0;
  std::string detail;
};

/// All exact identity suites: monomial norms, defect identity, inner
/// sequence, and the <2,5> orbit-map closed form.
std::vector<SuiteResult> run_identity_suites(int degree, std::uint64_t seed);

}  // namespace pickfam
