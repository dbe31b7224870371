#pragma once

#include <map>
#include <vector>

#include "pickfam/rational.hpp"

namespace pickfam {

using Exponent = std::vector<int>;
using Point = std::vector<Complex>;
using ExactPoint = std::vector<GaussRational>;

/// Sparse polynomial in d variables with coefficients in Q(i).
/// Zero coefficients are never stored.
class MultiPoly {
 public:
  explicit MultiPoly(int vars = 1) : vars_(vars) {}

  static MultiPoly constant(int vars, const GaussRational& c);
  static MultiPoly monomial(const Exponent& exponent, const GaussRational& c = GaussRational(1));
  /// Univariate polynomial from ascending coefficients.
  static MultiPoly univariate(const std::vector<GaussRational>& coeffs);

  int vars() const { return vars_; }
  const std::map<Exponent, GaussRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;
  GaussRational coefficient(const Exponent& e) const;

  /// Adds c to the coefficient of the monomial with exponent e.
  void add_term(const Exponent& e, const GaussRational& c);

  Complex operator()(const Point& z) const;
  GaussRational evaluate(const ExactPoint& z) const;

  /// Multiplies by the monomial z^e.
  MultiPoly shifted(const Exponent& e) const;
  /// Drops all terms of total degree > n.
  MultiPoly truncated(int n) const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const GaussRational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const GaussRational& c) { return a *= c; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

 private:
  int vars_;
  std::map<Exponent, GaussRational> terms_;
};

/// Squared Drury-Arveson norm of z^a, a!/|a|!. For one variable this is 1.
Rational monomial_norm2(const Exponent& a);

/// Drury-Arveson inner product <p, q>, linear in p.
GaussRational inner_product(const MultiPoly& p, const MultiPoly& q);

bool in_unit_ball(const Point& z, double margin = 1e-12);
bool in_unit_ball(const ExactPoint& z);

/// <z, w> = sum z_i conj(w_i).
Complex dot(const Point& z, const Point& w);
GaussRational dot(const ExactPoint& z, const ExactPoint& w);

Point to_complex(const ExactPoint& z);

}  // namespace pickfam
