#pragma once

#include <vector>

namespace pickfam {

/// Numerical semigroup <a_1, ..., a_r>: the exponent set of the monomial
/// algebra C[z^{a_1}, ..., z^{a_r}].
///
/// Generators are kept sorted, deduplicated and minimal (no generator is a
/// combination of the others). The gcd of the generators must be 1 so that the
/// complement in N is finite.
class NumericalSemigroup {
 public:
  explicit NumericalSemigroup(std::vector<int> generators);

  const std::vector<int>& generators() const { return generators_; }

  /// True iff n is a nonnegative integer combination of the generators.
  bool contains(long n) const;

  /// Least m with every n >= m in the semigroup; the conductor ideal of the
  /// monomial algebra is (z^m). Zero for <1>.
  int conductor_exponent() const { return conductor_; }

  /// {n in S : n < conductor}, ascending. These monomials are a basis of A/c.
  std::vector<int> subalgebra_basis_mod_conductor() const;

  /// Non-members, ascending.
  std::vector<int> gaps() const;

  friend bool operator==(const NumericalSemigroup& a, const NumericalSemigroup& b) {
    return a.generators_ == b.generators_;
  }

 private:
  std::vector<int> generators_;
  int conductor_ = 0;
  std::vector<bool> member_;  // membership table for [0, conductor)
};

}  // namespace pickfam
