#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pickfam/exact_matrix.hpp"
#include "pickfam/polynomial.hpp"
#include "pickfam/semigroup.hpp"

namespace pickfam {

/// A point alpha_j of the support of the conductor together with the order k_j
/// of the jets kept there (the primary component contains m_j^{k_j}).
struct SupportPoint {
  ExactPoint location;
  int jet_order = 1;
};

/// Element of P_d / c, stored as Taylor jets at each support point.
class JetElement {
 public:
  JetElement() = default;
  explicit JetElement(std::vector<std::vector<GaussRational>> jets) : jets_(std::move(jets)) {}

  const std::vector<std::vector<GaussRational>>& jets() const { return jets_; }
  std::vector<GaussRational> flat() const;
  std::vector<std::size_t> shape() const;
  bool same_ring(const JetElement& o) const { return shape() == o.shape(); }
  bool is_zero() const;

  /// Order-zero coefficient at each support point.
  std::vector<GaussRational> values() const;

  bool is_unit() const;
  /// Exact inverse; throws NotAUnit.
  JetElement inverse() const;

  JetElement& operator+=(const JetElement& o);
  JetElement& operator-=(const JetElement& o);
  JetElement& operator*=(const GaussRational& c);
  friend JetElement operator+(JetElement a, const JetElement& b) { return a += b; }
  friend JetElement operator-(JetElement a, const JetElement& b) { return a -= b; }
  friend JetElement operator*(JetElement a, const GaussRational& c) { return a *= c; }
  friend JetElement operator*(const GaussRational& c, JetElement a) { return a *= c; }
  /// Truncated Leibniz product at every point.
  friend JetElement operator*(const JetElement& a, const JetElement& b);
  friend bool operator==(const JetElement& a, const JetElement& b) { return a.jets_ == b.jets_; }
  friend bool operator!=(const JetElement& a, const JetElement& b) { return !(a == b); }

 private:
  std::vector<std::vector<GaussRational>> jets_;
};

/// Artinian quotient P_d / c as a product of local jet algebras C[t]/(t^k).
///
/// In one variable each support point alpha carries derivatives of order
/// < k. The only two-variable ring supported is C[z,w]/(w, z^2), whose jets
/// are (value, d/dz) at the origin.
class QuotientRing {
 public:
  enum class Kind { Univariate, TwoVarCusp };

  static QuotientRing univariate(std::vector<SupportPoint> support);
  static QuotientRing two_var_cusp();

  Kind kind() const { return kind_; }
  int vars() const { return kind_ == Kind::Univariate ? 1 : 2; }
  const std::vector<SupportPoint>& support() const { return support_; }
  std::size_t dimension() const;
  std::vector<std::size_t> jet_sizes() const;

  JetElement reduce(const MultiPoly& p) const;
  JetElement zero() const;
  JetElement one() const;
  JetElement from_flat(const std::vector<GaussRational>& coords) const;

  /// Polynomial of degree < dimension() whose jets are `a` (Hermite
  /// interpolation in one variable; alpha + beta z in the two-variable ring).
  MultiPoly lift(const JetElement& a) const;

  friend bool operator==(const QuotientRing& a, const QuotientRing& b);

 private:
  Kind kind_ = Kind::Univariate;
  std::vector<SupportPoint> support_;
};

struct Root {
  GaussRational location;
  int multiplicity = 1;
};

/// The three supported algebra shapes: monomial algebras C[z^{a_1},...],
/// A = C1 + fC[z] for a monic f with roots in the disc, and the fixed
/// two-variable algebra C[w, zw, z^2, z^3].
class SubalgebraSpec {
 public:
  enum class Kind { Semigroup, OnePlusIdeal, TwoVarExample };

  static SubalgebraSpec semigroup(NumericalSemigroup s);
  static SubalgebraSpec one_plus_ideal(std::vector<Root> roots);
  static SubalgebraSpec two_var_example();

  Kind kind() const { return kind_; }
  int vars() const { return ring_.vars(); }
  const QuotientRing& ring() const { return ring_; }
  const NumericalSemigroup& numerical_semigroup() const;
  const std::vector<Root>& roots() const { return roots_; }

  /// Generator of the conductor for d = 1: z^m or f.
  MultiPoly conductor_generator() const;
  /// Generators of A as an algebra, used for separation certificates.
  const std::vector<MultiPoly>& algebra_generators() const { return generators_; }

  /// Vector-space basis of A/c inside P_d/c.
  const std::vector<JetElement>& subalgebra_basis() const { return basis_; }
  /// Rows are linear functionals on flat jet coordinates spanning the
  /// annihilator of A/c.
  const ExactMatrix& annihilator() const { return annihilator_; }
  /// Flat coordinates used to normalize orbit representatives (pivot columns
  /// of the reduced A/c basis).
  const std::vector<std::size_t>& normalization_positions() const { return pivots_; }
  /// Complement of normalization_positions(); these coordinates of the
  /// canonical representative are the Picard coordinates.
  const std::vector<std::size_t>& free_positions() const { return free_; }
  std::size_t picard_dimension() const { return free_.size(); }
  /// True for <1>: the conductor is the whole ring and there is a single
  /// Szego kernel.
  bool is_classical() const { return ring_.dimension() == 0; }

 private:
  void finish();

  Kind kind_ = Kind::Semigroup;
  QuotientRing ring_;
  std::optional<NumericalSemigroup> semigroup_;
  std::vector<Root> roots_;
  std::vector<MultiPoly> generators_;
  std::vector<JetElement> basis_;
  ExactMatrix annihilator_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> free_;
};

bool in_subalgebra(const SubalgebraSpec& spec, const JetElement& a);

/// Basis of the cyclic A/c-module (A/c) u. Requires u to be a unit.
std::vector<JetElement> submodule_basis(const SubalgebraSpec& spec, const JetElement& u);
/// Same for an arbitrary generator (used for compactified samples).
std::vector<JetElement> cyclic_module_basis(const SubalgebraSpec& spec, const JetElement& v);

/// Whether u1 = a u2 for a unit a of A/c.
bool orbit_equivalent(const SubalgebraSpec& spec, const JetElement& u1, const JetElement& u2);

/// Complete invariant of the orbit u (A/c)^x. The unique representative with
/// 1 at the first normalization position and 0 at the others is computed and
/// its free coordinates are returned.
std::vector<GaussRational> picard_coordinates(const SubalgebraSpec& spec, const JetElement& u);
/// Canonical representative with the given Picard coordinates. It need not be
/// a unit (for instance a zero value at a second support point).
JetElement canonical_representative(const SubalgebraSpec& spec, const std::vector<GaussRational>& coords);

/// Closed-form orbit map of C[z^2,z^5]: (a,b,c,d) -> (b/a, (d a - c b)/a^2).
std::vector<GaussRational> orbit_map_z2_z5(const JetElement& u);

/// Matrix of jets; a Q_s parameter Z: (P/c)^k -> (P/c)^s is stored s x k.
class JetMatrix {
 public:
  JetMatrix() = default;
  JetMatrix(std::size_t rows, std::size_t cols, JetElement fill)
      : rows_(rows), cols_(cols), entries_(rows * cols, std::move(fill)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  JetElement& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const JetElement& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  JetMatrix transpose() const;
  /// Order-zero values at support point j.
  ExactMatrix values_at(std::size_t point) const;

  friend JetMatrix operator*(const JetMatrix& a, const JetMatrix& b);
  friend bool operator==(const JetMatrix& a, const JetMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<JetElement> entries_;
};

/// Nakayama criterion: Z is surjective iff Z(alpha_j) has rank s at every
/// support point.
bool is_surjective(const SubalgebraSpec& spec, const JetMatrix& z);

/// Random surjective Z with small Gaussian-integer jets; deterministic in the
/// seed. Throws InvalidShape unless 1 <= s <= k.
JetMatrix sample_qs(const SubalgebraSpec& spec, std::size_t k, std::size_t s, std::uint64_t seed);

/// Random element of GL_k(A/c); deterministic in the seed.
JetMatrix sample_gl(const SubalgebraSpec& spec, std::size_t k, std::uint64_t seed);

/// Whether Z1 = Z2 F^T for some F in GL_k(A/c).
bool qs_equivalent(const SubalgebraSpec& spec, const JetMatrix& z1, const JetMatrix& z2);

}  // namespace pickfam
