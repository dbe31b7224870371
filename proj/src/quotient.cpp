#include "pickfam/quotient.hpp"

#include <algorithm>

#include "pickfam/errors.hpp"
#include "pickfam/random.hpp"

namespace pickfam {

namespace {

Rational binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

void require_same(const JetElement& a, const JetElement& b) {
  if (!a.same_ring(b)) throw RingMismatch();
}

std::vector<GaussRational> series_inverse(const std::vector<GaussRational>& a) {
  std::vector<GaussRational> b(a.size());
  if (a.empty()) return b;
  const GaussRational inv0 = GaussRational(1) / a[0];
  b[0] = inv0;
  for (std::size_t n = 1; n < a.size(); ++n) {
    GaussRational s;
    for (std::size_t i = 1; i <= n; ++i) s += a[i] * b[n - i];
    b[n] = -(s * inv0);
  }
  return b;
}

}  // namespace

// ---------------------------------------------------------------- JetElement

std::vector<GaussRational> JetElement::flat() const {
  std::vector<GaussRational> out;
  for (const auto& j : jets_) out.insert(out.end(), j.begin(), j.end());
  return out;
}

std::vector<std::size_t> JetElement::shape() const {
  std::vector<std::size_t> s;
  s.reserve(jets_.size());
  for (const auto& j : jets_) s.push_back(j.size());
  return s;
}

bool JetElement::is_zero() const {
  for (const auto& j : jets_)
    for (const auto& c : j)
      if (!c.is_zero()) return false;
  return true;
}

std::vector<GaussRational> JetElement::values() const {
  std::vector<GaussRational> v;
  v.reserve(jets_.size());
  for (const auto& j : jets_) v.push_back(j.empty() ? GaussRational(0) : j.front());
  return v;
}

bool JetElement::is_unit() const {
  for (const auto& j : jets_)
    if (j.empty() || j.front().is_zero()) return false;
  return true;
}

JetElement JetElement::inverse() const {
  if (!is_unit()) throw NotAUnit();
  std::vector<std::vector<GaussRational>> out;
  out.reserve(jets_.size());
  for (const auto& j : jets_) out.push_back(series_inverse(j));
  return JetElement(std::move(out));
}

JetElement& JetElement::operator+=(const JetElement& o) {
  require_same(*this, o);
  for (std::size_t p = 0; p < jets_.size(); ++p)
    for (std::size_t i = 0; i < jets_[p].size(); ++i) jets_[p][i] += o.jets_[p][i];
  return *this;
}

JetElement& JetElement::operator-=(const JetElement& o) {
  require_same(*this, o);
  for (std::size_t p = 0; p < jets_.size(); ++p)
    for (std::size_t i = 0; i < jets_[p].size(); ++i) jets_[p][i] -= o.jets_[p][i];
  return *this;
}

JetElement& JetElement::operator*=(const GaussRational& c) {
  for (auto& j : jets_)
    for (auto& x : j) x *= c;
  return *this;
}

JetElement operator*(const JetElement& a, const JetElement& b) {
  require_same(a, b);
  std::vector<std::vector<GaussRational>> out(a.jets_.size());
  for (std::size_t p = 0; p < a.jets_.size(); ++p) {
    const auto& x = a.jets_[p];
    const auto& y = b.jets_[p];
    out[p].resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; i + j < x.size(); ++j) out[p][i + j] += x[i] * y[j];
    }
  }
  return JetElement(std::move(out));
}

// -------------------------------------------------------------- QuotientRing

QuotientRing QuotientRing::univariate(std::vector<SupportPoint> support) {
  for (std::size_t i = 0; i < support.size(); ++i) {
    const auto& sp = support[i];
    if (sp.location.size() != 1) throw InvalidArgument("univariate support point must have one coordinate");
    if (sp.jet_order < 1) throw InvalidArgument("jet order must be positive");
    if (!in_unit_ball(sp.location)) throw InvalidArgument("support point must lie in the open unit disc");
    for (std::size_t j = 0; j < i; ++j)
      if (support[j].location == sp.location) throw InvalidArgument("support points must be distinct");
  }
  QuotientRing r;
  r.kind_ = Kind::Univariate;
  r.support_ = std::move(support);
  return r;
}

QuotientRing QuotientRing::two_var_cusp() {
  QuotientRing r;
  r.kind_ = Kind::TwoVarCusp;
  r.support_ = {SupportPoint{{GaussRational(0), GaussRational(0)}, 2}};
  return r;
}

std::size_t QuotientRing::dimension() const {
  std::size_t d = 0;
  for (const auto& s : support_) d += static_cast<std::size_t>(s.jet_order);
  return d;
}

std::vector<std::size_t> QuotientRing::jet_sizes() const {
  std::vector<std::size_t> s;
  for (const auto& p : support_) s.push_back(static_cast<std::size_t>(p.jet_order));
  return s;
}

JetElement QuotientRing::reduce(const MultiPoly& p) const {
  if (p.vars() != vars()) throw InvalidShape("polynomial variable count does not match the quotient ring");
  std::vector<std::vector<GaussRational>> jets;
  if (kind_ == Kind::TwoVarCusp) {
    // Modulo (w, z^2): keep the constant and z coefficients.
    jets.push_back({p.coefficient({0, 0}), p.coefficient({1, 0})});
    return JetElement(std::move(jets));
  }
  for (const auto& sp : support_) {
    const GaussRational& alpha = sp.location[0];
    const auto k = static_cast<unsigned>(sp.jet_order);
    std::vector<GaussRational> jet(k);
    for (const auto& [e, c] : p.terms()) {
      const auto n = static_cast<unsigned>(e[0]);
      // Taylor coefficients of c z^n at alpha: c C(n,j) alpha^{n-j}.
      for (unsigned j = 0; j < k && j <= n; ++j) {
        if (alpha.is_zero() && n != j) continue;
        jet[j] += c * GaussRational(binomial(n, j)) * pow(alpha, n - j);
      }
    }
    jets.push_back(std::move(jet));
  }
  return JetElement(std::move(jets));
}

JetElement QuotientRing::zero() const {
  std::vector<std::vector<GaussRational>> jets;
  for (const auto& sp : support_) jets.emplace_back(static_cast<std::size_t>(sp.jet_order));
  return JetElement(std::move(jets));
}

JetElement QuotientRing::one() const {
  JetElement e = zero();
  std::vector<std::vector<GaussRational>> jets = e.jets();
  for (auto& j : jets) j[0] = 1;
  return JetElement(std::move(jets));
}

JetElement QuotientRing::from_flat(const std::vector<GaussRational>& coords) const {
  if (coords.size() != dimension()) throw InvalidShape("flat coordinate vector has the wrong length");
  std::vector<std::vector<GaussRational>> jets;
  std::size_t at = 0;
  for (const auto& sp : support_) {
    const auto n = static_cast<std::size_t>(sp.jet_order);
    jets.emplace_back(coords.begin() + static_cast<std::ptrdiff_t>(at),
                      coords.begin() + static_cast<std::ptrdiff_t>(at + n));
    at += n;
  }
  return JetElement(std::move(jets));
}

MultiPoly QuotientRing::lift(const JetElement& a) const {
  if (a.shape() != jet_sizes()) throw RingMismatch();
  if (kind_ == Kind::TwoVarCusp) {
    MultiPoly p(2);
    p.add_term({0, 0}, a.jets()[0][0]);
    p.add_term({1, 0}, a.jets()[0][1]);
    return p;
  }
  const std::size_t n = dimension();
  ExactMatrix m(n, n);
  std::size_t row = 0;
  for (const auto& sp : support_) {
    const GaussRational& alpha = sp.location[0];
    for (unsigned j = 0; j < static_cast<unsigned>(sp.jet_order); ++j, ++row)
      for (unsigned deg = j; deg < n; ++deg)
        m(row, deg) = GaussRational(binomial(deg, j)) * pow(alpha, deg - j);
  }
  auto coeffs = solve(m, a.flat());
  if (!coeffs) throw NumericalFailure("Hermite interpolation system is singular");
  return MultiPoly::univariate(*coeffs);
}

bool operator==(const QuotientRing& a, const QuotientRing& b) {
  if (a.kind_ != b.kind_ || a.support_.size() != b.support_.size()) return false;
  for (std::size_t i = 0; i < a.support_.size(); ++i)
    if (a.support_[i].location != b.support_[i].location || a.support_[i].jet_order != b.support_[i].jet_order)
      return false;
  return true;
}

// ------------------------------------------------------------ SubalgebraSpec

SubalgebraSpec SubalgebraSpec::semigroup(NumericalSemigroup s) {
  SubalgebraSpec spec;
  spec.kind_ = Kind::Semigroup;
  const int m = s.conductor_exponent();
  std::vector<SupportPoint> support;
  if (m > 0) support.push_back({{GaussRational(0)}, m});
  spec.ring_ = QuotientRing::univariate(std::move(support));
  for (int n : s.subalgebra_basis_mod_conductor()) spec.basis_.push_back(spec.ring_.reduce(MultiPoly::monomial({n})));
  for (int g : s.generators()) spec.generators_.push_back(MultiPoly::monomial({g}));
  spec.semigroup_ = std::move(s);
  spec.finish();
  return spec;
}

SubalgebraSpec SubalgebraSpec::one_plus_ideal(std::vector<Root> roots) {
  if (roots.empty()) throw InvalidArgument("C1 + fC[z] needs at least one root of f");
  std::vector<SupportPoint> support;
  for (const auto& r : roots) {
    if (r.multiplicity < 1) throw InvalidArgument("root multiplicity must be positive");
    if (!(r.location.norm2() < 1)) throw InvalidArgument("roots of f must lie in the open unit disc");
    support.push_back({{r.location}, r.multiplicity});
  }
  SubalgebraSpec spec;
  spec.kind_ = Kind::OnePlusIdeal;
  spec.ring_ = QuotientRing::univariate(std::move(support));
  spec.roots_ = std::move(roots);
  spec.basis_.push_back(spec.ring_.one());
  const MultiPoly f = spec.conductor_generator();
  spec.generators_ = {f, f.shifted({1})};
  spec.finish();
  return spec;
}

SubalgebraSpec SubalgebraSpec::two_var_example() {
  SubalgebraSpec spec;
  spec.kind_ = Kind::TwoVarExample;
  spec.ring_ = QuotientRing::two_var_cusp();
  spec.basis_.push_back(spec.ring_.one());
  spec.generators_ = {MultiPoly::monomial({0, 1}), MultiPoly::monomial({1, 1}), MultiPoly::monomial({2, 0}),
                      MultiPoly::monomial({3, 0})};
  spec.finish();
  return spec;
}

void SubalgebraSpec::finish() {
  const std::size_t dim = ring_.dimension();
  std::vector<std::vector<GaussRational>> rows;
  for (const auto& b : basis_) rows.push_back(b.flat());
  ExactMatrix bmat = ExactMatrix::from_rows(rows, dim);
  auto functionals = null_space(bmat);
  annihilator_ = ExactMatrix::from_rows(functionals, dim);
  if (annihilator_.rows() + basis_.size() != dim)
    throw NumericalFailure("annihilator of A/c has unexpected corank");
  pivots_ = row_reduce(bmat).pivots;
  free_.clear();
  for (std::size_t c = 0; c < dim; ++c)
    if (std::find(pivots_.begin(), pivots_.end(), c) == pivots_.end()) free_.push_back(c);
}

const NumericalSemigroup& SubalgebraSpec::numerical_semigroup() const {
  if (!semigroup_) throw InvalidArgument("spec is not a semigroup algebra");
  return *semigroup_;
}

MultiPoly SubalgebraSpec::conductor_generator() const {
  switch (kind_) {
    case Kind::Semigroup:
      return MultiPoly::monomial({semigroup_->conductor_exponent()});
    case Kind::OnePlusIdeal: {
      MultiPoly f = MultiPoly::constant(1, GaussRational(1));
      for (const auto& r : roots_) {
        MultiPoly factor = MultiPoly::univariate({-r.location, GaussRational(1)});
        for (int i = 0; i < r.multiplicity; ++i) f = f * factor;
      }
      return f;
    }
    case Kind::TwoVarExample:
      break;
  }
  throw InvalidArgument("the two-variable conductor (w, z^2) is not principal");
}

// ---------------------------------------------------------------- operations

bool in_subalgebra(const SubalgebraSpec& spec, const JetElement& a) {
  if (a.shape() != spec.ring().jet_sizes()) throw RingMismatch();
  const auto x = a.flat();
  const ExactMatrix& ann = spec.annihilator();
  for (std::size_t r = 0; r < ann.rows(); ++r) {
    GaussRational s;
    for (std::size_t c = 0; c < ann.cols(); ++c) s += ann(r, c) * x[c];
    if (!s.is_zero()) return false;
  }
  return true;
}

std::vector<JetElement> cyclic_module_basis(const SubalgebraSpec& spec, const JetElement& v) {
  if (v.shape() != spec.ring().jet_sizes()) throw RingMismatch();
  std::vector<JetElement> products;
  std::vector<std::vector<GaussRational>> rows;
  for (const auto& b : spec.subalgebra_basis()) {
    products.push_back(b * v);
    rows.push_back(products.back().flat());
  }
  std::vector<JetElement> basis;
  for (auto i : independent_rows(rows)) basis.push_back(products[i]);
  return basis;
}

std::vector<JetElement> submodule_basis(const SubalgebraSpec& spec, const JetElement& u) {
  if (!u.is_unit()) throw NotAUnit();
  return cyclic_module_basis(spec, u);
}

bool orbit_equivalent(const SubalgebraSpec& spec, const JetElement& u1, const JetElement& u2) {
  if (!u1.is_unit() || !u2.is_unit()) throw NotAUnit();
  if (u1.shape() != spec.ring().jet_sizes() || u2.shape() != spec.ring().jet_sizes()) throw RingMismatch();
  const auto& basis = spec.subalgebra_basis();
  const std::size_t dim = spec.ring().dimension();
  ExactMatrix m(dim, basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto col = (basis[i] * u2).flat();
    for (std::size_t r = 0; r < dim; ++r) m(r, i) = col[r];
  }
  auto c = solve(m, u1.flat());
  if (!c) return false;
  JetElement a = spec.ring().zero();
  for (std::size_t i = 0; i < basis.size(); ++i) a += basis[i] * (*c)[i];
  return a.is_unit();
}

std::vector<GaussRational> picard_coordinates(const SubalgebraSpec& spec, const JetElement& u) {
  if (!u.is_unit()) throw NotAUnit();
  if (u.shape() != spec.ring().jet_sizes()) throw RingMismatch();
  const auto& basis = spec.subalgebra_basis();
  const auto& pivots = spec.normalization_positions();
  const std::size_t a = basis.size();
  // Solve for b in A/c with (b u)|_pivots = (1, 0, ..., 0).
  std::vector<std::vector<GaussRational>> images;
  for (const auto& bi : basis) images.push_back((bi * u).flat());
  ExactMatrix m(a, a);
  for (std::size_t r = 0; r < a; ++r)
    for (std::size_t i = 0; i < a; ++i) m(r, i) = images[i][pivots[r]];
  std::vector<GaussRational> rhs(a);
  if (a > 0) rhs[0] = 1;
  auto c = solve(m, rhs);
  if (!c || rank(m) < a) throw NumericalFailure("orbit normalization system is singular");
  std::vector<GaussRational> canonical(spec.ring().dimension());
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t x = 0; x < canonical.size(); ++x) canonical[x] += (*c)[i] * images[i][x];
  std::vector<GaussRational> coords;
  coords.reserve(spec.free_positions().size());
  for (auto f : spec.free_positions()) coords.push_back(canonical[f]);
  return coords;
}

JetElement canonical_representative(const SubalgebraSpec& spec, const std::vector<GaussRational>& coords) {
  if (coords.size() != spec.picard_dimension()) throw InvalidShape("Picard coordinate vector has the wrong length");
  std::vector<GaussRational> flat(spec.ring().dimension());
  const auto& pivots = spec.normalization_positions();
  if (!pivots.empty()) flat[pivots[0]] = 1;
  for (std::size_t i = 0; i < coords.size(); ++i) flat[spec.free_positions()[i]] = coords[i];
  return spec.ring().from_flat(flat);
}

std::vector<GaussRational> orbit_map_z2_z5(const JetElement& u) {
  if (u.shape() != std::vector<std::size_t>{4}) throw RingMismatch();
  const auto& j = u.jets()[0];
  if (j[0].is_zero()) throw NotAUnit();
  const GaussRational& a = j[0];
  const GaussRational& b = j[1];
  const GaussRational& c = j[2];
  const GaussRational& d = j[3];
  return {b / a, (d * a - c * b) / (a * a)};
}

// ------------------------------------------------------------------ JetMatrix

JetMatrix JetMatrix::transpose() const {
  JetMatrix t;
  t.rows_ = cols_;
  t.cols_ = rows_;
  t.entries_.resize(entries_.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

ExactMatrix JetMatrix::values_at(std::size_t point) const {
  ExactMatrix m(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c).jets().at(point).at(0);
  return m;
}

JetMatrix operator*(const JetMatrix& a, const JetMatrix& b) {
  if (a.cols_ != b.rows_ || a.entries_.empty() || b.entries_.empty())
    throw InvalidShape("jet matrix product dimension mismatch");
  JetMatrix p(a.rows_, b.cols_, a.entries_.front() * GaussRational(0));
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j)
      for (std::size_t k = 0; k < a.cols_; ++k) p(i, j) += a(i, k) * b(k, j);
  return p;
}

bool is_surjective(const SubalgebraSpec& spec, const JetMatrix& z) {
  for (std::size_t r = 0; r < z.rows(); ++r)
    for (std::size_t c = 0; c < z.cols(); ++c)
      if (z(r, c).shape() != spec.ring().jet_sizes()) throw RingMismatch();
  for (std::size_t p = 0; p < spec.ring().support().size(); ++p)
    if (rank(z.values_at(p)) < z.rows()) return false;
  return true;
}

JetMatrix sample_qs(const SubalgebraSpec& spec, std::size_t k, std::size_t s, std::uint64_t seed) {
  if (s < 1 || s > k) throw InvalidShape("Q_s requires 1 <= s <= k");
  if (spec.vars() != 1) throw InvalidArgument("matrix parameters are supported for one-variable specs only");
  Rng rng(seed);
  const auto& ring = spec.ring();
  constexpr int kMaxAttempts = 64;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    JetMatrix z(s, k, ring.zero());
    for (std::size_t r = 0; r < s; ++r)
      for (std::size_t c = 0; c < k; ++c) {
        std::vector<GaussRational> flat(ring.dimension());
        for (auto& x : flat) x = rng.small_gauss(3);
        z(r, c) = ring.from_flat(flat);
      }
    if (is_surjective(spec, z)) return z;
  }
  throw NumericalFailure("could not draw a surjective Q_s parameter");
}

JetMatrix sample_gl(const SubalgebraSpec& spec, std::size_t k, std::uint64_t seed) {
  Rng rng(seed);
  const auto& ring = spec.ring();
  const auto& basis = spec.subalgebra_basis();
  for (int attempt = 0; attempt < 64; ++attempt) {
    JetMatrix f(k, k, ring.zero());
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c)
        for (const auto& b : basis) f(r, c) += b * rng.small_gauss(3);
    bool ok = true;
    for (std::size_t p = 0; p < ring.support().size() && ok; ++p) ok = !determinant(f.values_at(p)).is_zero();
    if (ok) return f;
  }
  throw NumericalFailure("could not draw an invertible matrix over A/c");
}

bool qs_equivalent(const SubalgebraSpec& spec, const JetMatrix& z1, const JetMatrix& z2) {
  if (z1.rows() != z2.rows() || z1.cols() != z2.cols()) throw InvalidShape("Q_s parameters have different shapes");
  const std::size_t s = z1.rows();
  const std::size_t k = z1.cols();
  const auto& basis = spec.subalgebra_basis();
  const std::size_t nb = basis.size();
  const std::size_t dim = spec.ring().dimension();
  if (dim == 0) return true;

  // Unknowns: F_{a,b} = sum_i x_{(a,b,i)} basis_i. Equations: for every r, a
  // and jet coordinate, (Z1)_{r,a} = sum_b (Z2)_{r,b} F_{a,b}.
  const std::size_t unknowns = k * k * nb;
  ExactMatrix m(s * k * dim, unknowns);
  std::vector<GaussRational> rhs(s * k * dim);
  for (std::size_t r = 0; r < s; ++r)
    for (std::size_t a = 0; a < k; ++a) {
      const std::size_t row0 = (r * k + a) * dim;
      const auto target = z1(r, a).flat();
      for (std::size_t x = 0; x < dim; ++x) rhs[row0 + x] = target[x];
      for (std::size_t b = 0; b < k; ++b)
        for (std::size_t i = 0; i < nb; ++i) {
          const auto col = (z2(r, b) * basis[i]).flat();
          const std::size_t u = (a * k + b) * nb + i;
          for (std::size_t x = 0; x < dim; ++x) m(row0 + x, u) = col[x];
        }
    }
  auto particular = solve(m, rhs);
  if (!particular) return false;
  const auto kernel = null_space(m);

  // The solution set is affine; det F(alpha_j) is a polynomial of degree k in
  // the free parameters, so random points find an invertible F unless none
  // exists (Schwartz-Zippel).
  Rng rng(0x51ED5EEDULL);
  constexpr int kTrials = 12;
  for (int trial = 0; trial < kTrials; ++trial) {
    std::vector<GaussRational> x = *particular;
    if (trial > 0)
      for (const auto& v : kernel) {
        GaussRational t(Rational(rng.integer(-1000, 1000)), Rational(rng.integer(-1000, 1000)));
        for (std::size_t u = 0; u < unknowns; ++u) x[u] += t * v[u];
      }
    JetMatrix f(k, k, spec.ring().zero());
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        for (std::size_t i = 0; i < nb; ++i) f(a, b) += basis[i] * x[(a * k + b) * nb + i];
    bool invertible = true;
    for (std::size_t p = 0; p < spec.ring().support().size() && invertible; ++p)
      invertible = !determinant(f.values_at(p)).is_zero();
    if (invertible) return true;
    if (kernel.empty()) return false;
  }
  return false;
}

}  // namespace pickfam
