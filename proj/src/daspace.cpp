#include "pickfam/daspace.hpp"

#include <algorithm>
#include <cmath>

#include "pickfam/errors.hpp"

namespace pickfam {

// ----------------------------------------------------------- BlaschkeProduct

BlaschkeProduct::BlaschkeProduct(std::vector<Root> zeros) : zeros_(std::move(zeros)) {
  for (const auto& r : zeros_) {
    if (r.multiplicity < 1) throw InvalidArgument("Blaschke zero multiplicity must be positive");
    if (!(r.location.norm2() < 1)) throw InvalidArgument("Blaschke zeros must lie in the open unit disc");
  }
}

int BlaschkeProduct::degree() const {
  int n = 0;
  for (const auto& r : zeros_) n += r.multiplicity;
  return n;
}

std::vector<GaussRational> BlaschkeProduct::coefficients(std::size_t count) const {
  std::vector<GaussRational> acc(count);
  if (count == 0) return acc;
  acc[0] = 1;
  for (const auto& r : zeros_) {
    // (z - a)/(1 - conj(a) z) = -a + sum_{t>=1} conj(a)^{t-1} (1 - |a|^2) z^t
    const GaussRational& a = r.location;
    const GaussRational ac = a.conj();
    const GaussRational one_minus = GaussRational(Rational(1) - a.norm2());
    std::vector<GaussRational> factor(count);
    factor[0] = -a;
    GaussRational power(1);
    for (std::size_t t = 1; t < count; ++t) {
      factor[t] = power * one_minus;
      power *= ac;
    }
    for (int m = 0; m < r.multiplicity; ++m) {
      std::vector<GaussRational> next(count);
      for (std::size_t i = 0; i < count; ++i) {
        if (acc[i].is_zero()) continue;
        for (std::size_t j = 0; i + j < count; ++j)
          if (!factor[j].is_zero()) next[i + j] += acc[i] * factor[j];
      }
      acc = std::move(next);
    }
  }
  return acc;
}

Complex BlaschkeProduct::operator()(Complex z) const {
  Complex b = 1.0;
  for (const auto& r : zeros_) {
    const Complex a = r.location.to_complex();
    const Complex f = (z - a) / (1.0 - std::conj(a) * z);
    for (int m = 0; m < r.multiplicity; ++m) b *= f;
  }
  return b;
}

GaussRational BlaschkeProduct::evaluate(const GaussRational& z) const {
  GaussRational b(1);
  for (const auto& r : zeros_) {
    const GaussRational f = (z - r.location) / (GaussRational(1) - r.location.conj() * z);
    b *= pow(f, static_cast<unsigned>(r.multiplicity));
  }
  return b;
}

double BlaschkeProduct::max_zero_modulus() const {
  double m = 0;
  for (const auto& r : zeros_) m = std::max(m, std::sqrt(r.location.norm2().get_d()));
  return m;
}

// --------------------------------------------------------------- KernelModel

Complex KernelModel::NumericPoly::operator()(const Point& z) const {
  Complex sum = 0;
  for (const auto& [e, c] : terms) {
    Complex m = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) m *= z[i];
    sum += m;
  }
  return sum;
}

KernelModel::KernelModel(int vars, std::size_t block, std::size_t rank, std::vector<BasisMatrix> basis,
                         TailKernel tail, double truncation_bound)
    : vars_(vars),
      block_(block),
      rank_(rank),
      basis_(std::move(basis)),
      tail_(std::move(tail)),
      truncation_bound_(truncation_bound) {
  const std::size_t n = basis_.size();
  for (const auto& b : basis_)
    if (b.rows != block_ || b.cols != rank_ || b.entries.size() != block_ * rank_)
      throw InvalidShape("basis matrix shape does not match the kernel block size");

  gram_ = ExactMatrix(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t t = 0; t < n; ++t) {
      GaussRational g;
      for (std::size_t e = 0; e < block_ * rank_; ++e) {
        const auto& mr = basis_[r].entries[e];
        const auto& mt = basis_[t].entries[e];
        g += inner_product(mt.poly, mr.poly);
        g -= inner_product(mt.correction, mr.correction);
      }
      gram_(r, t) = g;
    }
  auto inv = inverse(gram_);
  if (!inv) throw NumericalFailure("Gram matrix of the finite part is singular");
  gram_inverse_ = std::move(*inv);
  gram_inverse_numeric_ = gram_inverse_.to_complex();

  for (const auto& b : basis_)
    for (const auto& e : b.entries) {
      NumericPoly p;
      for (const auto& [ex, c] : e.poly.terms()) p.terms.emplace_back(ex, c.to_complex());
      poly_cache_.push_back(std::move(p));
      NumericPoly q;
      for (const auto& [ex, c] : e.correction.terms()) q.terms.emplace_back(ex, c.to_complex());
      correction_cache_.push_back(std::move(q));
    }
}

void KernelModel::check_point(const Point& z) const {
  if (static_cast<int>(z.size()) != vars_) throw InvalidShape("point dimension does not match the kernel");
  if (!in_unit_ball(z)) throw PointOutsideBall();
}

Complex KernelModel::entry_value(std::size_t flat, const Point& z) const {
  Complex v = poly_cache_[flat](z);
  if (const auto* bt = std::get_if<BlaschkeTail>(&tail_); bt && !correction_cache_[flat].terms.empty())
    v -= bt->product(z[0]) * correction_cache_[flat](z);
  return v;
}

Eigen::MatrixXcd KernelModel::basis_column_values(const Point& z, std::size_t column) const {
  const auto n = static_cast<Eigen::Index>(basis_.size());
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(block_), n);
  const std::size_t per = block_ * rank_;
  for (Eigen::Index r = 0; r < n; ++r)
    for (std::size_t row = 0; row < block_; ++row)
      a(static_cast<Eigen::Index>(row), r) =
          entry_value(static_cast<std::size_t>(r) * per + row * rank_ + column, z);
  return a;
}

Complex KernelModel::tail_value(const Point& z, const Point& w) const {
  return std::visit(
      [&](const auto& t) -> Complex {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, NoTail>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, MonomialTail>) {
          const Complex x = z[0] * std::conj(w[0]);
          return std::pow(x, t.exponent) / (1.0 - x);
        } else if constexpr (std::is_same_v<T, BlaschkeTail>) {
          const Complex x = z[0] * std::conj(w[0]);
          return t.product(z[0]) * std::conj(t.product(w[0])) / (1.0 - x);
        } else {
          const Complex zu = z[0] * std::conj(w[0]);
          const Complex wv = z[1] * std::conj(w[1]);
          return (wv + zu * zu + zu * wv) / (1.0 - zu - wv);
        }
      },
      tail_);
}

GaussRational KernelModel::tail_value_exact(const ExactPoint& z, const ExactPoint& w) const {
  return std::visit(
      [&](const auto& t) -> GaussRational {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, NoTail>) {
          return GaussRational(0);
        } else if constexpr (std::is_same_v<T, MonomialTail>) {
          const GaussRational x = z[0] * w[0].conj();
          return pow(x, static_cast<unsigned>(t.exponent)) / (GaussRational(1) - x);
        } else if constexpr (std::is_same_v<T, BlaschkeTail>) {
          const GaussRational x = z[0] * w[0].conj();
          return t.product.evaluate(z[0]) * t.product.evaluate(w[0]).conj() / (GaussRational(1) - x);
        } else {
          const GaussRational zu = z[0] * w[0].conj();
          const GaussRational wv = z[1] * w[1].conj();
          return (wv + zu * zu + zu * wv) / (GaussRational(1) - zu - wv);
        }
      },
      tail_);
}

Eigen::MatrixXcd KernelModel::evaluate(const Point& z, const Point& w) const {
  check_point(z);
  check_point(w);
  const auto k = static_cast<Eigen::Index>(block_);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(k, k);
  if (!basis_.empty())
    for (std::size_t c = 0; c < rank_; ++c) {
      const Eigen::MatrixXcd az = basis_column_values(z, c);
      const Eigen::MatrixXcd aw = basis_column_values(w, c);
      out += az * gram_inverse_numeric_ * aw.adjoint();
    }
  const Complex t = tail_value(z, w) * static_cast<double>(rank_);
  for (Eigen::Index i = 0; i < k; ++i) out(i, i) += t;
  return out;
}

Complex KernelModel::scalar(const Point& z, const Point& w) const {
  if (block_ != 1) throw InvalidShape("scalar evaluation of a matrix-valued kernel");
  return evaluate(z, w)(0, 0);
}

ExactMatrix KernelModel::evaluate_exact(const ExactPoint& z, const ExactPoint& w) const {
  if (static_cast<int>(z.size()) != vars_ || static_cast<int>(w.size()) != vars_)
    throw InvalidShape("point dimension does not match the kernel");
  if (!in_unit_ball(z) || !in_unit_ball(w)) throw PointOutsideBall();
  const std::size_t n = basis_.size();
  auto value = [&](std::size_t r, std::size_t e, const ExactPoint& x) {
    const auto& be = basis_[r].entries[e];
    GaussRational v = be.poly.evaluate(x);
    if (const auto* bt = std::get_if<BlaschkeTail>(&tail_); bt && !be.correction.is_zero())
      v -= bt->product.evaluate(x[0]) * be.correction.evaluate(x);
    return v;
  };
  // Values M_r(z), M_t(w) per entry.
  std::vector<std::vector<GaussRational>> mz(n), mw(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t e = 0; e < block_ * rank_; ++e) {
      mz[r].push_back(value(r, e, z));
      mw[r].push_back(value(r, e, w));
    }
  ExactMatrix out(block_, block_);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t t = 0; t < n; ++t) {
      const GaussRational& g = gram_inverse_(r, t);
      if (g.is_zero()) continue;
      for (std::size_t a = 0; a < block_; ++a)
        for (std::size_t b = 0; b < block_; ++b)
          for (std::size_t c = 0; c < rank_; ++c) out(a, b) += g * mz[r][a * rank_ + c] * mw[t][b * rank_ + c].conj();
    }
  const GaussRational t = tail_value_exact(z, w) * GaussRational(static_cast<long>(rank_));
  for (std::size_t i = 0; i < block_; ++i) out(i, i) += t;
  return out;
}

MultiPoly KernelModel::truncated_entry(std::size_t r, std::size_t row, std::size_t col, int degree) const {
  const BasisEntry& e = basis_.at(r)(row, col);
  MultiPoly p = e.poly.truncated(degree);
  if (const auto* bt = std::get_if<BlaschkeTail>(&tail_); bt && !e.correction.is_zero()) {
    const auto b = bt->product.coefficients(static_cast<std::size_t>(degree) + 1);
    MultiPoly bq(1);
    for (const auto& [ex, c] : e.correction.terms())
      for (int n = 0; ex[0] + n <= degree; ++n) bq.add_term({ex[0] + n}, c * b[static_cast<std::size_t>(n)]);
    p -= bq;
  }
  return p;
}

Complex szego(const Point& z, const Point& w) { return 1.0 / (1.0 - dot(z, w)); }

// ------------------------------------------------------------ construction

namespace {

// Certified bound on the l2 norm of the coefficients of B q beyond degree N,
// from Cauchy estimates on circles |z| = rho inside the pole-free disc.
double blaschke_series_tail_bound(const BlaschkeProduct& b, const MultiPoly& q, int truncation) {
  if (q.is_zero()) return 0.0;
  const double r = b.max_zero_modulus();
  if (r == 0.0) {
    // B = z^n: B q is a polynomial; measure its tail exactly.
    double tail = 0;
    for (const auto& [e, c] : q.terms())
      if (e[0] + b.degree() > truncation) tail += c.norm2().get_d();
    return std::sqrt(tail);
  }
  double best = std::numeric_limits<double>::infinity();
  for (int step = 1; step < 20; ++step) {
    const double rho = 1.0 + (1.0 / r - 1.0) * step / 20.0;
    double bmax = 1.0;
    for (const auto& z : b.zeros()) {
      const double a = std::sqrt(z.location.norm2().get_d());
      bmax *= std::pow((rho + a) / (1.0 - a * rho), z.multiplicity);
    }
    double qmax = 0;
    for (const auto& [e, c] : q.terms()) qmax += std::sqrt(c.norm2().get_d()) * std::pow(rho, e[0]);
    const double c2 = bmax * qmax;
    const double bound =
        c2 * std::pow(rho, -static_cast<double>(truncation + 1)) / std::sqrt(1.0 - std::pow(rho, -2.0));
    best = std::min(best, bound);
  }
  return best;
}

TailKernel tail_for(const SubalgebraSpec& spec) {
  switch (spec.kind()) {
    case SubalgebraSpec::Kind::Semigroup:
      return MonomialTail{spec.numerical_semigroup().conductor_exponent()};
    case SubalgebraSpec::Kind::OnePlusIdeal:
      return BlaschkeTail{BlaschkeProduct(spec.roots())};
    case SubalgebraSpec::Kind::TwoVarExample:
      return TwoVarTail{};
  }
  return NoTail{};
}

// Lifts each jet entry to a polynomial and projects it off the tail space.
KernelModel build_kernel(const SubalgebraSpec& spec, const std::vector<JetMatrix>& elements, std::size_t k,
                         std::size_t s, int truncation) {
  TailKernel tail = tail_for(spec);
  const auto* blaschke = std::get_if<BlaschkeTail>(&tail);
  std::vector<GaussRational> bcoef;
  const std::size_t dim = spec.ring().dimension();
  if (blaschke) bcoef = blaschke->product.coefficients(dim);

  double bound = 0.0;
  std::vector<BasisMatrix> basis;
  for (const auto& m : elements) {
    BasisMatrix bm{k, s, {}};
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < s; ++c) {
        BasisEntry e{spec.ring().lift(m(r, c)), MultiPoly(spec.vars())};
        if (blaschke) {
          // P_{BH^2} p = B q with q_j = sum_{i>=j} p_i conj(b_{i-j}); deg p < deg B.
          std::vector<GaussRational> q(dim);
          for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t i = j; i < dim; ++i) {
              const GaussRational pi = e.poly.coefficient({static_cast<int>(i)});
              if (!pi.is_zero()) q[j] += pi * bcoef[i - j].conj();
            }
          e.correction = MultiPoly::univariate(q);
          bound = std::max(bound, blaschke_series_tail_bound(blaschke->product, e.correction, truncation));
        }
        bm.entries.push_back(std::move(e));
      }
    basis.push_back(std::move(bm));
  }
  if (bound > kTruncationTolerance)
    throw TruncationInsufficient("Blaschke projection truncation bound " + std::to_string(bound) +
                                 " exceeds tolerance at degree " + std::to_string(truncation));
  return KernelModel(spec.vars(), k, s, std::move(basis), std::move(tail), bound);
}

std::vector<JetMatrix> as_scalar_elements(const std::vector<JetElement>& jets) {
  std::vector<JetMatrix> out;
  for (const auto& j : jets) out.emplace_back(1, 1, j);
  return out;
}

}  // namespace

KernelModel submodule_kernel(const SubalgebraSpec& spec, const JetElement& u, int truncation) {
  if (!u.is_unit()) throw NotAUnit();
  return build_kernel(spec, as_scalar_elements(submodule_basis(spec, u)), 1, 1, truncation);
}

KernelModel cyclic_kernel(const SubalgebraSpec& spec, const JetElement& v, int truncation) {
  if (v.is_zero()) throw InvalidArgument("cyclic generator must be nonzero");
  auto basis = cyclic_module_basis(spec, v);
  if (basis.size() != spec.subalgebra_basis().size())
    throw InvalidArgument("generator does not span a full-dimensional module");
  return build_kernel(spec, as_scalar_elements(basis), 1, 1, truncation);
}

KernelModel matrix_submodule_kernel(const SubalgebraSpec& spec, const JetMatrix& z, int truncation) {
  if (spec.vars() != 1) throw InvalidArgument("matrix kernels are supported for one-variable specs only");
  const std::size_t s = z.rows();
  const std::size_t k = z.cols();
  if (s < 1 || s > k) throw InvalidShape("Q_s parameter must be s x k with 1 <= s <= k");
  if (!is_surjective(spec, z)) throw InvalidArgument("Q_s parameter is not surjective");
  const JetMatrix x = z.transpose();  // k x s
  const auto& sub = spec.subalgebra_basis();
  const JetElement zero = spec.ring().zero();

  // Span of E_pq b_i X: row p equals b_i times row q of X.
  std::vector<JetMatrix> spanning;
  std::vector<std::vector<GaussRational>> rows;
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t q = 0; q < k; ++q)
      for (const auto& b : sub) {
        JetMatrix m(k, s, zero);
        for (std::size_t c = 0; c < s; ++c) m(p, c) = b * x(q, c);
        std::vector<GaussRational> flat;
        for (std::size_t r = 0; r < k; ++r)
          for (std::size_t c = 0; c < s; ++c) {
            auto f = m(r, c).flat();
            flat.insert(flat.end(), f.begin(), f.end());
          }
        spanning.push_back(std::move(m));
        rows.push_back(std::move(flat));
      }
  std::vector<JetMatrix> basis;
  if (!rows.empty())
    for (auto i : independent_rows(rows)) basis.push_back(spanning[i]);
  return build_kernel(spec, basis, k, s, truncation);
}

}  // namespace pickfam
