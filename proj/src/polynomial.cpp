#include "pickfam/polynomial.hpp"

#include <algorithm>
#include <numeric>

#include "pickfam/errors.hpp"

namespace pickfam {

MultiPoly MultiPoly::constant(int vars, const GaussRational& c) {
  MultiPoly p(vars);
  p.add_term(Exponent(static_cast<std::size_t>(vars), 0), c);
  return p;
}

MultiPoly MultiPoly::monomial(const Exponent& exponent, const GaussRational& c) {
  MultiPoly p(static_cast<int>(exponent.size()));
  p.add_term(exponent, c);
  return p;
}

MultiPoly MultiPoly::univariate(const std::vector<GaussRational>& coeffs) {
  MultiPoly p(1);
  for (std::size_t n = 0; n < coeffs.size(); ++n) p.add_term({static_cast<int>(n)}, coeffs[n]);
  return p;
}

int MultiPoly::total_degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
  return deg;
}

GaussRational MultiPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? GaussRational(0) : it->second;
}

void MultiPoly::add_term(const Exponent& e, const GaussRational& c) {
  if (static_cast<int>(e.size()) != vars_) throw InvalidShape("exponent length does not match variable count");
  if (std::any_of(e.begin(), e.end(), [](int a) { return a < 0; })) throw InvalidArgument("negative exponent");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Complex MultiPoly::operator()(const Point& z) const {
  if (static_cast<int>(z.size()) != vars_) throw InvalidShape("point dimension does not match variable count");
  Complex sum = 0;
  for (const auto& [e, c] : terms_) {
    Complex m = c.to_complex();
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) m *= z[i];
    sum += m;
  }
  return sum;
}

GaussRational MultiPoly::evaluate(const ExactPoint& z) const {
  if (static_cast<int>(z.size()) != vars_) throw InvalidShape("point dimension does not match variable count");
  GaussRational sum;
  for (const auto& [e, c] : terms_) {
    GaussRational m = c;
    for (std::size_t i = 0; i < e.size(); ++i) m *= pow(z[i], static_cast<unsigned>(e[i]));
    sum += m;
  }
  return sum;
}

MultiPoly MultiPoly::shifted(const Exponent& e) const {
  if (static_cast<int>(e.size()) != vars_) throw InvalidShape("shift exponent length mismatch");
  MultiPoly out(vars_);
  for (const auto& [a, c] : terms_) {
    Exponent b = a;
    for (std::size_t i = 0; i < b.size(); ++i) b[i] += e[i];
    out.terms_.emplace(std::move(b), c);
  }
  return out;
}

MultiPoly MultiPoly::truncated(int n) const {
  MultiPoly out(vars_);
  for (const auto& [e, c] : terms_)
    if (std::accumulate(e.begin(), e.end(), 0) <= n) out.terms_.emplace(e, c);
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.vars_ != vars_) throw InvalidShape("adding polynomials in different variable counts");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (o.vars_ != vars_) throw InvalidShape("subtracting polynomials in different variable counts");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const GaussRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.vars_ != b.vars_) throw InvalidShape("multiplying polynomials in different variable counts");
  MultiPoly out(a.vars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponent e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

Rational monomial_norm2(const Exponent& a) {
  Rational num(1);
  unsigned total = 0;
  for (int k : a) {
    num *= factorial(static_cast<unsigned>(k));
    total += static_cast<unsigned>(k);
  }
  return num / factorial(total);
}

GaussRational inner_product(const MultiPoly& p, const MultiPoly& q) {
  if (p.vars() != q.vars()) throw InvalidShape("inner product of polynomials in different variable counts");
  GaussRational sum;
  const auto& small = p.terms().size() <= q.terms().size() ? p.terms() : q.terms();
  const auto& large = p.terms().size() <= q.terms().size() ? q.terms() : p.terms();
  const bool p_small = &small == &p.terms();
  for (const auto& [e, c] : small) {
    auto it = large.find(e);
    if (it == large.end()) continue;
    GaussRational term = p_small ? c * it->second.conj() : it->second * c.conj();
    if (p.vars() > 1) term *= GaussRational(monomial_norm2(e));
    sum += term;
  }
  return sum;
}

bool in_unit_ball(const Point& z, double margin) {
  double n2 = 0;
  for (const auto& c : z) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    n2 += std::norm(c);
  }
  return n2 < 1.0 - margin;
}

bool in_unit_ball(const ExactPoint& z) {
  Rational n2(0);
  for (const auto& c : z) n2 += c.norm2();
  return n2 < 1;
}

Complex dot(const Point& z, const Point& w) {
  if (z.size() != w.size()) throw InvalidShape("point dimension mismatch");
  Complex s = 0;
  for (std::size_t i = 0; i < z.size(); ++i) s += z[i] * std::conj(w[i]);
  return s;
}

GaussRational dot(const ExactPoint& z, const ExactPoint& w) {
  if (z.size() != w.size()) throw InvalidShape("point dimension mismatch");
  GaussRational s;
  for (std::size_t i = 0; i < z.size(); ++i) s += z[i] * w[i].conj();
  return s;
}

Point to_complex(const ExactPoint& z) {
  Point p;
  p.reserve(z.size());
  for (const auto& c : z) p.push_back(c.to_complex());
  return p;
}

}  // namespace pickfam
