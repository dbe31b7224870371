#include "pickfam/rational.hpp"

#include <cmath>

#include "pickfam/errors.hpp"

namespace pickfam {

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  Rational d = o.norm2();
  if (sgn(d) == 0) throw std::domain_error("division by zero in Q(i)");
  Rational re = (re_ * o.re_ + im_ * o.im_) / d;
  Rational im = (im_ * o.re_ - re_ * o.im_) / d;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussRational pow(const GaussRational& base, unsigned exponent) {
  GaussRational result(1);
  GaussRational b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw InvalidArgument("empty rational literal");
  try {
    if (s.find('/') != std::string::npos) {
      Rational q(s, 10);
      if (sgn(q.get_den()) == 0) throw InvalidArgument("zero denominator in '" + s + "'");
      q.canonicalize();
      return q;
    }
    // Decimal with optional exponent.
    std::string mantissa = s;
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
      mantissa = s.substr(0, e);
      exp10 = std::stol(s.substr(e + 1));
    }
    bool negative = false;
    if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
      negative = mantissa[0] == '-';
      mantissa.erase(mantissa.begin());
    }
    std::string digits;
    bool seen_point = false;
    for (char c : mantissa) {
      if (c == '.' && !seen_point) {
        seen_point = true;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(c))) throw InvalidArgument("bad rational literal '" + s + "'");
      digits.push_back(c);
      if (seen_point) --exp10;
    }
    if (digits.empty()) throw InvalidArgument("bad rational literal '" + s + "'");
    mpz_class num(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    Rational q = exp10 >= 0 ? Rational(num * scale) : Rational(num, scale);
    q.canonicalize();
    return negative ? Rational(-q) : q;
  } catch (const std::invalid_argument&) {
    throw InvalidArgument("bad rational literal '" + s + "'");
  } catch (const std::out_of_range&) {
    throw InvalidArgument("bad rational literal '" + s + "'");
  }
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const GaussRational& z) {
  if (z.is_real()) return to_string(z.re());
  return to_string(z.re()) + (sgn(z.im()) < 0 ? "-" : "+") + to_string(abs(z.im())) + "i";
}

Rational quantize(double x, unsigned bits) {
  if (!std::isfinite(x)) throw InvalidArgument("cannot quantize a non-finite value");
  double scaled = std::nearbyint(std::ldexp(x, static_cast<int>(bits)));
  mpz_class num;
  mpz_set_d(num.get_mpz_t(), scaled);
  mpz_class den = 1;
  den <<= bits;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

GaussRational quantize(Complex z, unsigned bits) {
  return {quantize(z.real(), bits), quantize(z.imag(), bits)};
}

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

}  // namespace pickfam
