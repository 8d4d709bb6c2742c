#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

namespace nilhom {

using Rational = mpq_class;

/// Complex number with exact rational real and imaginary parts.  This is the
/// coefficient ring of the whole symbolic layer; magnetic momenta carry a
/// factor of i, everything else stays real.
struct ComplexRational {
  Rational re{0};
  Rational im{0};

  ComplexRational() = default;
  ComplexRational(long n) : re(n) {}  // NOLINT: implicit on purpose
  ComplexRational(Rational r) : re(std::move(r)) {}
  ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static ComplexRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  ComplexRational conj() const { return {re, Rational(-im)}; }

  double real_d() const { return re.get_d(); }
  double imag_d() const { return im.get_d(); }

  ComplexRational& operator+=(const ComplexRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexRational& operator-=(const ComplexRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  ComplexRational& operator*=(const ComplexRational& o) {
    Rational r(re * o.re - im * o.im);
    Rational i(re * o.im + im * o.re);
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
  friend ComplexRational operator-(const ComplexRational& a) {
    return {Rational(-a.re), Rational(-a.im)};
  }
  friend ComplexRational operator/(const ComplexRational& a, const ComplexRational& b) {
    Rational n(b.re * b.re + b.im * b.im);
    return {Rational((a.re * b.re + a.im * b.im) / n), Rational((a.im * b.re - a.re * b.im) / n)};
  }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const ComplexRational& a, const ComplexRational& b) { return !(a == b); }

  std::string str() const;
};

/// Exact rational from "3", "-1.25", "3/4".  Throws std::invalid_argument.
Rational rational_from_decimal(const std::string& text);

}  // namespace nilhom
