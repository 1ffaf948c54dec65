#include "bqf/numerics.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace bqf {

namespace {
unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}
}  // namespace

Precision Precision::make(unsigned bits, int target_log10) {
  if (bits < 64) throw std::invalid_argument("precision: need at least 64 bits");
  // target_abs_err >= 2^(-bits+16)
  double floor_log10 = (-static_cast<double>(bits) + 16.0) * 0.30102999566398120;
  if (static_cast<double>(target_log10) < floor_log10)
    throw std::invalid_argument("precision: target error below what the mantissa can hold");
  Precision p;
  p.bits = bits;
  p.target_log10 = target_log10;
  return p;
}

Precision Precision::raised(unsigned extra_bits) const {
  Precision p = *this;
  p.bits += extra_bits;
  return p;
}

Real Precision::target_abs_err() const { return pow10(target_log10); }

unsigned Precision::digits10() const { return bits_to_digits10(bits); }

PrecisionScope::PrecisionScope(unsigned bits) : saved_(Real::default_precision()) {
  Real::default_precision(bits_to_digits10(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

unsigned current_bits() {
  Real x;
  return static_cast<unsigned>(mpfr_get_prec(x.backend().data()));
}

Real pi() {
  Real x;
  mpfr_const_pi(x.backend().data(), MPFR_RNDN);
  return x;
}

Real ldexp2(int e) {
  Real x(1);
  mpfr_mul_2si(x.backend().data(), x.backend().data(), e, MPFR_RNDN);
  return x;
}

Real pow10(int e) { return boost::multiprecision::pow(Real(10), e); }

Real rounded(const Real& x) {
  Real r;
  mpfr_set(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

Real eps_rel() { return ldexp2(-static_cast<int>(current_bits())); }

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}
Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}
Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = r;
  return *this;
}
Complex& Complex::operator/=(const Complex& o) {
  Real d = o.re * o.re + o.im * o.im;
  Real r = (re * o.re + im * o.im) / d;
  im = (im * o.re - re * o.im) / d;
  re = r;
  return *this;
}
Complex& Complex::operator*=(const Real& s) {
  re *= s;
  im *= s;
  return *this;
}
Complex& Complex::operator/=(const Real& s) {
  re /= s;
  im /= s;
  return *this;
}

Complex operator+(Complex a, const Complex& b) { return a += b; }
Complex operator-(Complex a, const Complex& b) { return a -= b; }
Complex operator*(const Complex& a, const Complex& b) {
  Complex r = a;
  r *= b;
  return r;
}
Complex operator/(const Complex& a, const Complex& b) {
  Complex r = a;
  r /= b;
  return r;
}
Complex operator*(Complex a, const Real& s) { return a *= s; }
Complex operator*(const Real& s, Complex a) { return a *= s; }
Complex operator/(Complex a, const Real& s) { return a /= s; }

Complex conj(const Complex& z) { return {z.re, Real(-z.im)}; }
Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
Real abs(const Complex& z) { return boost::multiprecision::sqrt(norm(z)); }
Real arg(const Complex& z) { return boost::multiprecision::atan2(z.im, z.re); }

Complex exp(const Complex& z) {
  Real m = boost::multiprecision::exp(z.re);
  return {Real(m * boost::multiprecision::cos(z.im)), Real(m * boost::multiprecision::sin(z.im))};
}

Complex log(const Complex& z) { return {Real(boost::multiprecision::log(abs(z))), arg(z)}; }

Complex sqrt(const Complex& z) {
  if (z.re == 0 && z.im == 0) return {};
  Real r = abs(z);
  Real a = boost::multiprecision::sqrt((r + boost::multiprecision::abs(z.re)) / 2);
  if (z.re >= 0) return {a, Real(z.im / (2 * a))};
  Real b = z.im >= 0 ? a : Real(-a);
  return {Real(boost::multiprecision::abs(z.im) / (2 * a)), b};
}

Complex pow(const Complex& z, long n) {
  if (n < 0) return Complex(Real(1)) / pow(z, -n);
  Complex result(Real(1));
  Complex base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

Complex polar(const Real& r, const Real& theta) {
  return {Real(r * boost::multiprecision::cos(theta)), Real(r * boost::multiprecision::sin(theta))};
}

Complex expi(const Real& theta) {
  return {Real(boost::multiprecision::cos(theta)), Real(boost::multiprecision::sin(theta))};
}

Complex e2pii(const Real& x) {
  // reduce first so huge arguments keep their fractional part
  Real f = x - boost::multiprecision::floor(x);
  return expi(2 * pi() * f);
}

Complex cot(const Complex& z) {
  // cot z = i (e^{2iz} + 1)/(e^{2iz} - 1), pick the decaying exponential
  if (z.im >= 0) {
    Complex w = exp(Complex(Real(-2 * z.im), Real(2 * z.re)));
    return Complex::i() * (w + Complex(Real(1))) / (w - Complex(Real(1)));
  }
  Complex w = exp(Complex(Real(2 * z.im), Real(-2 * z.re)));
  return Complex::i() * (Complex(Real(1)) + w) / (Complex(Real(1)) - w);
}

std::string to_string(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

std::string to_string(const Complex& z, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << z.re << (z.im < 0 ? " - " : " + ") << boost::multiprecision::abs(z.im) << "i";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Complex& z) {
  return os << "(" << z.re << ", " << z.im << ")";
}

}  // namespace bqf
