#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace bqf {

using Real = boost::multiprecision::mpfr_float;

// Working precision plus the absolute error we aim for.
struct Precision {
  unsigned bits = 256;
  int target_log10 = -30;  // target_abs_err = 10^target_log10

  static Precision make(unsigned bits, int target_log10);
  static Precision table() { return make(128, -30); }
  static Precision standard() { return make(256, -30); }

  Precision raised(unsigned extra_bits) const;
  Real target_abs_err() const;
  unsigned digits10() const;
};

// mpfr_float in boost 1.74 only has a process-wide default precision, so
// every computation pins it through this guard and restores on exit.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  explicit PrecisionScope(const Precision& p) : PrecisionScope(p.bits) {}
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

unsigned current_bits();

Real pi();
Real ldexp2(int e);  // 2^e at current precision
Real pow10(int e);
Real eps_rel();      // 2^(-current_bits)
// copies keep their source precision in boost 1.74; this rounds to the current one
Real rounded(const Real& x);

struct Complex {
  Real re;
  Real im;

  Complex() : re(0), im(0) {}
  Complex(const Real& r) : re(r), im(0) {}  // NOLINT: implicit on purpose
  Complex(const Real& r, const Real& i) : re(r), im(i) {}
  Complex(int r) : re(r), im(0) {}  // NOLINT
  Complex(long r) : re(r), im(0) {}  // NOLINT
  Complex(long long r) : re(r), im(0) {}  // NOLINT
  Complex(double r) : re(r), im(0) {}  // NOLINT

  static Complex i() { return {Real(0), Real(1)}; }

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex& operator*=(const Real& s);
  Complex& operator/=(const Real& s);
  Complex operator-() const { return {Real(-re), Real(-im)}; }
};

Complex operator+(Complex a, const Complex& b);
Complex operator-(Complex a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator*(Complex a, const Real& s);
Complex operator*(const Real& s, Complex a);
Complex operator/(Complex a, const Real& s);

Complex conj(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Real abs(const Complex& z);
Real arg(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);
Complex sqrt(const Complex& z);
Complex pow(const Complex& z, long n);
Complex polar(const Real& r, const Real& theta);
Complex expi(const Real& theta);      // e^{i theta}
Complex e2pii(const Real& x);         // e^{2 pi i x}
Complex cot(const Complex& z);

std::string to_string(const Real& x, int digits = 20);
std::string to_string(const Complex& z, int digits = 20);
std::ostream& operator<<(std::ostream& os, const Complex& z);

}  // namespace bqf
