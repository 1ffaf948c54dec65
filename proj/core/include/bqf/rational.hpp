#pragma once

#include "bqf/numerics.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <functional>
#include <optional>
#include <string>

namespace bqf {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

enum class RationalMethod { direct, reconstructed };

struct BigRationalResult {
  Rational value;
  RationalMethod method = RationalMethod::direct;
  BigInt denominator_bound{1};
  bool verified_at_two_precisions = false;

  static BigRationalResult direct(const Rational& v);
};

Real to_real(const Rational& q);
Real to_real(const BigInt& z);
Rational to_rational(const Real& x);  // exact binary value of x
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);

// Smallest-denominator convergent p/q of x with q <= den_bound and
// |x - p/q| <= eps. Caller should keep eps < 1/(2 den_bound^2) for uniqueness.
std::optional<Rational> rational_reconstruct(const Real& x, const Real& eps, const BigInt& den_bound);

struct Approximation {
  Real value;
  Real err;
};

// Runs `compute` at prec and at prec + extra bits; both must reconstruct
// to the same rational.
std::optional<BigRationalResult> reconstruct_verified(
    const std::function<Approximation(const Precision&)>& compute, const BigInt& den_bound,
    const Precision& prec, unsigned extra_bits = 64);

}  // namespace bqf
