#pragma once

#include "bqf/modforms.hpp"
#include "bqf/numerics.hpp"
#include "bqf/qforms.hpp"

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace bqf {

class PoleProximityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Poles of f at the points z with R z in the orbit of tau_P for some R in reps
// (reps = {identity} for f_{k,P} itself, Hecke coset reps for translates).
struct PoleSpec {
  FormClass P;
  Int m = 1;
  std::vector<Mat2> reps;
};

class ModularFunction {
 public:
  int weight = 0;  // 2k
  Int level = 1;
  std::string tag;
  std::function<Complex(const Complex&)> evaluator;
  std::vector<PoleSpec> poles;

  Complex operator()(const Complex& z) const { return evaluator(z); }
  int k() const { return weight / 2; }

  ModularFunction operator+(const ModularFunction& o) const;
  ModularFunction operator-(const ModularFunction& o) const;
  ModularFunction scaled(const Complex& s, const std::string& coeff_tag) const;

  static ModularFunction zero(int weight, Int N = 1);
  static ModularFunction from_qseries(const QSeries& f, const std::string& tag);
};

// Linear combination sum c_i f_i (tags joined).
ModularFunction combine(const std::vector<std::pair<Complex, ModularFunction>>& terms);

struct FDReduction {
  Complex z;  // gamma * original, in the standard fundamental domain
  Mat2 gamma;
};
FDReduction reduce_to_fd(const Complex& z);

// f_{k,P}; level 1 uses the algebraic route, level N > 1 the direct class sum.
ModularFunction f_kP(const FormClass& P, int k, const Precision& prec);
// f_{k,D} = sum over all classes of discriminant D (non-primitive included)
ModularFunction f_kD(Int D, int k, const Precision& prec, Int N = 1);
ModularFunction eisenstein_function(int k, const Precision& prec);  // E_{2k}

Complex eval_fkP(const FormClass& P, int k, const Complex& z, const Precision& prec);

// independent routes
struct RouteOptions {
  Int a_cutoff = 0;      // 0 -> chosen from k
  bool tail_correction = true;
};
Complex eval_fkP_directsum(const FormClass& P, int k, const Complex& z, const Precision& prec,
                           const RouteOptions& o = {});
Complex eval_fkP_fourier(const FormClass& P, int k, const Complex& z, const Precision& prec,
                         const RouteOptions& o = {});

// S_{a,P}(n)
Complex exp_sum(const FormClass& P, Int a, Int n);
// c_{f_{k,P}}(n) from the Bessel series (k = 1 includes the divisor-sum correction)
Complex fourier_coeff_fkP(const FormClass& P, int k, Int n, const Precision& prec, Int a_cutoff = 0);
// the same coefficient read off the algebraic construction (level 1)
Complex fourier_coeff_algebraic(const FormClass& P, int k, Int n, const Precision& prec);

// f_{k,Delta,delta}
ModularFunction twisted(Int Delta, Int delta, int k, const Precision& prec, Int N = 1);
Complex eval_twisted(Int Delta, Int delta, int k, const Complex& z, const Precision& prec, Int N = 1);

// f | T_lambda
ModularFunction hecke_translate(const ModularFunction& f, const RelationVector& lambda);
Complex hecke_translate_eval(const ModularFunction& f, const RelationVector& lambda, const Complex& z);

// |f(g z) j(g,z)^{-2k} - f(z)|
Real modularity_residual(const ModularFunction& f, const Mat2& g, const Complex& z);

}  // namespace bqf
