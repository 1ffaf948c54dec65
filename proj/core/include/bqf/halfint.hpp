#pragma once

#include "bqf/numerics.hpp"
#include "bqf/qforms.hpp"
#include "bqf/rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace bqf {

// K^+(m, n, a), direct sum over units mod 4a
Complex kloosterman_plus(Int m, Int n, Int a);

// S_{a,Delta,delta}(n), generalized genus character included
Complex salie_sum(Int a, Int Delta, Int delta, Int n);

// right-hand side of the Salie/Kloosterman identity
Complex salie_via_kloosterman(Int a, Int Delta, Int delta, Int n);

struct PoincareCoeff {
  Real value;
  Real tail_bound;  // heuristic for the omitted a > cutoff
  Int cutoff = 0;
};

// c^+ of the weight 3/2 - k Maass-Poincare series with principal part q^{n}, n < 0
PoincareCoeff poincare_coeff_plus(int k, Int n, Int m, Int N, const Precision& prec, Int a_cutoff = 0);

// c_{f_{k,Delta,delta}}(n) from Poincare coefficients (level N odd square-free)
Complex twisted_coeff_via_poincare(int k, Int Delta, Int delta, Int n, Int N, const Precision& prec,
                                   Int a_cutoff = 0);
// the same from the class-sum Fourier expansion of each f_{k,P}
Complex twisted_coeff_via_classes(int k, Int Delta, Int delta, Int n, const Precision& prec, Int a_cutoff = 0);

struct RatCoefEntry {
  Int n = 0;
  Real numeric;
  Real err;
  std::optional<Rational> rational;
};

struct RatCoefReport {
  int k = 0;
  Int delta = 0;
  std::map<Int, Int> principal_part;  // Delta -> c_F(-|Delta|)
  std::vector<RatCoefEntry> entries;
  bool all_rational() const;
};

// pi^{1-k} |delta|^{1/2-k} sum_Delta c_F(-|Delta|) c_{f_{k,Delta,delta}}(n), n = 1..n_max
RatCoefReport ratcoef_check(int k, Int delta, const std::map<Int, Int>& principal_part, Int n_max,
                            const Precision& prec, const BigInt& den_bound = BigInt(10000));

}  // namespace bqf
