#pragma once

#include "bqf/numerics.hpp"
#include "bqf/qforms.hpp"
#include "bqf/rational.hpp"

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace bqf {

// b in [0, 2a) with b^2 = D mod 4a
std::vector<Int> sqrt_mod_4a(Int D, Int a);

// Level-1 lookup: every reduced form of disc D -> class index.
class ClassIndex {
 public:
  explicit ClassIndex(Int D);
  Int disc() const { return D_; }
  const std::vector<FormClass>& classes() const { return classes_; }
  int find(const QForm& q) const;  // class index of an arbitrary form of disc D
  int index_of_class(const FormClass& c) const { return find(c.representative); }

 private:
  Int D_;
  std::vector<FormClass> classes_;
  std::unordered_map<std::int64_t, int> reduced_;  // key packs (a, b)
  std::vector<QForm> definite_keys_;
};

Int n_A(Int a, const FormClass& A);

struct ZetaPartial {
  Real value;          // sum_{a <= cutoff} n_A(a)/a^k
  Real tail_estimate;  // asymptotic tail, added by zeta_value
  Real tail_bound;     // crude rigorous bound for the omitted tail
  Int cutoff = 0;
  Int count = 0;       // sum_{a <= cutoff} n_A(a)
};

ZetaPartial zeta_partial(const FormClass& A, int k, Int cutoff, const Precision& prec);
// all level-1 classes of disc D at once, ordered as ClassIndex(D).classes()
std::vector<ZetaPartial> zeta_partial_all(const ClassIndex& idx, int k, Int cutoff, const Precision& prec);

struct ZetaOptions {
  Int cutoff = 400000;
  std::optional<BigInt> den_bound;  // default 2^4 (2k)! N^2
  Precision prec = Precision::table();
  bool cross_check = false;         // Eisenstein cycle integral oracle
};

struct ZetaRational {
  Int D = 0;
  int k = 0;
  Int N = 1;
  BigRationalResult value;
  Real numeric;
  Real err;
  std::optional<Complex> cross_check;
};

class ZetaReconstructionError : public std::runtime_error {
 public:
  ZetaReconstructionError(const std::string& m, Real v, Real e)
      : std::runtime_error(m), value(std::move(v)), err(std::move(e)) {}
  Real value, err;
};

BigInt default_zeta_den_bound(int k, Int N);

// D^{k-1/2} (zeta_A(k) + (-1)^k zeta_{-A}(k)) numerically, with error estimate
Approximation zeta_combination_numeric(const FormClass& A, int k, Int cutoff, const Precision& prec);
ZetaRational zeta_rational_combination(const FormClass& A, int k, const ZetaOptions& opts = {});

// Optional persistent store consulted by zeta_rational_combination (skipped
// when cross_check is requested). Keys encode class, k, cutoff, bound and bits.
class ZetaStore {
 public:
  virtual ~ZetaStore() = default;
  virtual std::optional<ZetaRational> load(const std::string& key) = 0;
  virtual void save(const std::string& key, const ZetaRational& z) = 0;
};
void set_zeta_store(std::shared_ptr<ZetaStore> store);  // nullptr disables
std::string zeta_store_key(const FormClass& A, int k, const ZetaOptions& opts);

// Same quantity via level lowering to level-1 zeta functions.
Approximation zeta_level_lowered(const FormClass& A, int k, Int cutoff, const Precision& prec);

// C(E_{2k}, A), computed with the cycles module.
Complex eisenstein_cycle_integral(int k, const QForm& A, const Precision& prec);

}  // namespace bqf
