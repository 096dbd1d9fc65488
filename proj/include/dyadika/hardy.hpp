#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dyadika/dyadic_domain.hpp"

namespace dyadika {

class Exponent {
 public:
  explicit Exponent(double p);

  double value() const { return p_; }
  double reciprocal() const { return 1.0 / p_; }
  std::string label() const;  // "1/4", "1/2", "1", or the decimal value

 private:
  double p_;
};

template <Scalar T>
class DyadicMartingale {
 public:
  explicit DyadicMartingale(StepFunction<T> terminal);

  static DyadicMartingale zero(Resolution m) { return DyadicMartingale(StepFunction<T>(m)); }

  Resolution resolution() const { return terminal_.resolution(); }
  const StepFunction<T>& terminal() const { return terminal_; }
  // F_m on the 2^m cosets of level m.
  std::span<const T> level_values(int m) const;
  // F_m expanded to full resolution.
  StepFunction<T> level(int m) const;

 private:
  StepFunction<T> terminal_;
  std::vector<std::vector<T>> levels_;
};

// Integral of |f|^p.
template <Scalar T> double lp_power(const StepFunction<T>& f, Exponent p);
template <Scalar T> double lp_norm(const StepFunction<T>& f, Exponent p);
// sup over lambda of lambda mu(|f| >= lambda)^{1/p}; attained at a value of |f|.
template <Scalar T> double weak_lp_norm(const StepFunction<T>& f, Exponent p);

template <Scalar T> StepFunction<T> maximal(const DyadicMartingale<T>& F);
template <Scalar T> double hp_norm(const DyadicMartingale<T>& F, Exponent p);
// H_p norm of the martingale f - S_{2^n} f (zero up to level n).
template <Scalar T> double modulus_hp(const DyadicMartingale<T>& F, int n, Exponent p);
// sup over h in I_n of || f(. + h) - f ||_p, p >= 1.
template <Scalar T> double modulus_lp(const StepFunction<T>& f, int n, Exponent p);
// || f - S_{2^n} f ||_2, which is the best L_2 approximation error by degree < 2^n.
template <Scalar T> double best_approximation_l2(const StepFunction<T>& f, int n);

template <Scalar T>
struct Atom {
  Exponent p;
  DyadicInterval support;
  StepFunction<T> f;
};

template <Scalar T>
struct AtomCertificate {
  bool supported = false;
  bool mean_zero = false;
  bool bounded = false;
  bool tight = false;  // sup |f| == mu(I)^{-1/p}
  double sup_abs = 0.0;
  double bound = 0.0;
  std::optional<Atom<T>> atom;

  bool ok() const { return supported && mean_zero && bounded; }
  std::vector<std::string> violations() const;
};

template <Scalar T>
AtomCertificate<T> certify_atom(const StepFunction<T>& f, const DyadicInterval& I, Exponent p);

// F_n = sum_k mu_k S_{2^n} a_k for n <= A, as the martingale of the level-A terminal.
template <Scalar T>
DyadicMartingale<T> atomic_build(std::span<const T> weights, std::span<const Atom<T>> atoms, int level, Resolution m);

// (sum_k |mu_k|^p)^{1/p}.
double lemma0_bound(std::span<const double> weights, Exponent p);

}  // namespace dyadika
