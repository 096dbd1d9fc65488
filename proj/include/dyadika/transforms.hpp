#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dyadika/dyadic_domain.hpp"
#include "dyadika/index_math.hpp"

namespace dyadika {

template <Scalar T>
class Spectrum {
 public:
  explicit Spectrum(Resolution m) : m_(m), coeffs_(m.cosets(), from_int<T>(0)) {}
  Spectrum(Resolution m, std::vector<T> coeffs) : m_(m), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != m_.cosets()) throw std::invalid_argument("coefficient count does not match resolution");
  }

  Resolution resolution() const { return m_; }
  std::size_t size() const { return coeffs_.size(); }
  const T& operator[](std::size_t n) const { return coeffs_[n]; }
  T& operator[](std::size_t n) { return coeffs_[n]; }
  std::span<const T> coefficients() const { return coeffs_; }

  bool operator==(const Spectrum&) const = default;

 private:
  Resolution m_;
  std::vector<T> coeffs_;
};

// +1 or -1: w_n evaluated on the coset with the given coordinate word.
inline int walsh_sign(std::uint64_t n, std::uint32_t word) {
  return (__builtin_popcountll(n & word) & 1) ? -1 : 1;
}

// Coordinate words of every coset at resolution M, cached per M.
const std::vector<std::uint32_t>& coordinate_words(Resolution m);

template <Scalar T> StepFunction<T> rademacher(int k, Resolution m);
template <Scalar T> StepFunction<T> walsh(std::uint64_t n, Resolution m);

// Butterfly transform, O(2^M M).
template <Scalar T> Spectrum<T> analyze(const StepFunction<T>& f);
// Inner products against every w_n, O(4^M).
template <Scalar T> Spectrum<T> analyze_naive(const StepFunction<T>& f);
template <Scalar T> StepFunction<T> synthesize(const Spectrum<T>& c);

// D_n by direct summation of w_0 .. w_{n-1}.
template <Scalar T> StepFunction<T> dirichlet(std::uint64_t n, Resolution m);
// D_{2^k}: 2^k on I_k, 0 elsewhere.
template <Scalar T> StepFunction<T> dirichlet_dyadic(int k, Resolution m);
// K_{2^k}: (2^k+1)/2 on I_k, 2^{t-1} on I_k(e_t) for t < k, 0 elsewhere.
template <Scalar T> StepFunction<T> fejer_dyadic(int k, Resolution m);

enum class KernelMethod { direct, dyadic_closed, decomposition_9a };
std::string to_string(KernelMethod method);

template <Scalar T> StepFunction<T> fejer_kernel(std::uint64_t n, Resolution m, KernelMethod method = KernelMethod::direct);
// n K_n, which is integer valued.
template <Scalar T> StepFunction<T> scaled_fejer_kernel(std::uint64_t n, Resolution m, KernelMethod method = KernelMethod::direct);

// Incremental integer evaluation of D_n and n K_n for n = 0, 1, 2, ...
class FejerSweep {
 public:
  explicit FejerSweep(Resolution m);

  void advance();
  void advance_to(std::uint64_t n);
  std::uint64_t n() const { return n_; }
  Resolution resolution() const { return m_; }
  const std::vector<std::int64_t>& dirichlet() const { return d_; }
  const std::vector<std::int64_t>& scaled_kernel() const { return s_; }

 private:
  Resolution m_;
  std::uint64_t n_ = 0;
  const std::vector<std::uint32_t>* words_;
  std::vector<std::int64_t> d_;
  std::vector<std::int64_t> s_;
};

template <Scalar T> StepFunction<T> partial_sum(const StepFunction<T>& f, std::uint64_t n);
template <Scalar T> StepFunction<T> partial_sum(const Spectrum<T>& c, std::uint64_t n);

enum class MeanMethod { direct, multiplier };

template <Scalar T> StepFunction<T> fejer_mean(const StepFunction<T>& f, std::uint64_t n, MeanMethod method = MeanMethod::multiplier);
template <Scalar T> StepFunction<T> fejer_mean(const Spectrum<T>& c, std::uint64_t n);

// Block m of the spectrum ({0} for m = 0, [2^{m-1}, 2^m) otherwise) is
// multiplied by r_m(t); r_M is taken as +1.
template <Scalar T> StepFunction<T> conjugate(const StepFunction<T>& f, const Point& t);

struct IdentityCheck {
  std::string identity;
  std::uint64_t n = 0;
  std::string method_pair;
  double max_abs_gap = 0.0;
  bool exact_zero = false;
};

// D_{j+2^m} = D_{2^m} + w_{2^m} D_j.
template <Scalar T> IdentityCheck shift_lemma_check(std::uint64_t j, int m, Resolution res);
// (2^n-1)K_{2^n-1} = sum_k (prod_{j>k} w_{2^j}) (2^k K_{2^k} + (2^k-1) D_{2^k}).
template <Scalar T> IdentityCheck expansion_check(int n, Resolution res);
template <Scalar T> StepFunction<T> expansion_rhs(int n, Resolution res);

// c [ sum_A (2^l|K_{2^l}| + 2^m|K_{2^m}| + 2^l sum_{k=l}^m D_{2^k}) + V(n) ] over the blocks (m, l).
template <Scalar T> StepFunction<T> lemma5_majorant(std::uint64_t n, Resolution m, const T& c);
// Smallest c with |n K_n| <= majorant pointwise.
double fit_lemma5_constant(std::uint64_t n, Resolution m);
double fit_lemma5_constant(const std::vector<std::int64_t>& scaled_kernel, std::uint64_t n, Resolution m);

struct Lemma3Row {
  int block_high = 0;
  int block_low = 0;
  DyadicInterval region;
  double bound = 0.0;
  std::int64_t minimum = 0;
  bool holds = false;
};

// E_l = I_{l+1}(e_{l-1} + e_l), and I_2(e_0 + e_1) for l = 0.
DyadicInterval lemma3_region(Resolution m, int l);
std::vector<Lemma3Row> lemma3_lower_bound(std::uint64_t n, Resolution m);
std::vector<Lemma3Row> lemma3_lower_bound(const std::vector<std::int64_t>& scaled_kernel, std::uint64_t n, Resolution m);

// max over x in I_M^{k,l} of the integral of |K_n(x+t)| over t in I_M,
// evaluated at the working resolution (default M + 4).
double lemma4_integral(std::uint64_t n, Resolution m, int k, int l, int working_bits = -1);

struct Lemma4Fit {
  double constant = 0.0;  // max of integral / 2^{k+l-2M}
  std::uint64_t n = 0;
  int k = 0;
  int l = 0;
};
// Sweeps n in [2^M, 2^{working}] and every region.
Lemma4Fit fit_lemma4_constant(Resolution m, int working_bits = -1);

template <Scalar T>
struct KernelReport {
  DyadicIndex n;
  StepFunction<T> direct;
  StepFunction<T> decomposed;
  StepFunction<T> majorant;
  T max_abs_gap;
};

template <Scalar T> KernelReport<T> kernel_report(std::uint64_t n, Resolution m, const T& c);

}  // namespace dyadika
