#include "dyadika/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dyadika {

Exponent::Exponent(double p) : p_(p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("exponent must be positive");
  if (p > 2.0) throw std::invalid_argument("exponent above 2 is not supported");
}

std::string Exponent::label() const {
  const double r = 1.0 / p_;
  const double rr = std::nearbyint(r);
  if (std::fabs(r - rr) < 1e-9) return rr == 1.0 ? "1" : "1/" + std::to_string(static_cast<long>(rr));
  if (p_ == 2.0) return "2";
  return format_double(p_);
}

namespace {

// 1/p snapped to an integer when it is one up to rounding.
double snapped_reciprocal(Exponent p) {
  const double r = p.reciprocal();
  const double rr = std::nearbyint(r);
  return std::fabs(r - rr) < 1e-9 ? rr : r;
}

double power_of(double a, Exponent p) {
  if (p.value() == 1.0) return a;
  if (p.value() == 0.5) return std::sqrt(a);
  if (p.value() == 2.0) return a * a;
  return std::pow(a, p.value());
}

}  // namespace

template <Scalar T>
DyadicMartingale<T>::DyadicMartingale(StepFunction<T> terminal) : terminal_(std::move(terminal)) {
  const int M = terminal_.resolution().bits();
  levels_.resize(static_cast<std::size_t>(M) + 1);
  levels_[static_cast<std::size_t>(M)].assign(terminal_.values().begin(), terminal_.values().end());
  const T half = exp2_int<T>(-1);
  for (int m = M - 1; m >= 0; --m) {
    const auto& fine = levels_[static_cast<std::size_t>(m) + 1];
    auto& coarse = levels_[static_cast<std::size_t>(m)];
    coarse.resize(std::size_t{1} << m);
    for (std::size_t c = 0; c < coarse.size(); ++c) {
      coarse[c] = (fine[2 * c] + fine[2 * c + 1]) * half;
    }
  }
}

template <Scalar T>
std::span<const T> DyadicMartingale<T>::level_values(int m) const {
  if (m < 0 || m > resolution().bits()) throw std::out_of_range("martingale level outside 0..M");
  return levels_[static_cast<std::size_t>(m)];
}

template <Scalar T>
StepFunction<T> DyadicMartingale<T>::level(int m) const {
  const auto vals = level_values(m);
  const int shift = resolution().bits() - m;
  return StepFunction<T>::generate(resolution(), [&](std::size_t i) { return vals[i >> shift]; });
}

template <Scalar T>
double lp_power(const StepFunction<T>& f, Exponent p) {
  double sum = 0.0;
  for (const T& v : f.values()) sum += power_of(std::fabs(to_double<T>(v)), p);
  return std::ldexp(sum, -f.resolution().bits());
}

template <Scalar T>
double lp_norm(const StepFunction<T>& f, Exponent p) {
  return std::pow(lp_power(f, p), snapped_reciprocal(p));
}

template <Scalar T>
double weak_lp_norm(const StepFunction<T>& f, Exponent p) {
  std::vector<double> a;
  a.reserve(f.size());
  for (const T& v : f.values()) a.push_back(std::fabs(to_double<T>(v)));
  std::sort(a.begin(), a.end(), std::greater<>());
  const double r = snapped_reciprocal(p);
  const double total = static_cast<double>(a.size());
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) break;
    if (i + 1 < a.size() && a[i + 1] == a[i]) continue;
    const double mass = static_cast<double>(i + 1) / total;
    best = std::max(best, a[i] * std::pow(mass, r));
  }
  return best;
}

template <Scalar T>
StepFunction<T> maximal(const DyadicMartingale<T>& F) {
  const int M = F.resolution().bits();
  return StepFunction<T>::generate(F.resolution(), [&](std::size_t i) {
    T best = from_int<T>(0);
    for (int m = 0; m <= M; ++m) {
      T a = abs_value<T>(F.level_values(m)[i >> (M - m)]);
      if (a > best) best = a;
    }
    return best;
  });
}

template <Scalar T>
double hp_norm(const DyadicMartingale<T>& F, Exponent p) {
  return lp_norm(maximal(F), p);
}

template <Scalar T>
double modulus_hp(const DyadicMartingale<T>& F, int n, Exponent p) {
  const int M = F.resolution().bits();
  if (n < 0 || n > M) throw std::out_of_range("modulus level outside 0..M");
  const auto base = F.level_values(n);
  const auto tail = StepFunction<T>::generate(F.resolution(), [&](std::size_t i) {
    const T& fn = base[i >> (M - n)];
    T best = from_int<T>(0);
    for (int m = n + 1; m <= M; ++m) {
      T a = abs_value<T>(F.level_values(m)[i >> (M - m)] - fn);
      if (a > best) best = a;
    }
    return best;
  });
  return lp_norm(tail, p);
}

template <Scalar T>
double modulus_lp(const StepFunction<T>& f, int n, Exponent p) {
  const int M = f.resolution().bits();
  if (p.value() < 1.0) throw std::invalid_argument("L_p modulus needs p >= 1");
  if (n < 0 || n > M) throw std::out_of_range("modulus level outside 0..M");
  double best = 0.0;
  const std::size_t shifts = std::size_t{1} << (M - n);
  for (std::size_t h = 1; h < shifts; ++h) {
    const auto g = StepFunction<T>::generate(f.resolution(), [&](std::size_t i) {
      T d = f[i ^ h] - f[i];
      return d;
    });
    best = std::max(best, lp_norm(g, p));
  }
  return best;
}

template <Scalar T>
double best_approximation_l2(const StepFunction<T>& f, int n) {
  return lp_norm(f - coset_average(f, n), Exponent(2.0));
}

template <Scalar T>
std::vector<std::string> AtomCertificate<T>::violations() const {
  std::vector<std::string> out;
  if (!supported) out.emplace_back("support");
  if (!mean_zero) out.emplace_back("mean_zero");
  if (!bounded) out.emplace_back("sup_norm");
  return out;
}

template <Scalar T>
AtomCertificate<T> certify_atom(const StepFunction<T>& f, const DyadicInterval& I, Exponent p) {
  if (I.resolution() != f.resolution()) throw std::invalid_argument("resolution mismatch");
  AtomCertificate<T> cert;
  cert.supported = true;
  T sum = from_int<T>(0);
  double scale = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (I.contains_index(i)) {
      sum += f[i];
      scale += std::fabs(to_double<T>(f[i]));
    } else if (!is_zero(f[i])) {
      cert.supported = false;
    }
  }
  if constexpr (std::same_as<T, Rational>) {
    cert.mean_zero = is_zero(sum);
  } else {
    cert.mean_zero = std::fabs(sum) <= 1e-12 * std::max(scale, 1.0);
  }
  const T sup = sup_abs(f);
  cert.sup_abs = to_double<T>(sup);
  const double exponent = I.level() * snapped_reciprocal(p);
  cert.bound = std::exp2(exponent);
  if (std::nearbyint(exponent) == exponent) {
    const T bound = exp2_int<T>(static_cast<int>(exponent));
    cert.bounded = sup <= bound;
    cert.tight = sup == bound;
  } else {
    cert.bounded = cert.sup_abs <= cert.bound * (1.0 + 1e-12);
    cert.tight = std::fabs(cert.sup_abs - cert.bound) <= 1e-12 * cert.bound;
  }
  if (cert.ok()) cert.atom = Atom<T>{p, I, f};
  return cert;
}

template <Scalar T>
DyadicMartingale<T> atomic_build(std::span<const T> weights, std::span<const Atom<T>> atoms, int level,
                                 Resolution m) {
  if (weights.size() != atoms.size()) throw std::invalid_argument("one weight per atom required");
  if (level < 0 || level > m.bits()) throw std::out_of_range("build level outside 0..M");
  StepFunction<T> acc(m);
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if (atoms[k].f.resolution() != m) throw std::invalid_argument("atom resolution mismatch");
    acc = acc + coset_average(atoms[k].f, level) * weights[k];
  }
  return DyadicMartingale<T>(std::move(acc));
}

double lemma0_bound(std::span<const double> weights, Exponent p) {
  double s = 0.0;
  for (double w : weights) s += power_of(std::fabs(w), p);
  return std::pow(s, snapped_reciprocal(p));
}

#define DYADIKA_INSTANTIATE(T)                                                                     \
  template class DyadicMartingale<T>;                                                              \
  template struct AtomCertificate<T>;                                                              \
  template double lp_power<T>(const StepFunction<T>&, Exponent);                                   \
  template double lp_norm<T>(const StepFunction<T>&, Exponent);                                    \
  template double weak_lp_norm<T>(const StepFunction<T>&, Exponent);                               \
  template StepFunction<T> maximal<T>(const DyadicMartingale<T>&);                                 \
  template double hp_norm<T>(const DyadicMartingale<T>&, Exponent);                                \
  template double modulus_hp<T>(const DyadicMartingale<T>&, int, Exponent);                        \
  template double modulus_lp<T>(const StepFunction<T>&, int, Exponent);                            \
  template double best_approximation_l2<T>(const StepFunction<T>&, int);                           \
  template AtomCertificate<T> certify_atom<T>(const StepFunction<T>&, const DyadicInterval&, Exponent); \
  template DyadicMartingale<T> atomic_build<T>(std::span<const T>, std::span<const Atom<T>>, int, Resolution);

DYADIKA_INSTANTIATE(double)
DYADIKA_INSTANTIATE(Rational)

#undef DYADIKA_INSTANTIATE

}  // namespace dyadika
