#include "dyadika/transforms.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <memory>
#include <mutex>

namespace dyadika {

const std::vector<std::uint32_t>& coordinate_words(Resolution m) {
  static std::array<std::once_flag, Resolution::kMax + 1> flags;
  static std::array<std::unique_ptr<std::vector<std::uint32_t>>, Resolution::kMax + 1> tables;
  const int M = m.bits();
  std::call_once(flags[static_cast<std::size_t>(M)], [&] {
    auto t = std::make_unique<std::vector<std::uint32_t>>(m.cosets());
    for (std::size_t i = 0; i < m.cosets(); ++i) {
      (*t)[i] = coordinate_word(static_cast<std::uint32_t>(i), M);
    }
    tables[static_cast<std::size_t>(M)] = std::move(t);
  });
  return *tables[static_cast<std::size_t>(M)];
}

std::string to_string(KernelMethod method) {
  switch (method) {
    case KernelMethod::direct: return "direct";
    case KernelMethod::dyadic_closed: return "dyadic_closed";
    case KernelMethod::decomposition_9a: return "decomposition_9a";
  }
  return "unknown";
}

namespace {

void require_index(std::uint64_t n, Resolution m, const char* what) {
  if (n > m.cosets()) {
    throw std::out_of_range(std::string(what) + ": index exceeds 2^M");
  }
}

template <Scalar T>
void fwht(std::vector<T>& a) {
  const std::size_t N = a.size();
  for (std::size_t h = 1; h < N; h <<= 1) {
    for (std::size_t i = 0; i < N; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        T u = a[j];
        a[j] += a[j + h];
        a[j + h] = u - a[j + h];
      }
    }
  }
}

// 2^k K_{2^k} at the given coordinate word; integer valued.
std::int64_t scaled_dyadic_fejer(int k, std::uint32_t word) {
  const std::uint32_t low = word & ((std::uint32_t{1} << k) - 1u);
  if (low == 0) return (std::int64_t{1} << k) * ((std::int64_t{1} << k) + 1) / 2;
  if (std::has_single_bit(low)) {
    const int t = std::countr_zero(low);
    // 2^k * 2^{t-1}; k >= 1 here since low != 0.
    return std::int64_t{1} << (k + t - 1);
  }
  return 0;
}

std::int64_t dyadic_dirichlet(int k, std::uint32_t word) {
  const std::uint32_t low = word & ((std::uint32_t{1} << k) - 1u);
  return low == 0 ? (std::int64_t{1} << k) : 0;
}

// n K_n assembled from the set bits of n.
std::vector<std::int64_t> scaled_kernel_9a(std::uint64_t n, Resolution m) {
  const auto& words = coordinate_words(m);
  const DyadicIndex idx = index_stats(n);
  const auto bits = idx.set_bits();
  std::vector<std::int64_t> out(m.cosets(), 0);
  std::uint64_t prefix = 0;
  for (std::size_t a = 0; a < bits.size(); ++a) {
    const int nA = bits[a];
    const auto t = static_cast<std::int64_t>(tail(idx, static_cast<int>(a) + 1));
    for (std::size_t i = 0; i < out.size(); ++i) {
      const std::uint32_t w = words[i];
      const std::int64_t term = scaled_dyadic_fejer(nA, w) + t * dyadic_dirichlet(nA, w);
      out[i] += walsh_sign(prefix, w) * term;
    }
    prefix |= std::uint64_t{1} << nA;
  }
  return out;
}

template <Scalar T>
StepFunction<T> from_integers(Resolution m, const std::vector<std::int64_t>& v) {
  return StepFunction<T>::generate(m, [&](std::size_t i) { return from_int<T>(v[i]); });
}

}  // namespace

template <Scalar T>
StepFunction<T> rademacher(int k, Resolution m) {
  if (k < 0 || k >= m.bits()) throw std::out_of_range("rademacher index outside resolution");
  return walsh<T>(std::uint64_t{1} << k, m);
}

template <Scalar T>
StepFunction<T> walsh(std::uint64_t n, Resolution m) {
  if (n >= m.cosets()) throw std::out_of_range("walsh index not representable at this resolution");
  const auto& words = coordinate_words(m);
  return StepFunction<T>::generate(m, [&](std::size_t i) { return from_int<T>(walsh_sign(n, words[i])); });
}

template <Scalar T>
Spectrum<T> analyze(const StepFunction<T>& f) {
  const Resolution m = f.resolution();
  std::vector<T> a(f.values().begin(), f.values().end());
  fwht(a);
  const auto& words = coordinate_words(m);
  const T scale = exp2_int<T>(-m.bits());
  std::vector<T> c(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) c[n] = a[words[n]] * scale;
  return Spectrum<T>(m, std::move(c));
}

template <Scalar T>
Spectrum<T> analyze_naive(const StepFunction<T>& f) {
  const Resolution m = f.resolution();
  const auto& words = coordinate_words(m);
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!is_zero(f[i])) support.push_back(i);
  }
  const T scale = exp2_int<T>(-m.bits());
  std::vector<T> c(f.size(), from_int<T>(0));
  for (std::size_t n = 0; n < f.size(); ++n) {
    T sum = from_int<T>(0);
    for (std::size_t i : support) {
      if (walsh_sign(n, words[i]) > 0) {
        sum += f[i];
      } else {
        sum -= f[i];
      }
    }
    c[n] = sum * scale;
  }
  return Spectrum<T>(m, std::move(c));
}

template <Scalar T>
StepFunction<T> synthesize(const Spectrum<T>& c) {
  const Resolution m = c.resolution();
  const auto& words = coordinate_words(m);
  std::vector<T> g(c.size());
  for (std::size_t u = 0; u < g.size(); ++u) g[u] = c[words[u]];
  fwht(g);
  return StepFunction<T>(m, std::move(g));
}

FejerSweep::FejerSweep(Resolution m)
    : m_(m), words_(&coordinate_words(m)), d_(m.cosets(), 0), s_(m.cosets(), 0) {}

void FejerSweep::advance() {
  if (n_ >= m_.cosets()) throw std::out_of_range("kernel index exceeds 2^M");
  const auto& words = *words_;
  for (std::size_t i = 0; i < d_.size(); ++i) {
    d_[i] += walsh_sign(n_, words[i]);
    s_[i] += d_[i];
  }
  ++n_;
}

void FejerSweep::advance_to(std::uint64_t n) {
  if (n < n_) throw std::invalid_argument("sweep cannot move backwards");
  while (n_ < n) advance();
}

template <Scalar T>
StepFunction<T> dirichlet(std::uint64_t n, Resolution m) {
  require_index(n, m, "dirichlet");
  FejerSweep sweep(m);
  sweep.advance_to(n);
  return from_integers<T>(m, sweep.dirichlet());
}

template <Scalar T>
StepFunction<T> dirichlet_dyadic(int k, Resolution m) {
  if (k < 0 || k > m.bits()) throw std::out_of_range("dyadic kernel level outside 0..M");
  const auto& words = coordinate_words(m);
  return StepFunction<T>::generate(m, [&](std::size_t i) { return from_int<T>(dyadic_dirichlet(k, words[i])); });
}

template <Scalar T>
StepFunction<T> fejer_dyadic(int k, Resolution m) {
  if (k < 0 || k > m.bits()) throw std::out_of_range("dyadic kernel level outside 0..M");
  const auto& words = coordinate_words(m);
  const T scale = exp2_int<T>(-k);
  return StepFunction<T>::generate(m, [&](std::size_t i) {
    T v = from_int<T>(scaled_dyadic_fejer(k, words[i]));
    return T(v * scale);
  });
}

template <Scalar T>
StepFunction<T> scaled_fejer_kernel(std::uint64_t n, Resolution m, KernelMethod method) {
  if (n == 0) throw std::invalid_argument("K_n needs n >= 1");
  require_index(n, m, "fejer_kernel");
  switch (method) {
    case KernelMethod::direct: {
      FejerSweep sweep(m);
      sweep.advance_to(n);
      return from_integers<T>(m, sweep.scaled_kernel());
    }
    case KernelMethod::dyadic_closed: {
      if (!is_power_of_two(n)) throw std::invalid_argument("closed form needs n a power of two");
      const int k = top_bit(n);
      const auto& words = coordinate_words(m);
      return StepFunction<T>::generate(m, [&](std::size_t i) { return from_int<T>(scaled_dyadic_fejer(k, words[i])); });
    }
    case KernelMethod::decomposition_9a:
      return from_integers<T>(m, scaled_kernel_9a(n, m));
  }
  throw std::invalid_argument("unknown kernel method");
}

template <Scalar T>
StepFunction<T> fejer_kernel(std::uint64_t n, Resolution m, KernelMethod method) {
  const T denom = from_int<T>(static_cast<std::int64_t>(n));
  return scaled_fejer_kernel<T>(n, m, method) / denom;
}

template <Scalar T>
StepFunction<T> partial_sum(const Spectrum<T>& c, std::uint64_t n) {
  require_index(n, c.resolution(), "partial_sum");
  Spectrum<T> cut = c;
  for (std::size_t k = n; k < cut.size(); ++k) cut[k] = from_int<T>(0);
  return synthesize(cut);
}

template <Scalar T>
StepFunction<T> partial_sum(const StepFunction<T>& f, std::uint64_t n) {
  return partial_sum(analyze(f), n);
}

template <Scalar T>
StepFunction<T> fejer_mean(const Spectrum<T>& c, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("fejer mean needs n >= 1");
  require_index(n, c.resolution(), "fejer_mean");
  Spectrum<T> weighted(c.resolution());
  const T denom = from_int<T>(static_cast<std::int64_t>(n));
  for (std::size_t k = 0; k < n; ++k) {
    if (is_zero(c[k])) continue;
    T w = from_int<T>(static_cast<std::int64_t>(n - k)) / denom;
    weighted[k] = c[k] * w;
  }
  return synthesize(weighted);
}

template <Scalar T>
StepFunction<T> fejer_mean(const StepFunction<T>& f, std::uint64_t n, MeanMethod method) {
  if (method == MeanMethod::multiplier) return fejer_mean(analyze(f), n);
  if (n == 0) throw std::invalid_argument("fejer mean needs n >= 1");
  const Resolution m = f.resolution();
  require_index(n, m, "fejer_mean");
  const Spectrum<T> c = analyze(f);
  const auto& words = coordinate_words(m);
  std::vector<T> partial(f.size(), from_int<T>(0));
  std::vector<T> acc(f.size(), from_int<T>(0));
  for (std::uint64_t k = 1; k <= n; ++k) {
    const T& ck = c[k - 1];
    if (!is_zero(ck)) {
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (walsh_sign(k - 1, words[i]) > 0) {
          partial[i] += ck;
        } else {
          partial[i] -= ck;
        }
      }
    }
    for (std::size_t i = 0; i < f.size(); ++i) acc[i] += partial[i];
  }
  const T denom = from_int<T>(static_cast<std::int64_t>(n));
  for (auto& v : acc) v /= denom;
  return StepFunction<T>(m, std::move(acc));
}

template <Scalar T>
StepFunction<T> conjugate(const StepFunction<T>& f, const Point& t) {
  if (t.resolution() != f.resolution()) throw std::invalid_argument("resolution mismatch");
  const int M = f.resolution().bits();
  const std::uint32_t tw = t.word();
  Spectrum<T> c = analyze(f);
  for (std::size_t j = 0; j < c.size(); ++j) {
    const int block = j == 0 ? 0 : top_bit(j) + 1;
    if (block < M && ((tw >> block) & 1u)) c[j] = -c[j];
  }
  return synthesize(c);
}

template <Scalar T>
IdentityCheck shift_lemma_check(std::uint64_t j, int m, Resolution res) {
  if (m < 0 || j >= (std::uint64_t{1} << m)) throw std::invalid_argument("shift identity needs j < 2^m");
  const std::uint64_t pm = std::uint64_t{1} << m;
  if (j + pm > res.cosets()) throw std::out_of_range("j + 2^m exceeds 2^M");
  const auto lhs = dirichlet<T>(j + pm, res);
  const auto rhs = dirichlet<T>(pm, res) + walsh<T>(pm == res.cosets() ? 0 : pm, res) * dirichlet<T>(j, res);
  // pm == 2^M only when j == 0, where D_0 = 0 makes the walsh factor irrelevant.
  const T gap = max_abs_difference(lhs, rhs);
  return IdentityCheck{"shift_f1", j + pm, "direct:shifted", to_double(gap), is_zero(gap)};
}

template <Scalar T>
StepFunction<T> expansion_rhs(int n, Resolution res) {
  if (n < 1 || n > res.bits()) throw std::out_of_range("expansion needs 1 <= n <= M");
  const auto& words = coordinate_words(res);
  std::vector<std::int64_t> acc(res.cosets(), 0);
  for (int k = 0; k < n; ++k) {
    std::uint64_t prod = 0;
    for (int j = k + 1; j < n; ++j) prod |= std::uint64_t{1} << j;
    const std::int64_t pk = std::int64_t{1} << k;
    for (std::size_t i = 0; i < acc.size(); ++i) {
      const std::uint32_t w = words[i];
      acc[i] += walsh_sign(prod, w) * (scaled_dyadic_fejer(k, w) + (pk - 1) * dyadic_dirichlet(k, w));
    }
  }
  return from_integers<T>(res, acc);
}

template <Scalar T>
IdentityCheck expansion_check(int n, Resolution res) {
  const std::uint64_t target = (std::uint64_t{1} << n) - 1;
  const T scale = from_int<T>(static_cast<std::int64_t>(target));
  const auto lhs = fejer_kernel<T>(target, res, KernelMethod::direct) * scale;
  const auto rhs = expansion_rhs<T>(n, res);
  const T gap = max_abs_difference(lhs, rhs);
  return IdentityCheck{"expansion_2n_minus_1", target, "direct:expansion", to_double(gap), is_zero(gap)};
}

namespace {

// Majorant without the constant c; 2^k K_{2^k} >= 0 and is integer valued.
std::vector<std::int64_t> lemma5_base(std::uint64_t n, Resolution m) {
  require_index(n, m, "lemma5_majorant");
  const auto& words = coordinate_words(m);
  const auto blocks = block_decomposition(n);
  std::vector<std::int64_t> out(m.cosets(), variation(n));
  for (const auto& b : blocks.blocks) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      const std::uint32_t w = words[i];
      std::int64_t dsum = 0;
      for (int k = b.low; k <= b.high; ++k) dsum += dyadic_dirichlet(k, w);
      out[i] += scaled_dyadic_fejer(b.low, w) + scaled_dyadic_fejer(b.high, w) + (std::int64_t{1} << b.low) * dsum;
    }
  }
  return out;
}

}  // namespace

template <Scalar T>
StepFunction<T> lemma5_majorant(std::uint64_t n, Resolution m, const T& c) {
  const auto base = lemma5_base(n, m);
  return StepFunction<T>::generate(m, [&](std::size_t i) {
    T v = from_int<T>(base[i]) * c;
    return v;
  });
}

double fit_lemma5_constant(const std::vector<std::int64_t>& scaled_kernel, std::uint64_t n, Resolution m) {
  const auto base = lemma5_base(n, m);
  double best = 0.0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    best = std::max(best, static_cast<double>(std::llabs(scaled_kernel[i])) / static_cast<double>(base[i]));
  }
  return best;
}

double fit_lemma5_constant(std::uint64_t n, Resolution m) {
  require_index(n, m, "lemma5");
  FejerSweep sweep(m);
  sweep.advance_to(n);
  return fit_lemma5_constant(sweep.scaled_kernel(), n, m);
}

DyadicInterval lemma3_region(Resolution m, int l) {
  if (l == 0) {
    if (m.bits() < 2) throw std::out_of_range("lemma-3 region I_2(e_0+e_1) needs M >= 2");
    return DyadicInterval(2, add(basis(0, m), basis(1, m)));
  }
  if (l < 0 || l + 1 > m.bits()) throw std::out_of_range("lemma-3 region outside resolution");
  return DyadicInterval(l + 1, add(basis(l - 1, m), basis(l, m)));
}

std::vector<Lemma3Row> lemma3_lower_bound(const std::vector<std::int64_t>& scaled_kernel, std::uint64_t n,
                                          Resolution m) {
  const auto blocks = block_decomposition(n);
  std::vector<Lemma3Row> rows;
  for (const auto& b : blocks.blocks) {
    const DyadicInterval region = lemma3_region(m, b.low);
    std::int64_t lo = static_cast<std::int64_t>(std::llabs(scaled_kernel[region.begin()]));
    for (std::size_t i = region.begin(); i < region.end(); ++i) lo = std::min(lo, static_cast<std::int64_t>(std::llabs(scaled_kernel[i])));
    const double bound = std::ldexp(1.0, 2 * b.low - 4);
    rows.push_back(Lemma3Row{b.high, b.low, region, bound, lo, static_cast<double>(lo) >= bound});
  }
  return rows;
}

std::vector<Lemma3Row> lemma3_lower_bound(std::uint64_t n, Resolution m) {
  require_index(n, m, "lemma3");
  FejerSweep sweep(m);
  sweep.advance_to(n);
  return lemma3_lower_bound(sweep.scaled_kernel(), n, m);
}

namespace {

int resolve_working(Resolution m, int working_bits) {
  const int w = working_bits < 0 ? m.bits() + 4 : working_bits;
  if (w <= m.bits() || w > Resolution::kMax) throw std::out_of_range("working resolution must exceed M");
  return w;
}

// Integral of |K_n| over each level-M coset, times n 2^W.
std::vector<std::int64_t> coarse_abs_sums(const std::vector<std::int64_t>& scaled, int M, int W) {
  const std::size_t width = std::size_t{1} << (W - M);
  std::vector<std::int64_t> sums(std::size_t{1} << M, 0);
  for (std::size_t c = 0; c < sums.size(); ++c) {
    std::int64_t s = 0;
    for (std::size_t i = c * width; i < (c + 1) * width; ++i) s += std::llabs(scaled[i]);
    sums[c] = s;
  }
  return sums;
}

}  // namespace

double lemma4_integral(std::uint64_t n, Resolution m, int k, int l, int working_bits) {
  const int W = resolve_working(m, working_bits);
  if (n < m.cosets()) throw std::invalid_argument("lemma 4 needs n >= 2^M");
  const Resolution wr(W);
  require_index(n, wr, "lemma4");
  const DyadicInterval region = lemma4_region(m, k, l);
  FejerSweep sweep(wr);
  sweep.advance_to(n);
  const auto sums = coarse_abs_sums(sweep.scaled_kernel(), m.bits(), W);
  std::int64_t best = 0;
  for (std::size_t c = region.begin(); c < region.end(); ++c) best = std::max(best, sums[c]);
  return std::ldexp(static_cast<double>(best), -W) / static_cast<double>(n);
}

Lemma4Fit fit_lemma4_constant(Resolution m, int working_bits) {
  const int W = resolve_working(m, working_bits);
  const int M = m.bits();
  const Resolution wr(W);
  std::vector<DyadicInterval> regions;
  std::vector<std::pair<int, int>> labels;
  for (int k = 0; k < M; ++k) {
    for (int l = k + 1; l <= M; ++l) {
      regions.push_back(lemma4_region(m, k, l));
      labels.emplace_back(k, l);
    }
  }
  Lemma4Fit fit;
  FejerSweep sweep(wr);
  sweep.advance_to(m.cosets() - 1);
  for (std::uint64_t n = m.cosets(); n <= wr.cosets(); ++n) {
    sweep.advance();
    const auto sums = coarse_abs_sums(sweep.scaled_kernel(), M, W);
    for (std::size_t r = 0; r < regions.size(); ++r) {
      std::int64_t best = 0;
      for (std::size_t c = regions[r].begin(); c < regions[r].end(); ++c) best = std::max(best, sums[c]);
      const auto [k, l] = labels[r];
      const double integral = std::ldexp(static_cast<double>(best), -W) / static_cast<double>(n);
      const double ratio = integral / std::ldexp(1.0, k + l - 2 * M);
      if (ratio > fit.constant) fit = Lemma4Fit{ratio, n, k, l};
    }
  }
  return fit;
}

template <Scalar T>
KernelReport<T> kernel_report(std::uint64_t n, Resolution m, const T& c) {
  auto direct = scaled_fejer_kernel<T>(n, m, KernelMethod::direct);
  auto decomposed = scaled_fejer_kernel<T>(n, m, KernelMethod::decomposition_9a);
  T gap = max_abs_difference(direct, decomposed);
  return KernelReport<T>{index_stats(n), std::move(direct), std::move(decomposed), lemma5_majorant<T>(n, m, c), gap};
}

#define DYADIKA_INSTANTIATE(T)                                                                           \
  template StepFunction<T> rademacher<T>(int, Resolution);                                               \
  template StepFunction<T> walsh<T>(std::uint64_t, Resolution);                                          \
  template Spectrum<T> analyze<T>(const StepFunction<T>&);                                               \
  template Spectrum<T> analyze_naive<T>(const StepFunction<T>&);                                         \
  template StepFunction<T> synthesize<T>(const Spectrum<T>&);                                            \
  template StepFunction<T> dirichlet<T>(std::uint64_t, Resolution);                                      \
  template StepFunction<T> dirichlet_dyadic<T>(int, Resolution);                                         \
  template StepFunction<T> fejer_dyadic<T>(int, Resolution);                                             \
  template StepFunction<T> fejer_kernel<T>(std::uint64_t, Resolution, KernelMethod);                     \
  template StepFunction<T> scaled_fejer_kernel<T>(std::uint64_t, Resolution, KernelMethod);              \
  template StepFunction<T> partial_sum<T>(const StepFunction<T>&, std::uint64_t);                        \
  template StepFunction<T> partial_sum<T>(const Spectrum<T>&, std::uint64_t);                            \
  template StepFunction<T> fejer_mean<T>(const StepFunction<T>&, std::uint64_t, MeanMethod);             \
  template StepFunction<T> fejer_mean<T>(const Spectrum<T>&, std::uint64_t);                             \
  template StepFunction<T> conjugate<T>(const StepFunction<T>&, const Point&);                           \
  template IdentityCheck shift_lemma_check<T>(std::uint64_t, int, Resolution);                           \
  template IdentityCheck expansion_check<T>(int, Resolution);                                            \
  template StepFunction<T> expansion_rhs<T>(int, Resolution);                                            \
  template StepFunction<T> lemma5_majorant<T>(std::uint64_t, Resolution, const T&);                      \
  template KernelReport<T> kernel_report<T>(std::uint64_t, Resolution, const T&);

DYADIKA_INSTANTIATE(double)
DYADIKA_INSTANTIATE(Rational)

#undef DYADIKA_INSTANTIATE

}  // namespace dyadika
