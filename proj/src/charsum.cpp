#include "p2race/charsum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "p2race/errors.hpp"
#include "p2race/parallel.hpp"

namespace p2race {
namespace {

using u64 = std::uint64_t;

void require_in_range(u64 cutoff, const PrimeTable& table, const char* op) {
  if (cutoff > table.limit) {
    throw OutOfRangeError(std::string(op) + " cutoff " + std::to_string(cutoff) +
                          " exceeds sieve limit " + std::to_string(table.limit));
  }
}

// Shared accumulation pattern: sum term(p) over primes <= cutoff with
// compensated summation, recording min/max partial sums over the final
// octave (cutoff/2, cutoff].  `finish` maps a partial sum to the reported
// value space (identity for sums, exp for log-space products); it is
// monotone, so value-space extremes occur at sum-space extremes.
template <typename TermFn, typename FinishFn>
LEstimate accumulate_octave(const SignCache& cache, const PrimeTable& table,
                            u64 cutoff, TermFn term, FinishFn finish) {
  LEstimate out;
  out.cutoff = cutoff;
  KahanSum acc;
  const u64 octave_start = cutoff / 2;
  double min_partial = 0.0, max_partial = 0.0;
  bool octave_seen = false;
  const std::size_t end = table.index_after(cutoff);
  for (std::size_t i = 0; i < end; ++i) {
    const u64 p = table.primes[i];
    const int s = cache.signs[i];
    if (s != 0) acc.add(term(p, s));
    if (p >= octave_start) {
      const double partial = acc.value();
      if (!octave_seen || partial < min_partial) min_partial = partial;
      if (!octave_seen || partial > max_partial) max_partial = partial;
      octave_seen = true;
    }
  }
  const double total = acc.value();
  out.value = finish(total);
  if (octave_seen) {
    out.oscillation = std::max(std::abs(finish(max_partial) - out.value),
                               std::abs(finish(min_partial) - out.value));
  }
  return out;
}

}  // namespace

std::uint64_t SignCache::plus_leq(const PrimeTable& table, u64 y) const {
  std::size_t idx = table.index_after(y);
  return idx == 0 ? 0 : prefix_plus[idx - 1];
}

std::uint64_t SignCache::minus_leq(const PrimeTable& table, u64 y) const {
  std::size_t idx = table.index_after(y);
  return idx == 0 ? 0 : prefix_minus[idx - 1];
}

SignCache chi_on_primes(const CharacterSpec& chi, const PrimeTable& table,
                        unsigned threads) {
  SignCache cache;
  const std::size_t n = table.primes.size();
  cache.signs.resize(n);
  parallel_chunks(n, threads, [&](unsigned, u64 begin, u64 end) {
    for (u64 i = begin; i < end; ++i) {
      cache.signs[(std::size_t)i] =
          (std::int8_t)chi.chi(table.primes[(std::size_t)i]);
    }
  });
  cache.prefix_plus.resize(n);
  cache.prefix_minus.resize(n);
  std::uint32_t plus = 0, minus = 0;
  for (std::size_t i = 0; i < n; ++i) {
    plus += cache.signs[i] > 0;
    minus += cache.signs[i] < 0;
    cache.prefix_plus[i] = plus;
    cache.prefix_minus[i] = minus;
  }
  return cache;
}

LEstimate curly_l(const SignCache& cache, const PrimeTable& table, u64 cutoff) {
  require_in_range(cutoff, table, "curly_l");
  return accumulate_octave(
      cache, table, cutoff,
      [](u64 p, int s) { return (double)s / (double)p; },
      [](double sum) { return sum; });
}

LEstimate e_chi(const SignCache& cache, const PrimeTable& table, u64 cutoff) {
  require_in_range(cutoff, table, "e_chi");
  return accumulate_octave(
      cache, table, cutoff,
      [](u64 p, int s) {
        const double sp = (double)s / (double)p;
        return sp + std::log1p(-sp);
      },
      [](double sum) { return sum; });
}

LEstimate l1_euler_product(const SignCache& cache, const PrimeTable& table,
                           u64 cutoff) {
  require_in_range(cutoff, table, "l1_euler_product");
  return accumulate_octave(
      cache, table, cutoff,
      [](u64 p, int s) {
        // log of (1 - chi(p)/p)^-1, accumulated so the product stays in
        // log space until the final exp.
        return -std::log1p(-(double)s / (double)p);
      },
      [](double sum) { return std::exp(sum); });
}

std::pair<double, double> l1_interval_from_curly_l(const LEstimate& curly) {
  return {std::exp(curly.value - kEChiEnvelopeHigh),
          std::exp(curly.value - kEChiEnvelopeLow)};
}

std::int64_t prime_char_sum(const SignCache& cache, const PrimeTable& table,
                            u64 x) {
  if (x > table.limit) {
    throw OutOfRangeError("prime_char_sum(" + std::to_string(x) +
                          ") exceeds sieve limit " +
                          std::to_string(table.limit));
  }
  std::size_t idx = table.index_after(x);
  if (idx == 0) return 0;
  return (std::int64_t)cache.prefix_plus[idx - 1] -
         (std::int64_t)cache.prefix_minus[idx - 1];
}

}  // namespace p2race
