#include "p2race/race.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>

#include "p2race/errors.hpp"
#include "p2race/parallel.hpp"

namespace p2race {
namespace {

using u64 = std::uint64_t;

u64 isqrt_u64(u64 v) {
  u64 r = (u64)std::sqrt((double)v);
  while (r > 0 && r > v / r) --r;
  while ((r + 1) <= v / (r + 1)) ++r;
  return r;
}

}  // namespace

RaceTally tally_semiprimes(const SignCache& cache, const PrimeTable& table,
                           u64 x, PairConvention conv, unsigned threads) {
  if (x > table.limit) {
    throw OutOfRangeError("tally_semiprimes(" + std::to_string(x) +
                          ") exceeds sieve limit " + std::to_string(table.limit));
  }
  RaceTally tally;
  tally.x = x;
  tally.convention = conv;

  const u64 s = isqrt_u64(x);
  const std::size_t outer_end = table.index_after(s);

  if (conv == PairConvention::unordered) {
    // For each smaller prime a <= sqrt(x), count partners b in [a, x/a] by
    // sign; the pair lands in class (chi(a), chi(b)).
    std::atomic<u64> counts[2][2] = {};  // [a-sign][b-sign], 0=plus 1=minus
    parallel_chunks(outer_end, threads, [&](unsigned, u64 begin, u64 end) {
      u64 local[2][2] = {{0, 0}, {0, 0}};
      for (u64 i = begin; i < end; ++i) {
        const int sa = cache.signs[(std::size_t)i];
        if (sa == 0) continue;
        const u64 a = table.primes[(std::size_t)i];
        const u64 cap = x / a;
        const u64 plus = cache.plus_leq(table, cap) - cache.plus_leq(table, a) +
                         (sa > 0 ? 1 : 0);
        const u64 minus = cache.minus_leq(table, cap) -
                          cache.minus_leq(table, a) + (sa < 0 ? 1 : 0);
        local[sa < 0][0] += plus;
        local[sa < 0][1] += minus;
      }
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          counts[i][j].fetch_add(local[i][j], std::memory_order_relaxed);
    });
    tally.n_pp = counts[0][0].load();
    tally.n_pm = counts[0][1].load();
    tally.n_mp = counts[1][0].load();
    tally.n_mm = counts[1][1].load();
  } else {
    // Ordered pairs: with M[s][t] = sum over a <= sqrt(x), chi(a)=s of the
    // count of t-signed primes <= x/a,
    //   n(s,t) = M[s][t] + M[t][s] - N_s(sqrt x) * N_t(sqrt x),
    // the subtraction removing pairs counted from both sides.
    std::atomic<u64> m[2][2] = {};
    parallel_chunks(outer_end, threads, [&](unsigned, u64 begin, u64 end) {
      u64 local[2][2] = {{0, 0}, {0, 0}};
      for (u64 i = begin; i < end; ++i) {
        const int sa = cache.signs[(std::size_t)i];
        if (sa == 0) continue;
        const u64 cap = x / table.primes[(std::size_t)i];
        local[sa < 0][0] += cache.plus_leq(table, cap);
        local[sa < 0][1] += cache.minus_leq(table, cap);
      }
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          m[i][j].fetch_add(local[i][j], std::memory_order_relaxed);
    });
    const u64 root_plus = cache.plus_leq(table, s);
    const u64 root_minus = cache.minus_leq(table, s);
    tally.n_pp = 2 * m[0][0].load() - root_plus * root_plus;
    tally.n_pm = m[0][1].load() + m[1][0].load() - root_plus * root_minus;
    tally.n_mp = tally.n_pm;
    tally.n_mm = 2 * m[1][1].load() - root_minus * root_minus;
    if (conv == PairConvention::ordered_strict) {
      // Drop the diagonal (a, a), a^2 <= x.
      tally.n_pp -= root_plus;
      tally.n_mm -= root_minus;
    }
  }
  tally.n_coprime = tally.n_pp + tally.n_pm + tally.n_mp + tally.n_mm;
  return tally;
}

double bias_ratio(const RaceTally& tally, int eta) {
  if (eta != 1 && eta != -1)
    throw std::invalid_argument("eta must be +1 or -1");
  if (tally.n_coprime == 0) {
    throw UndefinedRatioError("bias ratio undefined at x = " +
                              std::to_string(tally.x) +
                              ": no coprime semiprime pairs");
  }
  const u64 num = eta < 0 ? tally.n_mm : tally.n_pp;
  return 4.0 * (double)num / (double)tally.n_coprime;
}

std::pair<std::uint64_t, double> landau_residual(const PrimeTable& table,
                                                 u64 x) {
  if (x < 4) throw std::invalid_argument("landau_residual requires x >= 4");
  if (x > table.limit) {
    throw OutOfRangeError("landau_residual(" + std::to_string(x) +
                          ") exceeds sieve limit " + std::to_string(table.limit));
  }
  const u64 s = isqrt_u64(x);
  const std::size_t outer_end = table.index_after(s);
  u64 total = 0;
  for (std::size_t i = 0; i < outer_end; ++i)
    total += table.index_after(x / table.primes[i]);
  const u64 root_count = outer_end;
  const u64 count = 2 * total - root_count * root_count;
  const double lx = std::log((double)x);
  const double residual = (double)count * lx / (2.0 * (double)x) - std::log(lx);
  return {count, residual};
}

double predicted_bias(const LEstimate& curly, u64 x, int eta) {
  if (eta != 1 && eta != -1)
    throw std::invalid_argument("eta must be +1 or -1");
  if (x < 16) {
    throw std::domain_error(
        "predicted_bias requires x >= 16 (loglog must be positive)");
  }
  return 1.0 + (double)eta * curly.value / std::log(std::log((double)x));
}

std::vector<RaceRow> race_series(const SignCache& cache, const PrimeTable& table,
                                 const std::vector<u64>& xs, int eta,
                                 PairConvention conv, const LEstimate& curly,
                                 unsigned threads) {
  std::vector<RaceRow> rows(xs.size());
  // Parallelism across xs; each tally is cheap prefix arithmetic.
  parallel_chunks(xs.size(), threads, [&](unsigned, u64 begin, u64 end) {
    for (u64 i = begin; i < end; ++i) {
      RaceRow& row = rows[(std::size_t)i];
      row.tally = tally_semiprimes(cache, table, xs[(std::size_t)i], conv, 1);
      row.r = bias_ratio(row.tally, eta);
      row.predicted = predicted_bias(curly, xs[(std::size_t)i], eta);
    }
  });
  return rows;
}

}  // namespace p2race
