#include "p2race/search.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

#include "p2race/arith.hpp"
#include "p2race/errors.hpp"
#include "p2race/parallel.hpp"

namespace p2race {
namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// Squarefree flags for 1..bound by sieving square multiples.
std::vector<std::uint8_t> squarefree_flags(u64 bound) {
  std::vector<std::uint8_t> flags((std::size_t)bound + 1, 1);
  if (bound >= 1) flags[0] = 0;
  for (u64 k = 2; k * k <= bound; ++k) {
    const u64 kk = k * k;
    for (u64 j = kk; j <= bound; j += kk) flags[(std::size_t)j] = 0;
  }
  return flags;
}

// curly-L for a word-sized discriminant by direct prime loop; same octave
// bookkeeping as the charsum module but with per-prime Kronecker evaluation
// instead of a precomputed sign cache (one cache per d would dwarf the scan).
LEstimate curly_l_direct(i64 d, const PrimeTable& table, u64 cutoff) {
  LEstimate out;
  out.cutoff = cutoff;
  KahanSum acc;
  const u64 octave_start = cutoff / 2;
  double min_partial = 0.0, max_partial = 0.0;
  bool octave_seen = false;
  const std::size_t end = table.index_after(cutoff);
  for (std::size_t i = 0; i < end; ++i) {
    const u64 p = table.primes[i];
    const int s = kronecker(d, p);
    if (s != 0) acc.add((double)s / (double)p);
    if (p >= octave_start) {
      const double partial = acc.value();
      if (!octave_seen || partial < min_partial) min_partial = partial;
      if (!octave_seen || partial > max_partial) max_partial = partial;
      octave_seen = true;
    }
  }
  out.value = acc.value();
  if (octave_seen) {
    out.oscillation = std::max(std::abs(max_partial - out.value),
                               std::abs(min_partial - out.value));
  }
  return out;
}

}  // namespace

std::vector<std::int64_t> fundamental_discriminants(u64 bound,
                                                    SignPolicy signs) {
  const auto sqfree = squarefree_flags(bound);
  std::vector<i64> out;
  const bool want_pos = signs != SignPolicy::negative;
  const bool want_neg = signs != SignPolicy::positive;
  for (u64 n = 2; n <= bound; ++n) {
    // d = +n: n = 1 (mod 4) squarefree, or n = 4m with m = 2,3 (mod 4) sqfree.
    if (want_pos) {
      if (n % 4 == 1 && sqfree[(std::size_t)n]) {
        out.push_back((i64)n);
      } else if (n % 4 == 0) {
        const u64 m = n / 4;
        if ((m % 4 == 2 || m % 4 == 3) && sqfree[(std::size_t)m])
          out.push_back((i64)n);
      }
    }
    // d = -n: -n = 1 (mod 4) means n = 3 (mod 4); for -n = 4m the core -m
    // must be 2,3 (mod 4), i.e. n/4 = 1,2 (mod 4).
    if (want_neg) {
      if (n % 4 == 3 && sqfree[(std::size_t)n]) {
        out.push_back(-(i64)n);
      } else if (n % 4 == 0) {
        const u64 m = n / 4;
        if ((m % 4 == 1 || m % 4 == 2) && sqfree[(std::size_t)m])
          out.push_back(-(i64)n);
      }
    }
  }
  return out;
}

ScanResult scan_discriminants(u64 bound, SignPolicy signs,
                              const PrimeTable& table, u64 cutoff,
                              std::size_t top_k, unsigned threads) {
  if (bound < 3)
    throw std::invalid_argument("scan bound must be >= 3");
  if (cutoff > table.limit) {
    throw OutOfRangeError("scan cutoff " + std::to_string(cutoff) +
                          " exceeds sieve limit " + std::to_string(table.limit));
  }
  ScanResult result;
  result.bound = bound;
  result.cutoff = cutoff;
  result.signs = signs;
  result.discriminants = fundamental_discriminants(bound, signs);
  result.estimates.resize(result.discriminants.size());

  parallel_chunks(result.discriminants.size(), threads,
                  [&](unsigned, u64 begin, u64 end) {
                    for (u64 i = begin; i < end; ++i) {
                      result.estimates[(std::size_t)i] = curly_l_direct(
                          result.discriminants[(std::size_t)i], table, cutoff);
                    }
                  });

  // Rank by value with a total tie order: |d| ascending, then positive first.
  std::vector<std::size_t> order(result.discriminants.size());
  std::iota(order.begin(), order.end(), 0);
  auto tie_before = [&](std::size_t a, std::size_t b) {
    const i64 da = result.discriminants[a], db = result.discriminants[b];
    const u64 aa = (u64)std::llabs(da), ab = (u64)std::llabs(db);
    if (aa != ab) return aa < ab;
    return da > db;
  };
  const std::size_t keep = std::min(top_k, order.size());

  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double va = result.estimates[a].value, vb = result.estimates[b].value;
    if (va != vb) return va < vb;
    return tie_before(a, b);
  });
  result.most_negative.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    result.most_negative.push_back(
        {result.discriminants[order[i]], result.estimates[order[i]]});
  }

  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double va = result.estimates[a].value, vb = result.estimates[b].value;
    if (va != vb) return va > vb;
    return tie_before(a, b);
  });
  result.most_positive.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    result.most_positive.push_back(
        {result.discriminants[order[i]], result.estimates[order[i]]});
  }
  return result;
}

double tail_proportion(const ScanResult& scan, double tau, TailSide side) {
  if (scan.estimates.empty()) {
    throw UndefinedRatioError("tail proportion undefined: scan matched no "
                              "fundamental discriminants");
  }
  std::size_t hits = 0;
  for (const auto& est : scan.estimates) {
    if (side == TailSide::ge ? est.value >= tau : est.value <= tau) ++hits;
  }
  return (double)hits / (double)scan.estimates.size();
}

}  // namespace p2race
