#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "p2race/arith.hpp"
#include "p2race/sieve.hpp"

namespace p2race {

// A truncated sum or product over primes: the value at the cutoff together
// with the oscillation of its partial values over the final octave
// [cutoff/2, cutoff].  Truncated quantities are never reported bare; the
// oscillation rides along as an empirical error indicator.
struct LEstimate {
  double value = 0.0;
  std::uint64_t cutoff = 0;
  double oscillation = 0.0;
};

// chi(p) for every prime of a table, plus prefix counts so sign-restricted
// prime counts N_{+-}(y) resolve with one binary search.  signs runs parallel
// to table.primes; prefix_plus[i] counts +1 signs among primes[0..i].
struct SignCache {
  std::vector<std::int8_t> signs;
  std::vector<std::uint32_t> prefix_plus;
  std::vector<std::uint32_t> prefix_minus;

  std::uint64_t plus_leq(const PrimeTable& table, std::uint64_t y) const;
  std::uint64_t minus_leq(const PrimeTable& table, std::uint64_t y) const;
};

// Evaluates chi on every table prime.  Element writes are disjoint, so the
// result is identical for any thread count.
SignCache chi_on_primes(const CharacterSpec& chi, const PrimeTable& table,
                        unsigned threads = 0);

// curly L = sum_{p <= cutoff} chi(p)/p, the conditionally convergent prime
// character sum.  Throws OutOfRangeError when cutoff > table.limit.
LEstimate curly_l(const SignCache& cache, const PrimeTable& table,
                  std::uint64_t cutoff);

// E(chi) = sum_p [chi(p)/p + log(1 - chi(p)/p)], absolutely convergent.
LEstimate e_chi(const SignCache& cache, const PrimeTable& table,
                std::uint64_t cutoff);

// Truncated Euler product for L(1, chi): prod_{p <= cutoff} (1 - chi(p)/p)^-1.
LEstimate l1_euler_product(const SignCache& cache, const PrimeTable& table,
                           std::uint64_t cutoff);

// Universal envelope for E(chi) used to convert a curly-L value into an
// interval for L(1, chi) via log L(1, chi) = curly L - E(chi).
inline constexpr double kEChiEnvelopeLow = -0.315718;
inline constexpr double kEChiEnvelopeHigh = -0.18198;

// [exp(value + 0.18198), exp(value + 0.315718)]; ignores the oscillation.
std::pair<double, double> l1_interval_from_curly_l(const LEstimate& curly);

// sum_{p <= x} chi(p) as an exact integer.
std::int64_t prime_char_sum(const SignCache& cache, const PrimeTable& table,
                            std::uint64_t x);

}  // namespace p2race
