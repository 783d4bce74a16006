#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "p2race/charsum.hpp"
#include "p2race/sieve.hpp"

namespace p2race {

// How prime pairs (a, b) with ab <= x are counted.
//  ordered_with_equal: all ordered pairs, a == b included (the default).
//  ordered_strict:     ordered pairs with a != b.
//  unordered:          each {a, b} once, classified by (chi(min), chi(max)).
enum class PairConvention { ordered_with_equal, ordered_strict, unordered };

// Counts of prime pairs ab <= x by sign class (chi(a), chi(b)).  Pairs where
// either prime divides the conductor (chi == 0) are excluded everywhere;
// n_coprime is the total across the four classes.
struct RaceTally {
  std::uint64_t x = 0;
  PairConvention convention = PairConvention::ordered_with_equal;
  std::uint64_t n_pp = 0;
  std::uint64_t n_pm = 0;
  std::uint64_t n_mp = 0;
  std::uint64_t n_mm = 0;
  std::uint64_t n_coprime = 0;
};

// Exact tally via sign-restricted prime counting: O(pi(sqrt(x))) prefix-count
// lookups, no pair enumeration.  Throws OutOfRangeError when x > table.limit.
RaceTally tally_semiprimes(const SignCache& cache, const PrimeTable& table,
                           std::uint64_t x,
                           PairConvention conv = PairConvention::ordered_with_equal,
                           unsigned threads = 0);

// r(x) for eta = -1: n_mm / (n_coprime/4); for eta = +1: n_pp / (n_coprime/4).
// Throws UndefinedRatioError when n_coprime == 0.
double bias_ratio(const RaceTally& tally, int eta);

// Ordered count of prime pairs ab <= x (all primes, no character), and the
// residual count*log(x)/(2x) - loglog(x) that Landau's theorem sends to 0.
// Requires 4 <= x <= table.limit.
std::pair<std::uint64_t, double> landau_residual(const PrimeTable& table,
                                                 std::uint64_t x);

// First-order predicted bias 1 + eta * curlyL / loglog(x); requires x >= 16
// so loglog is safely positive (std::domain_error otherwise).
double predicted_bias(const LEstimate& curly, std::uint64_t x, int eta);

struct RaceRow {
  RaceTally tally;
  double r = 0.0;          // bias_ratio at the requested eta
  double predicted = 0.0;  // predicted_bias at the requested eta
};

// One tally per x, plus ratio and prediction columns.  The xs are processed
// independently, so rows match single-x calls exactly for any thread count.
std::vector<RaceRow> race_series(const SignCache& cache, const PrimeTable& table,
                                 const std::vector<std::uint64_t>& xs, int eta,
                                 PairConvention conv, const LEstimate& curly,
                                 unsigned threads = 0);

}  // namespace p2race
