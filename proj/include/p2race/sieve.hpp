#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace p2race {

// All primes <= limit, ascending.  Built once and shared read-only across
// threads; every query below is const.
struct PrimeTable {
  std::uint64_t limit = 0;
  std::vector<std::uint64_t> primes;

  // Index of the first prime > x, i.e. the count of primes <= x.
  std::size_t index_after(std::uint64_t x) const;
};

struct SieveOptions {
  // Per-segment span in bytes of the odd-only bitset (L2-cache sized).
  std::uint64_t segment_bytes = 1 << 18;
  unsigned threads = 0;  // 0 = machine parallelism
  // Refuse up front if the projected table would exceed this.
  std::uint64_t memory_budget_bytes = 8ULL << 30;
};

// Segmented, odd-only, bit-packed Eratosthenes sieve.  Segments are processed
// in index order regardless of which worker sieves them, so the table is
// identical for any thread count or segment size.  Throws
// std::invalid_argument for limit < 2 and ResourceError when the projected
// prime storage would blow the budget.
PrimeTable build_prime_table(std::uint64_t limit, const SieveOptions& opts = {});

// pi(x).  Throws OutOfRangeError for x > table.limit.
std::uint64_t prime_count(const PrimeTable& table, std::uint64_t x);

// sum_{p <= x} 1/p and sum_{p <= x} log(p)/p, compensated summation.
double prime_reciprocal_sum(const PrimeTable& table, std::uint64_t x);
double prime_log_sum(const PrimeTable& table, std::uint64_t x);

// Binary cache: magic, format version, limit, count, then LEB128 gap deltas.
// save overwrites; load validates the header and rebuilds the table, throwing
// CacheFormatError on malformed or version-mismatched input.
void save_prime_table(const PrimeTable& table, const std::filesystem::path& path);
PrimeTable load_prime_table(const std::filesystem::path& path);

// Neumaier-compensated accumulator used wherever long float sums appear.
struct KahanSum {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      compensation += (sum - t) + x;
    } else {
      compensation += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + compensation; }
};

}  // namespace p2race
