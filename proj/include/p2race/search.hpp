#pragma once

#include <cstdint>
#include <vector>

#include "p2race/charsum.hpp"
#include "p2race/sieve.hpp"

namespace p2race {

enum class SignPolicy { positive, negative, both };
enum class TailSide { ge, le };

// One scanned discriminant with its truncated curly-L estimate.  The scan is
// capped at word-sized |d| (design scale ~1e7), so d is a plain int64.
struct DiscriminantRecord {
  std::int64_t d = 0;
  LEstimate curly;
};

struct ScanResult {
  std::uint64_t bound = 0;    // scanned |d| <= bound
  std::uint64_t cutoff = 0;   // prime cutoff used for every curly-L
  SignPolicy signs = SignPolicy::both;
  // All scanned discriminants, |d| ascending with +d before -d, and their
  // estimates in the same order.
  std::vector<std::int64_t> discriminants;
  std::vector<LEstimate> estimates;
  // Extremes ranked by value (ascending / descending), ties broken by |d|
  // ascending then positive sign first; at most top_k entries each.
  std::vector<DiscriminantRecord> most_negative;
  std::vector<DiscriminantRecord> most_positive;
};

// Every fundamental discriminant with |d| <= bound under the sign policy,
// ordered |d| ascending with the positive twin first.
std::vector<std::int64_t> fundamental_discriminants(std::uint64_t bound,
                                                    SignPolicy signs);

// curly-L for every fundamental |d| <= bound at the given cutoff.  Requires
// bound >= 3 and cutoff <= table.limit.  Estimates are written by index, so
// results are identical for any thread count.
ScanResult scan_discriminants(std::uint64_t bound, SignPolicy signs,
                              const PrimeTable& table, std::uint64_t cutoff,
                              std::size_t top_k = 10, unsigned threads = 0);

// Fraction of scanned discriminants with value >= tau (ge) or <= tau (le).
// Throws UndefinedRatioError when the scan is empty.
double tail_proportion(const ScanResult& scan, double tau, TailSide side);

}  // namespace p2race
