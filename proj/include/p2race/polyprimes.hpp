#pragma once

#include <cstdint>

#include "p2race/bigint.hpp"
#include "p2race/charsum.hpp"
#include "p2race/sieve.hpp"

namespace p2race {

// The quadratic f(x) = x^2 + x + a and its discriminant delta = 1 - 4a.
struct PolySpec {
  BigInt a;
  BigInt delta;
};

PolySpec make_poly(BigInt a);

// #{0 <= x <= n : |f(x)| prime}.  Values below 2^64 get deterministic
// Miller-Rabin; larger values get `rounds` seeded-random rounds plus a strong
// Lucas test, so the count is reproducible for fixed (a, n, rounds).
std::uint64_t prime_value_count(const PolySpec& poly, std::uint64_t n,
                                int rounds = 32, unsigned threads = 0);

// L_A(n) = 2 * int_0^n dx / log|f(x)| by adaptive Simpson quadrature
// (relative tolerance 1e-8).  Throws SingularRangeError, reporting the
// offending x-interval, when |f| <= e somewhere on [0, n]; n = 0 gives 0.
double li_poly(const PolySpec& poly, std::uint64_t n);

// Hardy-Littlewood constant C(delta) = prod_{2 < p <= cutoff}
// (1 - (delta/p)/(p-1)), accumulated in log space.  Absolutely convergent,
// so the octave oscillation shrinks with the cutoff.
LEstimate hl_constant(const BigInt& delta, const PrimeTable& table,
                      std::uint64_t cutoff);

// Conjecture F in one bundle: P_A(n), L_A(n), C(delta), and the ratio
// P / (C * L) that the conjecture sends to 1.  Throws UndefinedRatioError
// for n = 0 where the ratio is 0/0.
struct ConjectureFReport {
  std::uint64_t prime_count = 0;
  double li = 0.0;
  LEstimate hl;
  double ratio = 0.0;
};

ConjectureFReport conjecture_f_report(const PolySpec& poly, std::uint64_t n,
                                      const PrimeTable& table,
                                      std::uint64_t cutoff, int rounds = 32,
                                      unsigned threads = 0);

namespace detail {
// The arbitrary-precision counting path, exposed so tests can pin it against
// the machine-word path on coefficients where both apply.
std::uint64_t prime_value_count_big(const PolySpec& poly, std::uint64_t n,
                                    int rounds, unsigned threads);
}  // namespace detail

}  // namespace p2race
