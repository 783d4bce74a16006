#include "p2race/polyprimes.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "p2race/arith.hpp"
#include "p2race/errors.hpp"
#include "p2race/parallel.hpp"

namespace p2race {
namespace {

using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

constexpr double kEulerE = 2.718281828459045;

// Machine-word counting path: a fits int64, values tracked in 128 bits.
// Safe for n up to ~1e18, far beyond the design scale.
u64 prime_value_count_small(std::int64_t a, u64 n, int rounds,
                            unsigned threads) {
  std::atomic<u64> total{0};
  parallel_chunks(n + 1, threads, [&](unsigned, u64 begin, u64 end) {
    u64 local = 0;
    for (u64 x = begin; x < end; ++x) {
      i128 v = (i128)x * (i128)x + (i128)x + (i128)a;
      u128 av = v < 0 ? (u128)(-v) : (u128)v;
      if (av >> 64) {
        BigInt big = (BigInt{(u64)(av >> 64)} << 64) + BigInt{(u64)av};
        local += is_probable_prime(big, rounds) ? 1 : 0;
      } else {
        local += is_prime_u64((u64)av) ? 1 : 0;
      }
    }
    total.fetch_add(local, std::memory_order_relaxed);
  });
  return total.load();
}

// Recursive adaptive Simpson on g over [lo, hi]; `whole` is Simpson on the
// full interval.  Standard 15-fold error estimate with Richardson tail.
double adaptive_simpson(double (*g)(double, double), double extra, double lo,
                        double hi, double f_lo, double f_mid, double f_hi,
                        double whole, double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double lq = 0.5 * (lo + mid), rq = 0.5 * (mid + hi);
  const double f_lq = g(lq, extra), f_rq = g(rq, extra);
  const double h6 = (hi - lo) / 12.0;
  const double left = h6 * (f_lo + 4.0 * f_lq + f_mid);
  const double right = h6 * (f_mid + 4.0 * f_rq + f_hi);
  const double split = left + right;
  if (depth <= 0 || std::abs(split - whole) <= 15.0 * tol) {
    return split + (split - whole) / 15.0;
  }
  return adaptive_simpson(g, extra, lo, mid, f_lo, f_lq, f_mid, left,
                          0.5 * tol, depth - 1) +
         adaptive_simpson(g, extra, mid, hi, f_mid, f_rq, f_hi, right,
                          0.5 * tol, depth - 1);
}

double li_integrand(double x, double a) {
  return 1.0 / std::log(std::abs(x * x + x + a));
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

}  // namespace

PolySpec make_poly(BigInt a) {
  PolySpec poly;
  poly.delta = BigInt{1} - BigInt{4} * a;
  poly.a = std::move(a);
  return poly;
}

namespace detail {

std::uint64_t prime_value_count_big(const PolySpec& poly, u64 n, int rounds,
                                    unsigned threads) {
  std::atomic<u64> total{0};
  parallel_chunks(n + 1, threads, [&](unsigned, u64 begin, u64 end) {
    // f(begin) once, then f(x+1) = f(x) + 2x + 2 per step.
    BigInt f = BigInt{begin} * BigInt{begin} + BigInt{begin} + poly.a;
    u64 local = 0;
    for (u64 x = begin; x < end; ++x) {
      local += is_probable_prime(f.abs(), rounds) ? 1 : 0;
      f += BigInt{2 * x + 2};
    }
    total.fetch_add(local, std::memory_order_relaxed);
  });
  return total.load();
}

}  // namespace detail

std::uint64_t prime_value_count(const PolySpec& poly, u64 n, int rounds,
                                unsigned threads) {
  if (auto a = poly.a.to_i64())
    return prime_value_count_small(*a, n, rounds, threads);
  return detail::prime_value_count_big(poly, n, rounds, threads);
}

double li_poly(const PolySpec& poly, u64 n) {
  if (n == 0) return 0.0;
  const double a = poly.a.to_double();
  const double xn = (double)n;
  const double f0 = a;                 // f(0)
  const double fn = xn * xn + xn + a;  // f(n), increasing on [0, n]

  // f crosses the band |f| <= e, where 1/log|f| blows up, iff f(0) <= e and
  // f(n) >= -e; the band's x-extent comes from the quadratic roots.
  if (f0 <= kEulerE && fn >= -kEulerE) {
    double x_lo = 0.0;
    if (f0 < -kEulerE)
      x_lo = 0.5 * (-1.0 + std::sqrt(1.0 - 4.0 * (a + kEulerE)));
    double x_hi = xn;
    if (fn > kEulerE)
      x_hi = 0.5 * (-1.0 + std::sqrt(1.0 - 4.0 * (a - kEulerE)));
    throw SingularRangeError(
        "logarithmic integral singular: |x^2 + x + a| <= e for x in [" +
        format_double(x_lo) + ", " + format_double(x_hi) + "]");
  }

  // Scale the absolute tolerance off a coarse composite-Simpson pass so the
  // adaptive refinement targets 1e-8 relative accuracy.
  const int panels = 256;
  const double h = xn / panels;
  double coarse = li_integrand(0.0, a) + li_integrand(xn, a);
  for (int i = 1; i < panels; ++i)
    coarse += (i & 1 ? 4.0 : 2.0) * li_integrand(i * h, a);
  coarse *= h / 3.0;
  const double tol = 1e-8 * std::max(std::abs(coarse), 1e-300);

  const double f_lo = li_integrand(0.0, a);
  const double f_mid = li_integrand(0.5 * xn, a);
  const double f_hi = li_integrand(xn, a);
  const double whole = xn / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
  const double integral = adaptive_simpson(li_integrand, a, 0.0, xn, f_lo,
                                           f_mid, f_hi, whole, tol, 48);
  return 2.0 * integral;
}

LEstimate hl_constant(const BigInt& delta, const PrimeTable& table,
                      u64 cutoff) {
  if (cutoff > table.limit) {
    throw OutOfRangeError("hl_constant cutoff " + std::to_string(cutoff) +
                          " exceeds sieve limit " +
                          std::to_string(table.limit));
  }
  LEstimate out;
  out.cutoff = cutoff;
  KahanSum acc;  // log of the product
  const u64 octave_start = cutoff / 2;
  double min_partial = 0.0, max_partial = 0.0;
  bool octave_seen = false;
  const std::size_t end = table.index_after(cutoff);
  for (std::size_t i = 0; i < end; ++i) {
    const u64 p = table.primes[i];
    if (p == 2) continue;  // product runs over odd primes
    const u64 r = delta.mod_u64(p);
    const int k = r == 0 ? 0 : jacobi_u64(r, p);
    if (k != 0) acc.add(std::log1p(-(double)k / (double)(p - 1)));
    if (p >= octave_start) {
      const double partial = acc.value();
      if (!octave_seen || partial < min_partial) min_partial = partial;
      if (!octave_seen || partial > max_partial) max_partial = partial;
      octave_seen = true;
    }
  }
  out.value = std::exp(acc.value());
  if (octave_seen) {
    out.oscillation = std::max(std::abs(std::exp(max_partial) - out.value),
                               std::abs(std::exp(min_partial) - out.value));
  }
  return out;
}

ConjectureFReport conjecture_f_report(const PolySpec& poly, u64 n,
                                      const PrimeTable& table, u64 cutoff,
                                      int rounds, unsigned threads) {
  if (n == 0) {
    throw UndefinedRatioError(
        "conjecture F ratio undefined at n = 0 (li_poly vanishes)");
  }
  ConjectureFReport report;
  report.prime_count = prime_value_count(poly, n, rounds, threads);
  report.li = li_poly(poly, n);
  report.hl = hl_constant(poly.delta, table, cutoff);
  report.ratio = (double)report.prime_count / (report.hl.value * report.li);
  return report;
}

}  // namespace p2race
