#include "p2race/arith.hpp"

#include <bit>
#include <random>
#include <stdexcept>
#include <utility>

#include "p2race/errors.hpp"

namespace p2race {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr char kBadDiscriminantMsg[] =
    "d must be a fundamental discriminant ≠ 0, 1";

// Number of trailing zero bits of a nonzero BigInt magnitude.
std::size_t trailing_zero_bits(const BigInt& v) {
  const auto& limbs = v.limbs();
  std::size_t i = 0;
  while (limbs[i] == 0) ++i;
  return i * 64 + (std::size_t)std::countr_zero(limbs[i]);
}

enum class Sqfree { yes, no, unknown };

// Trial-division squarefreeness of v >= 1.  Divides out single factors so the
// completion bound shrinks as factors fall away; with bound == 0 runs until
// k^2 exceeds the remaining cofactor (complete for word-sized inputs).
Sqfree squarefree_by_trial(BigInt v, u64 bound) {
  for (u64 k = 2;; k = (k == 2) ? 3 : k + 2) {
    if (BigInt{k} * BigInt{k} > v) return Sqfree::yes;
    if (bound != 0 && k > bound) return Sqfree::unknown;
    if (k > 0xFFFFFFFFULL) return Sqfree::unknown;  // k*k must fit a word
    if (v.mod_u64(k) == 0) {
      BigInt q = v / BigInt{k};
      if (q.mod_u64(k) == 0) return Sqfree::no;
      v = std::move(q);
    }
  }
}

}  // namespace

int jacobi_u64(std::uint64_t a, std::uint64_t n) {
  if (n == 0 || (n & 1) == 0)
    throw std::domain_error("jacobi symbol requires odd positive n");
  a %= n;
  int result = 1;
  while (a != 0) {
    int tz = std::countr_zero(a);
    a >>= tz;
    if ((tz & 1) && (n % 8 == 3 || n % 8 == 5)) result = -result;
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    std::swap(a, n);
    a %= n;
  }
  return n == 1 ? result : 0;
}

int kronecker(std::int64_t a, std::uint64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  int tz = std::countr_zero(n);
  if (tz != 0) {
    if ((a & 1) == 0) return 0;
    int am8 = (int)(((a % 8) + 8) % 8);
    if ((tz & 1) && (am8 == 3 || am8 == 5)) result = -result;
    n >>= tz;
  }
  u64 au;
  if (a < 0) {
    if ((n & 3) == 3) result = -result;  // (-1/n) for odd n
    au = ~(u64)a + 1;
  } else {
    au = (u64)a;
  }
  int j = jacobi_u64(au % n, n);
  return j == 0 ? 0 : result * j;
}

int kronecker(const BigInt& a, const BigInt& n_in) {
  if (n_in.is_negative())
    throw std::domain_error("kronecker symbol requires n >= 0");
  // Word-sized operands take the machine path.
  if (auto nv = n_in.to_u64()) {
    if (auto av = a.to_i64()) return kronecker(*av, *nv);
  }
  if (n_in.is_zero()) return a.abs() == BigInt{1} ? 1 : 0;

  BigInt n = n_in;
  int result = 1;
  if (n.is_even()) {
    if (a.is_even()) return 0;
    u64 am8 = a.mod_u64(8);
    std::size_t tz = trailing_zero_bits(n);
    n = n >> tz;
    if ((tz & 1) && (am8 == 3 || am8 == 5)) result = -result;
  }
  if (n == BigInt{1}) return result;
  // Reduce to the true nonnegative residue; Jacobi then needs no sign twist.
  BigInt num = a % n;
  if (num.is_negative()) num += n;
  BigInt den = std::move(n);
  while (!num.is_zero()) {
    std::size_t tz = trailing_zero_bits(num);
    if (tz != 0) num = num >> tz;
    u64 den8 = den.mod_u64(8);
    if ((tz & 1) && (den8 == 3 || den8 == 5)) result = -result;
    if (num.mod_u64(4) == 3 && (den8 & 3) == 3) result = -result;
    std::swap(num, den);
    num = num % den;
  }
  return den == BigInt{1} ? result : 0;
}

DiscriminantStatus validate_discriminant(const BigInt& d, u64 trial_bound) {
  if (d.is_zero() || d == BigInt{1}) return DiscriminantStatus::not_fundamental;
  u64 r4 = d.mod_u64(4);
  BigInt core;
  if (r4 == 1) {
    core = d.abs();
  } else if (r4 == 0) {
    BigInt m = d / BigInt{4};
    u64 m4 = m.mod_u64(4);
    if (m4 != 2 && m4 != 3) return DiscriminantStatus::not_fundamental;
    core = m.abs();
  } else {
    return DiscriminantStatus::not_fundamental;
  }
  switch (squarefree_by_trial(std::move(core), trial_bound)) {
    case Sqfree::yes:
      return DiscriminantStatus::fundamental;
    case Sqfree::no:
      return DiscriminantStatus::not_fundamental;
    case Sqfree::unknown:
      return DiscriminantStatus::trial_checked;
  }
  return DiscriminantStatus::not_fundamental;  // unreachable
}

CharacterSpec::CharacterSpec(BigInt d, std::uint64_t trial_bound)
    : d_(std::move(d)), trial_bound_(trial_bound) {
  validation_ = validate_discriminant(d_, trial_bound_);
  if (validation_ == DiscriminantStatus::not_fundamental)
    throw InvalidDiscriminantError(kBadDiscriminantMsg);
  d_mod8_ = (int)d_.mod_u64(8);
}

int CharacterSpec::chi(std::uint64_t n) const {
  if (n == 0) return 0;  // |d| = 1 cannot pass validation
  int result = 1;
  if ((n & 1) == 0) {
    if ((d_mod8_ & 1) == 0) return 0;
    int tz = std::countr_zero(n);
    n >>= tz;
    if ((tz & 1) && (d_mod8_ == 3 || d_mod8_ == 5)) result = -result;
  }
  if (n == 1) return result;
  u64 r = d_.mod_u64(n);
  if (r == 0) return 0;
  int j = jacobi_u64(r, n);
  return j == 0 ? 0 : result * j;
}

std::uint64_t mulmod_u64(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }

std::uint64_t powmod_u64(u64 b, u64 e, u64 m) {
  u64 result = 1 % m;
  b %= m;
  while (e != 0) {
    if (e & 1) result = mulmod_u64(result, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return result;
}

bool is_prime_u64(std::uint64_t n) {
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return n > 1;
  u64 d = n - 1;
  int s = std::countr_zero(d);
  d >>= s;
  // This witness set is verified complete below 2^64.
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL,
                1795265022ULL}) {
    u64 ar = a % n;
    if (ar == 0) continue;
    u64 x = powmod_u64(ar, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

namespace detail {
namespace {

// x/2 mod odd n for x already reduced to [0, n).
BigInt half_mod(BigInt x, const BigInt& n) {
  if (!x.is_even()) x += n;
  return x >> 1;
}

BigInt reduce_nonneg(BigInt x, const BigInt& n) {
  x = x % n;
  if (x.is_negative()) x += n;
  return x;
}

// Uniform-ish value in [2, n-2]; the slight modular bias is irrelevant for
// witness selection.  Deterministic: rng is seeded from n by the caller.
BigInt random_witness(std::mt19937_64& rng, const BigInt& n) {
  std::size_t words = n.limbs().size() + 1;
  BigInt r;
  for (std::size_t i = 0; i < words; ++i) {
    r = (r << 64) + BigInt{rng()};
  }
  return r % (n - BigInt{3}) + BigInt{2};
}

// Strong Lucas probable-prime test with Selfridge's parameter choice.
// Requires n odd, n >= 5, n not a perfect square, gcd(n, small primes) == 1.
bool strong_lucas(const BigInt& n) {
  std::int64_t d_param = 5;
  while (true) {
    int k = kronecker(BigInt{d_param}, n);
    if (k == -1) break;
    if (k == 0) {
      // Shares a factor with d_param; composite unless n == |d_param|.
      return n == BigInt{d_param}.abs();
    }
    d_param = d_param > 0 ? -(d_param + 2) : -(d_param - 2);
  }
  const std::int64_t q_param = (1 - d_param) / 4;  // P = 1
  const BigInt dmod = reduce_nonneg(BigInt{d_param}, n);
  const BigInt qmod = reduce_nonneg(BigInt{q_param}, n);

  BigInt np1 = n + BigInt{1};
  std::size_t r = trailing_zero_bits(np1);
  BigInt m = np1 >> r;

  // Left-to-right binary chain for U_m, V_m, Q^m (mod n), P = 1:
  //   2k:  U <- U*V,  V <- V^2 - 2 Q^k
  //   +1:  U <- (U + V)/2,  V <- (D*U + V)/2
  BigInt u{1}, v{1}, qk = qmod;
  for (std::size_t i = m.bit_length() - 1; i-- > 0;) {
    BigInt u2 = reduce_nonneg(u * v, n);
    BigInt v2 = reduce_nonneg(v * v - BigInt{2} * qk, n);
    qk = reduce_nonneg(qk * qk, n);
    if (m.bit(i)) {
      BigInt u3 = half_mod(reduce_nonneg(u2 + v2, n), n);
      BigInt v3 = half_mod(reduce_nonneg(dmod * u2 + v2, n), n);
      u2 = std::move(u3);
      v2 = std::move(v3);
      qk = reduce_nonneg(qk * qmod, n);
    }
    u = std::move(u2);
    v = std::move(v2);
  }

  if (u.is_zero()) return true;  // U_m == 0 (mod n)
  for (std::size_t j = 0; j < r; ++j) {
    if (v.is_zero()) return true;  // V_{m 2^j} == 0 (mod n)
    if (j + 1 < r) {
      v = reduce_nonneg(v * v - BigInt{2} * qk, n);
      qk = reduce_nonneg(qk * qk, n);
    }
  }
  return false;
}

}  // namespace

bool mr_lucas(const BigInt& n, int rounds) {
  static constexpr u64 kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                         29, 31, 37, 41, 43, 47, 53, 59, 61,
                                         67, 71, 73, 79, 83, 89, 97};
  if (n < BigInt{2}) return false;
  for (u64 p : kSmallPrimes) {
    if (n.mod_u64(p) == 0) return n == BigInt{p};
  }
  if (n < BigInt{101 * 101}) return true;
  if (n.is_perfect_square()) return false;

  BigInt nm1 = n - BigInt{1};
  std::size_t s = trailing_zero_bits(nm1);
  BigInt d = nm1 >> s;

  std::mt19937_64 rng(n.fingerprint() ^ 0xd1b54a32d192ed03ULL);
  for (int round = 0; round < rounds; ++round) {
    BigInt a = random_witness(rng, n);
    BigInt x = BigInt::pow_mod(a, d, n);
    if (x == BigInt{1} || x == nm1) continue;
    bool witness = true;
    for (std::size_t i = 1; i < s; ++i) {
      x = (x * x) % n;
      if (x == nm1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return strong_lucas(n);
}

}  // namespace detail

bool is_probable_prime(const BigInt& n, int rounds) {
  if (n.sign() <= 0) return false;
  if (auto v = n.to_u64()) return is_prime_u64(*v);
  return detail::mr_lucas(n, rounds);
}

}  // namespace p2race
