#include "p2race/bigint.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace p2race {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Magnitude kernels.  All take canonical little-endian limb vectors and
// return canonical ones; sign handling lives in the BigInt operators.

int cmp_mag(const std::vector<u64>& a, const std::vector<u64>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::vector<u64> add_mag(const std::vector<u64>& a, const std::vector<u64>& b) {
  const auto& big = a.size() >= b.size() ? a : b;
  const auto& small = a.size() >= b.size() ? b : a;
  std::vector<u64> out(big.size() + 1, 0);
  u64 carry = 0;
  for (std::size_t i = 0; i < big.size(); ++i) {
    u128 s = (u128)big[i] + (i < small.size() ? small[i] : 0) + carry;
    out[i] = (u64)s;
    carry = (u64)(s >> 64);
  }
  out[big.size()] = carry;
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

// Requires a >= b.
std::vector<u64> sub_mag(const std::vector<u64>& a, const std::vector<u64>& b) {
  std::vector<u64> out(a.size(), 0);
  u64 borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    u64 bi = i < b.size() ? b[i] : 0;
    u64 d = a[i] - bi;
    u64 new_borrow = (a[i] < bi) || (d < borrow) ? 1 : 0;
    out[i] = d - borrow;
    borrow = new_borrow;
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::vector<u64> mul_mag(const std::vector<u64>& a, const std::vector<u64>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<u64> out(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    u64 carry = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      u128 cur = (u128)a[i] * b[j] + out[i + j] + carry;
      out[i + j] = (u64)cur;
      carry = (u64)(cur >> 64);
    }
    out[i + b.size()] += carry;
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::vector<u64> shl_mag(const std::vector<u64>& a, std::size_t bits) {
  if (a.empty()) return {};
  std::size_t limb_shift = bits / 64, bit_shift = bits % 64;
  std::vector<u64> out(a.size() + limb_shift + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i + limb_shift] |= a[i] << bit_shift;
    if (bit_shift != 0) out[i + limb_shift + 1] |= a[i] >> (64 - bit_shift);
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::vector<u64> shr_mag(const std::vector<u64>& a, std::size_t bits) {
  std::size_t limb_shift = bits / 64, bit_shift = bits % 64;
  if (limb_shift >= a.size()) return {};
  std::vector<u64> out(a.size() - limb_shift, 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = a[i + limb_shift] >> bit_shift;
    if (bit_shift != 0 && i + limb_shift + 1 < a.size())
      out[i] |= a[i + limb_shift + 1] << (64 - bit_shift);
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

// Divide by a single limb; returns quotient, sets rem.
std::vector<u64> divmod_small(const std::vector<u64>& a, u64 d, u64& rem) {
  std::vector<u64> q(a.size(), 0);
  u128 r = 0;
  for (std::size_t i = a.size(); i-- > 0;) {
    u128 cur = (r << 64) | a[i];
    q[i] = (u64)(cur / d);
    r = cur % d;
  }
  while (!q.empty() && q.back() == 0) q.pop_back();
  rem = (u64)r;
  return q;
}

// Knuth Algorithm D on 64-bit limbs.  Requires |v| >= 2 limbs and u >= v.
void divmod_knuth(const std::vector<u64>& u, const std::vector<u64>& v,
                  std::vector<u64>& q, std::vector<u64>& r) {
  const std::size_t m = u.size(), n = v.size();
  const int shift = std::countl_zero(v[n - 1]);
  std::vector<u64> vn = shl_mag(v, (std::size_t)shift);
  std::vector<u64> un = shl_mag(u, (std::size_t)shift);
  un.resize(m + 1, 0);  // room for the virtual high limb

  q.assign(m - n + 1, 0);
  for (std::size_t j = m - n + 1; j-- > 0;) {
    u128 num = ((u128)un[j + n] << 64) | un[j + n - 1];
    u128 qhat = num / vn[n - 1];
    u128 rhat = num % vn[n - 1];
    while (qhat >> 64 ||
           (u128)(u64)qhat * vn[n - 2] > ((rhat << 64) | un[j + n - 2])) {
      --qhat;
      rhat += vn[n - 1];
      if (rhat >> 64) break;
    }
    // Multiply-subtract qhat * vn from un[j .. j+n].
    u128 borrow = 0, carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
      u128 p = (u64)qhat * (u128)vn[i] + carry;
      carry = p >> 64;
      u64 sub = (u64)p;
      u64 before = un[i + j];
      u64 after = before - sub - (u64)borrow;
      borrow = ((u128)sub + (u128)(u64)borrow > before) ? 1 : 0;
      un[i + j] = after;
    }
    u64 top_before = un[j + n];
    u64 top_after = top_before - (u64)carry - (u64)borrow;
    bool negative = (u128)(u64)carry + (u128)(u64)borrow > top_before;
    un[j + n] = top_after;

    if (negative) {  // qhat was one too large: add vn back
      --qhat;
      u128 c = 0;
      for (std::size_t i = 0; i < n; ++i) {
        u128 s = (u128)un[i + j] + vn[i] + c;
        un[i + j] = (u64)s;
        c = s >> 64;
      }
      un[j + n] += (u64)c;
    }
    q[j] = (u64)qhat;
  }
  while (!q.empty() && q.back() == 0) q.pop_back();
  un.resize(n);
  r = shr_mag(un, (std::size_t)shift);
}

void divmod_mag(const std::vector<u64>& a, const std::vector<u64>& b,
                std::vector<u64>& q, std::vector<u64>& r) {
  if (cmp_mag(a, b) < 0) {
    q.clear();
    r = a;
    return;
  }
  if (b.size() == 1) {
    u64 rem = 0;
    q = divmod_small(a, b[0], rem);
    r.clear();
    if (rem) r.push_back(rem);
    return;
  }
  divmod_knuth(a, b, q, r);
}

constexpr u64 kDecChunkBase = 10'000'000'000'000'000'000ULL;  // 10^19
constexpr int kDecChunkDigits = 19;

}  // namespace

BigInt BigInt::from_mag(int sign, std::vector<u64> mag) {
  BigInt out;
  out.mag_ = std::move(mag);
  out.sign_ = out.mag_.empty() ? 0 : sign;
  return out;
}

void BigInt::trim() {
  while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
  if (mag_.empty()) sign_ = 0;
}

BigInt BigInt::from_string(std::string_view s) {
  std::size_t pos = 0;
  int sign = 1;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    if (s[pos] == '-') sign = -1;
    ++pos;
  }
  if (pos == s.size())
    throw std::invalid_argument("integer literal has no digits");
  BigInt out;
  const BigInt chunk_base{kDecChunkBase};
  while (pos < s.size()) {
    std::size_t take = std::min<std::size_t>(kDecChunkDigits, s.size() - pos);
    u64 chunk = 0;
    u64 scale = 1;
    for (std::size_t i = 0; i < take; ++i, ++pos) {
      char c = s[pos];
      if (c < '0' || c > '9')
        throw std::invalid_argument(std::string("invalid digit '") + c +
                                    "' in integer literal");
      chunk = chunk * 10 + (u64)(c - '0');
      scale *= 10;
    }
    out = out * (take == kDecChunkDigits ? chunk_base : BigInt{scale});
    out += BigInt{chunk};
  }
  if (sign < 0) out.negate();
  return out;
}

std::string BigInt::to_string() const {
  if (sign_ == 0) return "0";
  std::vector<u64> work = mag_;
  std::string digits;
  while (!work.empty()) {
    u64 rem = 0;
    work = divmod_small(work, kDecChunkBase, rem);
    if (work.empty()) {
      // Most significant chunk: no zero padding.
      digits.insert(0, std::to_string(rem));
    } else {
      std::string part = std::to_string(rem);
      digits.insert(0, std::string(kDecChunkDigits - part.size(), '0') + part);
    }
  }
  return sign_ < 0 ? "-" + digits : digits;
}

std::size_t BigInt::bit_length() const {
  if (mag_.empty()) return 0;
  return mag_.size() * 64 - (std::size_t)std::countl_zero(mag_.back());
}

bool BigInt::bit(std::size_t i) const {
  std::size_t limb = i / 64;
  if (limb >= mag_.size()) return false;
  return (mag_[limb] >> (i % 64)) & 1;
}

BigInt BigInt::abs() const { return from_mag(sign_ == 0 ? 0 : 1, mag_); }

BigInt& BigInt::negate() {
  sign_ = -sign_;
  return *this;
}

BigInt operator-(const BigInt& a) {
  BigInt out = a;
  out.negate();
  return out;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
  if (a.sign_ == 0) return b;
  if (b.sign_ == 0) return a;
  if (a.sign_ == b.sign_)
    return BigInt::from_mag(a.sign_, add_mag(a.mag_, b.mag_));
  int c = cmp_mag(a.mag_, b.mag_);
  if (c == 0) return BigInt{};
  return c > 0 ? BigInt::from_mag(a.sign_, sub_mag(a.mag_, b.mag_))
               : BigInt::from_mag(b.sign_, sub_mag(b.mag_, a.mag_));
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
  if (a.sign_ == 0 || b.sign_ == 0) return BigInt{};
  return BigInt::from_mag(a.sign_ * b.sign_, mul_mag(a.mag_, b.mag_));
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
  if (b.sign_ == 0) throw std::domain_error("division by zero");
  std::vector<u64> qm, rm;
  divmod_mag(a.mag_, b.mag_, qm, rm);
  q = from_mag(a.sign_ * b.sign_, std::move(qm));
  r = from_mag(a.sign_, std::move(rm));
}

BigInt operator/(const BigInt& a, const BigInt& b) {
  BigInt q, r;
  BigInt::divmod(a, b, q, r);
  return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
  BigInt q, r;
  BigInt::divmod(a, b, q, r);
  return r;
}

BigInt BigInt::operator<<(std::size_t bits) const {
  return from_mag(sign_, shl_mag(mag_, bits));
}

BigInt BigInt::operator>>(std::size_t bits) const {
  return from_mag(sign_, shr_mag(mag_, bits));
}

std::strong_ordering BigInt::operator<=>(const BigInt& other) const {
  if (sign_ != other.sign_)
    return sign_ < other.sign_ ? std::strong_ordering::less
                               : std::strong_ordering::greater;
  int c = cmp_mag(mag_, other.mag_) * (sign_ < 0 ? -1 : 1);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::uint64_t BigInt::mod_u64(std::uint64_t m) const {
  if (m == 0) throw std::domain_error("modulus must be positive");
  u128 r = 0;
  for (std::size_t i = mag_.size(); i-- > 0;) r = ((r << 64) | mag_[i]) % m;
  if (sign_ < 0 && r != 0) r = m - r;
  return (u64)r;
}

std::optional<std::int64_t> BigInt::to_i64() const {
  if (mag_.empty()) return 0;
  if (mag_.size() > 1) return std::nullopt;
  if (sign_ > 0) {
    if (mag_[0] > (u64)std::numeric_limits<std::int64_t>::max())
      return std::nullopt;
    return (std::int64_t)mag_[0];
  }
  if (mag_[0] > (u64)std::numeric_limits<std::int64_t>::max() + 1)
    return std::nullopt;
  return (std::int64_t)(~mag_[0] + 1);
}

std::optional<std::uint64_t> BigInt::to_u64() const {
  if (sign_ < 0 || mag_.size() > 1) return std::nullopt;
  return mag_.empty() ? 0 : mag_[0];
}

double BigInt::to_double() const {
  if (mag_.empty()) return 0.0;
  double v = 0.0;
  // Top three limbs carry far more precision than a double can hold.
  std::size_t top = mag_.size(), lo = top >= 3 ? top - 3 : 0;
  for (std::size_t i = top; i-- > lo;) v = v * 18446744073709551616.0 + (double)mag_[i];
  v = v * std::pow(2.0, 64.0 * (double)lo);
  return sign_ < 0 ? -v : v;
}

BigInt BigInt::pow_mod(const BigInt& base, const BigInt& exp, const BigInt& m) {
  if (m.sign_ <= 0) throw std::domain_error("modulus must be positive");
  if (exp.sign_ < 0) throw std::domain_error("exponent must be nonnegative");
  BigInt result{1};
  result = result % m;  // handles m == 1
  BigInt b = base % m;
  if (b.sign_ < 0) b += m;
  for (std::size_t i = exp.bit_length(); i-- > 0;) {
    result = (result * result) % m;
    if (exp.bit(i)) result = (result * b) % m;
  }
  return result;
}

BigInt BigInt::isqrt(const BigInt& n) {
  if (n.sign_ < 0) throw std::domain_error("isqrt of negative value");
  if (n.sign_ == 0) return BigInt{};
  if (n.mag_.size() == 1) {
    u64 v = n.mag_[0];
    u64 r = (u64)std::sqrt((double)v);
    while (r > 0 && r > v / r) --r;          // sqrt() may round up
    while ((r + 1) <= v / (r + 1)) ++r;      // or down
    return BigInt{r};
  }
  // Newton iteration from an over-estimate; monotonically decreases to floor.
  BigInt x = BigInt{1} << ((n.bit_length() + 2) / 2);
  while (true) {
    BigInt y = (x + n / x) >> 1;
    if (y >= x) break;
    x = y;
  }
  return x;
}

BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
  BigInt x = a.abs(), y = b.abs();
  while (!y.is_zero()) {
    BigInt r = x % y;
    x = y;
    y = r;
  }
  return x;
}

bool BigInt::is_perfect_square() const {
  if (sign_ < 0) return false;
  if (sign_ == 0) return true;
  // Quick rejection mod 64: squares hit only 12 residues.
  static constexpr u64 kSquareMask = []() {
    u64 mask = 0;
    for (u64 i = 0; i < 64; ++i) mask |= (u64)1 << ((i * i) & 63);
    return mask;
  }();
  if (!((kSquareMask >> (mag_[0] & 63)) & 1)) return false;
  BigInt r = isqrt(*this);
  return r * r == *this;
}

std::uint64_t BigInt::fingerprint() const {
  u64 h = sign_ < 0 ? 0x9e3779b97f4a7c15ULL : 0x2545f4914f6cdd1dULL;
  for (u64 limb : mag_) {
    h ^= limb + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace p2race
