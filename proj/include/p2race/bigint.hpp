#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace p2race {

// Sign-magnitude arbitrary-precision integer on 64-bit little-endian limbs.
// The magnitude is canonical (no trailing zero limbs) and sign_ is 0 exactly
// when the magnitude is empty, so operator== can compare members directly.
// Division truncates toward zero; operator% keeps the sign of the dividend.
class BigInt {
 public:
  BigInt() = default;

  // Implicit by design so int64/uint64 mix freely into BigInt arithmetic.
  template <std::integral T>
  BigInt(T v) {  // NOLINT
    if (v == 0) return;
    if constexpr (std::is_signed_v<T>) {
      sign_ = v < 0 ? -1 : 1;
      std::int64_t w = (std::int64_t)v;
      mag_.push_back(w < 0 ? ~(std::uint64_t)w + 1 : (std::uint64_t)w);
    } else {
      sign_ = 1;
      mag_.push_back((std::uint64_t)v);
    }
  }

  // Parses an optionally signed decimal string.  Throws std::invalid_argument
  // on empty input, a lone sign, or any non-digit character.
  static BigInt from_string(std::string_view s);
  std::string to_string() const;

  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  bool is_negative() const { return sign_ < 0; }
  bool is_even() const { return sign_ == 0 || (mag_[0] & 1) == 0; }

  std::size_t bit_length() const;      // 0 for zero
  bool bit(std::size_t i) const;       // i-th bit of the magnitude

  BigInt abs() const;
  BigInt& negate();

  friend BigInt operator-(const BigInt& a);
  friend BigInt operator+(const BigInt& a, const BigInt& b);
  friend BigInt operator-(const BigInt& a, const BigInt& b);
  friend BigInt operator*(const BigInt& a, const BigInt& b);
  friend BigInt operator/(const BigInt& a, const BigInt& b);
  friend BigInt operator%(const BigInt& a, const BigInt& b);
  BigInt& operator+=(const BigInt& b) { return *this = *this + b; }
  BigInt& operator-=(const BigInt& b) { return *this = *this - b; }
  BigInt& operator*=(const BigInt& b) { return *this = *this * b; }

  BigInt operator<<(std::size_t bits) const;
  BigInt operator>>(std::size_t bits) const;

  // Truncated division: q rounds toward zero, a == q*b + r, |r| < |b| and
  // r has the sign of a (or is zero).  Throws std::domain_error if b == 0.
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);

  std::strong_ordering operator<=>(const BigInt& other) const;
  bool operator==(const BigInt& other) const = default;

  // Nonnegative residue of *this mod m (m > 0), regardless of sign.
  std::uint64_t mod_u64(std::uint64_t m) const;

  // Conversions; nullopt when the value does not fit.
  std::optional<std::int64_t> to_i64() const;
  std::optional<std::uint64_t> to_u64() const;  // requires *this >= 0
  double to_double() const;                     // +-inf on overflow

  // (base^exp) mod m with m > 0, exp >= 0.
  static BigInt pow_mod(const BigInt& base, const BigInt& exp, const BigInt& m);
  // Floor square root; throws std::domain_error for negative n.
  static BigInt isqrt(const BigInt& n);
  static BigInt gcd(const BigInt& a, const BigInt& b);
  bool is_perfect_square() const;

  // Stable content hash of sign and limbs (used to seed witness PRNGs).
  std::uint64_t fingerprint() const;

  const std::vector<std::uint64_t>& limbs() const { return mag_; }

 private:
  static BigInt from_mag(int sign, std::vector<std::uint64_t> mag);
  void trim();

  int sign_ = 0;                     // -1, 0, +1
  std::vector<std::uint64_t> mag_;   // little-endian, canonical
};

}  // namespace p2race
