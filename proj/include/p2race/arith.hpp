#pragma once

#include <cstdint>
#include <string>

#include "p2race/bigint.hpp"

namespace p2race {

// --- Kronecker symbol -------------------------------------------------------
//
// (a/n) extended to all integers: completely multiplicative in n, with
// (a/2) = 0 for even a and (-1)^((a^2-1)/8) for odd a, and (a/0) = [|a| == 1].
// Computed by reciprocity and power-of-two extraction; no factorizations.

// Jacobi symbol (a/n) for odd n >= 1, 0 <= a.
int jacobi_u64(std::uint64_t a, std::uint64_t n);

// Kronecker symbol (a/n) for machine-word a and n >= 0.
int kronecker(std::int64_t a, std::uint64_t n);

// Kronecker symbol (a/n) for arbitrary-precision operands, n >= 0.
int kronecker(const BigInt& a, const BigInt& n);

// --- Fundamental discriminants ----------------------------------------------

enum class DiscriminantStatus {
  fundamental,      // verified: d = 1 mod 4 squarefree, or 4m with m = 2,3 mod 4
  not_fundamental,  // verified non-fundamental (includes d == 0 and d == 1)
  trial_checked,    // congruence conditions hold; squarefree only up to bound
};

// Classifies d.  Squarefreeness is established by trial division: complete
// when trial_bound^2 exceeds the relevant magnitude, otherwise the result is
// trial_checked.  trial_bound == 0 means "divide as far as needed".
DiscriminantStatus validate_discriminant(const BigInt& d,
                                         std::uint64_t trial_bound = 0);

// --- Kronecker character ----------------------------------------------------

// chi_d = (d/.) for a validated discriminant d.  Construction rejects d that
// fails validate_discriminant (status not_fundamental) with
// InvalidDiscriminantError; a trial_checked result is accepted and recorded.
class CharacterSpec {
 public:
  CharacterSpec(BigInt d, std::uint64_t trial_bound = 100000);

  const BigInt& d() const { return d_; }
  DiscriminantStatus validation() const { return validation_; }
  std::uint64_t trial_bound() const { return trial_bound_; }

  // chi(p) for prime p in {-1, 0, +1}; one word-sized reduction of d then a
  // machine Jacobi symbol.  Valid for any n, prime or not, since the symbol
  // only depends on d mod n (odd part) and d mod 8 (two part).
  int chi(std::uint64_t n) const;

 private:
  BigInt d_;
  DiscriminantStatus validation_;
  std::uint64_t trial_bound_;
  int d_mod8_;  // nonnegative residue of d mod 8
};

// --- Primality ---------------------------------------------------------------

// Deterministic Miller-Rabin for n < 2^64 (seven-witness set).
bool is_prime_u64(std::uint64_t n);

// Probabilistic primality: deterministic below 2^64; above, `rounds`
// Miller-Rabin rounds with witnesses drawn from a PRNG seeded by n itself,
// followed by a strong Lucas test.  Deterministic for a fixed n and rounds.
bool is_probable_prime(const BigInt& n, int rounds = 32);

namespace detail {
// The >= 2^64 code path (random-witness Miller-Rabin + strong Lucas),
// exposed so tests can cross-validate it against is_prime_u64 on small n.
bool mr_lucas(const BigInt& n, int rounds);
}  // namespace detail

// Modular helpers shared across the library.
std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m);

}  // namespace p2race
