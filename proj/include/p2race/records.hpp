#pragma once

#include <cstdint>

namespace p2race {

// Preset constants for the two bundled prime-generating polynomials
// x^2 + x + A and their discriminants 1 - 4A.

// Euler's polynomial: A = 41, discriminant -163.
inline constexpr std::int64_t kEulerA = 41;
inline constexpr std::int64_t kEulerDiscriminant = -163;

// The Jacobson-Williams record coefficient (negative, 71 digits) whose
// discriminant 1 - 4A is the lowest-known-curly-L conductor; both as decimal
// strings since they exceed machine words.
inline constexpr char kRecordA[] =
    "-33251810980696878103150085257129508857312847751498190349983874538507313";
inline constexpr char kRecordDiscriminant[] =
    "133007243922787512412600341028518035429251391005992761399935498154029253";

}  // namespace p2race
