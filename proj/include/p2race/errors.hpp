#pragma once

#include <stdexcept>
#include <string>

namespace p2race {

// Base class for all library-specific failures.  Callers that want a single
// catch site can catch this; std::invalid_argument / std::domain_error are
// still used for plain precondition violations on scalar arguments.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// d failed discriminant validation (d == 0, d == 1, or not fundamental).
class InvalidDiscriminantError : public Error {
 public:
  explicit InvalidDiscriminantError(const std::string& what) : Error(what) {}
};

// A query exceeded the range covered by a sieve table.
class OutOfRangeError : public Error {
 public:
  explicit OutOfRangeError(const std::string& what) : Error(what) {}
};

// A requested computation would exceed the configured memory budget.
class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what) : Error(what) {}
};

// A ratio whose denominator is empty/zero (bias ratio with no coprime
// semiprimes, tail proportion of an empty scan, Conjecture F ratio at n=0).
class UndefinedRatioError : public Error {
 public:
  explicit UndefinedRatioError(const std::string& what) : Error(what) {}
};

// The logarithmic-integral integrand passed through the |f| <= e band where
// 1/log|f| blows up; the offending x-interval is reported in the message.
class SingularRangeError : public Error {
 public:
  explicit SingularRangeError(const std::string& what) : Error(what) {}
};

// A prime-table cache file is malformed or has an unsupported version.
class CacheFormatError : public Error {
 public:
  explicit CacheFormatError(const std::string& what) : Error(what) {}
};

}  // namespace p2race
