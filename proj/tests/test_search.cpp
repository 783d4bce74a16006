#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "oracles.hpp"
#include "p2race/arith.hpp"
#include "p2race/errors.hpp"
#include "p2race/search.hpp"
#include "p2race/sieve.hpp"

using namespace p2race;
using u64 = std::uint64_t;
using i64 = std::int64_t;

namespace {

const PrimeTable& table4() {
  static const PrimeTable t = build_prime_table(10000);
  return t;
}

}  // namespace

TEST_CASE("fundamental discriminants up to 50, exact sequence") {
  const std::vector<i64> expected = {
      -3, -4, 5,  -7, 8,  -8, -11, 12, 13,  -15, 17,  -19, -20, 21, -23,
      24, -24, 28, 29, -31, 33, -35, 37, -39, 40, -40, 41,  -43, 44, -47};
  CHECK(fundamental_discriminants(50, SignPolicy::both) == expected);

  std::vector<i64> positives, negatives;
  for (i64 d : expected) (d > 0 ? positives : negatives).push_back(d);
  CHECK(fundamental_discriminants(50, SignPolicy::positive) == positives);
  CHECK(fundamental_discriminants(50, SignPolicy::negative) == negatives);
}

TEST_CASE("fundamental discriminant counts at scale") {
  CHECK(fundamental_discriminants(10000, SignPolicy::both).size() == 6086);
  CHECK(fundamental_discriminants(1000000, SignPolicy::both).size() == 607925);
  const auto pos = fundamental_discriminants(10000, SignPolicy::positive);
  const auto neg = fundamental_discriminants(10000, SignPolicy::negative);
  CHECK(pos.size() + neg.size() == 6086);
}

TEST_CASE("every enumerated discriminant validates as fundamental") {
  const auto ds = fundamental_discriminants(3000, SignPolicy::both);
  for (std::size_t i = 0; i < ds.size(); i += 17)
    CHECK(validate_discriminant(BigInt{ds[i]}) ==
          DiscriminantStatus::fundamental);
  // And nothing non-fundamental sneaks in.
  for (i64 bad : {0, 1, 4, 9, -9, 25, -25, 45})
    CHECK(std::find(ds.begin(), ds.end(), bad) == ds.end());
}

TEST_CASE("scan orders, extremes, and estimate alignment") {
  const auto scan =
      scan_discriminants(200, SignPolicy::both, table4(), 10000, 3);
  CHECK(scan.bound == 200);
  CHECK(scan.cutoff == 10000);
  CHECK(scan.discriminants == fundamental_discriminants(200, SignPolicy::both));
  REQUIRE(scan.estimates.size() == scan.discriminants.size());
  REQUIRE(scan.most_negative.size() == 3);
  REQUIRE(scan.most_positive.size() == 3);

  // d = -163 is the classical extreme low conductor in this window.
  CHECK(scan.most_negative[0].d == -163);
  CHECK(scan.most_negative[0].curly.value < -1.5);

  // Ranked lists are genuinely sorted and drawn from the scanned values.
  CHECK(scan.most_negative[0].curly.value <= scan.most_negative[1].curly.value);
  CHECK(scan.most_negative[1].curly.value <= scan.most_negative[2].curly.value);
  CHECK(scan.most_positive[0].curly.value >= scan.most_positive[1].curly.value);
  const auto min_it =
      std::min_element(scan.estimates.begin(), scan.estimates.end(),
                       [](const LEstimate& a, const LEstimate& b) {
                         return a.value < b.value;
                       });
  CHECK(min_it->value == scan.most_negative[0].curly.value);

  // Estimates line up with the charsum pipeline per discriminant.
  for (std::size_t i = 0; i < scan.discriminants.size(); i += 29) {
    const CharacterSpec chi{BigInt{scan.discriminants[i]}};
    const auto cache = chi_on_primes(chi, table4());
    const auto direct = curly_l(cache, table4(), 10000);
    CHECK(std::abs(direct.value - scan.estimates[i].value) <= 1e-15);
    CHECK(std::abs(direct.oscillation - scan.estimates[i].oscillation) <=
          1e-15);
  }
}

TEST_CASE("scan extremes at bound 50 against a direct recomputation") {
  const auto scan =
      scan_discriminants(50, SignPolicy::both, table4(), 10000, 1);
  REQUIRE(scan.most_negative.size() == 1);
  REQUIRE(scan.most_positive.size() == 1);

  // Independent recomputation: long-double character sums over oracle primes.
  const auto primes = oracle::trial_primes(10000);
  i64 best_min_d = 0, best_max_d = 0;
  long double best_min = 1e9L, best_max = -1e9L;
  for (i64 d : fundamental_discriminants(50, SignPolicy::both)) {
    long double sum = 0.0L;
    for (u64 p : primes) sum += (long double)oracle::chi_at_prime(d, p) / p;
    if (sum < best_min) best_min = sum, best_min_d = d;
    if (sum > best_max) best_max = sum, best_max_d = d;
  }
  CHECK(scan.most_negative[0].d == best_min_d);
  CHECK(scan.most_positive[0].d == best_max_d);
  CHECK(scan.most_negative[0].curly.value ==
        doctest::Approx((double)best_min).epsilon(1e-12));
  CHECK(scan.most_positive[0].curly.value ==
        doctest::Approx((double)best_max).epsilon(1e-12));
}

TEST_CASE("scan is identical across thread counts") {
  const auto a = scan_discriminants(500, SignPolicy::both, table4(), 1000, 5, 1);
  const auto b = scan_discriminants(500, SignPolicy::both, table4(), 1000, 5, 8);
  REQUIRE(a.estimates.size() == b.estimates.size());
  for (std::size_t i = 0; i < a.estimates.size(); ++i) {
    CHECK(a.estimates[i].value == b.estimates[i].value);
    CHECK(a.estimates[i].oscillation == b.estimates[i].oscillation);
  }
  REQUIRE(a.most_negative.size() == b.most_negative.size());
  for (std::size_t i = 0; i < a.most_negative.size(); ++i)
    CHECK(a.most_negative[i].d == b.most_negative[i].d);
}

TEST_CASE("scan argument validation") {
  CHECK_THROWS_AS(scan_discriminants(2, SignPolicy::both, table4(), 1000),
                  std::invalid_argument);
  CHECK_THROWS_AS(scan_discriminants(50, SignPolicy::both, table4(), 20000),
                  OutOfRangeError);
}

TEST_CASE("tail_proportion") {
  ScanResult scan;
  scan.discriminants = {5, -7, 8};
  scan.estimates.resize(3);
  scan.estimates[0].value = -1.0;
  scan.estimates[1].value = 0.0;
  scan.estimates[2].value = 0.5;
  CHECK(tail_proportion(scan, 0.0, TailSide::ge) == doctest::Approx(2.0 / 3));
  CHECK(tail_proportion(scan, 0.0, TailSide::le) == doctest::Approx(2.0 / 3));
  CHECK(tail_proportion(scan, -1.0, TailSide::le) == doctest::Approx(1.0 / 3));
  CHECK(tail_proportion(scan, 10.0, TailSide::ge) == doctest::Approx(0.0));
  CHECK(tail_proportion(scan, -10.0, TailSide::ge) == doctest::Approx(1.0));
  ScanResult empty;
  CHECK_THROWS_AS(tail_proportion(empty, 0.0, TailSide::ge),
                  UndefinedRatioError);
}

TEST_CASE("tail_proportion over a real scan") {
  const auto scan =
      scan_discriminants(200, SignPolicy::both, table4(), 10000, 3);
  const double ge = tail_proportion(scan, 0.0, TailSide::ge);
  const double lt_strictish = tail_proportion(scan, 0.0, TailSide::le);
  CHECK(ge > 0.0);
  CHECK(ge < 1.0);
  // ge + le double-counts exact zeros only; with none, they sum to 1.
  CHECK(ge + lt_strictish >= 1.0);
}
