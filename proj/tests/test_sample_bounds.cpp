#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "tvkl/bounds.hpp"
#include "tvkl/distribution.hpp"
#include "tvkl/divergence.hpp"
#include "tvkl/error.hpp"
#include "tvkl/sample_bounds.hpp"

using namespace tvkl;

namespace {

bool has_note(const SampleComplexityReport& r, const char* note) {
  return std::find(r.notes.begin(), r.notes.end(), note) != r.notes.end();
}

double log_inverse_bias(double eps) { return std::log(1.0 / (1.0 - 4.0 * eps * eps)); }

}  // namespace

TEST_CASE("query validation") {
  CHECK_NOTHROW(SampleComplexityQuery(0.1, 0.01));
  for (auto [e, d] : {std::pair{0.0, 0.1}, {1.0 / 3.0, 0.1}, {0.5, 0.1}, {0.1, 0.0},
                      {0.1, 0.5}, {-0.1, 0.1}, {0.1, NAN}}) {
    try {
      SampleComplexityQuery q(e, d);
      FAIL("expected out_of_range");
    } catch (const Error& err) {
      CHECK(err.code() == Errc::out_of_range);
    }
  }
  CHECK(required_tv(SampleComplexityQuery(0.1, 0.01)) == doctest::Approx(0.98));
}

TEST_CASE("kl_per_toss examples") {
  const double direct = kl_divergence(bernoulli(0.5), bernoulli(0.6)).value();
  CHECK(std::abs(kl_per_toss(0.1) - direct) <= 1e-15);
  CHECK(std::abs(kl_per_toss(0.1) - 0.0204109972601276) <= 1e-15);
  CHECK(std::abs(kl_per_toss(0.25) - 0.5 * std::log(4.0 / 3.0)) <= 1e-15);
  CHECK(std::abs(kl_per_toss(0.25) - 0.14384103622589042) <= 1e-15);
  for (double eps : {1e-3, 1e-5, 1e-7}) {
    CHECK(std::abs(kl_per_toss(eps) / (eps * eps) - 2.0) <= 10.0 * eps * eps + 1e-8);
  }
  // Direct sums agree across the whole range.
  for (int i = 1; i < 333; ++i) {
    const double eps = i / 1000.0;
    const double d = kl_divergence(bernoulli(0.5), bernoulli(0.5 + eps)).value();
    CHECK(std::abs(kl_per_toss(eps) - d) <= 1e-15 + 1e-15 * d);
  }
  CHECK_THROWS_AS(kl_per_toss(0.0), Error);
  CHECK_THROWS_AS(kl_per_toss(0.34), Error);
}

TEST_CASE("pinsker route examples") {
  const double n = min_samples_pinsker(SampleComplexityQuery(0.1, 0.01));
  CHECK(std::abs(n - 2.0 * 0.9604 / log_inverse_bias(0.1)) <= 1e-12);
  CHECK(std::abs(n - 47.046) <= 0.01);
  CHECK(min_samples_pinsker(SampleComplexityQuery(0.1, std::nextafter(0.5, 0.0))) < 1e-20);
  CHECK(std::abs(min_samples_pinsker(SampleComplexityQuery(0.1, 0.25)) - 12.248299130800879) <=
        1e-12);
}

TEST_CASE("bh route examples") {
  const double n = min_samples_bh(SampleComplexityQuery(0.1, 0.01));
  CHECK(std::abs(n - 2.0 * std::log(1.0 / 0.0396) / log_inverse_bias(0.1)) <= 1e-10);
  CHECK(std::abs(n - 158.19541) <= 1e-4);
  const double quarter = min_samples_bh(SampleComplexityQuery(0.1, 0.25));
  CHECK(std::abs(quarter - 2.0 * std::log(4.0 / 3.0) / std::log(25.0 / 24.0)) <= 1e-12);
  CHECK(std::abs(quarter - 14.09446431183257) <= 1e-12);
  // Chosen so that the logarithm in the numerator equals 1.
  const double delta = (1.0 - std::sqrt(1.0 - std::exp(-1.0))) / 2.0;
  CHECK(std::abs(min_samples_bh(SampleComplexityQuery(0.1, delta)) - 1.0 / kl_per_toss(0.1)) <=
        1e-11);
}

TEST_CASE("tsybakov route examples") {
  CHECK(std::abs(min_samples_tsybakov(SampleComplexityQuery(0.1, 0.01)) -
                 std::log(25.0) / kl_per_toss(0.1)) <= 1e-12);
  CHECK(std::abs(min_samples_tsybakov(SampleComplexityQuery(0.1, 0.01)) - 157.70) <= 0.01);
  CHECK(min_samples_tsybakov(SampleComplexityQuery(0.1, 0.25)) == 0.0);
  CHECK(min_samples_tsybakov(SampleComplexityQuery(0.1, 0.4)) == 0.0);
  CHECK(std::abs(min_samples_tsybakov(SampleComplexityQuery(0.1, 0.001)) - 270.5140198440127) <=
        1e-10);
}

TEST_CASE("report examples") {
  const SampleComplexityReport r = report(SampleComplexityQuery(0.1, 0.01));
  CHECK(r.required_tv == doctest::Approx(0.98));
  CHECK(r.kl_per_toss == kl_per_toss(0.1));
  CHECK(std::abs(r.n_pinsker - 47.05) <= 0.01);
  CHECK(std::abs(r.n_tsybakov - 157.70) <= 0.01);
  CHECK(std::abs(r.n_bh_simplified - 50.0 * std::log(50.0)) <= 1e-12);
  CHECK(std::abs(r.n_bh_simplified - 195.60) <= 0.01);
  CHECK(has_note(r, kSimplifiedExceedsExact));
  CHECK_FALSE(has_note(r, kTsybakovVacuous));

  const SampleComplexityReport q = report(SampleComplexityQuery(0.1, 0.25));
  CHECK(q.n_bh > q.n_pinsker);
  CHECK(has_note(q, kTsybakovVacuous));

  const SampleComplexityReport h = report(SampleComplexityQuery(0.2, std::nextafter(0.5, 0.0)));
  CHECK(h.n_pinsker < 1e-20);
  CHECK(h.n_bh < 1e-10);
  CHECK(h.n_tsybakov == 0.0);
}

TEST_CASE("all routes are nonnegative and BH beats Pinsker for small delta") {
  for (int i = 1; i < 333; i += 7) {
    for (int j = 1; j < 500; j += 7) {
      const SampleComplexityReport r = report(SampleComplexityQuery(i / 1000.0, j / 1000.0));
      CHECK(r.n_pinsker >= 0.0);
      CHECK(r.n_bh >= 0.0);
      CHECK(r.n_tsybakov >= 0.0);
      CHECK(r.n_bh_simplified >= 0.0);
      if (j / 1000.0 <= 0.09) CHECK(r.n_bh >= r.n_pinsker);
      CHECK(has_note(r, kSimplifiedExceedsExact) == (r.n_bh_simplified > r.n_bh));
    }
  }
}

TEST_CASE("generic pipeline through the inverse bounds") {
  for (double eps : {0.01, 0.1, 0.3}) {
    for (double delta : {1e-9, 1e-4, 0.01, 0.1, 0.2, 0.3, 0.45}) {
      const SampleComplexityQuery q(eps, delta);
      const double kl = kl_per_toss(eps);
      // The complement 1 - TV = 2 delta is passed exactly.
      const OneMinusTv c{2.0 * delta};
      const double bh = kl_lower_bh(c).value() / kl;
      const double ts = kl_lower_tsybakov(c).value() / kl;
      CHECK(std::abs(bh - min_samples_bh(q)) <= 1e-12 * std::max(1.0, bh));
      CHECK(std::abs(ts - min_samples_tsybakov(q)) <= 1e-12 * std::max(1.0, ts));
      // Squared Pinsker gives n KL >= 2 TV^2; the closed form keeps TV^2 <= n KL.
      const double pin = kl_lower_pinsker(required_tv(q)).value() / kl;
      CHECK(std::abs(pin - 2.0 * min_samples_pinsker(q)) <= 1e-12 * std::max(1.0, pin));
    }
  }
}

TEST_CASE("pinsker route saturates") {
  for (int i = 1; i < 333; i += 3) {
    const double eps = i / 1000.0;
    const double cap = 2.0 / log_inverse_bias(eps);
    for (int k = 1; k <= 20; ++k) {
      const double delta = std::pow(10.0, -0.5 * k);
      if (delta >= 0.5) continue;
      CHECK(min_samples_pinsker(SampleComplexityQuery(eps, delta)) <= cap);
    }
  }
  CHECK(2.0 / log_inverse_bias(0.1) <= 48.995);
}

TEST_CASE("bh route grows like log(1/delta)") {
  for (double eps : {0.01, 0.1, 0.3}) {
    const double c = 2.0 / log_inverse_bias(eps);
    for (int k = 7; k <= 10; ++k) {
      const double delta = std::pow(10.0, -k);
      const double ratio = min_samples_bh(SampleComplexityQuery(eps, delta)) / std::log(1.0 / delta);
      CHECK(ratio >= 0.9 * c);
      CHECK(ratio <= 1.1 * c);
    }
    // ln 4 is still a sizable share of ln(1/delta) at 1e-4.
    const double early = min_samples_bh(SampleComplexityQuery(eps, 1e-4)) / std::log(1e4);
    CHECK(early < 0.9 * c);
    CHECK(early > 0.8 * c);
  }
}

TEST_CASE("per-toss KL is at most 4 eps^2") {
  for (int i = 1; i <= 1000; ++i) {
    const double eps = (1.0 / 3.0) * i / 1001.0;
    for (int n : {1, 10, 1000}) CHECK(n * kl_per_toss(eps) <= 4.0 * n * eps * eps);
  }
}

TEST_CASE("KL additivity on materialized tensor powers") {
  for (double eps : {0.05, 0.1, 0.3}) {
    const Distribution p = bernoulli(0.5);
    const Distribution q = bernoulli(0.5 + eps);
    for (std::size_t n = 1; n <= 12; ++n) {
      const double kl = kl_divergence(tensor_power({p, n}), tensor_power({q, n})).value();
      CHECK(std::abs(kl - n * kl_per_toss(eps)) <= 1e-10);
    }
  }
}
