#include "tvkl/sample_bounds.hpp"

#include <algorithm>
#include <cmath>

#include "tvkl/error.hpp"

namespace tvkl {

namespace {

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0 / 3.0)) {
    throw Error(Errc::out_of_range, "epsilon must lie in (0, 1/3)");
  }
}

// ln(1 / (1 - 4 eps^2)) = 2 * kl_per_toss.
double log_inverse_bias(double epsilon) { return -std::log1p(-4.0 * epsilon * epsilon); }

}  // namespace

SampleComplexityQuery::SampleComplexityQuery(double epsilon, double delta)
    : epsilon_(epsilon), delta_(delta) {
  require_epsilon(epsilon);
  if (!(delta > 0.0 && delta < 0.5)) throw Error(Errc::out_of_range, "delta must lie in (0, 1/2)");
}

double required_tv(const SampleComplexityQuery& q) noexcept { return 1.0 - 2.0 * q.delta(); }

double kl_per_toss(double epsilon) {
  require_epsilon(epsilon);
  return 0.5 * log_inverse_bias(epsilon);
}

double min_samples_pinsker(const SampleComplexityQuery& q) {
  const double tv = required_tv(q);
  return 2.0 * tv * tv / log_inverse_bias(q.epsilon());
}

double min_samples_bh(const SampleComplexityQuery& q) {
  // 1 - (1 - 2 delta)^2 = 4 delta (1 - delta), kept exact for small delta.
  const double d = q.delta();
  return 2.0 * -std::log(4.0 * d * (1.0 - d)) / log_inverse_bias(q.epsilon());
}

double min_samples_tsybakov(const SampleComplexityQuery& q) {
  return std::max(0.0, -std::log(4.0 * q.delta()) / kl_per_toss(q.epsilon()));
}

double min_samples_bh_simplified(const SampleComplexityQuery& q) {
  const double e = q.epsilon();
  return -std::log(2.0 * q.delta()) / (2.0 * e * e);
}

SampleComplexityReport report(const SampleComplexityQuery& q) {
  SampleComplexityReport r{q,
                           required_tv(q),
                           kl_per_toss(q.epsilon()),
                           min_samples_pinsker(q),
                           min_samples_bh(q),
                           min_samples_tsybakov(q),
                           min_samples_bh_simplified(q),
                           {}};
  if (r.n_bh_simplified > r.n_bh) r.notes.emplace_back(kSimplifiedExceedsExact);
  if (q.delta() >= 0.25) r.notes.emplace_back(kTsybakovVacuous);
  return r;
}

}  // namespace tvkl
