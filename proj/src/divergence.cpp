#include "tvkl/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aligned.hpp"
#include "tvkl/error.hpp"
#include "tvkl/numeric.hpp"

namespace tvkl {

namespace {

// p ln(p / q) with 0 ln 0 = 0 and p > 0 = q giving +inf.
double kl_term(double p, double q) noexcept {
  if (p == 0.0) return 0.0;
  if (q == 0.0) return kInfinity;
  return p * log_ratio(p, q);
}

double kl_sum(std::span<const double> p, std::span<const double> q) noexcept {
  CompensatedSum acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double t = kl_term(p[i], q[i]);
    if (std::isinf(t)) return kInfinity;
    acc += t;
  }
  // The exact value is nonnegative; only rounding can push it below zero.
  return std::max(0.0, acc.value());
}

void require_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(Errc::out_of_range, std::string(what) + " outside [0, 1]");
  }
}

double clamp_probability(double x) noexcept { return std::clamp(x, 0.0, 1.0); }

}  // namespace

DivergenceValue::DivergenceValue(double value) : value_(value) {
  if (!(value >= 0.0)) throw Error(Errc::out_of_range, "divergence must be nonnegative");
}

DivergenceValue DivergenceValue::infinity() noexcept {
  DivergenceValue d;
  d.value_ = kInfinity;
  return d;
}

bool DivergenceValue::is_finite() const noexcept { return std::isfinite(value_); }

double total_variation(const Distribution& p, const Distribution& q) {
  const detail::AlignedPair a(p, q);
  CompensatedSum acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a.p()[i] - a.q()[i]);
  return std::min(1.0, 0.5 * acc.value());
}

SubsetSupremum tv_subset_oracle(const Distribution& p, const Distribution& q) {
  const detail::AlignedPair a(p, q);
  const std::size_t n = a.size();
  if (n > kMaxSubsetOracleAtoms) {
    throw Error(Errc::too_large, "subset enumeration limited to " +
                                     std::to_string(kMaxSubsetOracleAtoms) + " atoms");
  }
  std::vector<double> diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = a.p()[i] - a.q()[i];

  double best = 0.0;  // the empty event
  std::uint32_t best_mask = 0;
  const std::uint32_t count = std::uint32_t{1} << n;
  for (std::uint32_t mask = 1; mask < count; ++mask) {
    CompensatedSum acc;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint32_t{1} << i)) acc += diff[i];
    }
    const double v = acc.value();
    if (v > best) {
      best = v;
      best_mask = mask;
    }
  }
  EventSubset argmax = EventSubset::empty(n);
  for (std::size_t i = 0; i < n; ++i) argmax.members[i] = (best_mask >> i) & 1U;
  return {best, std::move(argmax)};
}

DivergenceValue kl_divergence(const Distribution& p, const Distribution& q) {
  const detail::AlignedPair a(p, q);
  const double v = kl_sum(a.p(), a.q());
  return std::isinf(v) ? DivergenceValue::infinity() : DivergenceValue(v);
}

DivergenceValue binary_kl(double a, double b) {
  require_unit_interval(a, "binary_kl: p");
  require_unit_interval(b, "binary_kl: q");
  const double p[2] = {a, 1.0 - a};
  const double q[2] = {b, 1.0 - b};
  const double v = kl_sum(p, q);
  return std::isinf(v) ? DivergenceValue::infinity() : DivergenceValue(v);
}

double binary_tv(double a, double b) {
  require_unit_interval(a, "binary_tv: p");
  require_unit_interval(b, "binary_tv: q");
  return std::abs(a - b);
}

double hellinger_affinity(const Distribution& p, const Distribution& q) {
  const detail::AlignedPair a(p, q);
  CompensatedSum acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::sqrt(a.p()[i]) * std::sqrt(a.q()[i]);
  return std::min(1.0, acc.value());
}

OverlapSums overlap_identities(const Distribution& p, const Distribution& q) {
  const detail::AlignedPair a(p, q);
  CompensatedSum lo;
  CompensatedSum hi;
  for (std::size_t i = 0; i < a.size(); ++i) {
    lo += std::min(a.p()[i], a.q()[i]);
    hi += std::max(a.p()[i], a.q()[i]);
  }
  return {lo.value(), hi.value()};
}

BhDecomposition bh_decomposition(const Distribution& p, const Distribution& q) {
  const detail::AlignedPair a(p, q);
  BhDecomposition out;
  CompensatedSum ev;
  CompensatedSum ew;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double px = a.p()[i];
    if (!(px > 0.0)) continue;
    const double u = a.q()[i] / px;
    const double v = std::max(u - 1.0, 0.0);
    const double w = std::max(1.0 - u, 0.0);
    out.atoms.push_back(i);
    out.u.push_back(u);
    out.v.push_back(v);
    out.w.push_back(w);
    ev += px * v;
    ew += px * w;
    const double residual = std::abs((1.0 + v) * (1.0 - w) - u);
    out.max_identity_residual = std::max({out.max_identity_residual, residual, v * w});
  }
  if (out.atoms.empty()) throw Error(Errc::empty_p_support, "p has no atom with positive mass");
  out.expected_v = ev.value();
  out.expected_w = ew.value();
  out.tv = total_variation(p, q);
  return out;
}

double mass(const Distribution& p, const EventSubset& s) {
  if (s.size() != p.size()) {
    throw Error(Errc::mismatched_supports, "event has " + std::to_string(s.size()) +
                                               " flags for " + std::to_string(p.size()) + " atoms");
  }
  CompensatedSum acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (s.members[i]) acc += p[i];
  }
  return clamp_probability(acc.value());
}

std::pair<Distribution, Distribution> quantize(const Distribution& p, const Distribution& q,
                                               const EventSubset& s) {
  const auto [pa, qa] = align(p, q);
  // Both atoms are summed directly rather than as 1 - p(S), so an event
  // missing only tiny atoms keeps a nonzero complement.
  auto two_point = [&s](const Distribution& d) {
    EventSubset rest = s;
    rest.members.flip();
    const double in = mass(d, s);
    const double out = mass(d, rest);
    return make_distribution({in, out}, std::vector<std::string>{"1", "0"});
  };
  return {two_point(pa), two_point(qa)};
}

}  // namespace tvkl
