#include "tvkl/variational.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aligned.hpp"
#include "tvkl/error.hpp"
#include "tvkl/numeric.hpp"
#include "tvkl/random.hpp"

namespace tvkl {

namespace {

void require_witness_size(const WitnessFunction& f, std::size_t n) {
  if (f.size() != n) {
    throw Error(Errc::misaligned_witness, "witness has " + std::to_string(f.size()) +
                                              " values for " + std::to_string(n) + " atoms");
  }
}

double expectation(std::span<const double> weights, std::span<const double> f) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] != 0.0) acc += weights[i] * f[i];
  }
  return acc.value();
}

}  // namespace

WitnessFunction::WitnessFunction(std::vector<double> values)
    : values_(std::move(values)), sup_norm_(0.0) {
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(Errc::out_of_range, "witness values must be finite");
    sup_norm_ = std::max(sup_norm_, std::abs(v));
  }
}

TflParameter::TflParameter(double lambda) : lambda_(lambda) {
  if (!(lambda > 0.0) || std::isinf(lambda)) {
    throw Error(Errc::out_of_range, "lambda must be a positive finite number");
  }
}

double log_mean_exp(std::span<const double> weights, std::span<const double> f) {
  double shift = -kInfinity;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0.0) shift = std::max(shift, f[i]);
  }
  if (std::isinf(shift)) throw Error(Errc::empty_support, "reference weights are all zero");
  CompensatedSum acc;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0.0) acc += weights[i] * std::exp(f[i] - shift);
  }
  return shift + std::log(acc.value());
}

double dv_value(const Distribution& p, const Distribution& q, const WitnessFunction& f) {
  const detail::AlignedPair a(p, q);
  require_witness_size(f, a.size());
  return expectation(a.p(), f.values()) - log_mean_exp(a.q(), f.values());
}

WitnessFunction dv_optimal_witness(const Distribution& p, const Distribution& q) {
  const detail::AlignedPair a(p, q);
  std::vector<double> f(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double px = a.p()[i];
    const double qx = a.q()[i];
    if ((px > 0.0) != (qx > 0.0)) {
      throw Error(Errc::support_mismatch,
                  "atom " + std::to_string(i) + " has mass under only one distribution");
    }
    if (px > 0.0) f[i] = log_ratio(px, qx);
  }
  return WitnessFunction(std::move(f));
}

DvSupremum dv_supremum(const Distribution& p, const Distribution& q, std::size_t trials,
                       std::uint64_t seed) {
  const WitnessFunction best = dv_optimal_witness(p, q);
  DvSupremum out;
  out.value = dv_value(p, q, best);
  out.gaps.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(Rng::derive(seed, t));
    const double scale = kPerturbationScales[t % kPerturbationScales.size()];
    std::vector<double> f = best.values();
    for (double& v : f) v += rng.uniform(-scale, scale);
    out.gaps.push_back(out.value - dv_value(p, q, WitnessFunction(std::move(f))));
  }
  out.min_gap = out.gaps.empty() ? 0.0 : *std::min_element(out.gaps.begin(), out.gaps.end());
  constexpr double kEdges[] = {0.0, 1e-12, 1e-9, 1e-6, 1e-3};
  for (double g : out.gaps) {
    std::size_t bin = 0;
    while (bin < std::size(kEdges) && g >= kEdges[bin]) ++bin;
    ++out.gap_histogram[bin];
  }
  return out;
}

double pinsker_via_tfl(DivergenceValue kl, TflParameter param) {
  if (!kl.is_finite()) throw Error(Errc::out_of_range, "KL must be finite");
  return kl.value() / (2.0 * param.lambda()) + param.lambda() / 4.0;
}

TflOptimum pinsker_via_tfl_optimal(DivergenceValue kl) {
  if (!kl.is_finite()) throw Error(Errc::out_of_range, "KL must be finite");
  if (kl.value() == 0.0) return {0.0, 0.0};
  return {std::sqrt(2.0 * kl.value()), std::sqrt(0.5 * kl.value())};
}

double hoeffding_step_check(const Distribution& p, const Distribution& q,
                            const WitnessFunction& f) {
  const detail::AlignedPair a(p, q);
  require_witness_size(f, a.size());
  const double norm = f.sup_norm();
  return expectation(a.q(), f.values()) + 0.5 * norm * norm - log_mean_exp(a.q(), f.values());
}

IpmCheck ipm_identity_check(const Distribution& p, const Distribution& q, std::size_t trials,
                            std::uint64_t seed) {
  const detail::AlignedPair a(p, q);
  const std::size_t n = a.size();
  if (n > kMaxSubsetOracleAtoms) {
    throw Error(Errc::too_large, "IPM check limited to " +
                                     std::to_string(kMaxSubsetOracleAtoms) + " atoms");
  }
  auto gain = [&](std::span<const double> f) {
    CompensatedSum acc;
    for (std::size_t i = 0; i < n; ++i) acc += f[i] * (a.p()[i] - a.q()[i]);
    return acc.value();
  };

  std::vector<double> sign(n);
  for (std::size_t i = 0; i < n; ++i) sign[i] = a.p()[i] >= a.q()[i] ? 1.0 : -1.0;

  IpmCheck out{};
  out.supremum = gain(sign);
  out.half_supremum = 0.5 * out.supremum;
  out.gap = out.half_supremum - total_variation(p, q);
  out.max_random = -kInfinity;
  std::vector<double> f(n);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(Rng::derive(seed, t));
    for (double& v : f) v = rng.uniform(-1.0, 1.0);
    // Push one coordinate to the boundary so the witness has unit norm.
    f[rng.integer(0, n - 1)] = rng.coin() ? 1.0 : -1.0;
    const double g = gain(f);
    out.max_random = std::max(out.max_random, g);
    if (g > out.supremum + 1e-12) out.random_exceeded = true;
  }
  return out;
}

}  // namespace tvkl
