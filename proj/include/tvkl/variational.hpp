#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tvkl/distribution.hpp"
#include "tvkl/divergence.hpp"

namespace tvkl {

/// A real-valued function on the atoms of a support, index-aligned with it.
class WitnessFunction {
 public:
  /// Throws out_of_range on non-finite values.
  explicit WitnessFunction(std::vector<double> values);

  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double sup_norm() const noexcept { return sup_norm_; }

 private:
  std::vector<double> values_;
  double sup_norm_;
};

/// Sup-norm budget of the Pinsker-from-variational argument. Must be > 0.
class TflParameter {
 public:
  explicit TflParameter(double lambda);
  double lambda() const noexcept { return lambda_; }

 private:
  double lambda_;
};

/// ln sum_i w_i e^{f_i}, shifted by max f over positive-weight atoms.
double log_mean_exp(std::span<const double> weights, std::span<const double> f);

/// E_p[f] - ln E_q[e^f]. Throws misaligned_witness when f does not match the
/// aligned support of (p, q).
double dv_value(const Distribution& p, const Distribution& q, const WitnessFunction& f);

/// f* = ln(p/q), with 0 where both vanish. Throws support_mismatch unless
/// p and q are positive on the same atoms.
WitnessFunction dv_optimal_witness(const Distribution& p, const Distribution& q);

/// Perturbation half-widths cycled through by dv_supremum.
inline constexpr std::array<double, 3> kPerturbationScales = {0.01, 0.1, 1.0};

struct DvSupremum {
  double value = 0.0;            // dv_value at the optimal witness
  std::vector<double> gaps;      // value - dv_value(f* + noise), one per trial
  double min_gap = 0.0;
  /// Gap counts in bins (-inf, 0), [0, 1e-12), [1e-12, 1e-9), [1e-9, 1e-6),
  /// [1e-6, 1e-3), [1e-3, inf).
  std::array<std::size_t, 6> gap_histogram{};
};

DvSupremum dv_supremum(const Distribution& p, const Distribution& q, std::size_t trials,
                       std::uint64_t seed);

/// kl / (2 lambda) + lambda / 4. Throws out_of_range for infinite kl.
double pinsker_via_tfl(DivergenceValue kl, TflParameter param);

struct TflOptimum {
  double lambda_star;
  double bound;
};

/// lambda* = sqrt(2 kl), bound sqrt(kl / 2). kl = 0 gives the limit (0, 0).
TflOptimum pinsker_via_tfl_optimal(DivergenceValue kl);

/// E_q[f] + sup|f|^2 / 2 - ln E_q[e^f]; nonnegative by Hoeffding's lemma.
double hoeffding_step_check(const Distribution& p, const Distribution& q,
                            const WitnessFunction& f);

struct IpmCheck {
  double supremum;        // sup over |f| <= 1 of E_p f - E_q f
  double half_supremum;
  double gap;             // half_supremum - total_variation
  double max_random;      // best value across random unit-norm witnesses
  bool random_exceeded;   // some random witness beat the supremum
};

/// Checks TV = (1/2) sup_{|f| <= 1} (E_p f - E_q f) using the sign witness.
/// Throws too_large above kMaxSubsetOracleAtoms atoms.
IpmCheck ipm_identity_check(const Distribution& p, const Distribution& q, std::size_t trials,
                            std::uint64_t seed);

}  // namespace tvkl
