#pragma once

#include <compare>
#include <cstddef>
#include <utility>
#include <vector>

#include "tvkl/distribution.hpp"

namespace tvkl {

/// A nonnegative extended real: a finite value >= 0 or +infinity.
class DivergenceValue {
 public:
  constexpr DivergenceValue() noexcept = default;
  /// Throws out_of_range for negative or NaN input.
  explicit DivergenceValue(double value);

  static DivergenceValue infinity() noexcept;

  double value() const noexcept { return value_; }
  bool is_finite() const noexcept;

  friend auto operator<=>(const DivergenceValue&, const DivergenceValue&) = default;

 private:
  double value_ = 0.0;
};

/// Membership flags over a support, index-aligned with it.
struct EventSubset {
  std::vector<bool> members;

  std::size_t size() const noexcept { return members.size(); }
  static EventSubset empty(std::size_t n) { return {std::vector<bool>(n, false)}; }
  static EventSubset full(std::size_t n) { return {std::vector<bool>(n, true)}; }
};

// Every pairwise routine below aligns its inputs by label union when their
// supports differ, so atoms present in only one distribution count as zero
// mass in the other.

/// Half the L1 distance.
double total_variation(const Distribution& p, const Distribution& q);

struct SubsetSupremum {
  double value;
  EventSubset argmax;
};

/// max over all events S of p(S) - q(S), by exhaustive enumeration.
/// Throws too_large for more than 20 atoms.
SubsetSupremum tv_subset_oracle(const Distribution& p, const Distribution& q);

inline constexpr std::size_t kMaxSubsetOracleAtoms = 20;

/// KL(p || q) in nats, with 0 log 0 = 0. Returns +inf exactly when some atom
/// has p > 0 = q.
DivergenceValue kl_divergence(const Distribution& p, const Distribution& q);

/// KL between Bernoulli(a) and Bernoulli(b). a, b in [0, 1].
DivergenceValue binary_kl(double a, double b);
/// |a - b| for a, b in [0, 1].
double binary_tv(double a, double b);

/// sum_x sqrt(p(x) q(x)).
double hellinger_affinity(const Distribution& p, const Distribution& q);

struct OverlapSums {
  double min_sum;  // sum_x min(p(x), q(x)) = 1 - TV
  double max_sum;  // sum_x max(p(x), q(x)) = 1 + TV
};

OverlapSums overlap_identities(const Distribution& p, const Distribution& q);

/// Per-atom likelihood-ratio split used by the Bretagnolle-Huber argument,
/// over the atoms where p > 0: U = q/p, V = (U - 1)_+, W = (1 - U)_+.
struct BhDecomposition {
  std::vector<std::size_t> atoms;  // indices into the aligned support
  std::vector<double> u;
  std::vector<double> v;
  std::vector<double> w;
  double expected_v = 0.0;  // E_p[V]
  double expected_w = 0.0;  // E_p[W]
  double tv = 0.0;
  /// max over atoms of |(1 + V)(1 - W) - U| and |V * W|.
  double max_identity_residual = 0.0;
};

/// Throws empty_p_support if p has no positive atom.
BhDecomposition bh_decomposition(const Distribution& p, const Distribution& q);

/// (Bernoulli(p(S)), Bernoulli(q(S))). `s` indexes the aligned support;
/// throws mismatched_supports on a size mismatch.
std::pair<Distribution, Distribution> quantize(const Distribution& p, const Distribution& q,
                                               const EventSubset& s);

/// p(S) for a subset aligned with p's support.
double mass(const Distribution& p, const EventSubset& s);

}  // namespace tvkl
