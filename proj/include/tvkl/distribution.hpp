#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tvkl {

/// Separator joining coordinate labels of a product atom. Reserved: user
/// supplied labels may not contain it.
inline constexpr std::string_view kProductSeparator = "·";

/// Absolute tolerance on |sum(weights) - 1| for unnormalized construction.
inline constexpr double kSumTolerance = 1e-9;

/// Largest support a tensor power may materialize.
inline constexpr std::size_t kMaxMaterializedAtoms = std::size_t{1} << 20;

enum class Normalization { strict, renormalize };

struct ProductSpec;

/// A finite discrete probability distribution over labelled atoms.
///
/// Immutable after construction. Zero-weight atoms are kept so that support
/// mismatches stay visible to the divergence routines.
class Distribution {
 public:
  const std::vector<std::string>& support() const noexcept { return support_; }
  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

  /// Index of `label` in the support, if present.
  std::optional<std::size_t> index_of(std::string_view label) const;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  Distribution(std::vector<std::string> support, std::vector<double> probs)
      : support_(std::move(support)), probs_(std::move(probs)) {}

  friend Distribution make_distribution(std::vector<double>, std::optional<std::vector<std::string>>,
                                        Normalization);
  friend Distribution bernoulli(double);
  friend Distribution tensor_power(const ProductSpec&);
  friend std::pair<Distribution, Distribution> align(const Distribution&, const Distribution&);

  std::vector<std::string> support_;
  std::vector<double> probs_;
};

/// Validates and builds a distribution. Labels default to "0", "1", ...
///
/// Throws Error with negative_weight, non_finite_weight, sum_out_of_tolerance,
/// duplicate_label, invalid_label or empty_support.
Distribution make_distribution(std::vector<double> weights,
                               std::optional<std::vector<std::string>> labels = std::nullopt,
                               Normalization normalization = Normalization::strict);

/// Two atoms ("1", "0") with weights (p, 1 - p).
Distribution bernoulli(double p);

struct ProductSpec {
  Distribution base;
  std::size_t power;
};

/// Explicit n-fold product. Atoms are enumerated with the first coordinate
/// varying slowest; labels join coordinate labels with kProductSeparator.
/// Throws too_large when |support|^power exceeds kMaxMaterializedAtoms.
Distribution tensor_power(const ProductSpec& spec);

/// Re-expresses both distributions on the union of their labels (p's order
/// first, then labels only q carries). Missing atoms get weight 0.
std::pair<Distribution, Distribution> align(const Distribution& p, const Distribution& q);

bool same_support(const Distribution& p, const Distribution& q) noexcept;

}  // namespace tvkl
