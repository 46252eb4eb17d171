#include "tvkl/distribution.hpp"

#include <charconv>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "tvkl/error.hpp"
#include "tvkl/numeric.hpp"

namespace tvkl {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::negative_weight: return "NegativeWeight";
    case Errc::non_finite_weight: return "NonFiniteWeight";
    case Errc::sum_out_of_tolerance: return "SumOutOfTolerance";
    case Errc::duplicate_label: return "DuplicateLabel";
    case Errc::invalid_label: return "InvalidLabel";
    case Errc::empty_support: return "EmptySupport";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::too_large: return "TooLarge";
    case Errc::mismatched_supports: return "MismatchedSupports";
    case Errc::empty_p_support: return "EmptyPSupport";
    case Errc::misaligned_witness: return "MisalignedWitness";
    case Errc::support_mismatch: return "SupportMismatch";
    case Errc::unsupported_inequality: return "UnsupportedInequality";
    case Errc::parse_error: return "ParseError";
    case Errc::io_error: return "IoError";
  }
  return "Unknown";
}

std::optional<std::size_t> Distribution::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (support_[i] == label) return i;
  }
  return std::nullopt;
}

Distribution make_distribution(std::vector<double> weights,
                               std::optional<std::vector<std::string>> labels,
                               Normalization normalization) {
  if (weights.empty()) throw Error(Errc::empty_support, "distribution needs at least one atom");

  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights[i])) {
      throw Error(Errc::non_finite_weight, "weight " + std::to_string(i) + " is not finite");
    }
    if (weights[i] < 0.0) {
      throw Error(Errc::negative_weight, "weight " + std::to_string(i) + " is negative");
    }
  }

  const double sum = compensated_sum(weights);
  if (normalization == Normalization::renormalize) {
    if (!(sum > 0.0)) throw Error(Errc::sum_out_of_tolerance, "weights sum to 0");
    for (double& w : weights) w /= sum;
  } else if (std::abs(sum - 1.0) > kSumTolerance) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, sum);
    throw Error(Errc::sum_out_of_tolerance,
                "weights sum to " + std::string(buf, res.ptr) + ", not 1 within 1e-9");
  }

  std::vector<std::string> support;
  if (labels) {
    if (labels->size() != weights.size()) {
      throw Error(Errc::mismatched_supports, "label count " + std::to_string(labels->size()) +
                                                 " differs from weight count " +
                                                 std::to_string(weights.size()));
    }
    std::unordered_set<std::string_view> seen;
    for (const auto& label : *labels) {
      if (label.find(kProductSeparator) != std::string::npos) {
        throw Error(Errc::invalid_label, "label '" + label + "' contains the reserved separator");
      }
      if (!seen.insert(label).second) {
        throw Error(Errc::duplicate_label, "label '" + label + "' appears twice");
      }
    }
    support = std::move(*labels);
  } else {
    support.reserve(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) support.push_back(std::to_string(i));
  }
  return Distribution(std::move(support), std::move(weights));
}

Distribution bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::out_of_range, "Bernoulli parameter outside [0, 1]");
  return Distribution({"1", "0"}, {p, 1.0 - p});
}

Distribution tensor_power(const ProductSpec& spec) {
  if (spec.power < 1) throw Error(Errc::out_of_range, "tensor power must be at least 1");
  const std::size_t k = spec.base.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < spec.power; ++i) {
    if (k > 1 && total > kMaxMaterializedAtoms / k) {
      throw Error(Errc::too_large,
                  "product support exceeds 2^20 atoms; use KL additivity (n * KL) instead");
    }
    total *= k;
  }

  std::vector<std::string> support(1, std::string{});
  std::vector<double> probs(1, 1.0);
  for (std::size_t c = 0; c < spec.power; ++c) {
    std::vector<std::string> next_support;
    std::vector<double> next_probs;
    next_support.reserve(support.size() * k);
    next_probs.reserve(probs.size() * k);
    for (std::size_t i = 0; i < support.size(); ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        next_support.push_back(c == 0 ? spec.base.support()[j]
                                      : support[i] + std::string(kProductSeparator) +
                                            spec.base.support()[j]);
        next_probs.push_back(probs[i] * spec.base[j]);
      }
    }
    support = std::move(next_support);
    probs = std::move(next_probs);
  }
  return Distribution(std::move(support), std::move(probs));
}

bool same_support(const Distribution& p, const Distribution& q) noexcept {
  return p.support() == q.support();
}

std::pair<Distribution, Distribution> align(const Distribution& p, const Distribution& q) {
  if (same_support(p, q)) return {p, q};

  std::vector<std::string> support = p.support();
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < support.size(); ++i) index.emplace(support[i], i);
  std::vector<std::size_t> q_slot(q.size());
  for (std::size_t j = 0; j < q.size(); ++j) {
    const auto& label = q.support()[j];
    auto it = index.find(label);
    if (it == index.end()) {
      q_slot[j] = support.size();
      support.push_back(label);
    } else {
      q_slot[j] = it->second;
    }
  }

  std::vector<double> pp(support.size(), 0.0);
  std::vector<double> qq(support.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) pp[i] = p[i];
  for (std::size_t j = 0; j < q.size(); ++j) qq[q_slot[j]] = q[j];
  return {Distribution(support, std::move(pp)), Distribution(std::move(support), std::move(qq))};
}

}  // namespace tvkl
