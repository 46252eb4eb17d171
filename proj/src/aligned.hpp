#pragma once

#include <optional>
#include <span>
#include <utility>

#include "tvkl/distribution.hpp"

namespace tvkl::detail {

// Weight vectors of two distributions over a common support. Borrows the
// inputs when their supports already agree, otherwise owns an aligned copy.
class AlignedPair {
 public:
  AlignedPair(const Distribution& p, const Distribution& q) {
    if (same_support(p, q)) {
      p_ = p.probs();
      q_ = q.probs();
    } else {
      owned_.emplace(align(p, q));
      p_ = owned_->first.probs();
      q_ = owned_->second.probs();
    }
  }
  AlignedPair(const AlignedPair&) = delete;
  AlignedPair& operator=(const AlignedPair&) = delete;

  std::span<const double> p() const noexcept { return p_; }
  std::span<const double> q() const noexcept { return q_; }
  std::size_t size() const noexcept { return p_.size(); }

 private:
  std::optional<std::pair<Distribution, Distribution>> owned_;
  std::span<const double> p_;
  std::span<const double> q_;
};

}  // namespace tvkl::detail
