#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "tvkl/divergence.hpp"

namespace tvkl {

enum class BoundId { pinsker, bh, tsybakov, weak_bh, vajda, trivial };

inline constexpr std::array<BoundId, 6> kAllBounds = {BoundId::pinsker, BoundId::bh,
                                                     BoundId::tsybakov, BoundId::weak_bh,
                                                     BoundId::vajda, BoundId::trivial};

std::string_view to_string(BoundId id) noexcept;
std::optional<BoundId> parse_bound_id(std::string_view name) noexcept;

/// An upper bound on TV evaluated at a KL value.
///
/// `tv_bound` is reported raw, so it may exceed 1. `complement` carries
/// 1 - tv_bound computed without cancellation; near 1 it keeps the
/// information that rounding `tv_bound` to a double discards.
struct BoundEvaluation {
  BoundId bound;
  DivergenceValue kl;
  double tv_bound;
  double complement;
  bool vacuous;
};

/// 1 - TV, for feeding inverse bounds without losing precision near TV = 1.
struct OneMinusTv {
  double value;
};

inline OneMinusTv complement_of(const BoundEvaluation& e) noexcept { return {e.complement}; }

/// 1 / sqrt(1 - e^{-2}), the leading factor of the weak BH bound.
double weak_bh_factor() noexcept;

// Forward bounds: TV <= g(KL).
BoundEvaluation tv_upper_pinsker(DivergenceValue kl);
BoundEvaluation tv_upper_bh(DivergenceValue kl);
BoundEvaluation tv_upper_tsybakov(DivergenceValue kl);
BoundEvaluation tv_upper_weak_bh(DivergenceValue kl);
BoundEvaluation tv_upper_vajda(DivergenceValue kl);
BoundEvaluation tv_upper_trivial(DivergenceValue kl);

BoundEvaluation tv_upper(BoundId id, DivergenceValue kl);

/// Smallest of pinsker, bh, tsybakov, weak_bh and trivial. Ties resolve in
/// the order bh, tsybakov, pinsker, weak_bh, trivial.
BoundEvaluation tv_upper_best(DivergenceValue kl);

/// Every forward bound in kAllBounds order.
std::vector<BoundEvaluation> compare_bounds(DivergenceValue kl);

// Inverse bounds: KL >= h(TV). TV must lie in [0, 1]; out_of_range otherwise.
DivergenceValue kl_lower_pinsker(double tv);
DivergenceValue kl_lower_bh(double tv);
DivergenceValue kl_lower_tsybakov(double tv);
DivergenceValue kl_lower_vajda(double tv);

DivergenceValue kl_lower_pinsker(OneMinusTv c);
DivergenceValue kl_lower_bh(OneMinusTv c);
DivergenceValue kl_lower_tsybakov(OneMinusTv c);
DivergenceValue kl_lower_vajda(OneMinusTv c);

/// Inverse bound for pinsker, bh, tsybakov or vajda; nullopt otherwise.
std::optional<DivergenceValue> kl_lower(BoundId id, double tv);

/// Upper end of the bracket searched when inverting Vajda's inequality.
inline constexpr double kVajdaBracketTop = 1.0 - 1e-15;

/// The t in [0, 1) with kl_lower_vajda(t) = kl, by bisection carried to
/// machine precision. +inf maps to 1.
double tv_upper_from_vajda(DivergenceValue kl);

}  // namespace tvkl
