#include "tvkl/bounds.hpp"

#include <cmath>

#include "tvkl/error.hpp"
#include "tvkl/numeric.hpp"

namespace tvkl {

namespace {

void require_tv(double tv) {
  if (!(tv >= 0.0 && tv <= 1.0)) throw Error(Errc::out_of_range, "TV value outside [0, 1]");
}

void require_complement(OneMinusTv c) {
  if (!(c.value >= 0.0 && c.value <= 1.0)) {
    throw Error(Errc::out_of_range, "1 - TV value outside [0, 1]");
  }
}

BoundEvaluation make(BoundId id, DivergenceValue kl, double tv_bound, double complement) {
  return {id, kl, tv_bound, complement, !(complement > 0.0)};
}

// ln((1 + t) / (1 - t)) - 2t / (1 + t). Below 1e-2 the two terms nearly
// cancel, so the power series sum_{m >= 2} c_m t^m is used instead, with
// c_m = 2 for even m and 2/m - 2 for odd m.
double vajda_lower(double t) {
  if (t == 0.0) return 0.0;
  if (t < 1e-2) {
    double acc = 0.0;
    for (int m = 16; m >= 2; --m) {
      const double c = (m % 2 == 0) ? 2.0 : 2.0 / m - 2.0;
      acc = acc * t + c;
    }
    return acc * t * t;
  }
  return std::log1p(t) - std::log1p(-t) - 2.0 * t / (1.0 + t);
}

}  // namespace

std::string_view to_string(BoundId id) noexcept {
  switch (id) {
    case BoundId::pinsker: return "pinsker";
    case BoundId::bh: return "bh";
    case BoundId::tsybakov: return "tsybakov";
    case BoundId::weak_bh: return "weak_bh";
    case BoundId::vajda: return "vajda";
    case BoundId::trivial: return "trivial";
  }
  return "unknown";
}

std::optional<BoundId> parse_bound_id(std::string_view name) noexcept {
  for (BoundId id : kAllBounds) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

double weak_bh_factor() noexcept { return 1.0 / std::sqrt(one_minus_exp_neg(2.0)); }

BoundEvaluation tv_upper_pinsker(DivergenceValue kl) {
  if (!kl.is_finite()) return make(BoundId::pinsker, kl, kInfinity, -kInfinity);
  const double t = std::sqrt(0.5 * kl.value());
  return make(BoundId::pinsker, kl, t, 1.0 - t);
}

BoundEvaluation tv_upper_bh(DivergenceValue kl) {
  const double t = std::sqrt(one_minus_exp_neg(kl.value()));
  const double tail = kl.is_finite() ? std::exp(-kl.value()) : 0.0;
  // 1 - sqrt(1 - e) = e / (1 + sqrt(1 - e)) with e = e^{-kl}.
  BoundEvaluation e = make(BoundId::bh, kl, t, tail / (1.0 + t));
  e.vacuous = false;
  return e;
}

BoundEvaluation tv_upper_tsybakov(DivergenceValue kl) {
  const double half_tail = kl.is_finite() ? 0.5 * std::exp(-kl.value()) : 0.0;
  return make(BoundId::tsybakov, kl, 1.0 - half_tail, half_tail);
}

BoundEvaluation tv_upper_weak_bh(DivergenceValue kl) {
  // The ratio form makes the value exactly 1 at kl = 2.
  const double t = std::sqrt(one_minus_exp_neg(kl.value()) / one_minus_exp_neg(2.0));
  BoundEvaluation e = make(BoundId::weak_bh, kl, t, 1.0 - t);
  e.vacuous = kl.value() >= 2.0;
  return e;
}

BoundEvaluation tv_upper_vajda(DivergenceValue kl) {
  const double t = tv_upper_from_vajda(kl);
  return make(BoundId::vajda, kl, t, 1.0 - t);
}

BoundEvaluation tv_upper_trivial(DivergenceValue kl) {
  return make(BoundId::trivial, kl, 1.0, 0.0);
}

BoundEvaluation tv_upper(BoundId id, DivergenceValue kl) {
  switch (id) {
    case BoundId::pinsker: return tv_upper_pinsker(kl);
    case BoundId::bh: return tv_upper_bh(kl);
    case BoundId::tsybakov: return tv_upper_tsybakov(kl);
    case BoundId::weak_bh: return tv_upper_weak_bh(kl);
    case BoundId::vajda: return tv_upper_vajda(kl);
    case BoundId::trivial: return tv_upper_trivial(kl);
  }
  throw Error(Errc::out_of_range, "unknown bound id");
}

BoundEvaluation tv_upper_best(DivergenceValue kl) {
  constexpr BoundId order[] = {BoundId::bh, BoundId::tsybakov, BoundId::pinsker,
                               BoundId::weak_bh, BoundId::trivial};
  BoundEvaluation best = tv_upper(order[0], kl);
  for (std::size_t i = 1; i < std::size(order); ++i) {
    BoundEvaluation e = tv_upper(order[i], kl);
    if (e.tv_bound < best.tv_bound) best = e;
  }
  return best;
}

std::vector<BoundEvaluation> compare_bounds(DivergenceValue kl) {
  std::vector<BoundEvaluation> out;
  out.reserve(kAllBounds.size());
  for (BoundId id : kAllBounds) out.push_back(tv_upper(id, kl));
  return out;
}

DivergenceValue kl_lower_pinsker(double tv) {
  require_tv(tv);
  return DivergenceValue(2.0 * tv * tv);
}

DivergenceValue kl_lower_bh(double tv) {
  require_tv(tv);
  if (tv == 1.0) return DivergenceValue::infinity();
  return DivergenceValue(std::max(0.0, -std::log1p(-tv * tv)));
}

DivergenceValue kl_lower_tsybakov(double tv) {
  require_tv(tv);
  if (tv <= 0.5) return DivergenceValue(0.0);
  if (tv == 1.0) return DivergenceValue::infinity();
  return DivergenceValue(std::max(0.0, -std::log(2.0 * (1.0 - tv))));
}

DivergenceValue kl_lower_vajda(double tv) {
  require_tv(tv);
  if (tv == 1.0) return DivergenceValue::infinity();
  return DivergenceValue(std::max(0.0, vajda_lower(tv)));
}

DivergenceValue kl_lower_pinsker(OneMinusTv c) {
  require_complement(c);
  return kl_lower_pinsker(1.0 - c.value);
}

DivergenceValue kl_lower_bh(OneMinusTv c) {
  require_complement(c);
  if (c.value >= 0.5) return kl_lower_bh(1.0 - c.value);
  if (c.value == 0.0) return DivergenceValue::infinity();
  // 1 - TV^2 = c (2 - c)
  return DivergenceValue(std::max(0.0, -(std::log(c.value) + std::log(2.0 - c.value))));
}

DivergenceValue kl_lower_tsybakov(OneMinusTv c) {
  require_complement(c);
  if (c.value >= 0.5) return DivergenceValue(0.0);
  if (c.value == 0.0) return DivergenceValue::infinity();
  return DivergenceValue(std::max(0.0, -std::log(2.0 * c.value)));
}

DivergenceValue kl_lower_vajda(OneMinusTv c) {
  require_complement(c);
  if (c.value >= 0.5) return kl_lower_vajda(1.0 - c.value);
  if (c.value == 0.0) return DivergenceValue::infinity();
  const double v = std::log((2.0 - c.value) / c.value) - 2.0 * (1.0 - c.value) / (2.0 - c.value);
  return DivergenceValue(std::max(0.0, v));
}

std::optional<DivergenceValue> kl_lower(BoundId id, double tv) {
  switch (id) {
    case BoundId::pinsker: return kl_lower_pinsker(tv);
    case BoundId::bh: return kl_lower_bh(tv);
    case BoundId::tsybakov: return kl_lower_tsybakov(tv);
    case BoundId::vajda: return kl_lower_vajda(tv);
    default: return std::nullopt;
  }
}

double tv_upper_from_vajda(DivergenceValue kl) {
  if (!kl.is_finite()) return 1.0;
  if (kl.value() == 0.0) return 0.0;
  return bisect_increasing([](double t) { return vajda_lower(t); }, kl.value(), 0.0,
                           kVajdaBracketTop, 0.0);
}

}  // namespace tvkl
