#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tvkl/distribution.hpp"

namespace tvkl {

enum class InequalityId {
  pinsker_binary,   // 2 (p - q)^2 <= kl(p, q) on Bernoulli pairs
  pinsker,
  bh,
  tsybakov,
  weak_bh,
  vajda,
  hellinger_chain,  // 1 - TV^2 >= affinity^2 >= e^{-KL}
  dpi_quantized,    // quantizing by an event cannot increase KL or TV
  tfl_lower,        // E_p f - ln E_q e^f <= KL
};

inline constexpr std::array<InequalityId, 9> kAllInequalities = {
    InequalityId::pinsker_binary, InequalityId::pinsker,         InequalityId::bh,
    InequalityId::tsybakov,       InequalityId::weak_bh,         InequalityId::vajda,
    InequalityId::hellinger_chain, InequalityId::dpi_quantized,  InequalityId::tfl_lower};

std::string_view to_string(InequalityId id) noexcept;
std::optional<InequalityId> parse_inequality_id(std::string_view name) noexcept;

inline constexpr double kClosedFormTolerance = 1e-12;
inline constexpr double kRandomizedTolerance = 1e-10;

/// Outcome of checking one inequality over a grid or a batch of trials.
/// margin = RHS - LHS; a point violates when margin < -tolerance.
struct ScanReport {
  std::string name;
  InequalityId inequality;
  std::string grid;
  double tolerance = 0.0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;  // cells with infinite KL
  std::size_t violations = 0;
  double worst_margin = 0.0;
  std::vector<double> worst_point;
  std::chrono::nanoseconds elapsed{0};

  bool passed() const noexcept { return violations == 0; }
};

/// Evaluates `ineq` at every (i/r, j/r), 0 < i, j < r, using two-point
/// closed forms. Throws unsupported_inequality for tfl_lower and out_of_range
/// for resolution < 2.
ScanReport scan_bernoulli(InequalityId ineq, std::size_t resolution,
                          double tolerance = kClosedFormTolerance);

/// Seeded random distribution on `atoms` atoms: normalized U^{1/concentration}
/// draws with a 1e-12 mass floor, so the support is always full.
Distribution random_distribution(std::uint64_t seed, std::size_t atoms, double concentration);

inline constexpr double kMassFloor = 1e-12;

struct AtomRange {
  std::size_t min;
  std::size_t max;
};

/// Randomized counterpart of scan_bernoulli for multi-atom inequalities.
/// Each trial draws a pair (plus a witness or event when needed) from its own
/// derived seed. Atom counts must lie in [2, 64]; pinsker_binary is
/// unsupported.
ScanReport falsify(InequalityId ineq, std::size_t trials, AtomRange atoms, std::uint64_t seed,
                   double tolerance = kRandomizedTolerance);
ScanReport falsify(InequalityId ineq, std::size_t trials, std::size_t atoms, std::uint64_t seed,
                   double tolerance = kRandomizedTolerance);

/// For seeded full-support pairs, checks that TV < 1 and that the BH bound
/// stays strictly below 1. worst_margin is the smallest 1 - TV observed.
ScanReport kl_finite_implies_tv_lt_one(std::size_t trials, std::uint64_t seed,
                                       AtomRange atoms = {2, 64});

inline constexpr std::size_t kSuiteGridResolution = 500;
inline constexpr std::size_t kSuiteTrials = 1000;

/// Named verification suites: "bernoulli", "random", "all".
/// `tolerance`, when given, replaces both default tolerances.
std::vector<ScanReport> run_suite(std::string_view name, std::uint64_t seed,
                                  std::optional<double> tolerance = std::nullopt);
std::vector<std::string_view> suite_names();

}  // namespace tvkl
