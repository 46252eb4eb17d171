#include "tvkl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tvkl/bounds.hpp"
#include "tvkl/divergence.hpp"
#include "tvkl/error.hpp"
#include "tvkl/numeric.hpp"
#include "tvkl/random.hpp"
#include "tvkl/variational.hpp"

namespace tvkl {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kConcentrations[] = {0.01, 0.1, 1.0, 10.0};
constexpr double kWitnessScales[] = {0.1, 1.0, 10.0};

// Running minimum of margins with violation accounting.
class MarginTracker {
 public:
  explicit MarginTracker(double tolerance) : tolerance_(tolerance) {}

  void add(double margin, std::vector<double> point) {
    ++evaluated_;
    if (margin < -tolerance_ || std::isnan(margin)) ++violations_;
    if (std::isnan(margin) || margin < worst_) {
      worst_ = std::isnan(margin) ? -kInfinity : margin;
      worst_point_ = std::move(point);
    }
  }
  void skip() { ++skipped_; }

  void fill(ScanReport& r) const {
    r.tolerance = tolerance_;
    r.evaluated = evaluated_;
    r.skipped = skipped_;
    r.violations = violations_;
    r.worst_margin = evaluated_ ? worst_ : 0.0;
    r.worst_point = worst_point_;
  }

 private:
  double tolerance_;
  std::size_t evaluated_ = 0;
  std::size_t skipped_ = 0;
  std::size_t violations_ = 0;
  double worst_ = kInfinity;
  std::vector<double> worst_point_;
};

bool is_forward(InequalityId id) {
  return id == InequalityId::pinsker || id == InequalityId::bh || id == InequalityId::tsybakov ||
         id == InequalityId::weak_bh;
}

BoundId forward_bound(InequalityId id) {
  switch (id) {
    case InequalityId::pinsker: return BoundId::pinsker;
    case InequalityId::bh: return BoundId::bh;
    case InequalityId::tsybakov: return BoundId::tsybakov;
    default: return BoundId::weak_bh;
  }
}

// Quantities shared by all margins of a pair. one_minus_tv is the overlap
// sum, which stays accurate when TV is close to 1.
struct PairStats {
  double tv;
  double one_minus_tv;
  double one_plus_tv;
  DivergenceValue kl;
  double affinity;
};

// Smallest RHS - LHS among the inequalities encoded by `id`, or nullopt when
// the margin is undefined because KL is infinite.
std::optional<double> margin(InequalityId id, const PairStats& s) {
  if (!s.kl.is_finite()) return std::nullopt;
  const double kl = s.kl.value();
  if (is_forward(id)) {
    // bound - TV = (1 - TV) - (1 - bound)
    return s.one_minus_tv - tv_upper(forward_bound(id), s.kl).complement;
  }
  switch (id) {
    case InequalityId::pinsker_binary: return kl - 2.0 * s.tv * s.tv;
    case InequalityId::vajda: {
      const DivergenceValue lower = s.one_minus_tv < 0.5 ? kl_lower_vajda(OneMinusTv{s.one_minus_tv})
                                                         : kl_lower_vajda(s.tv);
      return kl - lower.value();
    }
    case InequalityId::hellinger_chain: {
      const double aff2 = s.affinity * s.affinity;
      return std::min(s.one_minus_tv * s.one_plus_tv - aff2, aff2 - std::exp(-kl));
    }
    default: return std::nullopt;
  }
}

PairStats stats(const Distribution& p, const Distribution& q) {
  const OverlapSums o = overlap_identities(p, q);
  return {total_variation(p, q), o.min_sum, o.max_sum, kl_divergence(p, q),
          hellinger_affinity(p, q)};
}

PairStats binary_stats(double a, double b) {
  const double lo = std::min(a, b) + std::min(1.0 - a, 1.0 - b);
  const double hi = std::max(a, b) + std::max(1.0 - a, 1.0 - b);
  const double aff = std::sqrt(a) * std::sqrt(b) + std::sqrt(1.0 - a) * std::sqrt(1.0 - b);
  return {binary_tv(a, b), lo, hi, binary_kl(a, b), aff};
}

double dpi_margin(const Distribution& p, const Distribution& q, const PairStats& s,
                  const EventSubset& event) {
  const auto [pq, qq] = quantize(p, q, event);
  const double kl_gap = s.kl.value() - kl_divergence(pq, qq).value();
  const double tv_gap = s.tv - std::abs(pq[0] - qq[0]);
  return std::min(kl_gap, tv_gap);
}

void record_elapsed(Clock::time_point start, ScanReport& r) {
  r.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
}

}  // namespace

std::string_view to_string(InequalityId id) noexcept {
  switch (id) {
    case InequalityId::pinsker_binary: return "pinsker_binary";
    case InequalityId::pinsker: return "pinsker";
    case InequalityId::bh: return "bh";
    case InequalityId::tsybakov: return "tsybakov";
    case InequalityId::weak_bh: return "weak_bh";
    case InequalityId::vajda: return "vajda";
    case InequalityId::hellinger_chain: return "hellinger_chain";
    case InequalityId::dpi_quantized: return "dpi_quantized";
    case InequalityId::tfl_lower: return "tfl_lower";
  }
  return "unknown";
}

std::optional<InequalityId> parse_inequality_id(std::string_view name) noexcept {
  for (InequalityId id : kAllInequalities) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

ScanReport scan_bernoulli(InequalityId ineq, std::size_t resolution, double tolerance) {
  if (ineq == InequalityId::tfl_lower) {
    throw Error(Errc::unsupported_inequality, "tfl_lower has no Bernoulli closed form");
  }
  if (resolution < 2) throw Error(Errc::out_of_range, "grid resolution must be at least 2");

  const auto start = Clock::now();
  const double r = static_cast<double>(resolution);
  MarginTracker tracker(tolerance);
  for (std::size_t i = 1; i < resolution; ++i) {
    const double a = static_cast<double>(i) / r;
    for (std::size_t j = 1; j < resolution; ++j) {
      const double b = static_cast<double>(j) / r;
      const PairStats s = binary_stats(a, b);
      std::optional<double> m;
      if (ineq == InequalityId::dpi_quantized) {
        if (s.kl.is_finite()) {
          // The informative events are {"1"} (the pair itself) and {"0"}.
          const double kl_gap = std::min(s.kl.value() - binary_kl(a, b).value(),
                                         s.kl.value() - binary_kl(1.0 - a, 1.0 - b).value());
          m = std::min(kl_gap, s.tv - std::abs((1.0 - a) - (1.0 - b)));
        }
      } else {
        m = margin(ineq, s);
      }
      if (m) {
        tracker.add(*m, {a, b});
      } else {
        tracker.skip();
      }
    }
  }

  ScanReport out;
  out.name = "scan_bernoulli";
  out.inequality = ineq;
  out.grid = "bernoulli (i/" + std::to_string(resolution) + ", j/" + std::to_string(resolution) +
             "), 0 < i, j < " + std::to_string(resolution);
  tracker.fill(out);
  record_elapsed(start, out);
  return out;
}

Distribution random_distribution(std::uint64_t seed, std::size_t atoms, double concentration) {
  if (atoms < 1) throw Error(Errc::out_of_range, "need at least one atom");
  if (!(concentration > 0.0) || std::isinf(concentration)) {
    throw Error(Errc::out_of_range, "concentration must be positive and finite");
  }
  Rng rng(seed);
  std::vector<double> w(atoms);
  for (double& x : w) x = std::pow(rng.uniform(), 1.0 / concentration);
  double sum = compensated_sum(w);
  if (!(sum > 0.0)) {
    std::fill(w.begin(), w.end(), 1.0);
    sum = static_cast<double>(atoms);
  }
  for (double& x : w) x = std::max(x / sum, kMassFloor);
  return make_distribution(std::move(w), std::nullopt, Normalization::renormalize);
}

ScanReport falsify(InequalityId ineq, std::size_t trials, AtomRange atoms, std::uint64_t seed,
                   double tolerance) {
  if (ineq == InequalityId::pinsker_binary) {
    throw Error(Errc::unsupported_inequality, "pinsker_binary applies to Bernoulli pairs only");
  }
  if (trials < 1) throw Error(Errc::out_of_range, "need at least one trial");
  if (atoms.min < 2 || atoms.max > 64 || atoms.min > atoms.max) {
    throw Error(Errc::out_of_range, "atom counts must lie in [2, 64]");
  }

  const auto start = Clock::now();
  MarginTracker tracker(tolerance);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(Rng::derive(seed, t));
    const std::size_t n = static_cast<std::size_t>(rng.integer(atoms.min, atoms.max));
    const double cp = kConcentrations[rng.integer(0, std::size(kConcentrations) - 1)];
    const double cq = kConcentrations[rng.integer(0, std::size(kConcentrations) - 1)];
    const Distribution p = random_distribution(rng.bits(), n, cp);
    const Distribution q = random_distribution(rng.bits(), n, cq);
    const PairStats s = stats(p, q);
    const std::vector<double> point = {static_cast<double>(t), static_cast<double>(n)};

    std::optional<double> m;
    if (ineq == InequalityId::dpi_quantized) {
      EventSubset event = EventSubset::empty(n);
      for (std::size_t i = 0; i < n; ++i) event.members[i] = rng.coin();
      if (s.kl.is_finite()) m = dpi_margin(p, q, s, event);
    } else if (ineq == InequalityId::tfl_lower) {
      const double scale = kWitnessScales[rng.integer(0, std::size(kWitnessScales) - 1)];
      std::vector<double> f(n);
      for (double& v : f) v = rng.uniform(-scale, scale);
      if (s.kl.is_finite()) m = s.kl.value() - dv_value(p, q, WitnessFunction(std::move(f)));
    } else {
      m = margin(ineq, s);
    }
    if (m) {
      tracker.add(*m, point);
    } else {
      tracker.skip();
    }
  }

  ScanReport out;
  out.name = "falsify";
  out.inequality = ineq;
  out.grid = std::to_string(trials) + " random pairs, " + std::to_string(atoms.min) + "-" +
             std::to_string(atoms.max) + " atoms, seed " + std::to_string(seed);
  tracker.fill(out);
  record_elapsed(start, out);
  return out;
}

ScanReport falsify(InequalityId ineq, std::size_t trials, std::size_t atoms, std::uint64_t seed,
                   double tolerance) {
  return falsify(ineq, trials, AtomRange{atoms, atoms}, seed, tolerance);
}

ScanReport kl_finite_implies_tv_lt_one(std::size_t trials, std::uint64_t seed, AtomRange atoms) {
  if (trials < 1) throw Error(Errc::out_of_range, "need at least one trial");
  if (atoms.min < 1 || atoms.min > atoms.max) throw Error(Errc::out_of_range, "bad atom range");

  const auto start = Clock::now();
  MarginTracker tracker(0.0);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(Rng::derive(seed, t));
    const std::size_t n = static_cast<std::size_t>(rng.integer(atoms.min, atoms.max));
    const double cp = kConcentrations[rng.integer(0, std::size(kConcentrations) - 1)];
    const double cq = kConcentrations[rng.integer(0, std::size(kConcentrations) - 1)];
    const Distribution p = random_distribution(rng.bits(), n, cp);
    const Distribution q = random_distribution(rng.bits(), n, cq);
    const double tv = total_variation(p, q);
    const double one_minus_tv = overlap_identities(p, q).min_sum;
    const BoundEvaluation bh = tv_upper_bh(kl_divergence(p, q));
    const bool holds = tv < 1.0 && one_minus_tv > 0.0 && bh.tv_bound < 1.0 && bh.complement > 0.0;
    // A failing pair is recorded with a negative margin so it counts.
    tracker.add(holds ? one_minus_tv : -1.0, {static_cast<double>(t), static_cast<double>(n)});
  }

  ScanReport out;
  out.name = "kl_finite_implies_tv_lt_one";
  out.inequality = InequalityId::bh;
  out.grid = std::to_string(trials) + " random full-support pairs, " + std::to_string(atoms.min) +
             "-" + std::to_string(atoms.max) + " atoms, seed " + std::to_string(seed);
  tracker.fill(out);
  record_elapsed(start, out);
  return out;
}

std::vector<std::string_view> suite_names() {
  std::vector<std::string_view> names = {"all", "bernoulli", "random"};
  for (InequalityId id : kAllInequalities) names.push_back(to_string(id));
  return names;
}

std::vector<ScanReport> run_suite(std::string_view name, std::uint64_t seed,
                                  std::optional<double> tolerance) {
  constexpr InequalityId kGrid[] = {InequalityId::pinsker_binary, InequalityId::pinsker,
                                    InequalityId::bh,             InequalityId::tsybakov,
                                    InequalityId::weak_bh,        InequalityId::vajda};
  constexpr InequalityId kRandom[] = {InequalityId::hellinger_chain, InequalityId::dpi_quantized,
                                      InequalityId::tfl_lower};
  const double grid_tol = tolerance.value_or(kClosedFormTolerance);
  const double random_tol = tolerance.value_or(kRandomizedTolerance);
  // Each check draws from its own stream so adding checks leaves others unchanged.
  auto stream = [seed](InequalityId id) {
    return Rng::derive(seed, static_cast<std::uint64_t>(id));
  };

  std::vector<ScanReport> out;
  const bool all = name == "all";
  if (all || name == "bernoulli") {
    for (InequalityId id : kGrid) out.push_back(scan_bernoulli(id, kSuiteGridResolution, grid_tol));
  }
  if (all || name == "random") {
    for (InequalityId id : kRandom) {
      out.push_back(falsify(id, kSuiteTrials, AtomRange{2, 64}, stream(id), random_tol));
    }
    out.push_back(kl_finite_implies_tv_lt_one(kSuiteTrials, Rng::derive(seed, 100)));
  }
  if (!out.empty()) return out;

  const auto id = parse_inequality_id(name);
  if (!id) throw Error(Errc::unsupported_inequality, "unknown suite '" + std::string(name) + "'");
  if (std::find(std::begin(kGrid), std::end(kGrid), *id) != std::end(kGrid)) {
    out.push_back(scan_bernoulli(*id, kSuiteGridResolution, grid_tol));
  } else {
    out.push_back(falsify(*id, kSuiteTrials, AtomRange{2, 64}, stream(*id), random_tol));
  }
  return out;
}

}  // namespace tvkl
