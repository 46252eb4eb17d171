#pragma once

#include <string>
#include <vector>

namespace tvkl {

/// Distinguishing Bernoulli(1/2) from Bernoulli(1/2 + epsilon) with success
/// probability at least 1 - delta. epsilon in (0, 1/3), delta in (0, 1/2).
class SampleComplexityQuery {
 public:
  /// Throws out_of_range outside the open intervals.
  SampleComplexityQuery(double epsilon, double delta);

  double epsilon() const noexcept { return epsilon_; }
  double delta() const noexcept { return delta_; }

 private:
  double epsilon_;
  double delta_;
};

/// 1 - 2 delta: the TV separation any successful test needs.
double required_tv(const SampleComplexityQuery& q) noexcept;

/// KL(Bernoulli(1/2) || Bernoulli(1/2 + epsilon)) = (1/2) ln(1 / (1 - 4 eps^2)).
double kl_per_toss(double epsilon);

/// 2 (1 - 2 delta)^2 / ln(1 / (1 - 4 eps^2)).
double min_samples_pinsker(const SampleComplexityQuery& q);
/// 2 ln(1 / (1 - (1 - 2 delta)^2)) / ln(1 / (1 - 4 eps^2)).
double min_samples_bh(const SampleComplexityQuery& q);
/// ln(1 / (4 delta)) / kl_per_toss, floored at 0.
double min_samples_tsybakov(const SampleComplexityQuery& q);
/// (1 / (2 eps^2)) ln(1 / (2 delta)).
double min_samples_bh_simplified(const SampleComplexityQuery& q);

inline constexpr const char* kSimplifiedExceedsExact = "bh_simplified_exceeds_exact";
inline constexpr const char* kTsybakovVacuous = "tsybakov_vacuous";

struct SampleComplexityReport {
  SampleComplexityQuery query;
  double required_tv;
  double kl_per_toss;
  double n_pinsker;
  double n_bh;
  double n_tsybakov;
  double n_bh_simplified;
  std::vector<std::string> notes;
};

SampleComplexityReport report(const SampleComplexityQuery& q);

}  // namespace tvkl
