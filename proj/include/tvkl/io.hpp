#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tvkl/bounds.hpp"
#include "tvkl/distribution.hpp"
#include "tvkl/divergence.hpp"
#include "tvkl/sample_bounds.hpp"
#include "tvkl/variational.hpp"
#include "tvkl/verify.hpp"

namespace tvkl {

/// Shortest decimal that round-trips to `x`; "inf" / "-inf" / "nan" for
/// non-finite values. Locale independent.
std::string format_number(double x);

/// JSON number for finite x, the string "inf" otherwise.
nlohmann::json json_number(double x);

/// Parses {"support": [...], "probs": [...]}; support is optional.
/// Throws Error(parse_error) on malformed documents, naming the field, and
/// the make_distribution errors on invalid weights.
Distribution parse_distribution(std::string_view text, Normalization normalization);
Distribution read_distribution(const std::filesystem::path& path, Normalization normalization);

nlohmann::json to_json(const Distribution& d);
nlohmann::json to_json(const BoundEvaluation& e);
nlohmann::json to_json(const SampleComplexityReport& r);
/// Elapsed time is included only when `with_timing` is set, keeping reports
/// byte-identical across runs otherwise.
nlohmann::json to_json(const ScanReport& r, bool with_timing = false);

/// Writes `contents` to a temporary sibling and renames it over `path`.
/// Throws Error(io_error).
void write_file_atomically(const std::filesystem::path& path, std::string_view contents);

enum class FigureId { fig_pinsker, fig_forward, fig_inverse, fig_weak };

std::string_view to_string(FigureId id) noexcept;
std::optional<FigureId> parse_figure_id(std::string_view name) noexcept;

struct FigureData {
  std::vector<std::string> columns;       // abscissa first, then legend order
  std::vector<std::vector<double>> rows;
};

/// Curve samples on a uniform grid: KL in [0, 5] for the forward figures,
/// TV in [0, 1] for the inverse one. Throws out_of_range for points < 2.
FigureData figure_data(FigureId id, std::size_t points);

/// Header row plus one comma-separated row per sample, "\n" line endings.
std::string to_csv(const FigureData& data);

}  // namespace tvkl
