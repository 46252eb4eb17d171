#include "tvkl/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "tvkl/error.hpp"

namespace tvkl {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(Errc::parse_error, what); }

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

nlohmann::json json_number(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

Distribution parse_distribution(std::string_view text, Normalization normalization) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) parse_fail("distribution document must be a JSON object");

  const auto probs_it = doc.find("probs");
  if (probs_it == doc.end()) parse_fail("missing field \"probs\"");
  if (!probs_it->is_array()) parse_fail("field \"probs\" must be an array of numbers");
  std::vector<double> probs;
  probs.reserve(probs_it->size());
  for (std::size_t i = 0; i < probs_it->size(); ++i) {
    const auto& v = (*probs_it)[i];
    if (!v.is_number()) parse_fail("field \"probs\"[" + std::to_string(i) + "] is not a number");
    probs.push_back(v.get<double>());
  }

  std::optional<std::vector<std::string>> labels;
  if (const auto it = doc.find("support"); it != doc.end()) {
    if (!it->is_array()) parse_fail("field \"support\" must be an array of strings");
    labels.emplace();
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto& v = (*it)[i];
      if (!v.is_string()) {
        parse_fail("field \"support\"[" + std::to_string(i) + "] is not a string");
      }
      labels->push_back(v.get<std::string>());
    }
  }
  try {
    return make_distribution(std::move(probs), std::move(labels), normalization);
  } catch (const Error& e) {
    const bool about_labels = e.code() == Errc::duplicate_label ||
                              e.code() == Errc::invalid_label ||
                              e.code() == Errc::mismatched_supports;
    throw Error(e.code(),
                std::string("field \"") + (about_labels ? "support" : "probs") + "\": " + e.what());
  }
}

Distribution read_distribution(const std::filesystem::path& path, Normalization normalization) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_distribution(buf.str(), normalization);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

nlohmann::json to_json(const Distribution& d) {
  nlohmann::json probs = nlohmann::json::array();
  for (double p : d.probs()) probs.push_back(p);
  return {{"support", d.support()}, {"probs", std::move(probs)}};
}

nlohmann::json to_json(const BoundEvaluation& e) {
  return {{"bound", std::string(to_string(e.bound))},
          {"kl", json_number(e.kl.value())},
          {"tv_bound", json_number(e.tv_bound)},
          {"complement", json_number(e.complement)},
          {"vacuous", e.vacuous}};
}

nlohmann::json to_json(const SampleComplexityReport& r) {
  return {{"epsilon", r.query.epsilon()},
          {"delta", r.query.delta()},
          {"required_tv", r.required_tv},
          {"kl_per_toss", r.kl_per_toss},
          {"n_pinsker", r.n_pinsker},
          {"n_bh", r.n_bh},
          {"n_tsybakov", r.n_tsybakov},
          {"n_bh_simplified", r.n_bh_simplified},
          {"notes", r.notes}};
}

nlohmann::json to_json(const ScanReport& r, bool with_timing) {
  nlohmann::json point = nlohmann::json::array();
  for (double x : r.worst_point) point.push_back(json_number(x));
  nlohmann::json j = {{"check", r.name},
                      {"inequality", std::string(to_string(r.inequality))},
                      {"grid", r.grid},
                      {"tolerance", r.tolerance},
                      {"evaluated", r.evaluated},
                      {"skipped", r.skipped},
                      {"violations", r.violations},
                      {"worst_margin", json_number(r.worst_margin)},
                      {"worst_point", std::move(point)},
                      {"passed", r.passed()}};
  if (with_timing) j["elapsed_ms"] = std::chrono::duration<double, std::milli>(r.elapsed).count();
  return j;
}

void write_file_atomically(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io_error, "cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(Errc::io_error, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(Errc::io_error, "cannot move output into place at " + path.string());
  }
}

std::string_view to_string(FigureId id) noexcept {
  switch (id) {
    case FigureId::fig_pinsker: return "fig_pinsker";
    case FigureId::fig_forward: return "fig_forward";
    case FigureId::fig_inverse: return "fig_inverse";
    case FigureId::fig_weak: return "fig_weak";
  }
  return "unknown";
}

std::optional<FigureId> parse_figure_id(std::string_view name) noexcept {
  for (FigureId id : {FigureId::fig_pinsker, FigureId::fig_forward, FigureId::fig_inverse,
                      FigureId::fig_weak}) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

FigureData figure_data(FigureId id, std::size_t points) {
  if (points < 2) throw Error(Errc::out_of_range, "a figure needs at least 2 points");

  FigureData fig;
  std::vector<BoundId> curves;
  switch (id) {
    case FigureId::fig_pinsker: curves = {BoundId::trivial, BoundId::pinsker}; break;
    case FigureId::fig_forward:
      curves = {BoundId::trivial, BoundId::pinsker, BoundId::bh, BoundId::tsybakov};
      break;
    case FigureId::fig_inverse: curves = {BoundId::pinsker, BoundId::bh, BoundId::tsybakov}; break;
    case FigureId::fig_weak:
      curves = {BoundId::trivial, BoundId::pinsker, BoundId::bh, BoundId::weak_bh};
      break;
  }
  const bool inverse = id == FigureId::fig_inverse;
  const double top = inverse ? 1.0 : 5.0;
  fig.columns.emplace_back(inverse ? "tv" : "kl");
  for (BoundId b : curves) fig.columns.emplace_back(to_string(b));

  const double last = static_cast<double>(points - 1);
  fig.rows.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double x = static_cast<double>(i) * top / last;
    std::vector<double> row = {x};
    for (BoundId b : curves) {
      row.push_back(inverse ? kl_lower(b, x)->value() : tv_upper(b, DivergenceValue(x)).tv_bound);
    }
    fig.rows.push_back(std::move(row));
  }
  return fig;
}

std::string to_csv(const FigureData& data) {
  std::string out;
  for (std::size_t c = 0; c < data.columns.size(); ++c) {
    if (c) out += ',';
    out += data.columns[c];
  }
  out += '\n';
  for (const auto& row : data.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_number(row[c]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace tvkl
