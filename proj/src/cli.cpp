#include "tvkl/cli.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <ostream>

#include <CLI11.hpp>

#include "tvkl/bounds.hpp"
#include "tvkl/divergence.hpp"
#include "tvkl/error.hpp"
#include "tvkl/io.hpp"
#include "tvkl/sample_bounds.hpp"
#include "tvkl/variational.hpp"
#include "tvkl/verify.hpp"

namespace tvkl {

namespace {

struct GlobalFlags {
  bool renormalize = false;
  std::optional<double> tolerance;
  std::uint64_t seed = 42;
  bool json = false;

  Normalization normalization() const {
    return renormalize ? Normalization::renormalize : Normalization::strict;
  }
};

double parse_real(const std::string& text, const char* what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw Error(Errc::parse_error, std::string(what) + ": '" + text + "' is not a number");
  }
  return v;
}

DivergenceValue parse_kl(const std::string& text) {
  const double v = parse_real(text, "KL value");
  if (std::isinf(v) && v > 0) return DivergenceValue::infinity();
  if (!(v >= 0.0)) throw Error(Errc::out_of_range, "KL value must be >= 0");
  return DivergenceValue(v);
}

void print_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << '\n'; }

int cmd_div(const GlobalFlags& g, const std::string& p_path, const std::string& q_path,
            std::ostream& out) {
  const Distribution p = read_distribution(p_path, g.normalization());
  const Distribution q = read_distribution(q_path, g.normalization());
  const OverlapSums o = overlap_identities(p, q);
  const double tv = total_variation(p, q);
  print_json(out, {{"tv", tv},
                   {"kl", json_number(kl_divergence(p, q).value())},
                   {"kl_reverse", json_number(kl_divergence(q, p).value())},
                   {"hellinger_affinity", hellinger_affinity(p, q)},
                   {"overlap_min_sum", o.min_sum},
                   {"overlap_max_sum", o.max_sum},
                   {"tv_from_min_sum", 1.0 - o.min_sum},
                   {"tv_from_max_sum", o.max_sum - 1.0}});
  return kExitOk;
}

int cmd_bound(const GlobalFlags& g, const std::string& direction, const std::string& value,
              std::ostream& out) {
  if (direction == "forward") {
    const auto evals = compare_bounds(parse_kl(value));
    if (g.json) {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& e : evals) rows.push_back(to_json(e));
      print_json(out, rows);
    } else {
      out << std::left << std::setw(10) << "bound" << std::setw(26) << "tv_upper" << "vacuous\n";
      for (const auto& e : evals) {
        out << std::setw(10) << to_string(e.bound) << std::setw(26) << format_number(e.tv_bound)
            << (e.vacuous ? "yes" : "no") << '\n';
      }
    }
    return kExitOk;
  }
  if (direction == "inverse") {
    const double tv = parse_real(value, "TV value");
    constexpr BoundId ids[] = {BoundId::pinsker, BoundId::bh, BoundId::tsybakov, BoundId::vajda};
    if (g.json) {
      nlohmann::json rows = nlohmann::json::array();
      for (BoundId id : ids) {
        rows.push_back({{"bound", std::string(to_string(id))},
                        {"tv", tv},
                        {"kl_lower", json_number(kl_lower(id, tv)->value())}});
      }
      print_json(out, rows);
    } else {
      out << std::left << std::setw(10) << "bound" << "kl_lower\n";
      for (BoundId id : ids) {
        out << std::setw(10) << to_string(id) << format_number(kl_lower(id, tv)->value()) << '\n';
      }
    }
    return kExitOk;
  }
  throw Error(Errc::parse_error, "direction must be 'forward' or 'inverse'");
}

int cmd_figure(const std::string& name, std::size_t points, const std::string& path,
               std::ostream& out) {
  const auto id = parse_figure_id(name);
  if (!id) throw Error(Errc::parse_error, "unknown figure '" + name + "'");
  const std::string csv = to_csv(figure_data(*id, points));
  if (path.empty() || path == "-") {
    out << csv;
  } else {
    write_file_atomically(path, csv);
  }
  return kExitOk;
}

int cmd_samples(const GlobalFlags& g, const std::string& eps, const std::string& delta, bool ceil,
                std::ostream& out) {
  const SampleComplexityReport r =
      report(SampleComplexityQuery(parse_real(eps, "epsilon"), parse_real(delta, "delta")));
  auto shown = [ceil](double n) { return ceil ? std::ceil(n) : n; };
  if (g.json) {
    nlohmann::json j = to_json(r);
    if (ceil) {
      for (const char* key : {"n_pinsker", "n_bh", "n_tsybakov", "n_bh_simplified"}) {
        j[key] = shown(j[key].get<double>());
      }
    }
    print_json(out, j);
  } else {
    out << "epsilon          " << format_number(r.query.epsilon()) << '\n'
        << "delta            " << format_number(r.query.delta()) << '\n'
        << "required_tv      " << format_number(r.required_tv) << '\n'
        << "kl_per_toss      " << format_number(r.kl_per_toss) << '\n'
        << "n_pinsker        " << format_number(shown(r.n_pinsker)) << '\n'
        << "n_bh             " << format_number(shown(r.n_bh)) << '\n'
        << "n_tsybakov       " << format_number(shown(r.n_tsybakov)) << '\n'
        << "n_bh_simplified  " << format_number(shown(r.n_bh_simplified)) << '\n';
    for (const auto& note : r.notes) out << "note             " << note << '\n';
  }
  return kExitOk;
}

int cmd_verify(const GlobalFlags& g, const std::string& suite, bool timing, std::ostream& out) {
  const auto reports = run_suite(suite, g.seed, g.tolerance);
  bool ok = true;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : reports) {
    ok = ok && r.passed();
    rows.push_back(to_json(r, timing));
  }
  if (g.json) {
    print_json(out, {{"suite", suite}, {"seed", g.seed}, {"passed", ok}, {"reports", rows}});
  } else {
    for (const auto& r : reports) {
      out << (r.passed() ? "PASS " : "FAIL ") << std::left << std::setw(28) << r.name
          << std::setw(16) << to_string(r.inequality) << " violations=" << r.violations
          << " worst_margin=" << format_number(r.worst_margin) << '\n';
    }
  }
  return ok ? kExitOk : kExitVerification;
}

int cmd_dv(const GlobalFlags& g, const std::string& p_path, const std::string& q_path,
           std::size_t trials, std::ostream& out) {
  const Distribution p = read_distribution(p_path, g.normalization());
  const Distribution q = read_distribution(q_path, g.normalization());
  const DvSupremum s = dv_supremum(p, q, trials, g.seed);
  nlohmann::json witness = nlohmann::json::array();
  const WitnessFunction best = dv_optimal_witness(p, q);
  for (double v : best.values()) witness.push_back(v);
  print_json(out, {{"value", s.value},
                   {"kl", json_number(kl_divergence(p, q).value())},
                   {"witness", std::move(witness)},
                   {"trials", trials},
                   {"seed", g.seed},
                   {"min_gap", trials ? json_number(s.min_gap) : nlohmann::json(nullptr)},
                   {"gap_histogram", s.gap_histogram}});
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Total variation / KL divergence bounds: evaluate, invert and verify."};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_flag("--renormalize", g.renormalize, "Renormalize distribution weights on load");
  app.add_option("--tolerance", g.tolerance, "Violation tolerance for verify");
  app.add_option("--seed", g.seed, "Seed for randomized checks");
  app.add_flag("--json", g.json, "Emit JSON instead of text tables");

  std::string p_path, q_path, direction, value, figure, out_path, eps, delta, suite = "all";
  std::size_t points = 501, trials = 100;
  bool ceil = false, timing = false;

  auto* div = app.add_subcommand("div", "TV, KL, Hellinger affinity and overlap sums of two files");
  div->add_option("p", p_path, "Distribution file p")->required();
  div->add_option("q", q_path, "Distribution file q")->required();

  auto* bound = app.add_subcommand("bound", "Forward (TV from KL) or inverse (KL from TV) bounds");
  bound->add_option("direction", direction, "forward | inverse")
      ->required()
      ->check(CLI::IsMember({"forward", "inverse"}));
  bound->add_option("value", value, "KL (forward) or TV (inverse)")->required();

  auto* fig = app.add_subcommand("figure", "Emit the curve data of a figure as CSV");
  fig->add_option("figure", figure, "fig_pinsker | fig_forward | fig_inverse | fig_weak")
      ->required();
  fig->add_option("--points", points, "Grid points (>= 2)");
  fig->add_option("--out,-o", out_path, "Output CSV path (stdout when omitted)");

  auto* samples = app.add_subcommand("samples", "Sample-complexity lower bounds for a coin test");
  samples->add_option("epsilon", eps, "Bias epsilon in (0, 1/3)")->required();
  samples->add_option("delta", delta, "Error probability delta in (0, 1/2)")->required();
  samples->add_flag("--ceil", ceil, "Round sample counts up to integers");

  auto* verify = app.add_subcommand("verify", "Run inequality verification suites");
  verify->add_option("suite", suite, "all | bernoulli | random | <inequality>");
  verify->add_flag("--timing", timing, "Include elapsed time in JSON reports");

  auto* dv = app.add_subcommand("dv", "Donsker-Varadhan value at the optimal witness");
  dv->add_option("p", p_path, "Distribution file p")->required();
  dv->add_option("q", q_path, "Distribution file q")->required();
  dv->add_option("--trials", trials, "Random perturbed witnesses to compare against");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*div) return cmd_div(g, p_path, q_path, out);
    if (*bound) return cmd_bound(g, direction, value, out);
    if (*fig) return cmd_figure(figure, points, out_path, out);
    if (*samples) return cmd_samples(g, eps, delta, ceil, out);
    if (*verify) return cmd_verify(g, suite, timing, out);
    if (*dv) return cmd_dv(g, p_path, q_path, trials, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace tvkl
