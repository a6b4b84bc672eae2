#include "twoatom/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "twoatom/exclusion.hpp"
#include "twoatom/oracle.hpp"

namespace twoatom::cli {

namespace {

using nlohmann::json;

// Redraw threshold for the verification campaign: below it the rates are a
// 0 * inf product and relative comparisons are meaningless.
constexpr double kVerifyMinRadicand = kNearExclusionNf;

Couplings CouplingsOf(const RunConfig& config) { return {config.d_a, config.d_b, config.d}; }

std::string Rate12(double v) { return fmt::format("{:.12g}", v); }

std::string OptionalRate12(const std::optional<double>& v) { return v ? Rate12(*v) : "nan"; }

json OptionalJson(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json PointJson(const RatePoint& p) {
  return {{"a", p.a},
          {"b", std::sqrt(1.0 - p.a * p.a)},
          {"rate_distinguishable", p.rate_distinguishable},
          {"rate_boson", OptionalJson(p.rate_boson)},
          {"rate_fermion", OptionalJson(p.rate_fermion)},
          {"nf_fermion", p.nf_fermion},
          {"excluded_boson", !p.rate_boson.has_value()},
          {"excluded_fermion", !p.rate_fermion.has_value()}};
}

// Writes `body` to the configured destination.
int Emit(const RunConfig& config, const std::string& body, std::ostream& out, std::ostream& err) {
  if (config.out_path.empty()) {
    out << body;
    return out ? kExitOk : kExitIo;
  }
  std::ofstream file(config.out_path, std::ios::binary | std::ios::trunc);
  if (!file) {
    fmt::print(err, "error: cannot open '{}' for writing\n", config.out_path);
    return kExitIo;
  }
  file << body;
  file.close();
  if (!file) {
    fmt::print(err, "error: failed writing '{}'\n", config.out_path);
    return kExitIo;
  }
  return kExitOk;
}

int EmitCurve(const RunConfig& config, const RateCurve& curve, std::ostream& out,
              std::ostream& err) {
  std::ostringstream body;
  if (config.format == Format::kJson) {
    write_curve_json(curve, body);
  } else {
    write_curve_csv(curve, body);
  }
  return Emit(config, body.str(), out, err);
}

// Runs `fn` translating validation failures into exit code 2.
template <typename Fn>
int Guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const std::domain_error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  }
}

void RequireParams(const RunConfig& config) {
  if (config.params_text.empty()) {
    throw std::invalid_argument("--params c,d,e,f,g,h is required");
  }
}

void RequireGrid(const RunConfig& config) {
  if (config.n_points < 2) {
    throw std::invalid_argument(fmt::format("--grid must be at least 2, got {}", config.n_points));
  }
}

}  // namespace

CMParams parse_params(const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument(fmt::format("cannot parse '{}' as a decimal", item));
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) {
      throw std::invalid_argument(fmt::format("trailing characters in '{}'", item));
    }
    values.push_back(v);
  }
  if (values.size() != 6) {
    throw std::invalid_argument(
        fmt::format("--params expects 6 comma-separated values, got {}", values.size()));
  }
  return CMParams::Create(values[0], values[1], values[2], values[3], values[4], values[5]);
}

void write_curve_csv(const RateCurve& curve, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const RatePoint& p : curve.points) {
    out << fmt::format("{},{},{},{},{},{}\n", p.a, Rate12(p.rate_distinguishable),
                       OptionalRate12(p.rate_boson), OptionalRate12(p.rate_fermion),
                       Rate12(p.nf_fermion), p.rate_fermion ? 0 : 1);
  }
}

void write_curve_json(const RateCurve& curve, std::ostream& out) {
  json rows = json::array();
  for (const RatePoint& p : curve.points) rows.push_back(PointJson(p));
  out << rows.dump(2) << '\n';
}

int cmd_rates(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&]() -> int {
    RequireParams(config);
    const CMParams params = parse_params(config.params_text);
    const SuperCoeffs coeffs = SuperCoeffs::FromReal(config.a);
    const RateTriplet t =
        rate_triplet(coeffs, params, RecoilModel(config.rho), CouplingsOf(config));
    const RatePoint point{config.a, t.distinguishable, t.boson, t.fermion, t.nf_fermion};

    std::string body;
    if (config.format == Format::kJson) {
      json record = PointJson(point);
      record["b"] = coeffs.b().real();
      body = record.dump(2) + "\n";
    } else {
      body = fmt::format("a,b,rate_distinguishable,rate_boson,rate_fermion,nf_fermion,"
                         "excluded_boson,excluded_fermion\n{},{},{},{},{},{},{},{}\n",
                         point.a, coeffs.b().real(), Rate12(point.rate_distinguishable),
                         OptionalRate12(point.rate_boson), OptionalRate12(point.rate_fermion),
                         Rate12(point.nf_fermion), point.rate_boson ? 0 : 1,
                         point.rate_fermion ? 0 : 1);
    }
    return Emit(config, body, out, err);
  });
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&]() -> int {
    RequireParams(config);
    RequireGrid(config);
    const RateCurve curve = sweep_rates(parse_params(config.params_text),
                                        RecoilModel(config.rho), CouplingsOf(config),
                                        config.n_points);
    return EmitCurve(config, curve, out, err);
  });
}

int cmd_figure(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&]() -> int {
    RequireGrid(config);
    const FigureSpec spec = figure_spec(parse_figure_id(config.figure));
    return EmitCurve(config, figure_dataset(spec, config.n_points), out, err);
  });
}

int cmd_exclusion(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&]() -> int {
    RequireParams(config);
    RequireGrid(config);
    const CMParams params = parse_params(config.params_text);
    const auto solution = solve_exclusion(params);
    const auto zeros = locate_nf_zeros(params, config.n_points);

    std::string body;
    if (config.format == Format::kJson) {
      json record = {{"found", solution.has_value()}};
      if (solution) {
        record["a"] = solution->a.real();
        record["b"] = solution->b.real();
        record["residual"] = solution->residual;
        record["nf_at_solution"] = solution->nf_at_solution;
      }
      json nf_zeros = json::array();
      for (const NfPoint& z : zeros) nf_zeros.push_back({{"a", z.a}, {"nf", z.nf}});
      record["nf_zeros"] = nf_zeros;
      body = record.dump(2) + "\n";
    } else {
      body = "found,a,b,residual,nf_at_solution\n";
      if (solution) {
        body += fmt::format("1,{},{},{:.12g},{:.12g}\n", solution->a.real(), solution->b.real(),
                            solution->residual, solution->nf_at_solution);
      } else {
        body += "0,nan,nan,nan,nan\n";
      }
    }
    return Emit(config, body, out, err);
  });
}

double VerifyReport::max_relative() const {
  double worst = 0.0;
  for (const Deviation& d : deviations) worst = std::max(worst, d.max_relative);
  return worst;
}

VerifyReport verify_campaign(int trials, std::uint64_t seed) {
  if (trials < 1) {
    throw std::invalid_argument(fmt::format("--trials must be at least 1, got {}", trials));
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit_interval(-1.0, 1.0);
  std::uniform_real_distribution<double> amplitude(0.0, 1.0);
  std::uniform_real_distribution<double> recoil(0.5, 1.0);
  std::uniform_real_distribution<double> coupling(0.5, 1.5);

  VerifyReport report;
  report.trials = trials;
  for (const char* name : {"N_D", "N_*", "M_D", "N_I(boson)", "N_f(boson)", "M(boson)",
                           "N_I(fermion)", "N_f(fermion)", "M(fermion)"}) {
    report.deviations.push_back({name});
  }

  auto record = [&](std::size_t slot, cplx closed, cplx reference, int trial) {
    const double rel = std::abs(closed - reference) / std::abs(reference);
    Deviation& dev = report.deviations[slot];
    if (!(rel <= dev.max_relative)) {
      dev.max_relative = rel;
      dev.worst_trial = trial;
    }
  };

  for (int trial = 0; trial < trials; ++trial) {
    for (;;) {
      VerifyInput in{unit_interval(rng), unit_interval(rng), unit_interval(rng),
                     amplitude(rng),     recoil(rng),        coupling(rng),
                     coupling(rng),      coupling(rng)};
      const CMParams params = CMParams::FromReal(in.c, in.e, in.g);
      const SuperCoeffs coeffs = SuperCoeffs::FromReal(in.a);
      const OverlapTables tables = make_overlaps(params, RecoilModel(in.rho));
      const GramTable& g0 = tables.bare;
      const GramTable& g1 = tables.recoiled;
      const Couplings k{in.d_a, in.d_b, in.d};

      bool usable = n_d_radicand(coeffs, g0) >= kVerifyMinRadicand &&
                    n_star_radicand(coeffs, g0, g1) >= kVerifyMinRadicand;
      for (Statistics s : {Statistics::kBoson, Statistics::kFermion}) {
        usable = usable && n_i_radicand(coeffs, g0, s) >= kVerifyMinRadicand &&
                 n_f_radicand(coeffs, g0, g1, s) >= kVerifyMinRadicand;
      }
      if (!usable) {
        ++report.redraws;
        continue;
      }

      const auto dist = oracle::evaluate(coeffs, tables, k, Statistics::kDistinguishable);
      record(0, n_d(coeffs, g0), dist->n_initial, trial);
      record(1, n_star(coeffs, g0, g1), dist->n_final, trial);
      record(2, m_distinguishable(coeffs, g0, g1, k).value, dist->matrix_element, trial);

      std::size_t slot = 3;
      for (Statistics s : {Statistics::kBoson, Statistics::kFermion}) {
        const auto ref = oracle::evaluate(coeffs, tables, k, s);
        record(slot, *n_i(coeffs, g0, s), ref->n_initial, trial);
        record(slot + 1, *n_f(coeffs, g0, g1, s), ref->n_final, trial);
        record(slot + 2, m_identical(coeffs, g0, g1, k, s)->value, ref->matrix_element, trial);
        slot += 3;
      }
      report.inputs.push_back(in);
      break;
    }
  }
  return report;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&]() -> int {
    if (!(config.tolerance > 0.0)) {
      throw std::invalid_argument(fmt::format("--tol must be positive, got {}", config.tolerance));
    }
    const VerifyReport report = verify_campaign(config.trials, config.seed);

    std::string body = fmt::format("trials {} seed {} redraws {} tolerance {:g}\n", report.trials,
                                   config.seed, report.redraws, config.tolerance);
    bool ok = true;
    for (const Deviation& dev : report.deviations) {
      const bool pass = dev.max_relative <= config.tolerance;
      ok = ok && pass;
      body += fmt::format("{:<14} max_rel {:.3e}  {}\n", dev.quantity, dev.max_relative,
                          pass ? "ok" : "FAIL");
      if (!pass) {
        const VerifyInput& in = report.inputs.at(dev.worst_trial);
        body += fmt::format(
            "  worst trial {}: --params {:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g} "
            "--a {:.17g} --rho {:.17g} --da {:.17g} --db {:.17g} --d {:.17g}\n",
            dev.worst_trial, in.c, std::sqrt(1 - in.c * in.c), in.e, std::sqrt(1 - in.e * in.e),
            in.g, std::sqrt(1 - in.g * in.g), in.a, in.rho, in.d_a, in.d_b, in.d);
      }
    }
    body += ok ? "verify: PASS\n" : "verify: FAIL\n";
    const int io = Emit(config, body, out, err);
    if (io != kExitOk) return io;
    return ok ? kExitOk : kExitVerificationFailed;
  });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-atom absorption rates with entanglement, symmetrization and recoil"};
  app.require_subcommand(1);

  RunConfig config;
  std::string format;
  const std::map<std::string, Format> formats{{"csv", Format::kCsv}, {"json", Format::kJson}};

  auto add_physics = [&](CLI::App* sub) {
    sub->add_option("--params", config.params_text, "CM coefficients c,d,e,f,g,h");
    sub->add_option("--rho", config.rho, "recoil attenuation factor")->capture_default_str();
    sub->add_option("--da", config.d_a, "coupling of atom A")->capture_default_str();
    sub->add_option("--db", config.d_b, "coupling of atom B")->capture_default_str();
    sub->add_option("--d", config.d, "coupling of identical atoms")->capture_default_str();
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", config.out_path, "output file (default: stdout)");
    sub->add_option("--format", format, "csv or json (default: json for single records)")
        ->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--grid", config.n_points, "number of a grid points")->capture_default_str();
  };

  CLI::App* rates = app.add_subcommand("rates", "rates at a single superposition coefficient");
  add_physics(rates);
  rates->add_option("--a", config.a, "superposition coefficient a in [0, 1]")->required();
  add_output(rates);

  CLI::App* sweep = app.add_subcommand("sweep", "rates over a uniform grid of a");
  add_physics(sweep);
  add_grid(sweep);
  add_output(sweep);

  CLI::App* figure = app.add_subcommand("figure", "preset figure datasets");
  figure->add_option("id", config.figure, "fig1 | fig2l | fig2r")->required();
  add_grid(figure);
  add_output(figure);

  CLI::App* exclusion = app.add_subcommand("exclusion", "excluded fermion states");
  exclusion->add_option("--params", config.params_text, "CM coefficients c,d,e,f,g,h");
  add_grid(exclusion);
  add_output(exclusion);

  CLI::App* verify = app.add_subcommand("verify", "closed form versus brute-force oracle");
  verify->add_option("--trials", config.trials, "random draws")->capture_default_str();
  verify->add_option("--seed", config.seed, "generator seed")->capture_default_str();
  verify->add_option("--tol", config.tolerance, "relative tolerance")->capture_default_str();
  verify->add_option("--out", config.out_path, "report file (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const bool record_command = rates->parsed() || exclusion->parsed();
  config.format = format.empty() ? (record_command ? Format::kJson : Format::kCsv)
                                 : formats.at(format);
  if (rates->parsed()) return cmd_rates(config, out, err);
  if (exclusion->parsed()) return cmd_exclusion(config, out, err);
  if (sweep->parsed()) return cmd_sweep(config, out, err);
  if (figure->parsed()) return cmd_figure(config, out, err);
  if (verify->parsed()) return cmd_verify(config, out, err);
  return kExitUsage;
}

}  // namespace twoatom::cli
