#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "twoatom/closed_form.hpp"
#include "twoatom/gram.hpp"
#include "twoatom/sweep.hpp"

namespace twoatom::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitUsage = 2,
  kExitIo = 3,
};

enum class Format { kCsv, kJson };

struct RunConfig {
  std::string command;
  std::string params_text;  // "c,d,e,f,g,h"
  std::string figure;       // fig1 | fig2l | fig2r
  double a = 0.0;
  double rho = RecoilModel::kDefaultRho;
  double d_a = 0.9;
  double d_b = 1.1;
  double d = 1.0;
  int n_points = kDefaultGridPoints;
  std::uint64_t seed = 42;
  int trials = 1000;
  double tolerance = 1e-10;
  std::string out_path;  // empty: standard output
  Format format = Format::kCsv;
};

// Parses "c,d,e,f,g,h" into validated real parameters. Throws
// std::invalid_argument on malformed text and NormalizationError on
// non-normalized pairs.
CMParams parse_params(const std::string& text);

// Header and rows of the rate table. Rates carry 12 significant digits; the
// a column uses the shortest representation that round-trips.
inline constexpr const char* kCsvHeader =
    "a,rate_distinguishable,rate_boson,rate_fermion,nf_fermion,excluded_fermion";
void write_curve_csv(const RateCurve& curve, std::ostream& out);
void write_curve_json(const RateCurve& curve, std::ostream& out);

int cmd_rates(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_figure(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_exclusion(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

// Closed form versus oracle over seeded random draws.
struct Deviation {
  std::string quantity;
  double max_relative = 0.0;
  int worst_trial = -1;
};

struct VerifyInput {
  double c, e, g;
  double a;
  double rho;
  double d_a, d_b, d;
};

struct VerifyReport {
  int trials = 0;
  int redraws = 0;
  std::vector<Deviation> deviations;
  std::vector<VerifyInput> inputs;  // one per trial, for reproduction
  double max_relative() const;
};

// Throws std::invalid_argument for trials < 1.
VerifyReport verify_campaign(int trials, std::uint64_t seed);

// Full command line (argv[0] excluded). Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twoatom::cli
