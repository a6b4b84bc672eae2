#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "twoatom/closed_form.hpp"
#include "twoatom/gram.hpp"

namespace twoatom {

inline constexpr int kDefaultGridPoints = 1001;

struct RatePoint {
  double a = 0.0;
  double rate_distinguishable = 0.0;
  std::optional<double> rate_boson;    // empty when excluded
  std::optional<double> rate_fermion;  // empty when excluded
  double nf_fermion = 0.0;
};

// Rates along a uniform grid of a in [0, 1] with b = sqrt(1 - a^2).
struct RateCurve {
  std::vector<RatePoint> points;
  CMParams params;
  RecoilModel model;
  Couplings couplings;
};

// a_i = i / (n - 1); the endpoints are exactly 0 and 1.
std::vector<double> uniform_grid(int n_points);

// Throws std::invalid_argument for n_points < 2.
RateCurve sweep_rates(const CMParams& params, const RecoilModel& model, const Couplings& k,
                      int n_points = kDefaultGridPoints);

std::vector<std::optional<double>> rate_series(const RateCurve& curve, Statistics stats);

enum class FigureId { kFig1, kFig2Left, kFig2Right };

inline constexpr FigureId kAllFigures[] = {FigureId::kFig1, FigureId::kFig2Left,
                                           FigureId::kFig2Right};

class UnknownFigure : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FigureSpec {
  FigureId id;
  CMParams params;
  RecoilModel model;
  Couplings couplings;
};

// Accepts fig1, fig2l, fig2r.
FigureId parse_figure_id(std::string_view name);
const char* figure_name(FigureId id);

// fig1:  c = g = 0.8, e = 1/sqrt(2)
// fig2l: c = g = 0.9, e = 0.3
// fig2r: c = e = g = 0.5
// with d, f, h the positive real completions, rho = 0.9 and couplings
// (0.9, 1.1, 1.0).
FigureSpec figure_spec(FigureId id);

RateCurve figure_dataset(const FigureSpec& spec, int n_points = kDefaultGridPoints);

class EmptySeries : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// (max - min) / mean over the defined entries. Throws EmptySeries when fewer
// than two entries are defined.
double flatness_metric(std::span<const std::optional<double>> series);
double flatness_metric(std::span<const double> series);

}  // namespace twoatom
