#include "twoatom/sweep.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace twoatom {

std::vector<double> uniform_grid(int n_points) {
  if (n_points < 2) {
    throw std::invalid_argument(fmt::format("grid needs at least 2 points, got {}", n_points));
  }
  std::vector<double> grid(n_points);
  const double denom = n_points - 1;
  for (int i = 0; i < n_points; ++i) grid[i] = i / denom;
  return grid;
}

RateCurve sweep_rates(const CMParams& params, const RecoilModel& model, const Couplings& k,
                      int n_points) {
  RateCurve curve{{}, params, model, k};
  const std::vector<double> grid = uniform_grid(n_points);
  curve.points.reserve(grid.size());
  for (double a : grid) {
    const RateTriplet t = rate_triplet(SuperCoeffs::FromReal(a), params, model, k);
    curve.points.push_back({a, t.distinguishable, t.boson, t.fermion, t.nf_fermion});
  }
  return curve;
}

std::vector<std::optional<double>> rate_series(const RateCurve& curve, Statistics stats) {
  std::vector<std::optional<double>> out;
  out.reserve(curve.points.size());
  for (const RatePoint& p : curve.points) {
    switch (stats) {
      case Statistics::kDistinguishable:
        out.emplace_back(p.rate_distinguishable);
        break;
      case Statistics::kBoson:
        out.push_back(p.rate_boson);
        break;
      case Statistics::kFermion:
        out.push_back(p.rate_fermion);
        break;
    }
  }
  return out;
}

FigureId parse_figure_id(std::string_view name) {
  for (FigureId id : kAllFigures) {
    if (name == figure_name(id)) return id;
  }
  throw UnknownFigure(fmt::format("unknown figure id '{}' (expected fig1, fig2l or fig2r)", name));
}

const char* figure_name(FigureId id) {
  switch (id) {
    case FigureId::kFig1:
      return "fig1";
    case FigureId::kFig2Left:
      return "fig2l";
    case FigureId::kFig2Right:
      return "fig2r";
  }
  return "?";
}

FigureSpec figure_spec(FigureId id) {
  const RecoilModel model(RecoilModel::kDefaultRho);
  const Couplings couplings{0.9, 1.1, 1.0};
  switch (id) {
    case FigureId::kFig1:
      return {id, CMParams::FromReal(0.8, 1.0 / std::sqrt(2.0), 0.8), model, couplings};
    case FigureId::kFig2Left:
      return {id, CMParams::FromReal(0.9, 0.3, 0.9), model, couplings};
    case FigureId::kFig2Right:
      return {id, CMParams::FromReal(0.5, 0.5, 0.5), model, couplings};
  }
  throw UnknownFigure("unknown figure id");
}

RateCurve figure_dataset(const FigureSpec& spec, int n_points) {
  return sweep_rates(spec.params, spec.model, spec.couplings, n_points);
}

double flatness_metric(std::span<const double> series) {
  if (series.size() < 2) {
    throw EmptySeries(fmt::format("flatness needs 2 defined points, got {}", series.size()));
  }
  const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
  double sum = 0.0;
  for (double v : series) sum += v;
  return (*hi - *lo) / (sum / static_cast<double>(series.size()));
}

double flatness_metric(std::span<const std::optional<double>> series) {
  std::vector<double> defined;
  defined.reserve(series.size());
  for (const auto& v : series) {
    if (v) defined.push_back(*v);
  }
  return flatness_metric(std::span<const double>(defined));
}

}  // namespace twoatom
