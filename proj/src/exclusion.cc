#include "twoatom/exclusion.hpp"

#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>
#include <fmt/format.h>

namespace twoatom {

namespace {

constexpr double kSolutionImagTolerance = 1e-12;

double FermionNf(const GramTable& g0, double a) {
  return n_i_radicand(SuperCoeffs::FromReal(a), g0, Statistics::kFermion);
}

}  // namespace

AntisymmetricAmplitudes antisymmetric_amplitudes(const CMParams& params) {
  const auto psi = params.expansion(StateLabel::kPsi);
  const auto phi = params.expansion(StateLabel::kPhi);
  const auto varphi = params.expansion(StateLabel::kVarphi);
  const auto chi = params.expansion(StateLabel::kChi);
  return {psi[0] * phi[1] - psi[1] * phi[0], varphi[0] * chi[1] - varphi[1] * chi[0]};
}

double exclusion_residual(const SuperCoeffs& coeffs, const CMParams& params) {
  const AntisymmetricAmplitudes amp = antisymmetric_amplitudes(params);
  return std::abs(coeffs.a() * amp.psi_phi + coeffs.b() * amp.varphi_chi);
}

std::optional<ExclusionSolution> solve_exclusion(const CMParams& params) {
  const AntisymmetricAmplitudes amp = antisymmetric_amplitudes(params);
  const bool f_zero = std::abs(amp.psi_phi) < kInternalTolerance;
  const bool b_zero = std::abs(amp.varphi_chi) < kInternalTolerance;
  if (f_zero && b_zero) {
    throw DegenerateManifold("both antisymmetric amplitudes vanish; every (a, b) is excluded");
  }

  cplx a;
  cplx b;
  if (f_zero) {
    a = 1.0;
    b = 0.0;
  } else {
    const cplx ratio = -amp.varphi_chi / amp.psi_phi;
    if (std::abs(ratio.imag()) > kSolutionImagTolerance || ratio.real() < 0.0) {
      return std::nullopt;
    }
    const double t = ratio.real();
    const double norm = std::sqrt(1.0 + t * t);
    a = t / norm;
    b = 1.0 / norm;
  }

  const SuperCoeffs coeffs = SuperCoeffs::Create(a, b);
  const GramTable g0 = unrecoiled_gram(params);
  return ExclusionSolution{a, b, exclusion_residual(coeffs, params),
                           n_i_radicand(coeffs, g0, Statistics::kFermion)};
}

std::vector<NfPoint> nf_curve(const CMParams& params, const std::vector<double>& grid) {
  const GramTable g0 = unrecoiled_gram(params);
  std::vector<NfPoint> out;
  out.reserve(grid.size());
  for (double a : grid) out.push_back({a, FermionNf(g0, a)});
  return out;
}

std::vector<NfPoint> locate_nf_zeros(const CMParams& params, int n_points,
                                     double zero_tolerance) {
  const std::vector<NfPoint> curve = nf_curve(params, uniform_grid(n_points));
  const GramTable g0 = unrecoiled_gram(params);
  const std::size_t n = curve.size();
  const double step = 1.0 / (n_points - 1);

  std::vector<NfPoint> zeros;
  for (std::size_t i = 0; i < n; ++i) {
    const bool left_ok = i == 0 || curve[i].nf < curve[i - 1].nf;
    const bool right_ok = i + 1 == n || curve[i].nf <= curve[i + 1].nf;
    if (!left_ok || !right_ok) continue;

    const double lo = i == 0 ? 0.0 : curve[i - 1].a;
    const double hi = i + 1 == n ? 1.0 : curve[i + 1].a;
    const auto [a_min, nf_min] = boost::math::tools::brent_find_minima(
        [&](double a) { return FermionNf(g0, a); }, lo, hi,
        std::numeric_limits<double>::digits / 2);
    if (nf_min >= zero_tolerance) continue;
    if (!zeros.empty() && std::abs(zeros.back().a - a_min) < step) continue;
    zeros.push_back({a_min, nf_min});
  }
  return zeros;
}

PeakReport detect_peak(const RateCurve& curve) {
  std::size_t valid = 0;
  PeakReport report;
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const RatePoint& p = curve.points[i];
    if (!p.rate_fermion) continue;
    if (valid == 0 || *p.rate_fermion > report.rate_peak) {
      report.a_peak = p.a;
      report.rate_peak = *p.rate_fermion;
      report.index = i;
    }
    ++valid;
  }
  if (valid == 0) throw NoValidPoints("every fermion point of the curve is excluded");
  if (valid < 3) {
    throw std::invalid_argument(
        fmt::format("peak detection needs 3 valid fermion points, got {}", valid));
  }

  const RatePoint& at = curve.points[report.index];
  report.baseline_distinguishable = at.rate_distinguishable;
  report.baseline_boson = at.rate_boson.value_or(0.0);
  report.ratio =
      report.rate_peak / std::max(report.baseline_distinguishable, report.baseline_boson);
  return report;
}

}  // namespace twoatom
