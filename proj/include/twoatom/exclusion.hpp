#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "twoatom/closed_form.hpp"
#include "twoatom/gram.hpp"
#include "twoatom/sweep.hpp"

namespace twoatom {

// Raised when every (a, b) is excluded: both antisymmetric amplitudes vanish.
class DegenerateManifold : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NoValidPoints : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct ExclusionSolution {
  cplx a;
  cplx b;
  double residual = 0.0;        // |a f + b c (gf - eh) - b d (ge + hf)|
  double nf_at_solution = 0.0;  // fermion 1 / N_I^2
};

// In two dimensions the antisymmetric subspace is one-dimensional, so the
// fermion state is (a det(psi, phi) + b det(varphi, chi)) times a fixed
// vector. These are the two determinants.
struct AntisymmetricAmplitudes {
  cplx psi_phi;     // f
  cplx varphi_chi;  // c (gf - eh) - d (ge + hf)
};

AntisymmetricAmplitudes antisymmetric_amplitudes(const CMParams& params);

double exclusion_residual(const SuperCoeffs& coeffs, const CMParams& params);

// Real nonnegative solution of a f + b [c(gf - eh) - d(ge + hf)] = 0 on the
// unit circle. Returns nullopt when the solution ratio a/b is negative or
// not real. Throws DegenerateManifold when both amplitudes vanish.
std::optional<ExclusionSolution> solve_exclusion(const CMParams& params);

struct NfPoint {
  double a;
  double nf;
};

// Fermion 1 / N_I^2 with b = sqrt(1 - a^2). Grid values must lie in [0, 1].
std::vector<NfPoint> nf_curve(const CMParams& params, const std::vector<double>& grid);

// Zeros of the fermion NF curve in [0, 1]: local grid minima refined with a
// Brent minimizer and kept when the refined NF is below `zero_tolerance`.
std::vector<NfPoint> locate_nf_zeros(const CMParams& params, int n_points = kDefaultGridPoints,
                                     double zero_tolerance = kExclusionRadicand);

struct PeakReport {
  double a_peak = 0.0;
  double rate_peak = 0.0;
  double baseline_distinguishable = 0.0;
  double baseline_boson = 0.0;  // 0 when the boson point is excluded
  double ratio = 0.0;           // rate_peak / max(baselines)
  std::size_t index = 0;        // grid index of the peak
};

// Grid argmax of the fermion rate over non-excluded points.
PeakReport detect_peak(const RateCurve& curve);

}  // namespace twoatom
