#pragma once

#include <optional>
#include <stdexcept>

#include "twoatom/gram.hpp"

namespace twoatom {

// Radicand below which N_I / N_f report an excluded state (|Phi_bar> = 0).
inline constexpr double kExclusionRadicand = 1e-12;

// Sweeps and single-point rates treat NF below this as excluded: the rate
// is a 0 * inf product there and rounding dominates.
inline constexpr double kNearExclusionNf = 1e-6;

class DegenerateState : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SuperCoeffs {
 public:
  // Throws NormalizationError unless |a|^2 + |b|^2 = 1 within 1e-12.
  static SuperCoeffs Create(cplx a, cplx b);

  // a in [0, 1], b = sqrt(1 - a^2).
  static SuperCoeffs FromReal(double a);

  cplx a() const { return a_; }
  cplx b() const { return b_; }

 private:
  SuperCoeffs(cplx a, cplx b) : a_(a), b_(b) {}
  cplx a_, b_;
};

enum class Statistics { kDistinguishable, kBoson, kFermion };

const char* to_string(Statistics stats);

// +1 for bosons, -1 for fermions. Throws std::invalid_argument for
// distinguishable atoms, which have no exchange term.
int exchange_sign(Statistics stats);

// Effective transition amplitudes in arbitrary units. All physical constants
// (t, hbar, G_0, polarization, dipole moment) live in these numbers.
struct Couplings {
  cplx d_a = 0.9;
  cplx d_b = 1.1;
  cplx d = 1.0;
};

struct Amplitude {
  cplx value;
  double rate() const { return std::norm(value); }
};

// 1 / N_D^2, 1 / N_*^2 etc. are exposed separately so callers can inspect
// how close a configuration is to the degenerate or excluded boundary.
double n_d_radicand(const SuperCoeffs& coeffs, const GramTable& g0);
double n_star_radicand(const SuperCoeffs& coeffs, const GramTable& g0, const GramTable& g1);
double n_i_radicand(const SuperCoeffs& coeffs, const GramTable& g0, Statistics stats);
double n_f_radicand(const SuperCoeffs& coeffs, const GramTable& g0, const GramTable& g1,
                    Statistics stats);

// Throw DegenerateState when the radicand is <= 1e-12.
double n_d(const SuperCoeffs& coeffs, const GramTable& g0);
double n_star(const SuperCoeffs& coeffs, const GramTable& g0, const GramTable& g1);

// nullopt marks an excluded state.
std::optional<double> n_i(const SuperCoeffs& coeffs, const GramTable& g0, Statistics stats);
std::optional<double> n_f(const SuperCoeffs& coeffs, const GramTable& g0, const GramTable& g1,
                          Statistics stats);

Amplitude m_distinguishable(const SuperCoeffs& coeffs, const GramTable& g0, const GramTable& g1,
                            const Couplings& k);

// nullopt when either the initial or the final identical-atom state vanishes.
std::optional<Amplitude> m_identical(const SuperCoeffs& coeffs, const GramTable& g0,
                                     const GramTable& g1, const Couplings& k, Statistics stats);

struct RateTriplet {
  double distinguishable = 0.0;
  std::optional<double> boson;
  std::optional<double> fermion;
  double nf_fermion = 0.0;  // 1 / N_I^2 for fermions
  double nf_boson = 0.0;
};

// Evaluates all three pipelines on one configuration. Identical-atom slots
// are empty when their NF falls below kNearExclusionNf.
RateTriplet rate_triplet(const SuperCoeffs& coeffs, const CMParams& params,
                         const RecoilModel& model, const Couplings& k);

}  // namespace twoatom
