#include "twoatom/closed_form.hpp"

#include <cmath>

#include <fmt/format.h>

namespace twoatom {

namespace {

constexpr StateLabel kP = StateLabel::kPsi;
constexpr StateLabel kV = StateLabel::kVarphi;
constexpr StateLabel kF = StateLabel::kPhi;
constexpr StateLabel kX = StateLabel::kChi;

void RequireVariant(const GramTable& table, GramVariant expected, const char* role) {
  if (table.variant() != expected) {
    throw std::invalid_argument(fmt::format("{} gram table has the wrong variant", role));
  }
}

void RequireIdentical(Statistics stats) {
  if (stats == Statistics::kDistinguishable) {
    throw std::invalid_argument("identical-atom quantity requested for distinguishable atoms");
  }
}

double DegenerateGuard(double radicand, const char* name) {
  if (!(radicand > kExclusionRadicand)) {
    throw DegenerateState(fmt::format("{} radicand {} is not positive", name, radicand));
  }
  return 1.0 / std::sqrt(radicand);
}

}  // namespace

SuperCoeffs SuperCoeffs::Create(cplx a, cplx b) {
  const double norm = std::norm(a) + std::norm(b);
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kInternalTolerance) {
    throw NormalizationError(fmt::format("|a|^2+|b|^2 = {} deviates from 1", norm));
  }
  return SuperCoeffs(a, b);
}

SuperCoeffs SuperCoeffs::FromReal(double a) {
  if (!(a >= 0.0 && a <= 1.0)) {
    throw NormalizationError(fmt::format("a = {} outside [0, 1]", a));
  }
  return SuperCoeffs(a, std::sqrt(1.0 - a * a));
}

const char* to_string(Statistics stats) {
  switch (stats) {
    case Statistics::kDistinguishable:
      return "distinguishable";
    case Statistics::kBoson:
      return "boson";
    case Statistics::kFermion:
      return "fermion";
  }
  return "?";
}

int exchange_sign(Statistics stats) {
  switch (stats) {
    case Statistics::kBoson:
      return 1;
    case Statistics::kFermion:
      return -1;
    case Statistics::kDistinguishable:
      break;
  }
  throw std::invalid_argument("exchange sign is undefined for distinguishable atoms");
}

double n_d_radicand(const SuperCoeffs& coeffs, const GramTable& g0) {
  RequireVariant(g0, GramVariant::kUnrecoiled, "initial");
  const cplx ab = std::conj(coeffs.a()) * coeffs.b();
  return 1.0 + 2.0 * std::real(ab * g0(kP, kV) * g0(kF, kX));
}

double n_star_radicand(const SuperCoeffs& coeffs, const GramTable& g0, const GramTable& g1) {
  RequireVariant(g0, GramVariant::kUnrecoiled, "initial");
  RequireVariant(g1, GramVariant::kRecoiled, "recoiled");
  const cplx ab = std::conj(coeffs.a()) * coeffs.b();
  return 2.0 + 2.0 * std::real(ab * g1(kP, kV) * g0(kF, kX)) +
         2.0 * std::real(ab * g0(kP, kV) * g1(kF, kX));
}

double n_i_radicand(const SuperCoeffs& coeffs, const GramTable& g0, Statistics stats) {
  RequireVariant(g0, GramVariant::kUnrecoiled, "initial");
  const double s = exchange_sign(stats);
  const cplx ab = std::conj(coeffs.a()) * coeffs.b();
  return 2.0 + s * 2.0 * std::norm(coeffs.a()) * std::norm(g0(kP, kF)) +
         s * 2.0 * std::norm(coeffs.b()) * std::norm(g0(kV, kX)) +
         4.0 * std::real(ab * g0(kP, kV) * g0(kF, kX)) +
         s * 4.0 * std::real(ab * g0(kP, kX) * g0(kF, kV));
}

double n_f_radicand(const SuperCoeffs& coeffs, const GramTable& g0, const GramTable& g1,
                    Statistics stats) {
  RequireVariant(g0, GramVariant::kUnrecoiled, "initial");
  RequireVariant(g1, GramVariant::kRecoiled, "recoiled");
  const double s = exchange_sign(stats);
  const cplx a = coeffs.a();
  const cplx b = coeffs.b();
  const cplx ab = std::conj(a) * b;
  const cplx ba = a * std::conj(b);
  return 4.0 + 4.0 * std::real(ab * g1(kP, kV) * g0(kF, kX)) +
         4.0 * std::real(ba * g0(kV, kP) * g1(kX, kF)) +
         s * 4.0 * std::real(ab * g1(kP, kX) * g0(kF, kV)) +
         s * 4.0 * std::real(ba * g1(kV, kF) * g0(kX, kP)) +
         s * 4.0 * std::norm(a) * std::real(g1(kP, kF) * g0(kF, kP)) +
         s * 4.0 * std::norm(b) * std::real(g1(kV, kX) * g0(kX, kV));
}

double n_d(const SuperCoeffs& coeffs, const GramTable& g0) {
  return DegenerateGuard(n_d_radicand(coeffs, g0), "N_D");
}

double n_star(const SuperCoeffs& coeffs, const GramTable& g0, const GramTable& g1) {
  return DegenerateGuard(n_star_radicand(coeffs, g0, g1), "N_*");
}

std::optional<double> n_i(const SuperCoeffs& coeffs, const GramTable& g0, Statistics stats) {
  const double radicand = n_i_radicand(coeffs, g0, stats);
  if (radicand < kExclusionRadicand) return std::nullopt;
  return 1.0 / std::sqrt(radicand);
}

std::optional<double> n_f(const SuperCoeffs& coeffs, const GramTable& g0, const GramTable& g1,
                          Statistics stats) {
  const double radicand = n_f_radicand(coeffs, g0, g1, stats);
  if (radicand < kExclusionRadicand) return std::nullopt;
  return 1.0 / std::sqrt(radicand);
}

Amplitude m_distinguishable(const SuperCoeffs& coeffs, const GramTable& g0, const GramTable& g1,
                            const Couplings& k) {
  const double nd = n_d(coeffs, g0);
  const double ns = n_star(coeffs, g0, g1);
  const cplx ab = std::conj(coeffs.a()) * coeffs.b();
  // Couplings stay outside Re(): each atom's amplitude multiplies the norm of
  // its own excited branch, which is real.
  const cplx bracket = k.d_a + k.d_b + k.d_a * 2.0 * std::real(ab * g1(kP, kV) * g0(kF, kX)) +
                       k.d_b * 2.0 * std::real(ab * g0(kP, kV) * g1(kF, kX));
  return {ns * nd * bracket};
}

std::optional<Amplitude> m_identical(const SuperCoeffs& coeffs, const GramTable& g0,
                                     const GramTable& g1, const Couplings& k, Statistics stats) {
  RequireIdentical(stats);
  const auto ni = n_i(coeffs, g0, stats);
  const auto nf = n_f(coeffs, g0, g1, stats);
  if (!ni || !nf) return std::nullopt;

  const double s = exchange_sign(stats);
  const cplx a = coeffs.a();
  const cplx b = coeffs.b();
  const cplx ab = std::conj(a) * b;
  const cplx ba = a * std::conj(b);
  const double bracket = 2.0 + 2.0 * std::real(ab * g1(kP, kV) * g0(kF, kX)) +
                         2.0 * std::real(ab * g0(kP, kV) * g1(kF, kX)) +
                         s * 2.0 * std::real(ab * g1(kP, kX) * g0(kF, kV)) +
                         s * 2.0 * std::real(ba * g1(kV, kF) * g0(kX, kP)) +
                         s * 2.0 * std::norm(a) * std::real(g1(kP, kF) * g0(kF, kP)) +
                         s * 2.0 * std::norm(b) * std::real(g1(kV, kX) * g0(kX, kV));
  return Amplitude{2.0 * *nf * *ni * k.d * bracket};
}

RateTriplet rate_triplet(const SuperCoeffs& coeffs, const CMParams& params,
                         const RecoilModel& model, const Couplings& k) {
  const OverlapTables tables = make_overlaps(params, model);
  RateTriplet out;
  out.distinguishable = m_distinguishable(coeffs, tables.bare, tables.recoiled, k).rate();
  out.nf_boson = n_i_radicand(coeffs, tables.bare, Statistics::kBoson);
  out.nf_fermion = n_i_radicand(coeffs, tables.bare, Statistics::kFermion);

  auto identical = [&](Statistics stats, double nf) -> std::optional<double> {
    if (nf < kNearExclusionNf) return std::nullopt;
    const auto m = m_identical(coeffs, tables.bare, tables.recoiled, k, stats);
    if (!m) return std::nullopt;
    return m->rate();
  };
  out.boson = identical(Statistics::kBoson, out.nf_boson);
  out.fermion = identical(Statistics::kFermion, out.nf_fermion);
  return out;
}

}  // namespace twoatom
