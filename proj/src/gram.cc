#include "twoatom/gram.hpp"

#include <cmath>

#include <fmt/format.h>

namespace twoatom {

const char* to_string(StateLabel label) {
  switch (label) {
    case StateLabel::kPsi:
      return "psi";
    case StateLabel::kVarphi:
      return "varphi";
    case StateLabel::kPhi:
      return "phi";
    case StateLabel::kChi:
      return "chi";
  }
  return "?";
}

namespace {

void CheckPair(const char* name, cplx x, cplx y) {
  if (!std::isfinite(x.real()) || !std::isfinite(x.imag()) || !std::isfinite(y.real()) ||
      !std::isfinite(y.imag())) {
    throw NormalizationError(fmt::format("|{}|^2 coefficients must be finite", name));
  }
  const double norm = std::norm(x) + std::norm(y);
  if (std::abs(norm - 1.0) > kInputNormTolerance) {
    throw NormalizationError(fmt::format("|{}|^2 = {} deviates from 1", name, norm));
  }
}

}  // namespace

CMParams CMParams::Create(cplx c, cplx d, cplx e, cplx f, cplx g, cplx h) {
  CheckPair("c|^2+|d", c, d);
  CheckPair("e|^2+|f", e, f);
  CheckPair("g|^2+|h", g, h);
  return CMParams(c, d, e, f, g, h);
}

CMParams CMParams::FromReal(double c, double e, double g) {
  auto completion = [](double x) {
    if (!(std::abs(x) <= 1.0)) {
      throw NormalizationError(fmt::format("coefficient {} outside [-1, 1]", x));
    }
    return std::sqrt(std::max(0.0, 1.0 - x * x));
  };
  return Create(c, completion(c), e, completion(e), g, completion(g));
}

std::array<cplx, 2> CMParams::expansion(StateLabel label) const {
  switch (label) {
    case StateLabel::kPsi:
      return {1.0, 0.0};
    case StateLabel::kVarphi:
      return {c_, d_};
    case StateLabel::kPhi:
      return {e_, f_};
    case StateLabel::kChi:
      return {g_ * e_ + h_ * std::conj(f_), g_ * f_ - h_ * std::conj(e_)};
  }
  return {0.0, 0.0};
}

bool CMParams::is_real() const {
  for (cplx z : {c_, d_, e_, f_, g_, h_}) {
    if (z.imag() != 0.0) return false;
  }
  return true;
}

RecoilModel::RecoilModel(double rho) : rho_(rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw std::invalid_argument(fmt::format("recoil factor rho = {} outside [0, 1]", rho));
  }
}

GramTable::GramTable(const Matrix& entries, GramVariant variant)
    : entries_(entries), variant_(variant) {}

GramTable unrecoiled_gram(const CMParams& params) {
  GramTable::Matrix m;
  for (StateLabel bra : kAllStates) {
    const auto u = params.expansion(bra);
    const int i = static_cast<int>(bra);
    m(i, i) = 1.0;
    for (StateLabel ket : kAllStates) {
      const int j = static_cast<int>(ket);
      if (j <= i) continue;
      const auto v = params.expansion(ket);
      m(i, j) = std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1];
      m(j, i) = std::conj(m(i, j));
    }
  }
  return GramTable(m, GramVariant::kUnrecoiled);
}

cplx recoiled_overlap(cplx s, const RecoilModel& model) {
  return (model.rho() + (1.0 - model.rho()) * s) * s;
}

GramTable recoiled_gram(const GramTable& gram, const RecoilModel& model) {
  if (gram.variant() != GramVariant::kUnrecoiled) {
    throw std::invalid_argument("recoiled_gram expects an unrecoiled table");
  }
  GramTable::Matrix m = gram.entries();
  for (int i = 0; i < 4; ++i) {
    m(i, i) = 1.0;
    for (int j = i + 1; j < 4; ++j) {
      m(i, j) = recoiled_overlap(gram.entries()(i, j), model);
      m(j, i) = std::conj(m(i, j));
    }
  }
  return GramTable(m, GramVariant::kRecoiled);
}

OverlapTables make_overlaps(const CMParams& params, const RecoilModel& model) {
  GramTable bare = unrecoiled_gram(params);
  GramTable recoiled = recoiled_gram(bare, model);
  return {std::move(bare), std::move(recoiled)};
}

}  // namespace twoatom
