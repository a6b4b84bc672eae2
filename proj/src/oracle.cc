#include "twoatom/oracle.hpp"

#include <cmath>

#include <fmt/format.h>

namespace twoatom::oracle {

namespace {

SpatialLabel Bare(StateLabel s) { return {s, false}; }

FormalKet GroundPair(StateLabel s1, StateLabel s2) {
  return {Bare(s1), Internal::kGround, Bare(s2), Internal::kGround, 1};
}

cplx SpatialOverlap(const SpatialLabel& bra, const SpatialLabel& ket, const GramTable& g0,
                    const GramTable& g1) {
  if (bra.recoiled != ket.recoiled) {
    throw CrossRecoilOverlap(fmt::format("overlap <{}{}|{}{}> mixes recoil variants",
                                         to_string(bra.state), bra.recoiled ? "*" : "",
                                         to_string(ket.state), ket.recoiled ? "*" : ""));
  }
  return bra.recoiled ? g1(bra.state, ket.state) : g0(bra.state, ket.state);
}

}  // namespace

void FormalState::add(const FormalKet& ket, cplx amplitude) {
  auto [it, inserted] = terms_.try_emplace(ket, amplitude);
  if (!inserted) it->second += amplitude;
  if (std::abs(it->second) < kPruneThreshold) terms_.erase(it);
}

FormalState& FormalState::operator+=(const FormalState& other) {
  for (const auto& [ket, amp] : other.terms_) add(ket, amp);
  return *this;
}

FormalState& FormalState::operator*=(cplx scalar) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= scalar;
    if (std::abs(it->second) < kPruneThreshold) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

FormalState build_initial(const SuperCoeffs& coeffs, Statistics stats) {
  using S = StateLabel;
  FormalState out;
  out.add(GroundPair(S::kPsi, S::kPhi), coeffs.a());
  out.add(GroundPair(S::kVarphi, S::kChi), coeffs.b());
  if (stats != Statistics::kDistinguishable) {
    const double sign = exchange_sign(stats);
    out.add(GroundPair(S::kPhi, S::kPsi), sign * coeffs.a());
    out.add(GroundPair(S::kChi, S::kVarphi), sign * coeffs.b());
  }
  return out;
}

cplx inner_product(const FormalState& x, const FormalState& y, const GramTable& g0,
                   const GramTable& g1) {
  cplx sum = 0.0;
  for (const auto& [bra, amp_x] : x.terms()) {
    for (const auto& [ket, amp_y] : y.terms()) {
      if (bra.photons != ket.photons || bra.internal_1 != ket.internal_1 ||
          bra.internal_2 != ket.internal_2) {
        continue;
      }
      sum += std::conj(amp_x) * amp_y * SpatialOverlap(bra.spatial_1, ket.spatial_1, g0, g1) *
             SpatialOverlap(bra.spatial_2, ket.spatial_2, g0, g1);
    }
  }
  return sum;
}

FormalState apply_absorption(const FormalState& x, const Couplings& k, Statistics stats) {
  const bool identical = stats != Statistics::kDistinguishable;
  const cplx slot_1 = identical ? k.d : k.d_a;
  const cplx slot_2 = identical ? k.d : k.d_b;

  FormalState out;
  for (const auto& [ket, amp] : x.terms()) {
    if (ket.photons != 1) continue;
    if (ket.internal_1 == Internal::kGround) {
      FormalKet excited = ket;
      excited.internal_1 = Internal::kExcited;
      excited.spatial_1.recoiled = true;
      excited.photons = 0;
      out.add(excited, amp * slot_1);
    }
    if (ket.internal_2 == Internal::kGround) {
      FormalKet excited = ket;
      excited.internal_2 = Internal::kExcited;
      excited.spatial_2.recoiled = true;
      excited.photons = 0;
      out.add(excited, amp * slot_2);
    }
  }
  return out;
}

FormalState swap_slots(const FormalState& x) {
  FormalState out;
  for (const auto& [ket, amp] : x.terms()) {
    out.add({ket.spatial_2, ket.internal_2, ket.spatial_1, ket.internal_1, ket.photons}, amp);
  }
  return out;
}

std::optional<OracleEvaluation> evaluate(const SuperCoeffs& coeffs, const OverlapTables& tables,
                                         const Couplings& k, Statistics stats) {
  const GramTable& g0 = tables.bare;
  const GramTable& g1 = tables.recoiled;

  const FormalState initial = build_initial(coeffs, stats);
  const double initial_sq = std::real(inner_product(initial, initial, g0, g1));
  if (initial_sq < kExclusionRadicand) return std::nullopt;

  const Couplings unit{1.0, 1.0, 1.0};
  const FormalState final_state = apply_absorption(initial, unit, stats);
  const double final_sq = std::real(inner_product(final_state, final_state, g0, g1));
  if (final_sq < kExclusionRadicand) return std::nullopt;

  const double n_initial = 1.0 / std::sqrt(initial_sq);
  const double n_final = 1.0 / std::sqrt(final_sq);
  const cplx m = n_final * n_initial *
                 inner_product(final_state, apply_absorption(initial, k, stats), g0, g1);
  return OracleEvaluation{n_initial, n_final, m};
}

std::optional<cplx> oracle_matrix_element(const SuperCoeffs& coeffs, const CMParams& params,
                                          const RecoilModel& model, const Couplings& k,
                                          Statistics stats) {
  const auto result = evaluate(coeffs, make_overlaps(params, model), k, stats);
  if (!result) return std::nullopt;
  return result->matrix_element;
}

}  // namespace twoatom::oracle
