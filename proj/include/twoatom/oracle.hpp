#pragma once

// Brute-force bra-ket engine. States are finite linear combinations of
// labeled product kets |spatial_1 internal_1; spatial_2 internal_2; n_photons>
// and every inner product is expanded term by term against the Gram tables.
// Nothing here reuses the closed-form expressions, so the two can be
// checked against each other.

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

#include "twoatom/closed_form.hpp"
#include "twoatom/gram.hpp"

namespace twoatom::oracle {

inline constexpr double kPruneThreshold = 1e-15;

class CrossRecoilOverlap : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Internal { kGround, kExcited };

struct SpatialLabel {
  StateLabel state = StateLabel::kPsi;
  bool recoiled = false;

  auto operator<=>(const SpatialLabel&) const = default;
};

struct FormalKet {
  SpatialLabel spatial_1;
  Internal internal_1 = Internal::kGround;
  SpatialLabel spatial_2;
  Internal internal_2 = Internal::kGround;
  int photons = 0;

  auto operator<=>(const FormalKet&) const = default;
};

class FormalState {
 public:
  using TermMap = std::map<FormalKet, cplx>;

  FormalState() = default;

  // Accumulates into an existing term; drops it if the sum falls below the
  // prune threshold.
  void add(const FormalKet& ket, cplx amplitude);

  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  FormalState& operator+=(const FormalState& other);
  FormalState& operator*=(cplx scalar);

  friend FormalState operator+(FormalState x, const FormalState& y) { return x += y; }
  friend FormalState operator*(cplx s, FormalState x) { return x *= s; }

 private:
  TermMap terms_;
};

// Unnormalized initial state with one photon present:
//   distinguishable: a|psi,phi> + b|varphi,chi>
//   identical:       a(|psi,phi> +- |phi,psi>) + b(|varphi,chi> +- |chi,varphi>)
FormalState build_initial(const SuperCoeffs& coeffs, Statistics stats);

// <x|y>, conjugate-linear in x. Spatial overlaps come from g0 (both bare) or
// g1 (both recoiled); any mixed lookup throws CrossRecoilOverlap.
cplx inner_product(const FormalState& x, const FormalState& y, const GramTable& g0,
                   const GramTable& g1);

// First-order absorption branch of (H_1 x I + I x H_2): each ground-state slot
// of a one-photon term is excited, its spatial label gets the recoil flag and
// the photon is removed. Slot couplings are d_a/d_b for distinguishable atoms
// and d for both slots of identical ones. Zero-photon terms contribute
// nothing.
FormalState apply_absorption(const FormalState& x, const Couplings& k, Statistics stats);

// Exchanges the two particle slots of every term.
FormalState swap_slots(const FormalState& x);

struct OracleEvaluation {
  double n_initial;  // N_D or N_I
  double n_final;    // N_* or N_f
  cplx matrix_element;
};

// Builds the normalized initial state, the normalized final state (absorption
// image of the initial pattern with unit couplings) and returns
// <final| absorption(initial)>. nullopt when either squared norm < 1e-12.
std::optional<OracleEvaluation> evaluate(const SuperCoeffs& coeffs, const OverlapTables& tables,
                                         const Couplings& k, Statistics stats);

std::optional<cplx> oracle_matrix_element(const SuperCoeffs& coeffs, const CMParams& params,
                                          const RecoilModel& model, const Couplings& k,
                                          Statistics stats);

}  // namespace twoatom::oracle
