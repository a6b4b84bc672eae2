#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace twoatom {

using cplx = std::complex<double>;

// Input normalization is checked loosely (user-typed decimals); internal
// identities are expected to hold to rounding.
inline constexpr double kInputNormTolerance = 1e-9;
inline constexpr double kInternalTolerance = 1e-12;

class NormalizationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The four center-of-mass states of the dissociation products.
enum class StateLabel { kPsi = 0, kVarphi = 1, kPhi = 2, kChi = 3 };

inline constexpr std::array<StateLabel, 4> kAllStates = {
    StateLabel::kPsi, StateLabel::kVarphi, StateLabel::kPhi, StateLabel::kChi};

const char* to_string(StateLabel label);

// Coefficients of the CM states in the orthonormal basis {psi, psi_perp}:
//   varphi = c psi + d psi_perp
//   phi    = e psi + f psi_perp
//   chi    = g phi + h phi_perp,  phi_perp = conj(f) psi - conj(e) psi_perp
class CMParams {
 public:
  // Throws NormalizationError when any of the three pairs is not unit norm.
  static CMParams Create(cplx c, cplx d, cplx e, cplx f, cplx g, cplx h);

  // Real-coefficient convenience: d, f, h are the nonnegative completions.
  static CMParams FromReal(double c, double e, double g);

  cplx c() const { return c_; }
  cplx d() const { return d_; }
  cplx e() const { return e_; }
  cplx f() const { return f_; }
  cplx g() const { return g_; }
  cplx h() const { return h_; }

  // Components of |label> along (psi, psi_perp).
  std::array<cplx, 2> expansion(StateLabel label) const;

  bool is_real() const;

 private:
  CMParams(cplx c, cplx d, cplx e, cplx f, cplx g, cplx h)
      : c_(c), d_(d), e_(e), f_(f), g_(g), h_(h) {}

  cplx c_, d_, e_, f_, g_, h_;
};

// <eta*|mu*> = (rho + (1 - rho) <eta|mu>) <eta|mu>
class RecoilModel {
 public:
  static constexpr double kDefaultRho = 0.9;

  RecoilModel() = default;
  explicit RecoilModel(double rho);

  double rho() const { return rho_; }

 private:
  double rho_ = kDefaultRho;
};

enum class GramVariant { kUnrecoiled, kRecoiled };

// Pairwise overlaps <bra|ket> among {psi, varphi, phi, chi}. Only
// same-variant lookups exist: a starred bra never meets an unstarred ket in
// any matrix element because <e|g> = 0 kills those terms.
class GramTable {
 public:
  using Matrix = Eigen::Matrix<cplx, 4, 4>;

  GramTable(const Matrix& entries, GramVariant variant);

  cplx operator()(StateLabel bra, StateLabel ket) const {
    return entries_(static_cast<int>(bra), static_cast<int>(ket));
  }

  const Matrix& entries() const { return entries_; }
  GramVariant variant() const { return variant_; }

 private:
  Matrix entries_;
  GramVariant variant_;
};

// Scalar product of the explicit 2-component expansions.
GramTable unrecoiled_gram(const CMParams& params);

cplx recoiled_overlap(cplx s, const RecoilModel& model);

// Applies recoiled_overlap to the strict upper triangle and mirrors it.
// Throws std::invalid_argument if `gram` is already recoiled.
GramTable recoiled_gram(const GramTable& gram, const RecoilModel& model);

// Both variants for one configuration; built once per evaluation point.
struct OverlapTables {
  GramTable bare;
  GramTable recoiled;
};

OverlapTables make_overlaps(const CMParams& params, const RecoilModel& model);

}  // namespace twoatom
