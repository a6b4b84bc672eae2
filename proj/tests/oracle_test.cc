#include "twoatom/oracle.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace twoatom::oracle {
namespace {

using S = StateLabel;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

FormalKet Ket(S s1, bool r1, Internal i1, S s2, bool r2, Internal i2, int photons) {
  return {{s1, r1}, i1, {s2, r2}, i2, photons};
}

FormalKet GroundKet(S s1, S s2) {
  return Ket(s1, false, Internal::kGround, s2, false, Internal::kGround, 1);
}

TEST(FormalStateTest, AccumulatesAndPrunes) {
  FormalState x;
  x.add(GroundKet(S::kPsi, S::kPhi), 0.5);
  x.add(GroundKet(S::kPsi, S::kPhi), 0.25);
  ASSERT_EQ(x.size(), 1u);
  EXPECT_EQ(x.terms().begin()->second, cplx(0.75));
  x.add(GroundKet(S::kPsi, S::kPhi), -0.75);
  EXPECT_TRUE(x.empty());
  x.add(GroundKet(S::kChi, S::kPhi), 1e-16);
  EXPECT_TRUE(x.empty());

  FormalState y;
  y.add(GroundKet(S::kPsi, S::kPhi), 2.0);
  y *= 1e-16;
  EXPECT_TRUE(y.empty());
}

TEST(FormalStateTest, LinearCombinationClosure) {
  FormalState x;
  x.add(GroundKet(S::kPsi, S::kPhi), 1.0);
  FormalState y;
  y.add(GroundKet(S::kPsi, S::kPhi), -1.0);
  y.add(GroundKet(S::kVarphi, S::kChi), 2.0);
  const FormalState z = x + cplx(0.5) * y;
  ASSERT_EQ(z.size(), 2u);
  EXPECT_EQ(z.terms().at(GroundKet(S::kPsi, S::kPhi)), cplx(0.5));
  EXPECT_EQ(z.terms().at(GroundKet(S::kVarphi, S::kChi)), cplx(1.0));
}

TEST(BuildInitialTest, Examples) {
  const FormalState dist =
      build_initial(SuperCoeffs::FromReal(1.0), Statistics::kDistinguishable);
  ASSERT_EQ(dist.size(), 1u);
  EXPECT_EQ(dist.terms().at(GroundKet(S::kPsi, S::kPhi)), cplx(1.0));

  const FormalState fermion = build_initial(SuperCoeffs::FromReal(1.0), Statistics::kFermion);
  ASSERT_EQ(fermion.size(), 2u);
  EXPECT_EQ(fermion.terms().at(GroundKet(S::kPsi, S::kPhi)), cplx(1.0));
  EXPECT_EQ(fermion.terms().at(GroundKet(S::kPhi, S::kPsi)), cplx(-1.0));

  const FormalState boson = build_initial(SuperCoeffs::FromReal(0.6), Statistics::kBoson);
  ASSERT_EQ(boson.size(), 4u);
  EXPECT_EQ(boson.terms().at(GroundKet(S::kChi, S::kVarphi)), cplx(0.8));
}

TEST(BuildInitialTest, Figure2RightFermionNormVanishesAtEqualAmplitudes) {
  // varphi = phi and chi = psi: the fermion state is (a - b)(psi phi - phi psi)
  // with squared norm 2 (a - b)^2 (1 - e^2) = 1.5 (a - b)^2.
  const OverlapTables t = make_overlaps(CMParams::FromReal(0.5, 0.5, 0.5), RecoilModel());
  for (double a : {0.0, 0.3, kInvSqrt2, 0.9, 1.0}) {
    const SuperCoeffs ab = SuperCoeffs::FromReal(a);
    const FormalState x = build_initial(ab, Statistics::kFermion);
    const double b = ab.b().real();
    EXPECT_NEAR(std::real(inner_product(x, x, t.bare, t.recoiled)), 1.5 * (a - b) * (a - b),
                1e-14);
  }
}

TEST(InnerProductTest, Examples) {
  const CMParams p = CMParams::FromReal(0.8, kInvSqrt2, 0.8);
  const OverlapTables t = make_overlaps(p, RecoilModel());
  for (double a : {0.0, 0.2, kInvSqrt2, 1.0}) {
    const SuperCoeffs ab = SuperCoeffs::FromReal(a);
    const FormalState x = build_initial(ab, Statistics::kDistinguishable);
    const double expected = 1.0 + 2.0 * a * ab.b().real() * 0.8 * 0.8;
    EXPECT_NEAR(std::real(inner_product(x, x, t.bare, t.recoiled)), expected, 1e-14);
  }

  const OverlapTables orth = testing::OrthogonalTables();
  FormalState single;
  single.add(GroundKet(S::kVarphi, S::kChi), 1.0);
  EXPECT_EQ(inner_product(single, single, orth.bare, orth.recoiled), cplx(1.0));

  // a / b = 0.68 solves the figure-1 exclusion condition.
  const SuperCoeffs excl = SuperCoeffs::Create(0.562310021407279122, 0.826926502069528121);
  const FormalState phi_bar = build_initial(excl, Statistics::kFermion);
  EXPECT_LT(std::abs(inner_product(phi_bar, phi_bar, t.bare, t.recoiled)), 1e-12);
}

TEST(InnerProductTest, InternalAndPhotonMismatchesAreOrthogonal) {
  const OverlapTables t = make_overlaps(CMParams::Create(1, 0, 1, 0, 1, 0), RecoilModel());
  FormalState x;
  x.add(Ket(S::kPsi, true, Internal::kExcited, S::kPhi, false, Internal::kGround, 0), 1.0);
  FormalState y;
  y.add(Ket(S::kPsi, false, Internal::kGround, S::kPhi, true, Internal::kExcited, 0), 1.0);
  FormalState z;
  z.add(Ket(S::kPsi, true, Internal::kExcited, S::kPhi, false, Internal::kGround, 1), 1.0);
  EXPECT_EQ(inner_product(x, y, t.bare, t.recoiled), cplx(0.0));
  EXPECT_EQ(inner_product(x, z, t.bare, t.recoiled), cplx(0.0));
}

TEST(InnerProductTest, MixedRecoilLookupThrows) {
  const OverlapTables t = make_overlaps(CMParams::FromReal(0.3, 0.4, 0.5), RecoilModel());
  FormalState x;
  x.add(Ket(S::kPsi, true, Internal::kExcited, S::kPhi, false, Internal::kGround, 0), 1.0);
  FormalState y;
  y.add(Ket(S::kPsi, false, Internal::kExcited, S::kPhi, false, Internal::kGround, 0), 1.0);
  EXPECT_THROW(inner_product(x, y, t.bare, t.recoiled), CrossRecoilOverlap);
}

TEST(ApplyAbsorptionTest, SingleTermDistinguishable) {
  FormalState x;
  x.add(GroundKet(S::kPsi, S::kPhi), 1.0);
  const Couplings k{0.9, 1.1, 1.0};
  const FormalState y = apply_absorption(x, k, Statistics::kDistinguishable);
  ASSERT_EQ(y.size(), 2u);
  EXPECT_EQ(y.terms().at(Ket(S::kPsi, true, Internal::kExcited, S::kPhi, false,
                             Internal::kGround, 0)),
            cplx(0.9));
  EXPECT_EQ(y.terms().at(Ket(S::kPsi, false, Internal::kGround, S::kPhi, true,
                             Internal::kExcited, 0)),
            cplx(1.1));

  const FormalState identical = apply_absorption(x, k, Statistics::kBoson);
  for (const auto& [ket, amp] : identical.terms()) EXPECT_EQ(amp, cplx(1.0));
}

TEST(ApplyAbsorptionTest, ZeroPhotonStateIsAnnihilated) {
  FormalState x;
  x.add(Ket(S::kPsi, false, Internal::kGround, S::kPhi, false, Internal::kGround, 0), 1.0);
  EXPECT_TRUE(apply_absorption(x, {}, Statistics::kFermion).empty());
}

TEST(ApplyAbsorptionTest, ReproducesDistinguishableBracket) {
  // <A* + B*| d_a A* + d_b B*> = d_a + d_b + d_a 2Re(a*b <psi*|varphi*><phi|chi>)
  //                              + d_b 2Re(a*b <psi|varphi><phi*|chi*>)
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const CMParams p = testing::RandomParams(rng, trial % 2 == 0);
    const OverlapTables t = make_overlaps(p, testing::RandomRecoil(rng));
    const SuperCoeffs ab = testing::RandomCoeffs(rng, trial % 2 == 0);
    const Couplings k = testing::RandomCouplings(rng, trial % 3 == 0);
    const FormalState initial = build_initial(ab, Statistics::kDistinguishable);
    const FormalState final_state =
        apply_absorption(initial, {1.0, 1.0, 1.0}, Statistics::kDistinguishable);
    const cplx bracket = inner_product(final_state,
                                       apply_absorption(initial, k, Statistics::kDistinguishable),
                                       t.bare, t.recoiled);
    const cplx x = std::conj(ab.a()) * ab.b();
    const cplx expected =
        k.d_a + k.d_b +
        k.d_a * 2.0 * std::real(x * t.recoiled(S::kPsi, S::kVarphi) * t.bare(S::kPhi, S::kChi)) +
        k.d_b * 2.0 * std::real(x * t.bare(S::kPsi, S::kVarphi) * t.recoiled(S::kPhi, S::kChi));
    ASSERT_NEAR(std::abs(bracket - expected), 0.0, 1e-13);
  }
}

TEST(OracleMatrixElementTest, OrthogonalSingleBranch) {
  const Couplings k{0.9, 1.1, 1.0};
  const auto m = evaluate(SuperCoeffs::FromReal(1.0), testing::OrthogonalTables(), k,
                          Statistics::kDistinguishable);
  ASSERT_TRUE(m.has_value());
  EXPECT_NEAR(std::abs(m->matrix_element - (0.9 + 1.1) * kInvSqrt2), 0.0, 1e-15);
}

TEST(OracleMatrixElementTest, ReportsExclusion) {
  const CMParams p = CMParams::FromReal(0.8, kInvSqrt2, 0.8);
  const SuperCoeffs excl = SuperCoeffs::Create(0.562310021407279122, 0.826926502069528121);
  EXPECT_FALSE(
      oracle_matrix_element(excl, p, RecoilModel(), {}, Statistics::kFermion).has_value());
  EXPECT_TRUE(oracle_matrix_element(excl, p, RecoilModel(), {}, Statistics::kBoson).has_value());
}

// Properties.

FormalState RandomState(std::mt19937_64& rng, bool recoiled_sector) {
  std::uniform_real_distribution<double> mag(-1.0, 1.0);
  FormalState x;
  for (S s1 : kAllStates) {
    for (S s2 : kAllStates) {
      if (recoiled_sector) {
        x.add(Ket(s1, true, Internal::kExcited, s2, false, Internal::kGround, 0),
              {mag(rng), mag(rng)});
        x.add(Ket(s1, false, Internal::kGround, s2, true, Internal::kExcited, 0),
              {mag(rng), mag(rng)});
      } else {
        x.add(GroundKet(s1, s2), {mag(rng), mag(rng)});
      }
    }
  }
  return x;
}

TEST(OraclePropertyTest, SesquilinearInnerProduct) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const bool sector = trial % 2 == 0;
    const OverlapTables t =
        make_overlaps(testing::RandomParams(rng, true), testing::RandomRecoil(rng));
    const FormalState x = RandomState(rng, sector);
    const FormalState y = RandomState(rng, sector);
    const FormalState z = RandomState(rng, sector);
    const cplx alpha{0.3, -1.2};
    const cplx beta{-0.7, 0.4};

    const cplx lhs_first = inner_product(alpha * x + beta * y, z, t.bare, t.recoiled);
    const cplx rhs_first = std::conj(alpha) * inner_product(x, z, t.bare, t.recoiled) +
                           std::conj(beta) * inner_product(y, z, t.bare, t.recoiled);
    ASSERT_NEAR(std::abs(lhs_first - rhs_first), 0.0, 1e-12 * std::max(1.0, std::abs(rhs_first)));

    const cplx lhs_second = inner_product(z, alpha * x + beta * y, t.bare, t.recoiled);
    const cplx rhs_second = alpha * inner_product(z, x, t.bare, t.recoiled) +
                            beta * inner_product(z, y, t.bare, t.recoiled);
    ASSERT_NEAR(std::abs(lhs_second - rhs_second), 0.0,
                1e-12 * std::max(1.0, std::abs(rhs_second)));
  }
}

TEST(OraclePropertyTest, ExchangeSymmetryOfBuiltStates) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const SuperCoeffs ab = testing::RandomCoeffs(rng, true);
    const FormalState boson = build_initial(ab, Statistics::kBoson);
    const FormalState fermion = build_initial(ab, Statistics::kFermion);
    ASSERT_EQ(swap_slots(boson).terms(), boson.terms());
    ASSERT_EQ(swap_slots(fermion).terms(), (cplx(-1.0) * fermion).terms());
  }
}

TEST(OraclePropertyTest, NormIsNonNegativeOnUnrecoiledSector) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 500; ++trial) {
    const OverlapTables t =
        make_overlaps(testing::RandomParams(rng, trial % 2 == 0), testing::RandomRecoil(rng));
    const FormalState x = RandomState(rng, false);
    const cplx n = inner_product(x, x, t.bare, t.recoiled);
    ASSERT_NEAR(n.imag(), 0.0, 1e-12 * std::max(1.0, std::abs(n)));
    ASSERT_GE(n.real(), -1e-10);
  }
}

TEST(OraclePropertyTest, PipelineNeverRequestsCrossRecoilOverlap) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10000; ++trial) {
    const bool complex_values = trial % 2 == 0;
    const OverlapTables t = make_overlaps(testing::RandomParams(rng, complex_values),
                                          testing::RandomRecoil(rng));
    const SuperCoeffs ab = testing::RandomCoeffs(rng, complex_values);
    const Couplings k = testing::RandomCouplings(rng, complex_values);
    for (Statistics s : {Statistics::kDistinguishable, Statistics::kBoson, Statistics::kFermion}) {
      ASSERT_NO_THROW(evaluate(ab, t, k, s));
    }
  }
}

}  // namespace
}  // namespace twoatom::oracle
