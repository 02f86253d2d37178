#include "gme/mixed.hpp"
#include "gme/random.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>

using namespace gme;

namespace {

Witness w_witness() { return make_witness(w_state(3), kWStateLambda2, kWStateLambda2); }
Witness wt_witness() { return make_witness(w_tilde_state(), kWStateLambda2, kWStateLambda2); }

}  // namespace

TEST(Combine, SinglePartIsTheWitnessItself) {
    const WitnessCombination wc = combine({1.0}, {w_witness()});
    const DensityMatrix rho = rho_family_ww(0.37);
    EXPECT_NEAR(detector_combined(wc, rho), detector(w_witness(), rho), 1e-15);
}

TEST(Combine, Errors) {
    EXPECT_THROW(combine({0.5, 0.6}, {w_witness(), wt_witness()}), std::invalid_argument);
    EXPECT_THROW(combine({1.5, -0.5}, {w_witness(), wt_witness()}), std::invalid_argument);
    EXPECT_THROW(combine({0.5, 0.5}, {w_witness(), make_witness(bell(), 0.5, 0.5)}), std::invalid_argument);
    EXPECT_THROW(combine({1.0}, {}), std::invalid_argument);
}

TEST(DetectorCombined, FamilyValues) {
    for (double y : {0.0, 0.25, 0.5, 0.9, 1.0}) {
        const WitnessCombination wc = witness_family_ww(y);
        EXPECT_NEAR(detector_combined(wc, rho_family_ww(1.0)), y * (-5.0 / 9.0) + (1 - y) * (4.0 / 9.0), 1e-15);
        EXPECT_NEAR(detector_combined(wc, rho_family_ww(0.5)), -1.0 / 18.0, 1e-15);
        // Same value from the dense combined operator.
        EXPECT_NEAR(oracle::dense_trace(wc.materialize().as_general().matrix, rho_family_ww(0.5).matrix()),
                    -1.0 / 18.0, 1e-15);
    }
    EXPECT_NEAR(detector_combined(witness_family_ww(1.0), rho_family_ww(0.0)), 4.0 / 9.0, 1e-15);
    EXPECT_THROW(detector_combined(witness_family_ww(0.5), from_pure(bell())), std::invalid_argument);
}

TEST(RhoFamily, EndpointsAndSpectrum) {
    EXPECT_LT((rho_family_ww(1.0).matrix() - from_pure(w_state(3)).matrix()).norm(), 1e-15);
    EXPECT_LT((rho_family_ww(0.0).matrix() - from_pure(w_tilde_state()).matrix()).norm(), 1e-15);
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(rho_family_ww(0.5).matrix());
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(eig.eigenvalues()[i], 0.0, 1e-12);
    EXPECT_NEAR(eig.eigenvalues()[6], 0.5, 1e-12);
    EXPECT_NEAR(eig.eigenvalues()[7], 0.5, 1e-12);
    EXPECT_THROW(rho_family_ww(-0.1), std::invalid_argument);
    EXPECT_THROW(rho_family_ww(1.1), std::invalid_argument);
}

TEST(ScanGrid, CornersAndCentralRow) {
    const DetectorGrid g2 = scan_grid(2, 2);
    EXPECT_NEAR(g2.at(0, 0), -5.0 / 9.0, 1e-15);  // x=0, y=0
    EXPECT_NEAR(g2.at(0, 1), 4.0 / 9.0, 1e-15);   // x=0, y=1
    EXPECT_NEAR(g2.at(1, 0), 4.0 / 9.0, 1e-15);   // x=1, y=0
    EXPECT_NEAR(g2.at(1, 1), -5.0 / 9.0, 1e-15);  // x=1, y=1

    const DetectorGrid g = scan_grid(101, 101);
    ASSERT_EQ(g.values.size(), 101u * 101u);
    EXPECT_EQ(g.xs.front(), 0.0);
    EXPECT_EQ(g.xs.back(), 1.0);
    for (std::size_t j = 0; j < g.ys.size(); ++j) EXPECT_NEAR(g.at(50, j), -1.0 / 18.0, 1e-15);
    EXPECT_THROW(scan_grid(1, 5), std::invalid_argument);
    EXPECT_THROW(scan_grid(5, 1), std::invalid_argument);
}

TEST(ScanGrid, MatchesClosedFormValidatedByDenseTraces) {
    // Closed form first checked against dense Tr(W(y) rho(x)) at random points.
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 25; ++k) {
        const double x = u(gen), y = u(gen);
        const CMatrix w = y * oracle::dense_structured(4.0 / 9.0, w_state(3)) +
                          (1 - y) * oracle::dense_structured(4.0 / 9.0, w_tilde_state());
        const CMatrix rho = x * from_pure(w_state(3)).matrix() + (1 - x) * from_pure(w_tilde_state()).matrix();
        EXPECT_NEAR(oracle::dense_trace(w, rho), ww_detector_closed_form(x, y), 1e-12);
    }
    const DetectorGrid g = scan_grid(41, 23);
    for (std::size_t i = 0; i < g.xs.size(); ++i)
        for (std::size_t j = 0; j < g.ys.size(); ++j)
            EXPECT_NEAR(g.at(i, j), ww_detector_closed_form(g.xs[i], g.ys[j]), 1e-10);
}

TEST(ScanGrid, MinimumOverYSitsAtAnEndpoint) {
    const DetectorGrid g = scan_grid(33, 17);
    for (std::size_t i = 0; i < g.xs.size(); ++i) {
        double lowest = g.at(i, 0);
        for (std::size_t j = 0; j < g.ys.size(); ++j) lowest = std::min(lowest, g.at(i, j));
        EXPECT_NEAR(lowest, std::min(g.at(i, 0), g.at(i, g.ys.size() - 1)), 1e-12);
    }
}

TEST(CertifyEntangled, HighWeightOnW) {
    const Certification c = certify_entangled(rho_family_ww(0.9), witness_family_ww, 101);
    EXPECT_TRUE(c.certified);
    EXPECT_EQ(c.best_y, 1.0);
    EXPECT_NEAR(c.best_detector, -41.0 / 90.0, 1e-15);
}

TEST(CertifyEntangled, WholeFamilyIsCertified) {
    for (int i = 0; i <= 100; ++i) {
        const double x = i / 100.0;
        EXPECT_TRUE(certify_entangled(rho_family_ww(x), witness_family_ww, 101).certified) << x;
    }
}

TEST(CertifyEntangled, MaximallyMixedIsNotCertified) {
    const Certification c =
        certify_entangled(DensityMatrix::maximally_mixed(PartyShape::qubits(3)), witness_family_ww, 101);
    EXPECT_FALSE(c.certified);
    EXPECT_NEAR(c.best_detector, 4.0 / 9.0 - 1.0 / 8.0, 1e-15);
    EXPECT_THROW(certify_entangled(rho_family_ww(0.5), witness_family_ww, 1), std::invalid_argument);
}

TEST(DetectorCombined, BilinearInCoefficientsAndRho) {
    Rng rng = substream(32, 0);
    const PartyShape shape = PartyShape::qubits(2);
    std::vector<Witness> parts;
    for (int k = 0; k < 3; ++k) parts.push_back(make_witness(haar_random_state(shape, rng), 0.8, 0.8));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> y = {u(rng), u(rng), u(rng)};
        const double sy = y[0] + y[1] + y[2];
        for (double& v : y) v /= sy;
        const double a = u(rng);
        const double w[] = {a, 1 - a};
        const PureState s[] = {haar_random_state(shape, rng), haar_random_state(shape, rng)};
        const WitnessCombination wc = combine(y, parts);
        const double mixed = detector_combined(wc, from_mixture(w, s));
        const double split = a * detector_combined(wc, from_pure(s[0])) + (1 - a) * detector_combined(wc, from_pure(s[1]));
        EXPECT_NEAR(mixed, split, 1e-10);
        double by_part = 0.0;
        for (int k = 0; k < 3; ++k) by_part += y[static_cast<std::size_t>(k)] * detector(parts[static_cast<std::size_t>(k)], from_mixture(w, s));
        EXPECT_NEAR(mixed, by_part, 1e-10);
        EXPECT_NEAR(mixed, oracle::dense_trace(wc.materialize().as_general().matrix, from_mixture(w, s).matrix()), 1e-10);
    }
}

TEST(RoofUpperBound, Examples) {
    const double one[] = {1.0};
    const PureState w[] = {w_state(3)};
    EXPECT_NEAR(roof_upper_bound(one, w).bound, 5.0 / 9.0, 1e-9);

    const double half[] = {0.5, 0.5};
    const PureState ww[] = {w_state(3), w_tilde_state()};
    const DecompositionBound b = roof_upper_bound(half, ww);
    EXPECT_NEAR(b.bound, 5.0 / 9.0, 1e-9);
    EXPECT_NEAR(b.witness_form, b.bound, 1e-9);
    EXPECT_EQ(b.per_component_e.size(), 2u);

    Rng rng = substream(33, 0);
    const PureState prod[] = {expand(haar_random_product(PartyShape::qubits(3), rng))};
    EXPECT_NEAR(roof_upper_bound(one, prod).bound, 0.0, 1e-9);
}

TEST(RoofUpperBound, Errors) {
    const double bad[] = {0.5, 0.6};
    const PureState ww[] = {w_state(3), w_tilde_state()};
    EXPECT_THROW(roof_upper_bound(bad, ww), std::invalid_argument);
    const double half[] = {0.5, 0.5};
    const PureState mixed_shapes[] = {w_state(3), bell()};
    EXPECT_THROW(roof_upper_bound(half, mixed_shapes), std::invalid_argument);
}

TEST(RoofUpperBound, PureInputEqualsMeasure) {
    for (std::uint64_t s = 0; s < 5; ++s) {
        Rng rng = substream(34, s);
        const PureState psi[] = {haar_random_state(PartyShape({2, 2, 3}), rng)};
        const double one[] = {1.0};
        EXPECT_NEAR(roof_upper_bound(one, psi).bound, gme::gme(psi[0]), 1e-12);
    }
}
