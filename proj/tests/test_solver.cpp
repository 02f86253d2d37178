#include "gme/random.hpp"
#include "gme/solver.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gme;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

ProductState basis(const PartyShape& shape, std::vector<std::size_t> idx) {
    return ProductState::basis(shape, idx);
}

PureState random_state(const std::vector<std::size_t>& dims, std::uint64_t seed, std::uint64_t stream) {
    Rng rng = substream(seed, stream);
    return haar_random_state(PartyShape(dims), rng);
}

}  // namespace

TEST(SolverConfig, Validation) {
    EXPECT_NO_THROW(SolverConfig{}.validate());
    EXPECT_THROW((SolverConfig{0.0, 10, 1, 0}.validate()), std::invalid_argument);
    EXPECT_THROW((SolverConfig{1e-12, 0, 1, 0}.validate()), std::invalid_argument);
    EXPECT_THROW((SolverConfig{1e-12, 10, 0, 0}.validate()), std::invalid_argument);
}

TEST(StationarityResidual, ProductStateIsExactFixedPoint) {
    Rng rng = substream(1, 0);
    const ProductState phi = haar_random_product(PartyShape({2, 3, 2}), rng);
    EXPECT_LT(stationarity_residual(expand(phi), phi), 1e-12);
}

TEST(StationarityResidual, GhzAtAllZeros) {
    // Every environment of |000> is (1/sqrt2)|0>, parallel to the factor.
    const ProductState zero = basis(PartyShape::qubits(3), {0, 0, 0});
    EXPECT_LT(stationarity_residual(ghz(3), zero), 1e-12);
    EXPECT_NEAR(std::abs(overlap(zero, ghz(3))), kInvSqrt2, 1e-15);
}

TEST(StationarityResidual, WAtAllZerosIsNotStationary) {
    // Each environment of |000> against |W> is (1/sqrt3)|1>, orthogonal to |0>.
    const ProductState zero = basis(PartyShape::qubits(3), {0, 0, 0});
    const double r = stationarity_residual(w_state(3), zero);
    EXPECT_GT(r, 0.1);
    EXPECT_NEAR(r, 1.0 / std::sqrt(3.0), 1e-15);
}

TEST(StationarityResidual, ShapeMismatch) {
    EXPECT_THROW(stationarity_residual(ghz(3), basis(PartyShape({2, 2}), {0, 0})), std::invalid_argument);
}

TEST(PowerIterate, ProductTargetReachesOne) {
    Rng rng = substream(2, 0);
    const PartyShape shape({3, 2, 4});
    const PureState target = expand(haar_random_product(shape, rng));
    const PowerIterationResult r = power_iterate(target, haar_random_product(shape, rng), SolverConfig{});
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.lambda, 1.0, 1e-12);
}

TEST(PowerIterate, GhzFromAllZerosStaysPut) {
    const ProductState zero = basis(PartyShape::qubits(3), {0, 0, 0});
    const PowerIterationResult r = power_iterate(ghz(3), zero, SolverConfig{});
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.iterations, 1);
    EXPECT_NEAR(r.lambda, kInvSqrt2, 1e-15);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_LT((r.closest.factor(i) - zero.factor(i)).norm(), 1e-15);
}

TEST(PowerIterate, WFromRandomStart) {
    for (std::uint64_t s = 0; s < 5; ++s) {
        Rng rng = substream(3, s);
        const PowerIterationResult r =
            power_iterate(w_state(3), haar_random_product(PartyShape::qubits(3), rng), SolverConfig{});
        EXPECT_TRUE(r.converged);
        EXPECT_NEAR(r.lambda * r.lambda, 4.0 / 9.0, 1e-9);
        EXPECT_LT(stationarity_residual(w_state(3), r.closest), 1e-11);
    }
}

TEST(PowerIterate, ReportsNonConvergence) {
    Rng rng = substream(4, 0);
    const PureState psi = random_state({3, 3, 3}, 4, 1);
    const PowerIterationResult r =
        power_iterate(psi, haar_random_product(psi.shape(), rng), SolverConfig{1e-12, 1, 1, 0});
    EXPECT_FALSE(r.converged);
    EXPECT_EQ(r.iterations, 1);
    EXPECT_EQ(r.sweep_overlaps.size(), 2u);
}

TEST(PowerIterate, MonotoneOverSweeps) {
    const std::vector<std::vector<std::size_t>> shapes = {{2, 2}, {2, 2, 2}, {2, 3, 4}};
    for (int trial = 0; trial < 100; ++trial) {
        const auto& dims = shapes[static_cast<std::size_t>(trial) % shapes.size()];
        const PureState psi = random_state(dims, 5, static_cast<std::uint64_t>(trial));
        Rng rng = substream(6, static_cast<std::uint64_t>(trial));
        const PowerIterationResult r = power_iterate(psi, haar_random_product(psi.shape(), rng), SolverConfig{});
        for (std::size_t t = 1; t < r.sweep_overlaps.size(); ++t) {
            ASSERT_GE(r.sweep_overlaps[t], r.sweep_overlaps[t - 1] - 1e-12) << "trial " << trial << " sweep " << t;
        }
        EXPECT_NEAR(r.lambda, std::abs(overlap(r.closest, psi)), 1e-15);
        if (r.converged) EXPECT_LT(stationarity_residual(psi, r.closest), 10 * SolverConfig{}.tol);
    }
}

TEST(EntanglementEigenvalue, ReferenceStates) {
    const struct {
        PureState psi;
        double lambda2;
    } cases[] = {{ghz(3), 0.5}, {dicke(3, 1), 4.0 / 9.0}, {dicke(3, 2), 4.0 / 9.0}, {dicke(4, 2), 3.0 / 8.0}};
    for (const auto& c : cases) {
        const GmeResult r = entanglement_eigenvalue(c.psi);
        EXPECT_TRUE(r.converged);
        EXPECT_NEAR(r.lambda_max * r.lambda_max, c.lambda2, 1e-9);
        EXPECT_NEAR(r.e_sin2, 1.0 - r.lambda_max * r.lambda_max, 1e-12);
        EXPECT_NEAR(std::abs(overlap(r.closest, c.psi)), r.lambda_max, 10 * SolverConfig{}.tol);
        EXPECT_EQ(r.starts, 33);
        EXPECT_GE(r.starts_agreeing, 1);
    }
}

TEST(EntanglementEigenvalue, GmeValues) {
    EXPECT_NEAR(gme::gme(ghz(3)), 0.5, 1e-9);
    EXPECT_NEAR(gme::gme(w_state(3)), 5.0 / 9.0, 1e-9);
    EXPECT_NEAR(gme::gme(dicke(4, 2)), 5.0 / 8.0, 1e-9);
}

TEST(EntanglementEigenvalue, ProductInputsHaveZeroMeasure) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        Rng rng = substream(8, s);
        const PureState p = expand(haar_random_product(PartyShape({2, 3, 2}), rng));
        const GmeResult r = entanglement_eigenvalue(p);
        EXPECT_LT(r.e_sin2, 1e-9);
        EXPECT_LE(r.lambda_max, 1.0);
    }
}

TEST(EntanglementEigenvalue, DeterministicForFixedSeed) {
    const PureState psi = random_state({2, 3, 3}, 9, 0);
    const GmeResult a = entanglement_eigenvalue(psi, SolverConfig{1e-12, 1000, 8, 42});
    const GmeResult b = entanglement_eigenvalue(psi, SolverConfig{1e-12, 1000, 8, 42});
    EXPECT_EQ(a.lambda_max, b.lambda_max);
    EXPECT_EQ(a.iterations, b.iterations);
}

TEST(EntanglementEigenvalue, LambdaIsCosineOfAngleToClosestProduct) {
    const PureState psi = random_state({2, 2, 3}, 10, 0);
    const GmeResult r = entanglement_eigenvalue(psi);
    const PureState closest = expand(r.closest);
    EXPECT_NEAR(closest.amplitudes().norm(), 1.0, 1e-12);
    EXPECT_NEAR(psi.amplitudes().norm(), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(inner(closest, psi)), r.lambda_max, 1e-12);
}

TEST(EntanglementEigenvalue, RangeOnRandomStates) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const GmeResult r = entanglement_eigenvalue(random_state({2, 2, 2}, 11, s));
        EXPECT_GT(r.lambda_max, 0.0);
        EXPECT_LE(r.lambda_max, 1.0);
        EXPECT_GE(r.e_sin2, 0.0);
        EXPECT_LT(r.e_sin2, 1.0);
    }
}

TEST(SchmidtLambda, Examples) {
    EXPECT_NEAR(schmidt_lambda(bell()), kInvSqrt2, 1e-15);
    EXPECT_NEAR(schmidt_lambda(expand(basis(PartyShape({2, 2}), {0, 1}))), 1.0, 1e-15);
    CVector amps = CVector::Zero(4);
    amps[0] = std::sqrt(0.9);
    amps[3] = std::sqrt(0.1);
    EXPECT_NEAR(schmidt_lambda(PureState(PartyShape({2, 2}), amps)), std::sqrt(0.9), 1e-15);
    EXPECT_THROW(schmidt_lambda(ghz(3)), std::invalid_argument);
}

TEST(SchmidtLambda, AgreesWithSolverOnRandomBipartiteStates) {
    std::mt19937_64 gen(12);
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto dims = oracle::random_dims(gen, 2, 4);
        const PureState psi = random_state(dims, 13, s);
        EXPECT_NEAR(entanglement_eigenvalue(psi).lambda_max, schmidt_lambda(psi), 1e-8) << s;
    }
}

TEST(BruteForceLambda, Examples) {
    EXPECT_NEAR(brute_force_lambda(ghz(3), 48), kInvSqrt2, 5e-3);
    EXPECT_NEAR(brute_force_lambda(w_state(3), 48), 2.0 / 3.0, 5e-3);
    Rng rng = substream(14, 0);
    EXPECT_NEAR(brute_force_lambda(expand(haar_random_product(PartyShape::qubits(3), rng)), 48), 1.0, 5e-3);
    EXPECT_NEAR(brute_force_lambda(bell(), 48), kInvSqrt2, 5e-3);
}

TEST(BruteForceLambda, Errors) {
    EXPECT_THROW(brute_force_lambda(ghz(4), 48), std::invalid_argument);
    EXPECT_THROW(brute_force_lambda(random_state({2, 3}, 1, 1), 48), std::invalid_argument);
    EXPECT_THROW(brute_force_lambda(ghz(3), 7), std::invalid_argument);
}

TEST(BruteForceLambda, LowerBoundsSolverAndRefines) {
    for (std::uint64_t s = 0; s < 5; ++s) {
        const PureState psi = random_state({2, 2, 2}, 15, s);
        const double solver = entanglement_eigenvalue(psi).lambda_max;
        const double coarse = brute_force_lambda(psi, 12);
        const double fine = brute_force_lambda(psi, 48);
        EXPECT_GE(solver, fine - 1e-9);
        EXPECT_LT(solver - fine, 5e-3);
        EXPECT_LE(solver - fine, solver - coarse + 1e-3);
    }
}

TEST(EntanglementEigenvalue, LocalUnitaryInvariance) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const PureState psi = random_state({2, 3, 2}, 16, s);
        Rng rng = substream(17, s);
        PureState rotated = psi;
        for (std::size_t i = 0; i < 3; ++i) rotated = apply_local(rotated, i, haar_unitary(psi.shape().dim(i), rng));
        EXPECT_NEAR(entanglement_eigenvalue(psi).lambda_max, entanglement_eigenvalue(rotated).lambda_max, 1e-9);
    }
}
