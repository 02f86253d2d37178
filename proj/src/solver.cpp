#include "gme/solver.hpp"

#include "gme/random.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gme {

namespace {

// Environments below this norm carry no direction; the factor is kept.
constexpr double kNullEnvironment = 1e-300;
constexpr double kAgreementTol = 1e-8;

void require_same_shape(const PureState& psi, const ProductState& phi, const char* where) {
    if (psi.shape() != phi.shape()) throw std::invalid_argument(std::string(where) + ": shape mismatch");
}

double residual_of(const PureState& psi, std::span<const CVector> factors) {
    double worst = 0.0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const CVector v = environment(psi, factors, i);
        const Complex lambda = factors[i].dot(v);
        worst = std::max(worst, (v - lambda * factors[i]).norm());
    }
    return worst;
}

// min over theta of || a - e^{i theta} b || for unit vectors a, b.
double phase_free_distance(const CVector& a, const CVector& b) {
    const Complex ip = b.dot(a);
    const Complex phase = std::abs(ip) > 0.0 ? ip / std::abs(ip) : Complex{1.0};
    return (a - phase * b).norm();
}

ProductState dominant_basis_start(const PureState& psi) {
    Eigen::Index best = 0;
    psi.amplitudes().cwiseAbs2().maxCoeff(&best);
    const auto multi = psi.shape().multi_index(static_cast<std::size_t>(best));
    return ProductState::basis(psi.shape(), multi);
}

}  // namespace

void SolverConfig::validate() const {
    if (!(tol > 0.0) || !std::isfinite(tol)) throw std::invalid_argument("SolverConfig: tol must be positive");
    if (max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
    if (restarts < 1) throw std::invalid_argument("SolverConfig: restarts must be >= 1");
}

double stationarity_residual(const PureState& psi, const ProductState& phi) {
    require_same_shape(psi, phi, "stationarity_residual");
    return residual_of(psi, phi.factors());
}

PowerIterationResult power_iterate(const PureState& psi, const ProductState& start,
                                   const SolverConfig& config) {
    config.validate();
    require_same_shape(psi, start, "power_iterate");

    const std::size_t n = psi.shape().parties();
    const double factor_tol = std::sqrt(config.tol);
    const double residual_tol = 10.0 * config.tol;

    std::vector<CVector> factors = start.factors();
    std::vector<double> history{std::abs(overlap(start, psi))};
    bool converged = false;
    int sweeps = 0;

    while (sweeps < config.max_iters) {
        ++sweeps;
        double change = 0.0;
        double lambda = history.back();
        for (std::size_t i = 0; i < n; ++i) {
            const CVector v = environment(psi, factors, i);
            const double norm = v.norm();
            if (norm <= kNullEnvironment) continue;
            CVector next = gauge_fixed_unit(v);
            change = std::max(change, phase_free_distance(next, factors[i]));
            factors[i] = std::move(next);
            lambda = norm;
        }
        const double delta = std::abs(lambda - history.back());
        history.push_back(lambda);
        if (delta < config.tol && change < factor_tol && residual_of(psi, factors) < residual_tol) {
            converged = true;
            break;
        }
    }

    ProductState closest(psi.shape(), std::move(factors));
    const double lambda = std::min(1.0, std::abs(overlap(closest, psi)));
    return PowerIterationResult{lambda, std::move(closest), sweeps, converged, std::move(history)};
}

GmeResult entanglement_eigenvalue(const PureState& psi, const SolverConfig& config) {
    config.validate();

    std::vector<PowerIterationResult> runs;
    runs.reserve(static_cast<std::size_t>(config.restarts) + 1);
    runs.push_back(power_iterate(psi, dominant_basis_start(psi), config));
    for (int k = 0; k < config.restarts; ++k) {
        Rng rng = substream(config.seed, static_cast<std::uint64_t>(k));
        runs.push_back(power_iterate(psi, haar_random_product(psi.shape(), rng), config));
    }

    double best_lambda = 0.0;
    for (const auto& r : runs) best_lambda = std::max(best_lambda, r.lambda);

    // Among starts tied with the best value, prefer one that converged.
    const PowerIterationResult* winner = nullptr;
    int agreeing = 0;
    for (const auto& r : runs) {
        if (best_lambda - r.lambda >= kAgreementTol) continue;
        ++agreeing;
        if (winner == nullptr || (!winner->converged && r.converged) ||
            (winner->converged == r.converged && r.lambda > winner->lambda)) {
            winner = &r;
        }
    }

    const double lambda = winner->lambda;
    return GmeResult{lambda,
                     1.0 - lambda * lambda,
                     winner->closest,
                     winner->iterations,
                     winner->converged,
                     static_cast<int>(runs.size()),
                     agreeing};
}

double gme(const PureState& psi, const SolverConfig& config) {
    return entanglement_eigenvalue(psi, config).e_sin2;
}

double schmidt_lambda(const PureState& psi) {
    const PartyShape& shape = psi.shape();
    if (shape.parties() != 2) {
        throw std::invalid_argument("schmidt_lambda: requires exactly two parties, got " +
                                    std::to_string(shape.parties()));
    }
    const auto rows = static_cast<Eigen::Index>(shape.dim(0));
    const auto cols = static_cast<Eigen::Index>(shape.dim(1));
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = psi.amplitudes()[r * cols + c];
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()[0];
}

double brute_force_lambda(const PureState& psi, int grid_points_per_angle) {
    const PartyShape& shape = psi.shape();
    const std::size_t n = shape.parties();
    if (n > 3) throw std::invalid_argument("brute_force_lambda: at most three parties supported");
    for (std::size_t i = 0; i < n; ++i) {
        if (shape.dim(i) != 2) throw std::invalid_argument("brute_force_lambda: all parties must be qubits");
    }
    if (grid_points_per_angle < 8) {
        throw std::invalid_argument("brute_force_lambda: need at least 8 grid points per angle");
    }
    if (n == 1) return psi.amplitudes().norm();

    const int g = grid_points_per_angle;
    std::vector<Eigen::Vector2cd> grid;
    grid.reserve(static_cast<std::size_t>(g * g));
    for (int a = 0; a < g; ++a) {
        const double theta = std::numbers::pi * a / (g - 1);
        for (int b = 0; b < g; ++b) {
            const double phi = 2.0 * std::numbers::pi * b / g;
            grid.emplace_back(std::cos(theta / 2), std::polar(std::sin(theta / 2), phi));
        }
    }

    const CVector& chi = psi.amplitudes();
    double best = 0.0;
    if (n == 2) {
        for (const auto& c0 : grid) {
            const Eigen::Vector2cd v(std::conj(c0[0]) * chi[0] + std::conj(c0[1]) * chi[2],
                                     std::conj(c0[0]) * chi[1] + std::conj(c0[1]) * chi[3]);
            best = std::max(best, v.norm());
        }
        return best;
    }
    for (const auto& c0 : grid) {
        // m(p1, p2) = sum_p0 conj(c0_p0) chi(p0, p1, p2)
        Eigen::Vector4cd m;
        for (int k = 0; k < 4; ++k) m[k] = std::conj(c0[0]) * chi[k] + std::conj(c0[1]) * chi[4 + k];
        for (const auto& c1 : grid) {
            const Eigen::Vector2cd v(std::conj(c1[0]) * m[0] + std::conj(c1[1]) * m[2],
                                     std::conj(c1[0]) * m[1] + std::conj(c1[1]) * m[3]);
            best = std::max(best, v.norm());
        }
    }
    return best;
}

}  // namespace gme
