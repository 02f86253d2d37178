// solver.hpp
// Entanglement eigenvalue of a pure state: the largest overlap with any
// product state, found by alternating power iteration over the parties.

#pragma once

#include "gme/state.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace gme {

struct SolverConfig {
    double tol = 1e-12;          ///< threshold on overlap change; residual must reach 10*tol
    int max_iters = 1000;        ///< sweeps per start
    int restarts = 32;           ///< random starts in addition to the dominant-basis start
    std::uint64_t seed = 20041;  ///< fixed default for reproducibility

    /// Throws std::invalid_argument if any field is out of range.
    void validate() const;
};

/// Outcome of one power-iteration run from a single start.
struct PowerIterationResult {
    double lambda = 0.0;  ///< |<phi|psi>| at the returned product state
    ProductState closest;
    int iterations = 0;   ///< full sweeps performed
    bool converged = false;
    /// |<phi_t|psi>| at the start (entry 0) and after every sweep.
    std::vector<double> sweep_overlaps;
};

struct GmeResult {
    double lambda_max = 0.0;  ///< entanglement eigenvalue, in [0, 1]
    double e_sin2 = 1.0;      ///< 1 - lambda_max^2
    ProductState closest;
    int iterations = 0;       ///< sweeps used by the winning start
    bool converged = false;   ///< false only when no start converged
    int starts = 0;           ///< total starts tried
    int starts_agreeing = 0;  ///< starts whose lambda is within 1e-8 of the best
};

/// Largest deviation from the fixed-point equations over all parties:
/// max_i || v_i - <c_i, v_i> c_i || with v_i the environment of party i.
/// Vanishes exactly at stationary product states.
double stationarity_residual(const PureState& psi, const ProductState& phi);

/// Cyclic alternating update c_i <- v_i / ||v_i|| until the overlap and the
/// factors settle. Each single-party update maximizes the overlap over that
/// factor, so the recorded overlaps never decrease.
PowerIterationResult power_iterate(const PureState& psi, const ProductState& start,
                                   const SolverConfig& config);

/// Best result over the dominant-basis start plus `config.restarts`
/// Haar-random product starts.
GmeResult entanglement_eigenvalue(const PureState& psi, const SolverConfig& config = {});

/// Geometric measure 1 - lambda_max^2.
double gme(const PureState& psi, const SolverConfig& config = {});

/// Largest singular value of the d1 x d2 amplitude matrix. Two parties only.
double schmidt_lambda(const PureState& psi);

/// Grid maximization of |<phi|psi>| for systems of at most three qubits.
/// The first n-1 factors run over a Bloch-sphere grid
/// (cos(t/2), e^{ip} sin(t/2)) with `grid_points_per_angle` values of each
/// angle; the last factor is maximized in closed form (the norm of its
/// environment). The result is a lower bound on lambda_max.
double brute_force_lambda(const PureState& psi, int grid_points_per_angle);

}  // namespace gme
