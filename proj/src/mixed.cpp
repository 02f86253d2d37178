#include "gme/mixed.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gme {

namespace {

double grid_point(int i, int n) { return static_cast<double>(i) / static_cast<double>(n - 1); }

}  // namespace

WitnessCombination::WitnessCombination(std::vector<double> coefficients, std::vector<Witness> parts)
    : coefficients_(std::move(coefficients)), parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("combine: at least one witness required");
    if (coefficients_.size() != parts_.size()) {
        throw std::invalid_argument("combine: coefficient and witness counts differ");
    }
    coefficients_ = checked_probabilities(coefficients_, "combine");
    for (const auto& w : parts_) {
        if (w.shape() != parts_.front().shape()) throw std::invalid_argument("combine: shape mismatch");
    }
}

Witness WitnessCombination::materialize() const {
    CMatrix sum = coefficients_[0] * parts_[0].materialize();
    for (std::size_t k = 1; k < parts_.size(); ++k) sum += coefficients_[k] * parts_[k].materialize();
    return Witness::general(shape(), 0.5 * (sum + sum.adjoint()));
}

double detector_combined(const WitnessCombination& wc, const DensityMatrix& rho) {
    double total = 0.0;
    for (std::size_t k = 0; k < wc.parts().size(); ++k) {
        total += wc.coefficients()[k] * detector(wc.parts()[k], rho);
    }
    return total;
}

PureState w_tilde_state() { return dicke(3, 2); }

DensityMatrix rho_family_ww(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("rho_family_ww: x must lie in [0, 1]");
    const double weights[] = {x, 1.0 - x};
    const PureState states[] = {w_state(3), w_tilde_state()};
    return from_mixture(weights, states);
}

WitnessCombination witness_family_ww(double y) {
    if (!(y >= 0.0 && y <= 1.0)) throw std::invalid_argument("witness_family_ww: y must lie in [0, 1]");
    return combine({y, 1.0 - y}, {make_witness(w_state(3), kWStateLambda2, kWStateLambda2),
                                  make_witness(w_tilde_state(), kWStateLambda2, kWStateLambda2)});
}

double ww_detector_closed_form(double x, double y) {
    return y * (4.0 / 9.0 - x) + (1.0 - y) * (x - 5.0 / 9.0);
}

DetectorGrid scan_grid(int nx, int ny) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("scan_grid: nx and ny must both be >= 2");

    DetectorGrid grid;
    grid.xs.reserve(static_cast<std::size_t>(nx));
    grid.ys.reserve(static_cast<std::size_t>(ny));
    for (int i = 0; i < nx; ++i) grid.xs.push_back(grid_point(i, nx));
    for (int j = 0; j < ny; ++j) grid.ys.push_back(grid_point(j, ny));

    std::vector<WitnessCombination> family;
    family.reserve(grid.ys.size());
    for (double y : grid.ys) family.push_back(witness_family_ww(y));

    grid.values.reserve(grid.xs.size() * grid.ys.size());
    for (double x : grid.xs) {
        const DensityMatrix rho = rho_family_ww(x);
        for (const auto& wc : family) grid.values.push_back(detector_combined(wc, rho));
    }
    return grid;
}

Certification certify_entangled(const DensityMatrix& rho, const WitnessFamily& family, int ny) {
    if (ny < 2) throw std::invalid_argument("certify_entangled: ny must be >= 2");
    Certification best{false, 0.0, std::numeric_limits<double>::infinity()};
    for (int j = 0; j < ny; ++j) {
        const double y = grid_point(j, ny);
        const WitnessCombination wc = family(y);
        if (wc.shape() != rho.shape()) throw std::invalid_argument("certify_entangled: shape mismatch");
        const double d = detector_combined(wc, rho);
        if (d < best.best_detector) {
            best.best_detector = d;
            best.best_y = y;
        }
    }
    best.certified = best.best_detector < -kNegativityThreshold;
    return best;
}

DecompositionBound roof_upper_bound(std::span<const double> weights, std::span<const PureState> components,
                                    const SolverConfig& config) {
    if (weights.size() != components.size()) {
        throw std::invalid_argument("roof_upper_bound: weight and component counts differ");
    }
    const std::vector<double> p = checked_probabilities(weights, "roof_upper_bound");
    for (const auto& c : components) {
        if (c.shape() != components.front().shape()) {
            throw std::invalid_argument("roof_upper_bound: shape mismatch");
        }
    }

    DecompositionBound out;
    out.weights = p;
    out.components.assign(components.begin(), components.end());
    for (std::size_t i = 0; i < components.size(); ++i) {
        const PureState& psi = components[i];
        const GmeResult r = entanglement_eigenvalue(psi, config);
        const double lambda2 = r.lambda_max * r.lambda_max;
        double fidelity_term = 0.0;
        if (r.e_sin2 >= kWindowSlack) {
            fidelity_term = detector_pure(make_witness(psi, lambda2, lambda2), psi);
        } else {
            // Product component: lambda2 = 1 is outside the witness window,
            // so evaluate the family member's detector directly.
            fidelity_term = lambda2 - std::norm(inner(psi, psi));
        }
        out.per_component_e.push_back(r.e_sin2);
        out.bound += p[i] * r.e_sin2;
        out.witness_form -= p[i] * fidelity_term;
    }
    if (std::abs(out.bound - out.witness_form) > kWindowSlack) {
        throw std::logic_error("roof_upper_bound: measure and witness routes disagree");
    }
    out.bound = std::max(out.bound, 0.0);
    return out;
}

}  // namespace gme
