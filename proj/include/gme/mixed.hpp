// mixed.hpp
// Mixed-state side: nonnegative combinations of witnesses, the
// rho(x) = x|W><W| + (1-x)|W~><W~| family and its detector grid, and
// single-decomposition upper bounds on the convex-roof measure.

#pragma once

#include "gme/solver.hpp"
#include "gme/state.hpp"
#include "gme/witness.hpp"

#include <functional>
#include <span>
#include <vector>

namespace gme {

/// sum_k y_k W_k with y_k >= 0, sum y_k = 1 and a common shape.
class WitnessCombination {
public:
    WitnessCombination(std::vector<double> coefficients, std::vector<Witness> parts);

    const PartyShape& shape() const { return parts_.front().shape(); }
    const std::vector<double>& coefficients() const { return coefficients_; }
    const std::vector<Witness>& parts() const { return parts_; }

    /// The combined operator as a general witness (D <= 2^10).
    Witness materialize() const;

private:
    std::vector<double> coefficients_;
    std::vector<Witness> parts_;
};

inline WitnessCombination combine(std::vector<double> coefficients, std::vector<Witness> parts) {
    return WitnessCombination(std::move(coefficients), std::move(parts));
}

/// sum_k y_k Tr(W_k rho).
double detector_combined(const WitnessCombination& wc, const DensityMatrix& rho);

/// Lambda_max^2 shared by |W> and |W~> on three qubits.
inline constexpr double kWStateLambda2 = 4.0 / 9.0;

/// |W~> = (|110> + |101> + |011>)/sqrt(3).
PureState w_tilde_state();

/// x|W><W| + (1-x)|W~><W~| on three qubits, x in [0, 1].
DensityMatrix rho_family_ww(double x);

/// y W_W + (1-y) W_W~ built from the two optimal witnesses, y in [0, 1].
WitnessCombination witness_family_ww(double y);

/// Detector values d(x, y) = Tr(W(y) rho(x)) on a uniform grid over
/// [0,1] x [0,1] including both endpoints. Rows are x ascending, columns
/// y ascending.
struct DetectorGrid {
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<double> values;  ///< row-major, values[i * ys.size() + j] = d(xs[i], ys[j])

    double at(std::size_t ix, std::size_t iy) const { return values[ix * ys.size() + iy]; }
};

DetectorGrid scan_grid(int nx, int ny);

/// Closed form y(4/9 - x) + (1-y)(x - 5/9) of the grid values.
double ww_detector_closed_form(double x, double y);

struct Certification {
    bool certified = false;
    double best_y = 0.0;
    double best_detector = 0.0;
};

using WitnessFamily = std::function<WitnessCombination(double)>;

/// Scans y over a uniform ny-point grid on [0, 1]; rho is certified entangled
/// when the smallest detector is below -1e-12. Ties keep the smallest y.
Certification certify_entangled(const DensityMatrix& rho, const WitnessFamily& family, int ny);

/// One pure-state decomposition evaluated against the convex-roof objective.
struct DecompositionBound {
    std::vector<double> weights;
    std::vector<PureState> components;
    std::vector<double> per_component_e;
    double bound = 0.0;         ///< sum_i p_i E(psi_i)
    double witness_form = 0.0;  ///< -sum_i p_i Tr(W_psi_i |psi_i><psi_i|)
};

/// Upper bound on the mixed-state measure from one decomposition. Both the
/// measure route and the optimal-witness route are evaluated and must agree
/// within 1e-9 (std::logic_error otherwise).
DecompositionBound roof_upper_bound(std::span<const double> weights, std::span<const PureState> components,
                                    const SolverConfig& config = {});

}  // namespace gme
