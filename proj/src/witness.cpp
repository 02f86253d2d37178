#include "gme/witness.hpp"

#include "gme/random.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace gme {

namespace {

void require_same_shape(const PartyShape& a, const PartyShape& b, const char* where) {
    if (a != b) throw std::invalid_argument(std::string(where) + ": shape mismatch");
}

double real_part_checked(Complex z, const char* where) {
    if (std::abs(z.imag()) > kSpectralTol) {
        throw std::logic_error(std::string(where) + ": detector has imaginary residue " +
                               std::to_string(z.imag()));
    }
    return z.real();
}

// lambda2 - <psi|rho|psi>
double structured_detector(double lambda2, const PureState& psi, const DensityMatrix& rho) {
    const CVector& a = psi.amplitudes();
    return lambda2 - real_part_checked(a.dot(rho.matrix() * a), "detector");
}

}  // namespace

const char* condition_label(WitnessCondition c) {
    switch (c) {
        case WitnessCondition::kNonnegativeOnSeparable: return "condition (i)";
        case WitnessCondition::kNegativeOnTarget: return "condition (ii)";
    }
    return "?";
}

const char* verdict_label(Verdict v) {
    switch (v) {
        case Verdict::kConsistent: return "consistent";
        case Verdict::kViolatesSeparable: return "violates (i)";
        case Verdict::kFailsTarget: return "fails (ii)";
    }
    return "?";
}

Witness Witness::structured(PureState psi, double lambda2) {
    if (!(lambda2 >= 0.0 && lambda2 < 1.0)) {
        throw std::invalid_argument("Witness: lambda2 must lie in [0, 1), got " + std::to_string(lambda2));
    }
    PartyShape shape = psi.shape();
    return Witness(std::move(shape), StructuredWitness{lambda2, std::move(psi)});
}

Witness Witness::general(PartyShape shape, CMatrix matrix) {
    const auto dim = static_cast<Eigen::Index>(shape.total_dim());
    if (shape.total_dim() > kMaxDenseOperatorDim) {
        throw std::invalid_argument("Witness: joint dimension exceeds 2^10 for a dense operator");
    }
    if (matrix.rows() != dim || matrix.cols() != dim) {
        throw std::invalid_argument("Witness: matrix size does not match shape");
    }
    if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > kConstructionTol) {
        throw std::invalid_argument("Witness: matrix is not Hermitian");
    }
    return Witness(std::move(shape), GeneralWitness{std::move(matrix)});
}

CMatrix Witness::materialize() const {
    if (const auto* g = std::get_if<GeneralWitness>(&form_)) return g->matrix;
    if (shape_.total_dim() > kMaxDenseOperatorDim) {
        throw std::invalid_argument("Witness::materialize: joint dimension exceeds 2^10");
    }
    const auto& s = std::get<StructuredWitness>(form_);
    const auto dim = static_cast<Eigen::Index>(shape_.total_dim());
    const CVector& a = s.psi.amplitudes();
    return s.lambda2 * CMatrix::Identity(dim, dim) - a * a.adjoint();
}

Witness make_witness(const PureState& psi, double lambda2, double lambda_max2) {
    if (lambda2 < lambda_max2 - kWindowSlack) {
        std::ostringstream os;
        os.precision(12);
        os << "condition (i) violated: lambda2 = " << lambda2 << " is below Lambda_max^2 = " << lambda_max2
           << "; some product state would give a negative detector";
        throw WitnessWindowError(WitnessCondition::kNonnegativeOnSeparable, os.str());
    }
    if (!(lambda2 < 1.0)) {
        std::ostringstream os;
        os.precision(12);
        os << "condition (ii) violated: lambda2 = " << lambda2
           << " must be below 1 for a negative detector on the target";
        throw WitnessWindowError(WitnessCondition::kNegativeOnTarget, os.str());
    }
    return Witness::structured(psi, std::max(lambda2, 0.0));
}

Witness optimal_witness(const PureState& psi, const SolverConfig& config) {
    const GmeResult r = entanglement_eigenvalue(psi, config);
    if (!r.converged) throw std::runtime_error("optimal_witness: solver did not converge on any start");
    if (r.e_sin2 < kWindowSlack) {
        throw WitnessWindowError(WitnessCondition::kNegativeOnTarget,
                                 "condition (ii) violated: state is a product state, no witness exists");
    }
    const double lambda2 = r.lambda_max * r.lambda_max;
    return make_witness(psi, lambda2, lambda2);
}

double detector(const Witness& w, const DensityMatrix& rho) {
    require_same_shape(w.shape(), rho.shape(), "detector");
    if (w.is_structured()) {
        const auto& s = w.as_structured();
        return structured_detector(s.lambda2, s.psi, rho);
    }
    // Tr(W rho) = sum_ij W_ij rho_ji
    const Complex tr = w.as_general().matrix.cwiseProduct(rho.matrix().transpose()).sum();
    return real_part_checked(tr, "detector");
}

double detector_pure(const Witness& w, const PureState& phi) {
    require_same_shape(w.shape(), phi.shape(), "detector_pure");
    if (w.is_structured()) {
        const auto& s = w.as_structured();
        return s.lambda2 - std::norm(inner(s.psi, phi));
    }
    const CVector& a = phi.amplitudes();
    return real_part_checked(a.dot(w.as_general().matrix * a), "detector_pure");
}

double detector_product(const Witness& w, const ProductState& phi) {
    require_same_shape(w.shape(), phi.shape(), "detector_product");
    if (w.is_structured()) {
        const auto& s = w.as_structured();
        return s.lambda2 - std::norm(overlap(phi, s.psi));
    }
    return detector_pure(w, expand(phi));
}

VerifyReport verify_conditions(const Witness& w, const DensityMatrix& target, int samples,
                               std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("verify_conditions: samples must be >= 1");
    require_same_shape(w.shape(), target.shape(), "verify_conditions");

    Rng rng = substream(seed, 0);
    double min_value = std::numeric_limits<double>::infinity();
    std::optional<ProductState> argmin;
    for (int s = 0; s < samples; ++s) {
        ProductState phi = haar_random_product(w.shape(), rng);
        const double value = detector_product(w, phi);
        if (value < min_value) {
            min_value = value;
            argmin = std::move(phi);
        }
    }

    const double target_value = detector(w, target);
    Verdict verdict = Verdict::kConsistent;
    if (min_value < -kWindowSlack) {
        verdict = Verdict::kViolatesSeparable;
    } else if (!(target_value < -kNegativityThreshold)) {
        verdict = Verdict::kFailsTarget;
    }
    return VerifyReport{samples, min_value, std::move(*argmin), target_value, verdict};
}

DetectorIdentity min_detector_identity_check(const PureState& psi, const SolverConfig& config) {
    const GmeResult r = entanglement_eigenvalue(psi, config);
    if (!r.converged) {
        throw std::runtime_error("min_detector_identity_check: solver did not converge on any start");
    }
    const double lambda2 = r.lambda_max * r.lambda_max;
    // Evaluated on the family member directly so product states (lambda2 = 1,
    // outside the witness window) still report (0, 0).
    const double lhs = psi.shape().total_dim() <= kMaxDenseOperatorDim
                           ? structured_detector(lambda2, psi, from_pure(psi))
                           : lambda2 - std::norm(inner(psi, psi));
    return DetectorIdentity{lhs, -r.e_sin2};
}

}  // namespace gme
