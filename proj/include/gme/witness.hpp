// witness.hpp
// Entanglement witnesses of the form lambda^2 * I - |psi><psi| and
// general Hermitian witnesses, with their detector values Tr(W rho).

#pragma once

#include "gme/solver.hpp"
#include "gme/state.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace gme {

/// lambda2 * I - |psi><psi|.
struct StructuredWitness {
    double lambda2;
    PureState psi;
};

/// Arbitrary Hermitian operator on the joint space.
struct GeneralWitness {
    CMatrix matrix;
};

class Witness {
public:
    /// Requires lambda2 in [0, 1). The validity window against a particular
    /// psi is enforced by make_witness, not here.
    static Witness structured(PureState psi, double lambda2);
    /// Requires a Hermitian (within 1e-12) D x D matrix, D <= 2^10.
    static Witness general(PartyShape shape, CMatrix matrix);

    const PartyShape& shape() const { return shape_; }
    bool is_structured() const { return std::holds_alternative<StructuredWitness>(form_); }
    const StructuredWitness& as_structured() const { return std::get<StructuredWitness>(form_); }
    const GeneralWitness& as_general() const { return std::get<GeneralWitness>(form_); }

    /// Dense D x D operator (D <= 2^10).
    CMatrix materialize() const;

private:
    Witness(PartyShape shape, std::variant<StructuredWitness, GeneralWitness> form)
        : shape_(std::move(shape)), form_(std::move(form)) {}

    PartyShape shape_;
    std::variant<StructuredWitness, GeneralWitness> form_;
};

/// The two defining witness conditions.
enum class WitnessCondition {
    kNonnegativeOnSeparable,  ///< (i) Tr(W sigma) >= 0 for separable sigma
    kNegativeOnTarget,        ///< (ii) Tr(W rho) < 0
};

const char* condition_label(WitnessCondition c);

/// Thrown when a requested lambda2 lies outside [Lambda_max^2, 1).
class WitnessWindowError : public std::domain_error {
public:
    WitnessWindowError(WitnessCondition violated, const std::string& what)
        : std::domain_error(what), violated_(violated) {}
    WitnessCondition violated() const { return violated_; }

private:
    WitnessCondition violated_;
};

/// Lower window slack absorbing solver error at the boundary lambda2 = Lambda_max^2.
inline constexpr double kWindowSlack = 1e-9;

/// Detector values must fall below -1e-12 to count as negative.
inline constexpr double kNegativityThreshold = 1e-12;

/// Structured witness for psi, accepted iff
/// lambda_max2 - 1e-9 <= lambda2 < 1.
Witness make_witness(const PureState& psi, double lambda2, double lambda_max2);

/// Lambda_max^2(psi) * I - |psi><psi|, the most negative detector on psi
/// within the lambda2 family. Throws std::runtime_error when no solver
/// start converged, and WitnessWindowError when psi is a product state
/// (the window is empty).
Witness optimal_witness(const PureState& psi, const SolverConfig& config = {});

/// Tr(W rho). The structured form evaluates lambda2 - <psi|rho|psi> without
/// building the identity.
double detector(const Witness& w, const DensityMatrix& rho);
/// Tr(W |phi><phi|).
double detector_pure(const Witness& w, const PureState& phi);
/// Tr(W |phi><phi|) for a product state; O(D) for the structured form.
double detector_product(const Witness& w, const ProductState& phi);

enum class Verdict { kConsistent, kViolatesSeparable, kFailsTarget };
const char* verdict_label(Verdict v);

struct VerifyReport {
    int samples = 0;
    double min_sampled_detector = 0.0;
    ProductState argmin;
    double target_detector = 0.0;
    Verdict verdict = Verdict::kConsistent;
};

/// Sampled check of condition (i) over Haar-random product states plus an
/// exact check of condition (ii) on `target`. Sampling can only falsify (i);
/// a "consistent" verdict is not a proof.
VerifyReport verify_conditions(const Witness& w, const DensityMatrix& target, int samples,
                               std::uint64_t seed);

struct DetectorIdentity {
    double lhs;  ///< Tr(W_opt |psi><psi|)
    double rhs;  ///< -E(psi)
};

DetectorIdentity min_detector_identity_check(const PureState& psi, const SolverConfig& config = {});

}  // namespace gme
