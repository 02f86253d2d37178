// state.hpp
// Multipartite pure states, product states and density matrices on a
// dense row-major amplitude tensor.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace gme {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Largest joint dimension accepted for state vectors.
inline constexpr std::size_t kMaxJointDim = std::size_t{1} << 20;
/// Largest joint dimension for anything stored as a dense D x D matrix.
inline constexpr std::size_t kMaxDenseOperatorDim = std::size_t{1} << 10;

/// Tolerance for construction-time invariants (norms, hermiticity, trace).
inline constexpr double kConstructionTol = 1e-12;
/// Tolerance for spectral checks (eigenvalue sign, idempotency).
inline constexpr double kSpectralTol = 1e-10;

/// Local dimensions (d1, ..., dn) of an n-party system.
class PartyShape {
public:
    explicit PartyShape(std::vector<std::size_t> dims);

    std::size_t parties() const { return dims_.size(); }
    std::size_t dim(std::size_t party) const { return dims_.at(party); }
    std::span<const std::size_t> dims() const { return dims_; }
    std::size_t total_dim() const { return total_; }

    /// Row-major flat offset of a multi-index; the last party varies fastest.
    std::size_t flat_index(std::span<const std::size_t> multi) const;
    std::vector<std::size_t> multi_index(std::size_t flat) const;

    /// Uniform n-qubit shape.
    static PartyShape qubits(std::size_t n);

    friend bool operator==(const PartyShape&, const PartyShape&) = default;

private:
    std::vector<std::size_t> dims_;
    std::size_t total_ = 1;
};

/// Normalized amplitude tensor chi_{p1...pn}.
class PureState {
public:
    /// Normalizes `amplitudes`; throws if the vector is zero or has the
    /// wrong length.
    PureState(PartyShape shape, CVector amplitudes);

    const PartyShape& shape() const { return shape_; }
    const CVector& amplitudes() const { return amps_; }
    Complex amplitude(std::span<const std::size_t> multi) const {
        return amps_[static_cast<Eigen::Index>(shape_.flat_index(multi))];
    }

private:
    PartyShape shape_;
    CVector amps_;
};

/// Tensor product of one unit vector per party. Each factor is normalized
/// and phase-fixed so that its first nonzero entry is real and nonnegative.
class ProductState {
public:
    ProductState(PartyShape shape, std::vector<CVector> factors);

    const PartyShape& shape() const { return shape_; }
    const std::vector<CVector>& factors() const { return factors_; }
    const CVector& factor(std::size_t party) const { return factors_.at(party); }

    /// Basis product |p1 p2 ... pn>.
    static ProductState basis(const PartyShape& shape, std::span<const std::size_t> multi);

private:
    PartyShape shape_;
    std::vector<CVector> factors_;
};

/// Hermitian, unit-trace, positive-semidefinite operator on the joint space.
class DensityMatrix {
public:
    /// Validates the matrix against the tolerances above; throws on violation.
    DensityMatrix(PartyShape shape, CMatrix matrix);

    const PartyShape& shape() const { return shape_; }
    const CMatrix& matrix() const { return matrix_; }

    static DensityMatrix maximally_mixed(const PartyShape& shape);

private:
    PartyShape shape_;
    CMatrix matrix_;
};

/// Rescales a vector to unit norm and rotates its phase so that the first
/// nonzero entry is real and nonnegative. Throws on a zero vector.
CVector gauge_fixed_unit(CVector v);

struct AmplitudeEntry {
    std::vector<std::size_t> index;
    Complex value;
};

/// Builds a normalized state from sparse amplitudes. Rejects an empty list,
/// out-of-range or duplicate indices, and an all-zero input.
PureState make_pure_state(const PartyShape& shape, std::span<const AmplitudeEntry> entries);

/// (|0...0> + |1...1>)/sqrt(2) on n >= 2 qubits.
PureState ghz(std::size_t n);
/// Equal superposition of the C(n,k) n-qubit basis states with k ones.
PureState dicke(std::size_t n, std::size_t k);
inline PureState w_state(std::size_t n) { return dicke(n, 1); }
/// Two-qubit (|00> + |11>)/sqrt(2).
PureState bell();

/// Contraction of psi with conj(c^(j)) over every party j != `party`.
/// Component p equals sum over the other indices of chi_{..p..} prod_j conj(c^(j)).
CVector environment(const PureState& psi, const ProductState& phi, std::size_t party);
/// Same contraction over a raw factor list (one vector per party, unit norm not required).
CVector environment(const PureState& psi, std::span<const CVector> factors, std::size_t party);

/// <phi|psi> = sum chi_{p1..pn} prod_i conj(c^(i)_{pi}).
Complex overlap(const ProductState& phi, const PureState& psi);
/// <a|b> for two pure states of the same shape.
Complex inner(const PureState& a, const PureState& b);

/// Full amplitude tensor of a product state.
PureState expand(const ProductState& phi);

/// Applies a d_i x d_i matrix to one party of psi.
PureState apply_local(const PureState& psi, std::size_t party, const CMatrix& op);

DensityMatrix from_pure(const PureState& psi);
/// sum_i w_i |psi_i><psi_i|. Weights must be nonnegative and sum to 1 within
/// 1e-10; they are renormalized before mixing.
DensityMatrix from_mixture(std::span<const double> weights, std::span<const PureState> states);

/// Shared validation for probability vectors; returns the renormalized weights.
std::vector<double> checked_probabilities(std::span<const double> weights, const char* what);

}  // namespace gme
