#include "gme/state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace gme {

namespace {

std::string shape_string(const PartyShape& shape) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < shape.parties(); ++i) os << (i ? "," : "") << shape.dim(i);
    os << ')';
    return os.str();
}

void require_same_shape(const PartyShape& a, const PartyShape& b, const char* where) {
    if (a != b) {
        throw std::invalid_argument(std::string(where) + ": shape mismatch " + shape_string(a) +
                                    " vs " + shape_string(b));
    }
}

// Contracts axis `axis` of a row-major tensor with conj(v); the axis is removed.
CVector contract_axis(const CVector& t, std::vector<std::size_t>& dims, std::size_t axis,
                      const CVector& v) {
    std::size_t left = 1;
    for (std::size_t j = 0; j < axis; ++j) left *= dims[j];
    std::size_t right = 1;
    for (std::size_t j = axis + 1; j < dims.size(); ++j) right *= dims[j];
    const std::size_t d = dims[axis];

    CVector out = CVector::Zero(static_cast<Eigen::Index>(left * right));
    for (std::size_t l = 0; l < left; ++l) {
        for (std::size_t p = 0; p < d; ++p) {
            const Complex w = std::conj(v[static_cast<Eigen::Index>(p)]);
            if (w == Complex{}) continue;
            const Complex* src = t.data() + (l * d + p) * right;
            Complex* dst = out.data() + l * right;
            for (std::size_t r = 0; r < right; ++r) dst[r] += w * src[r];
        }
    }
    dims.erase(dims.begin() + static_cast<std::ptrdiff_t>(axis));
    return out;
}

}  // namespace

// ---------------------------------------------------------------- PartyShape

PartyShape::PartyShape(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw std::invalid_argument("PartyShape: at least one party required");
    for (std::size_t d : dims_) {
        if (d == 0) throw std::invalid_argument("PartyShape: local dimension must be positive");
        if (total_ > kMaxJointDim / d) {
            throw std::invalid_argument("PartyShape: joint dimension exceeds 2^20");
        }
        total_ *= d;
    }
}

std::size_t PartyShape::flat_index(std::span<const std::size_t> multi) const {
    if (multi.size() != dims_.size()) {
        throw std::out_of_range("multi-index has " + std::to_string(multi.size()) +
                                " entries, shape has " + std::to_string(dims_.size()) + " parties");
    }
    std::size_t flat = 0;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (multi[i] >= dims_[i]) {
            throw std::out_of_range("index " + std::to_string(multi[i]) + " out of range for party " +
                                    std::to_string(i) + " of dimension " + std::to_string(dims_[i]));
        }
        flat = flat * dims_[i] + multi[i];
    }
    return flat;
}

std::vector<std::size_t> PartyShape::multi_index(std::size_t flat) const {
    std::vector<std::size_t> multi(dims_.size());
    for (std::size_t i = dims_.size(); i-- > 0;) {
        multi[i] = flat % dims_[i];
        flat /= dims_[i];
    }
    return multi;
}

PartyShape PartyShape::qubits(std::size_t n) { return PartyShape(std::vector<std::size_t>(n, 2)); }

// ----------------------------------------------------------------- PureState

PureState::PureState(PartyShape shape, CVector amplitudes)
    : shape_(std::move(shape)), amps_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amps_.size()) != shape_.total_dim()) {
        throw std::invalid_argument("PureState: amplitude count " + std::to_string(amps_.size()) +
                                    " does not match joint dimension " +
                                    std::to_string(shape_.total_dim()));
    }
    const double norm = amps_.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw std::invalid_argument("PureState: amplitudes must be finite and not all zero");
    }
    amps_ /= norm;
}

// -------------------------------------------------------------- ProductState

CVector gauge_fixed_unit(CVector v) {
    const double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw std::invalid_argument("product factor must be finite and nonzero");
    }
    v /= norm;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v[i] != Complex{}) {
            v *= std::conj(v[i]) / std::abs(v[i]);
            v[i] = std::abs(v[i]);
            break;
        }
    }
    return v;
}

ProductState::ProductState(PartyShape shape, std::vector<CVector> factors)
    : shape_(std::move(shape)), factors_(std::move(factors)) {
    if (factors_.size() != shape_.parties()) {
        throw std::invalid_argument("ProductState: expected " + std::to_string(shape_.parties()) +
                                    " factors, got " + std::to_string(factors_.size()));
    }
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (static_cast<std::size_t>(factors_[i].size()) != shape_.dim(i)) {
            throw std::invalid_argument("ProductState: factor " + std::to_string(i) +
                                        " has wrong length");
        }
        factors_[i] = gauge_fixed_unit(std::move(factors_[i]));
    }
}

ProductState ProductState::basis(const PartyShape& shape, std::span<const std::size_t> multi) {
    shape.flat_index(multi);  // bounds check
    std::vector<CVector> factors;
    factors.reserve(shape.parties());
    for (std::size_t i = 0; i < shape.parties(); ++i) {
        CVector c = CVector::Zero(static_cast<Eigen::Index>(shape.dim(i)));
        c[static_cast<Eigen::Index>(multi[i])] = 1.0;
        factors.push_back(std::move(c));
    }
    return ProductState(shape, std::move(factors));
}

// ------------------------------------------------------------- DensityMatrix

DensityMatrix::DensityMatrix(PartyShape shape, CMatrix matrix)
    : shape_(std::move(shape)), matrix_(std::move(matrix)) {
    const auto dim = static_cast<Eigen::Index>(shape_.total_dim());
    if (shape_.total_dim() > kMaxDenseOperatorDim) {
        throw std::invalid_argument("DensityMatrix: joint dimension exceeds 2^10");
    }
    if (matrix_.rows() != dim || matrix_.cols() != dim) {
        throw std::invalid_argument("DensityMatrix: matrix size does not match shape");
    }
    const double herm = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kConstructionTol) {
        throw std::invalid_argument("DensityMatrix: not Hermitian (deviation " +
                                    std::to_string(herm) + ")");
    }
    const Complex tr = matrix_.trace();
    if (std::abs(tr - Complex{1.0}) > kConstructionTol) {
        throw std::invalid_argument("DensityMatrix: trace differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(matrix_, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -kSpectralTol) {
        throw std::invalid_argument("DensityMatrix: not positive semidefinite");
    }
}

DensityMatrix DensityMatrix::maximally_mixed(const PartyShape& shape) {
    const auto dim = static_cast<Eigen::Index>(shape.total_dim());
    return DensityMatrix(shape, CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

// ---------------------------------------------------------------- factories

PureState make_pure_state(const PartyShape& shape, std::span<const AmplitudeEntry> entries) {
    if (entries.empty()) throw std::invalid_argument("make_pure_state: empty entry list");
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(shape.total_dim()));
    std::set<std::size_t> seen;
    for (const auto& e : entries) {
        const std::size_t flat = shape.flat_index(e.index);
        if (!seen.insert(flat).second) {
            throw std::invalid_argument("make_pure_state: duplicate multi-index");
        }
        amps[static_cast<Eigen::Index>(flat)] = e.value;
    }
    return PureState(shape, std::move(amps));
}

PureState ghz(std::size_t n) {
    if (n < 2) throw std::invalid_argument("ghz: need at least 2 qubits");
    const PartyShape shape = PartyShape::qubits(n);
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(shape.total_dim()));
    amps[0] = 1.0;
    amps[amps.size() - 1] = 1.0;
    return PureState(shape, std::move(amps));
}

PureState dicke(std::size_t n, std::size_t k) {
    if (n < 1) throw std::invalid_argument("dicke: need at least 1 qubit");
    if (k > n) throw std::invalid_argument("dicke: excitation count k must satisfy 0 <= k <= n");
    const PartyShape shape = PartyShape::qubits(n);
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(shape.total_dim()));
    for (std::size_t b = 0; b < shape.total_dim(); ++b) {
        if (static_cast<std::size_t>(std::popcount(b)) == k) amps[static_cast<Eigen::Index>(b)] = 1.0;
    }
    return PureState(shape, std::move(amps));
}

PureState bell() { return ghz(2); }

// -------------------------------------------------------------- contractions

CVector environment(const PureState& psi, std::span<const CVector> factors, std::size_t party) {
    const std::size_t n = psi.shape().parties();
    if (factors.size() != n) throw std::invalid_argument("environment: factor count mismatch");
    if (party >= n) throw std::out_of_range("environment: party out of range");

    std::vector<std::size_t> dims(psi.shape().dims().begin(), psi.shape().dims().end());
    CVector t = psi.amplitudes();
    // Peel parties from the right so axis positions to the left stay fixed.
    for (std::size_t j = n; j-- > 0;) {
        if (j == party) continue;
        if (static_cast<std::size_t>(factors[j].size()) != dims[j]) {
            throw std::invalid_argument("environment: factor length mismatch");
        }
        t = contract_axis(t, dims, j, factors[j]);
    }
    return t;
}

CVector environment(const PureState& psi, const ProductState& phi, std::size_t party) {
    require_same_shape(phi.shape(), psi.shape(), "environment");
    return environment(psi, std::span<const CVector>(phi.factors()), party);
}

Complex overlap(const ProductState& phi, const PureState& psi) {
    require_same_shape(phi.shape(), psi.shape(), "overlap");
    const CVector env = environment(psi, phi, 0);
    return phi.factor(0).dot(env);  // dot conjugates the first argument
}

Complex inner(const PureState& a, const PureState& b) {
    require_same_shape(a.shape(), b.shape(), "inner");
    return a.amplitudes().dot(b.amplitudes());
}

PureState expand(const ProductState& phi) {
    CVector t = CVector::Ones(1);
    for (const auto& c : phi.factors()) {
        CVector next(t.size() * c.size());
        for (Eigen::Index a = 0; a < t.size(); ++a) next.segment(a * c.size(), c.size()) = t[a] * c;
        t = std::move(next);
    }
    return PureState(phi.shape(), std::move(t));
}

PureState apply_local(const PureState& psi, std::size_t party, const CMatrix& op) {
    const PartyShape& shape = psi.shape();
    if (party >= shape.parties()) throw std::out_of_range("apply_local: party out of range");
    const auto d = static_cast<Eigen::Index>(shape.dim(party));
    if (op.rows() != d || op.cols() != d) {
        throw std::invalid_argument("apply_local: operator size does not match local dimension");
    }
    std::size_t left = 1;
    for (std::size_t j = 0; j < party; ++j) left *= shape.dim(j);
    const std::size_t right = shape.total_dim() / (left * shape.dim(party));

    CVector out = CVector::Zero(psi.amplitudes().size());
    const CVector& in = psi.amplitudes();
    for (std::size_t l = 0; l < left; ++l) {
        for (Eigen::Index q = 0; q < d; ++q) {
            for (Eigen::Index p = 0; p < d; ++p) {
                const Complex w = op(q, p);
                if (w == Complex{}) continue;
                const std::size_t src = (l * static_cast<std::size_t>(d) + static_cast<std::size_t>(p)) * right;
                const std::size_t dst = (l * static_cast<std::size_t>(d) + static_cast<std::size_t>(q)) * right;
                for (std::size_t r = 0; r < right; ++r) out[static_cast<Eigen::Index>(dst + r)] += w * in[static_cast<Eigen::Index>(src + r)];
            }
        }
    }
    return PureState(shape, std::move(out));
}

// ------------------------------------------------------------ density matrix

std::vector<double> checked_probabilities(std::span<const double> weights, const char* what) {
    if (weights.empty()) throw std::invalid_argument(std::string(what) + ": empty weight list");
    double sum = 0.0;
    for (double w : weights) {
        if (!std::isfinite(w)) throw std::invalid_argument(std::string(what) + ": non-finite weight");
        if (w < 0.0) throw std::invalid_argument(std::string(what) + ": negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > kSpectralTol) {
        throw std::invalid_argument(std::string(what) + ": weights sum to " + std::to_string(sum) +
                                    ", expected 1");
    }
    std::vector<double> out(weights.begin(), weights.end());
    for (double& w : out) w /= sum;
    return out;
}

DensityMatrix from_pure(const PureState& psi) {
    const CVector& a = psi.amplitudes();
    return DensityMatrix(psi.shape(), a * a.adjoint());
}

DensityMatrix from_mixture(std::span<const double> weights, std::span<const PureState> states) {
    if (weights.size() != states.size()) {
        throw std::invalid_argument("from_mixture: weight and state counts differ");
    }
    const std::vector<double> p = checked_probabilities(weights, "from_mixture");
    const PartyShape& shape = states.front().shape();
    if (shape.total_dim() > kMaxDenseOperatorDim) {
        throw std::invalid_argument("from_mixture: joint dimension exceeds 2^10");
    }
    const auto dim = static_cast<Eigen::Index>(shape.total_dim());
    CMatrix rho = CMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < states.size(); ++i) {
        require_same_shape(shape, states[i].shape(), "from_mixture");
        const CVector& a = states[i].amplitudes();
        rho.noalias() += p[i] * (a * a.adjoint());
    }
    CMatrix herm = 0.5 * (rho + rho.adjoint());
    return DensityMatrix(shape, std::move(herm));
}

}  // namespace gme
