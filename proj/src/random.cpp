#include "gme/random.hpp"

#include <Eigen/QR>

namespace gme {

Rng substream(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

namespace {

Complex complex_normal(Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

}  // namespace

CVector haar_unit_vector(std::size_t d, Rng& rng) {
    CVector v(static_cast<Eigen::Index>(d));
    do {
        for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = complex_normal(rng);
    } while (v.norm() == 0.0);
    return v / v.norm();
}

PureState haar_random_state(const PartyShape& shape, Rng& rng) {
    return PureState(shape, haar_unit_vector(shape.total_dim(), rng));
}

ProductState haar_random_product(const PartyShape& shape, Rng& rng) {
    std::vector<CVector> factors;
    factors.reserve(shape.parties());
    for (std::size_t i = 0; i < shape.parties(); ++i) factors.push_back(haar_unit_vector(shape.dim(i), rng));
    return ProductState(shape, std::move(factors));
}

CMatrix haar_unitary(std::size_t d, Rng& rng) {
    const auto n = static_cast<Eigen::Index>(d);
    CMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) g(i, j) = complex_normal(rng);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex rjj = r(j, j);
        if (std::abs(rjj) > 0.0) q.col(j) *= rjj / std::abs(rjj);
    }
    return q;
}

}  // namespace gme
