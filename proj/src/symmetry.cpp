#include "scarlab/symmetry.hpp"

#include <cmath>
#include <map>
#include <numbers>

namespace scarlab {

word_t translate(word_t bits, int length) {
    const word_t mask = (word_t(1) << length) - 1;
    return ((bits << 1) | (bits >> (length - 1))) & mask;
}

word_t reflect(word_t bits, int length) {
    word_t r = 0;
    for (int i = 0; i < length; ++i)
        if (bits >> i & 1) r |= word_t(1) << (length - 1 - i);
    return r;
}

std::vector<word_t> translation_orbit(word_t bits, int length) {
    std::vector<word_t> orbit;
    word_t w = bits;
    do {
        orbit.push_back(w);
        w = translate(w, length);
    } while (w != bits);
    return orbit;
}

namespace {

word_t group_min(word_t bits, int length, bool with_reflection) {
    word_t m = bits;
    word_t w = bits;
    for (int t = 0; t < length; ++t) {
        w = translate(w, length);
        m = std::min(m, w);
    }
    if (with_reflection) {
        w = reflect(bits, length);
        for (int t = 0; t < length; ++t) {
            m = std::min(m, w);
            w = translate(w, length);
        }
    }
    return m;
}

int group_orbit_size(word_t bits, int length, bool with_reflection) {
    std::vector<word_t> seen;
    word_t w = bits;
    for (int t = 0; t < length; ++t) {
        if (std::find(seen.begin(), seen.end(), w) == seen.end()) seen.push_back(w);
        w = translate(w, length);
    }
    if (with_reflection) {
        w = reflect(bits, length);
        for (int t = 0; t < length; ++t) {
            if (std::find(seen.begin(), seen.end(), w) == seen.end()) seen.push_back(w);
            w = translate(w, length);
        }
    }
    return static_cast<int>(seen.size());
}

}  // namespace

SymmetrySector build_sector(const ConstrainedBasis& basis, int momentum,
                            std::optional<int> parity) {
    const int L = basis.length();
    if (basis.boundary() != Boundary::periodic)
        throw UnsupportedError("build_sector: momentum resolution needs a periodic chain");
    if (momentum < 0 || momentum >= L) throw InputError("build_sector: momentum out of range");
    if (parity && *parity != 1 && *parity != -1)
        throw InputError("build_sector: parity must be +1 or -1");
    if (parity && !(momentum == 0 || 2 * momentum == L))
        throw UnsupportedError(
            "build_sector: inversion parity is resolved only at k = 0 or k = L/2");

    const bool with_reflection = parity.has_value();
    const double phase_step = 2.0 * std::numbers::pi * momentum / L;

    SymmetrySector sector;
    sector.momentum = momentum;
    sector.parity = parity;

    std::vector<Eigen::Triplet<cplx>> cols;
    Eigen::Index col = 0;
    for (std::size_t n = 0; n < basis.size(); ++n) {
        const word_t w = basis.state(n);
        if (group_min(w, L, with_reflection) != w) continue;  // not the representative

        // Accumulate the symmetrized amplitude profile of this orbit.
        std::map<std::size_t, cplx> amp;
        word_t t_w = w;
        for (int t = 0; t < L; ++t) {
            const cplx ph(std::cos(phase_step * t), -std::sin(phase_step * t));
            amp[basis.index_of(t_w)] += ph;
            t_w = translate(t_w, L);
        }
        if (with_reflection) {
            word_t r_w = reflect(w, L);
            for (int t = 0; t < L; ++t) {
                const cplx ph(std::cos(phase_step * t), -std::sin(phase_step * t));
                amp[basis.index_of(r_w)] += double(*parity) * ph;
                r_w = translate(r_w, L);
            }
        }
        double norm2 = 0.0;
        for (const auto& [idx, a] : amp) norm2 += std::norm(a);
        if (norm2 < 1e-9) continue;  // orbit incompatible with this sector

        const double inv_norm = 1.0 / std::sqrt(norm2);
        for (const auto& [idx, a] : amp)
            if (std::abs(a) > 1e-14)
                cols.emplace_back(static_cast<Eigen::Index>(idx), col, a * inv_norm);
        sector.representatives.push_back(w);
        sector.orbit_sizes.push_back(group_orbit_size(w, L, with_reflection));
        ++col;
    }
    sector.basis_columns.resize(static_cast<Eigen::Index>(basis.size()), col);
    sector.basis_columns.setFromTriplets(cols.begin(), cols.end());
    sector.basis_columns.makeCompressed();
    return sector;
}

std::vector<SymmetrySector> all_momentum_sectors(const ConstrainedBasis& basis) {
    std::vector<SymmetrySector> sectors;
    sectors.reserve(basis.length());
    for (int k = 0; k < basis.length(); ++k) sectors.push_back(build_sector(basis, k));
    return sectors;
}

Eigen::MatrixXcd sector_matrix(const SparseOperator& op, const SymmetrySector& sector) {
    Eigen::SparseMatrix<cplx> h = op.mat.cast<cplx>();
    Eigen::SparseMatrix<cplx> hv = h * sector.basis_columns;
    Eigen::SparseMatrix<cplx> m = sector.basis_columns.adjoint() * hv;
    return Eigen::MatrixXcd(m);
}

MatrixXd sector_matrix_real(const SparseOperator& op, const SymmetrySector& sector) {
    Eigen::MatrixXcd m = sector_matrix(op, sector);
    if (m.imag().cwiseAbs().maxCoeff() > 1e-10)
        throw InputError("sector_matrix_real: sector matrix has complex entries");
    return m.real();
}

}  // namespace scarlab
