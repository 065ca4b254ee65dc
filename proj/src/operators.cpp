#include "scarlab/operators.hpp"

#include <algorithm>
#include <set>

namespace scarlab {

Eigen::Matrix2d pauli_x() {
    Eigen::Matrix2d m;
    m << 0, 1, 1, 0;
    return m;
}

Eigen::Matrix2d pauli_z() {
    Eigen::Matrix2d m;
    m << -1, 0, 0, 1;
    return m;
}

Eigen::Matrix2d projector_empty() {
    Eigen::Matrix2d m;
    m << 1, 0, 0, 0;
    return m;
}

Eigen::Matrix2d number_op() {
    Eigen::Matrix2d m;
    m << 0, 0, 0, 1;
    return m;
}

MatrixXd local_product(const std::vector<Eigen::Matrix2d>& factors) {
    const std::size_t k = factors.size();
    const std::size_t d = std::size_t(1) << k;
    MatrixXd m(d, d);
    for (std::size_t p = 0; p < d; ++p)
        for (std::size_t j = 0; j < d; ++j) {
            double v = 1.0;
            for (std::size_t t = 0; t < k; ++t) v *= factors[t]((p >> t) & 1, (j >> t) & 1);
            m(p, j) = v;
        }
    return m;
}

SparseOperator assemble_local(const std::vector<LocalTerm>& terms,
                              const ConstrainedBasis& basis) {
    const int L = basis.length();
    const Eigen::Index dim = static_cast<Eigen::Index>(basis.size());
    std::vector<Triplet> ts;
    for (const auto& term : terms) {
        const std::size_t k = term.sites.size();
        if (k == 0 || k > 20) throw InputError("assemble_local: unsupported support size");
        std::set<int> uniq(term.sites.begin(), term.sites.end());
        if (uniq.size() != k) throw InputError("assemble_local: repeated site in support");
        for (int s : term.sites)
            if (s < 0 || s >= L) throw InputError("assemble_local: support site out of range");
        const Eigen::Index d = Eigen::Index(1) << k;
        if (term.matrix.rows() != d || term.matrix.cols() != d)
            throw InputError("assemble_local: matrix dimension does not match support size");

        for (std::size_t n = 0; n < basis.size(); ++n) {
            const word_t s = basis.state(n);
            std::size_t j = 0;
            for (std::size_t t = 0; t < k; ++t) j |= ((s >> term.sites[t]) & 1) << t;
            for (std::size_t p = 0; p < std::size_t(d); ++p) {
                const double v = term.matrix(p, j);
                if (v == 0.0) continue;
                word_t sp = s;
                for (std::size_t t = 0; t < k; ++t) {
                    const word_t bit = word_t(1) << term.sites[t];
                    if ((p >> t) & 1)
                        sp |= bit;
                    else
                        sp &= ~bit;
                }
                if (!basis.valid(sp)) continue;  // projected out
                ts.emplace_back(static_cast<Eigen::Index>(basis.index_of(sp)),
                                static_cast<Eigen::Index>(n), v);
            }
        }
    }
    SparseOperator op = make_operator(dim, ts, false);
    op.hermitian = is_hermitian(op);
    return op;
}

namespace {

// Both neighbors of `site` unoccupied, under the chain's boundary rule.
bool neighbors_empty(word_t s, int site, int L, Boundary bc) {
    if (bc == Boundary::open) {
        if (site > 0 && (s >> (site - 1) & 1)) return false;
        if (site + 1 < L && (s >> (site + 1) & 1)) return false;
        return true;
    }
    if (L == 1) return true;
    const int left = (site + L - 1) % L;
    const int right = (site + 1) % L;
    return !(s >> left & 1) && !(s >> right & 1);
}

}  // namespace

SparseOperator build_pxp(const ConstrainedBasis& basis) {
    const int L = basis.length();
    const Boundary bc = basis.boundary();
    std::vector<Triplet> ts;
    ts.reserve(basis.size() * L / 2);
    for (std::size_t n = 0; n < basis.size(); ++n) {
        const word_t s = basis.state(n);
        for (int i = 0; i < L; ++i) {
            if (!neighbors_empty(s, i, L, bc)) continue;
            const word_t sp = s ^ (word_t(1) << i);
            if (!basis.valid(sp)) continue;
            ts.emplace_back(static_cast<Eigen::Index>(basis.index_of(sp)),
                            static_cast<Eigen::Index>(n), 1.0);
        }
    }
    return make_operator(static_cast<Eigen::Index>(basis.size()), ts, true);
}

std::vector<LocalTerm> pxp_local_terms(int length, Boundary bc) {
    std::vector<LocalTerm> terms;
    const auto P = projector_empty();
    const auto X = pauli_x();
    if (length == 1) {
        terms.push_back({{0}, MatrixXd(X)});
        return terms;
    }
    if (bc == Boundary::open) {
        terms.push_back({{0, 1}, local_product({X, P})});
        for (int i = 1; i + 1 < length; ++i)
            terms.push_back({{i - 1, i, i + 1}, local_product({P, X, P})});
        terms.push_back({{length - 2, length - 1}, local_product({P, X})});
        return terms;
    }
    if (length == 2) {
        // Each site's two neighbors coincide.
        terms.push_back({{0, 1}, local_product({X, P})});
        terms.push_back({{0, 1}, local_product({P, X})});
        return terms;
    }
    for (int i = 0; i < length; ++i)
        terms.push_back({{(i + length - 1) % length, i, (i + 1) % length},
                         local_product({P, X, P})});
    return terms;
}

LadderOperators build_raising(const ConstrainedBasis& basis) {
    const int L = basis.length();
    const Boundary bc = basis.boundary();
    std::vector<Triplet> ts;
    for (std::size_t n = 0; n < basis.size(); ++n) {
        const word_t s = basis.state(n);
        for (int i = 0; i < L; ++i) {
            if (!neighbors_empty(s, i, L, bc)) continue;
            const bool occupied = s >> i & 1;
            const bool even = i % 2 == 0;
            // raise on the even sublattice, lower on the odd one
            if (even == occupied) continue;
            const word_t sp = s ^ (word_t(1) << i);
            if (!basis.valid(sp)) continue;
            ts.emplace_back(static_cast<Eigen::Index>(basis.index_of(sp)),
                            static_cast<Eigen::Index>(n), 1.0);
        }
    }
    LadderOperators ops;
    ops.plus = make_operator(static_cast<Eigen::Index>(basis.size()), ts, false);
    ops.plus.hermitian = false;
    ops.minus = adjoint(ops.plus);
    ops.minus.hermitian = false;
    ops.z = scale(0.5, commutator(ops.plus, ops.minus));
    ops.z.hermitian = true;
    return ops;
}

SparseOperator site_occupation(const ConstrainedBasis& basis, int site) {
    if (site < 0 || site >= basis.length()) throw InputError("site_occupation: site out of range");
    VectorXd d(basis.size());
    for (std::size_t n = 0; n < basis.size(); ++n) d[n] = (basis.state(n) >> site) & 1;
    return diagonal_operator(d);
}

SparseOperator total_occupation(const ConstrainedBasis& basis) {
    VectorXd d(basis.size());
    for (std::size_t n = 0; n < basis.size(); ++n)
        d[n] = double(__builtin_popcountll(basis.state(n)));
    return diagonal_operator(d);
}

SparseOperator sublattice_sign(const ConstrainedBasis& basis) {
    const int L = basis.length();
    VectorXd d(basis.size());
    for (std::size_t n = 0; n < basis.size(); ++n) {
        const int occ = __builtin_popcountll(basis.state(n));
        d[n] = ((L - occ) % 2 == 0) ? 1.0 : -1.0;
    }
    return diagonal_operator(d);
}

}  // namespace scarlab
