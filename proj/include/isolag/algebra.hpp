#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "rational.hpp"

namespace isolag {

using MatrixXcd = Eigen::MatrixXcd;

enum class BlockKind { so, su, sp, u1 };

// One simple (or abelian) factor, living on a diagonal block of the ambient
// real matrices.
//
// killing_scale: B(X,Y) = killing_scale * tr(X_b Y_b) with the trace of the
// real realization. For su(n) the familiar 2n*tr over C becomes n*tr here
// because tr_R = 2 Re tr_C.
//
// metric_scale: <X,Y> = -metric_scale * tr(X_b Y_b). Equal to killing_scale
// on simple factors; the circle factor carries its own scale (1/2, so that
// the generator i has unit length).
struct Block {
    BlockKind kind;
    int n;        // so(n), su(n), sp(n); 1 for the circle
    int offset;
    int size;
    Rational killing_scale;
    Rational metric_scale;
};

inline std::string block_label(const Block& b)
{
    switch (b.kind) {
    case BlockKind::so: return "so(" + std::to_string(b.n) + ")";
    case BlockKind::su: return "su(" + std::to_string(b.n) + ")";
    case BlockKind::sp: return "sp(" + std::to_string(b.n) + ")";
    case BlockKind::u1: return "u(1)";
    }
    return "?";
}

struct AlgebraElement {
    VectorXd coords;
    MatrixXd matrix;
};

class MatrixLieAlgebra {
public:
    std::string label;
    int ambient_dim = 0;
    std::vector<Block> blocks;
    std::vector<MatrixXd> basis;

    MatrixLieAlgebra() = default;
    MatrixLieAlgebra(std::string lbl, int dim, std::vector<Block> blks, std::vector<MatrixXd> b)
        : label(std::move(lbl)), ambient_dim(dim), blocks(std::move(blks)), basis(std::move(b))
    {
        finalize();
    }

    int dim() const { return static_cast<int>(basis.size()); }

    // Frobenius least-squares coordinates of m over the basis.
    VectorXd coords_of(const MatrixXd& m) const
    {
        check_shape(m);
        VectorXd rhs(dim());
        for (int i = 0; i < dim(); ++i)
            rhs(i) = basis[i].cwiseProduct(m).sum();
        return gram_.solve(rhs);
    }

    MatrixXd matrix_of(const VectorXd& c) const
    {
        if (c.size() != dim())
            throw StructuralError(label + ": coordinate vector of length " +
                                  std::to_string(c.size()) + ", expected " + std::to_string(dim()));
        MatrixXd m = MatrixXd::Zero(ambient_dim, ambient_dim);
        for (int i = 0; i < dim(); ++i)
            m += c(i) * basis[i];
        return m;
    }

    double projection_residual(const MatrixXd& m) const
    {
        return (matrix_of(coords_of(m)) - m).cwiseAbs().maxCoeff();
    }

    AlgebraElement element(const VectorXd& c) const { return {c, matrix_of(c)}; }

    AlgebraElement element_from_matrix(const MatrixXd& m, double tol = 1e-10) const
    {
        VectorXd c = coords_of(m);
        MatrixXd back = matrix_of(c);
        double res = (back - m).cwiseAbs().maxCoeff();
        if (res > tol * std::max(1.0, max_abs(m)))
            throw DomainError(label + ": matrix not in the algebra (residual " + std::to_string(res) + ")");
        return {c, back};
    }

    AlgebraElement basis_element(int i) const { return element(VectorXd::Unit(dim(), i)); }

    void check_shape(const MatrixXd& m) const
    {
        if (m.rows() != ambient_dim || m.cols() != ambient_dim)
            throw StructuralError(label + ": matrix of size " + std::to_string(m.rows()) + "x" +
                                  std::to_string(m.cols()) + ", expected " +
                                  std::to_string(ambient_dim));
    }

private:
    Eigen::LDLT<MatrixXd> gram_;

    void finalize()
    {
        MatrixXd g(dim(), dim());
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < dim(); ++j)
                g(i, j) = basis[i].cwiseProduct(basis[j]).sum();
        gram_.compute(g);
    }
};

// ---------------------------------------------------------------------------
// realization helpers

// a + ib  ->  [[a, -b], [b, a]]
inline MatrixXd realify(const MatrixXcd& z)
{
    const Eigen::Index n = z.rows();
    MatrixXd r(2 * n, 2 * n);
    r.topLeftCorner(n, n) = z.real();
    r.topRightCorner(n, n) = -z.imag();
    r.bottomLeftCorner(n, n) = z.imag();
    r.bottomRightCorner(n, n) = z.real();
    return r;
}

inline MatrixXcd complexify(const MatrixXd& r)
{
    const Eigen::Index n = r.rows() / 2;
    MatrixXcd z(n, n);
    z.real() = r.topLeftCorner(n, n);
    z.imag() = r.bottomLeftCorner(n, n);
    return z;
}

// realification of complex conjugation: conj(Z) <-> K R(Z) K
inline MatrixXd conj_sign(int n)
{
    VectorXd d(2 * n);
    d << VectorXd::Ones(n), -VectorXd::Ones(n);
    return d.asDiagonal();
}

inline MatrixXcd symplectic_j(int n)
{
    MatrixXcd j = MatrixXcd::Zero(2 * n, 2 * n);
    j.topRightCorner(n, n) = -MatrixXcd::Identity(n, n);
    j.bottomLeftCorner(n, n) = MatrixXcd::Identity(n, n);
    return j;
}

inline MatrixXd embed_block(const MatrixXd& m, int offset, int dim)
{
    MatrixXd r = MatrixXd::Zero(dim, dim);
    r.block(offset, offset, m.rows(), m.cols()) = m;
    return r;
}

inline MatrixXd elementary_rotation(int n, int i, int j)
{
    MatrixXd m = MatrixXd::Zero(n, n);
    m(i, j) = 1.0;
    m(j, i) = -1.0;
    return m;
}

namespace detail {

inline std::vector<MatrixXcd> su_complex_basis(int n)
{
    using C = std::complex<double>;
    const C I(0.0, 1.0);
    std::vector<MatrixXcd> b;
    for (int k = 0; k + 1 < n; ++k) {
        MatrixXcd h = MatrixXcd::Zero(n, n);
        h(k, k) = I;
        h(k + 1, k + 1) = -I;
        b.push_back(h);
    }
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            MatrixXcd x = MatrixXcd::Zero(n, n);
            x(j, k) = 1.0;
            x(k, j) = -1.0;
            b.push_back(x);
            MatrixXcd y = MatrixXcd::Zero(n, n);
            y(j, k) = I;
            y(k, j) = I;
            b.push_back(y);
        }
    return b;
}

} // namespace detail

inline MatrixLieAlgebra make_so(int n)
{
    if (n < 3)
        throw ConfigError("so(n) needs n >= 3");
    std::vector<MatrixXd> b;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            b.push_back(elementary_rotation(n, i, j));
    Block blk{BlockKind::so, n, 0, n, Rational(n - 2), Rational(n - 2)};
    return MatrixLieAlgebra("so(" + std::to_string(n) + ")", n, {blk}, std::move(b));
}

inline MatrixLieAlgebra make_su(int n)
{
    if (n < 2)
        throw ConfigError("su(n) needs n >= 2");
    std::vector<MatrixXd> b;
    for (const auto& z : detail::su_complex_basis(n))
        b.push_back(realify(z));
    Block blk{BlockKind::su, n, 0, 2 * n, Rational(n), Rational(n)};
    return MatrixLieAlgebra("su(" + std::to_string(n) + ")", 2 * n, {blk}, std::move(b));
}

// sp(n) inside su(2n): X = [[A, -conj(B)], [B, conj(A)]] with A in u(n) and
// B complex symmetric. These are exactly the fixed points of
// X -> J conj(X) J^{-1}.
inline MatrixLieAlgebra make_sp(int n)
{
    if (n < 1)
        throw ConfigError("sp(n) needs n >= 1");
    using C = std::complex<double>;
    const C I(0.0, 1.0);
    auto assemble = [n](const MatrixXcd& a, const MatrixXcd& b) {
        MatrixXcd x(2 * n, 2 * n);
        x.topLeftCorner(n, n) = a;
        x.topRightCorner(n, n) = -b.conjugate();
        x.bottomLeftCorner(n, n) = b;
        x.bottomRightCorner(n, n) = a.conjugate();
        return realify(x);
    };
    const MatrixXcd zero = MatrixXcd::Zero(n, n);
    std::vector<MatrixXd> b;
    for (int k = 0; k < n; ++k) {
        MatrixXcd a = zero;
        a(k, k) = I;
        b.push_back(assemble(a, zero));
    }
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            MatrixXcd a = zero;
            a(j, k) = 1.0;
            a(k, j) = -1.0;
            b.push_back(assemble(a, zero));
            a(j, k) = I;
            a(k, j) = I;
            b.push_back(assemble(a, zero));
        }
    for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) {
            MatrixXcd s = zero;
            s(j, k) = 1.0;
            s(k, j) = 1.0;
            b.push_back(assemble(zero, s));
            b.push_back(assemble(zero, I * s));
        }
    Block blk{BlockKind::sp, n, 0, 4 * n, Rational(n + 1), Rational(n + 1)};
    return MatrixLieAlgebra("sp(" + std::to_string(n) + ")", 4 * n, {blk}, std::move(b));
}

// The circle factor: t -> [[0,-t],[t,0]] (the complex number i t).
inline MatrixLieAlgebra make_u1()
{
    Block blk{BlockKind::u1, 1, 0, 2, Rational(0), rat(1, 2)};
    return MatrixLieAlgebra("u(1)", 2, {blk}, {elementary_rotation(2, 1, 0)});
}

inline MatrixLieAlgebra direct_sum(const MatrixLieAlgebra& a, const MatrixLieAlgebra& b)
{
    const int d = a.ambient_dim + b.ambient_dim;
    std::vector<MatrixXd> basis;
    for (const auto& x : a.basis)
        basis.push_back(embed_block(x, 0, d));
    for (const auto& x : b.basis)
        basis.push_back(embed_block(x, a.ambient_dim, d));
    std::vector<Block> blocks = a.blocks;
    for (auto blk : b.blocks) {
        blk.offset += a.ambient_dim;
        blocks.push_back(blk);
    }
    return MatrixLieAlgebra(a.label + "+" + b.label, d, std::move(blocks), std::move(basis));
}

// ---------------------------------------------------------------------------
// operations

inline void check_same(const MatrixLieAlgebra& alg, const AlgebraElement& x)
{
    if (x.coords.size() != alg.dim())
        throw StructuralError(alg.label + ": element has " + std::to_string(x.coords.size()) +
                              " coordinates, expected " + std::to_string(alg.dim()));
    alg.check_shape(x.matrix);
}

inline MatrixXd commutator(const MatrixXd& x, const MatrixXd& y) { return x * y - y * x; }

inline AlgebraElement bracket(const MatrixLieAlgebra& alg, const AlgebraElement& x,
                              const AlgebraElement& y)
{
    check_same(alg, x);
    check_same(alg, y);
    MatrixXd z = commutator(x.matrix, y.matrix);
    return {alg.coords_of(z), z};
}

inline double block_trace(const MatrixXd& x, const MatrixXd& y, const Block& b)
{
    auto xb = x.block(b.offset, b.offset, b.size, b.size);
    auto yb = y.block(b.offset, b.offset, b.size, b.size);
    return xb.cwiseProduct(yb.transpose()).sum();
}

inline double killing_form(const MatrixLieAlgebra& alg, const MatrixXd& x, const MatrixXd& y)
{
    double s = 0.0;
    for (const auto& b : alg.blocks)
        s += to_double(b.killing_scale) * block_trace(x, y, b);
    return s;
}

inline double killing_form(const MatrixLieAlgebra& alg, const AlgebraElement& x,
                           const AlgebraElement& y)
{
    check_same(alg, x);
    check_same(alg, y);
    return killing_form(alg, x.matrix, y.matrix);
}

inline double inner(const MatrixLieAlgebra& alg, const MatrixXd& x, const MatrixXd& y)
{
    double s = 0.0;
    for (const auto& b : alg.blocks)
        s -= to_double(b.metric_scale) * block_trace(x, y, b);
    return s;
}

inline double invariant_inner_product(const MatrixLieAlgebra& alg, const AlgebraElement& x,
                                      const AlgebraElement& y)
{
    check_same(alg, x);
    check_same(alg, y);
    return inner(alg, x.matrix, y.matrix);
}

// Matrix of ad(x) in the basis coordinates.
inline MatrixXd ad_matrix(const MatrixLieAlgebra& alg, const MatrixXd& x)
{
    MatrixXd a(alg.dim(), alg.dim());
    for (int j = 0; j < alg.dim(); ++j)
        a.col(j) = alg.coords_of(commutator(x, alg.basis[j]));
    return a;
}

inline double killing_form_adtrace(const MatrixLieAlgebra& alg, const MatrixXd& x,
                                   const MatrixXd& y)
{
    return (ad_matrix(alg, x) * ad_matrix(alg, y)).trace();
}

// Entrywise check of the defining relations of every block.
inline double definition_defect(const MatrixLieAlgebra& alg, const MatrixXd& x)
{
    alg.check_shape(x);
    double worst = 0.0;
    auto upd = [&](double v) { worst = std::max(worst, std::abs(v)); };
    // off-block entries must vanish
    MatrixXd rest = x;
    for (const auto& b : alg.blocks)
        rest.block(b.offset, b.offset, b.size, b.size).setZero();
    upd(max_abs(rest));
    for (const auto& b : alg.blocks) {
        MatrixXd xb = x.block(b.offset, b.offset, b.size, b.size);
        upd(max_abs(xb + xb.transpose()));
        if (b.kind == BlockKind::su || b.kind == BlockKind::sp) {
            const int h = b.size / 2;
            upd(max_abs(xb.topLeftCorner(h, h) - xb.bottomRightCorner(h, h)));
            upd(max_abs(xb.topRightCorner(h, h) + xb.bottomLeftCorner(h, h)));
            upd(xb.bottomLeftCorner(h, h).trace());
        }
        if (b.kind == BlockKind::sp) {
            const MatrixXd rj = realify(symplectic_j(b.n));
            const MatrixXd k = conj_sign(2 * b.n);
            upd(max_abs(xb - rj * k * xb * k * rj.transpose()));
        }
        if (b.kind == BlockKind::u1)
            upd(xb(0, 0));
    }
    return worst;
}

inline double jacobi_defect(const MatrixXd& x, const MatrixXd& y, const MatrixXd& z)
{
    MatrixXd j = commutator(x, commutator(y, z)) + commutator(y, commutator(z, x)) +
                 commutator(z, commutator(x, y));
    return max_abs(j);
}

// Largest relative deviation between the closed-form Killing form and the
// ad-trace definition over all basis pairs, restricted to non-abelian blocks.
inline double killing_scale_defect(const MatrixLieAlgebra& alg)
{
    std::vector<MatrixXd> ad(alg.dim());
    for (int i = 0; i < alg.dim(); ++i)
        ad[i] = ad_matrix(alg, alg.basis[i]);
    double worst = 0.0;
    for (int i = 0; i < alg.dim(); ++i)
        for (int j = i; j < alg.dim(); ++j) {
            double via_ad = (ad[i] * ad[j]).trace();
            double closed = killing_form(alg, alg.basis[i], alg.basis[j]);
            double scale = std::max({1.0, std::abs(via_ad), std::abs(closed)});
            worst = std::max(worst, std::abs(via_ad - closed) / scale);
        }
    return worst;
}

// Rank (singular values > 1e-8 * largest) of the matrix whose columns are
// act(xi_i, point).
template <class Action>
int orbit_tangent_rank(const std::vector<AlgebraElement>& k_basis, Action&& act,
                       const VectorXd& point)
{
    if (k_basis.empty())
        return 0;
    MatrixXd cols(point.size(), static_cast<Eigen::Index>(k_basis.size()));
    for (std::size_t i = 0; i < k_basis.size(); ++i)
        cols.col(static_cast<Eigen::Index>(i)) = act(k_basis[i], point);
    if (max_abs(cols) == 0.0)
        return 0;
    return numerical_rank(cols, kRankTol);
}

// exp(X) by scaling and squaring with the degree 13 Pade approximant.
inline MatrixXd exp_element(const AlgebraElement& x) { return expm(x.matrix); }

} // namespace isolag
