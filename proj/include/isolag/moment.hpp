#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "sympair.hpp"

namespace isolag {

struct MomentValue {
    VectorXd mu;           // k-coordinates
    VectorXd center_part;  // projection onto c(k)
    double norm_sq = 0.0;
};

inline void check_plane(const SymmetricPair& sp, const QuadricPoint& q)
{
    if (q.a.size() != sp.dim_p() || q.b.size() != sp.dim_p())
        throw StructuralError(sp.desc.id + ": plane frame has wrong length");
}

// mu([V]) = -[a, b]
inline MomentValue moment_map(const SymmetricPair& sp, const QuadricPoint& q)
{
    check_plane(sp, q);
    MomentValue m;
    m.mu = -sp.bracket_pp(q.a, q.b);
    m.center_part = sp.center * (sp.center.transpose() * m.mu);
    m.norm_sq = m.mu.squaredNorm();
    return m;
}

// Frame given as ambient matrices; they must lie in p.
inline MomentValue moment_map(const SymmetricPair& sp, const MatrixXd& a, const MatrixXd& b)
{
    for (const auto* m : {&a, &b}) {
        VectorXd c = sp.p_coords(*m);
        if (max_abs(sp.p_matrix(c) - *m) > 1e-8)
            throw DomainError(sp.desc.id + ": frame vector is not in p");
    }
    return moment_map(sp, QuadricPoint{sp.p_coords(a), sp.p_coords(b)});
}

// -<[[a,b],b],a> / (|a|^2 |b|^2 - <a,b>^2), evaluated on the ambient matrices.
inline double sectional_curvature(const SymmetricPair& sp, const QuadricPoint& q)
{
    check_plane(sp, q);
    const MatrixXd A = sp.p_matrix(q.a), B = sp.p_matrix(q.b);
    const MatrixXd R = commutator(commutator(A, B), B);
    const double aa = inner(sp.u, A, A), bb = inner(sp.u, B, B), ab = inner(sp.u, A, B);
    const double den = aa * bb - ab * ab;
    if (den <= 1e-14)
        throw DomainError("frame vectors are dependent");
    return -inner(sp.u, R, A) / den;
}

struct WLambdaPlane {
    double theta = 0.0;
    VectorXd a, b;       // cos(theta) H1 + sin(theta) J H2, H2
    QuadricPoint plane;  // gauge-fixed
};

struct ComplexStructureData {
    VectorXd jh2;
    VectorXd bracket;      // [J H2, H2], k-coords
    double z_ratio = 0.0;  // bracket = z_ratio * Z
};

// J H2 and [J H2, H2] for the rows with a stored generator Z. Requires
// J H2 to be a unit vector orthogonal to a and [J H2, H2] central.
inline ComplexStructureData complex_structure_data(const SymmetricPair& sp)
{
    if (!sp.z)
        throw UnsupportedCase(sp.desc.id + ": no W-lambda family");
    ComplexStructureData d;
    d.jh2 = sp.complex_structure() * sp.h2();
    if (std::abs(d.jh2.norm() - 1.0) > 1e-12 || std::abs(d.jh2(0)) > 1e-12 ||
        std::abs(d.jh2(1)) > 1e-12)
        throw StructuralError(sp.desc.id + ": J H2 is not a unit vector orthogonal to a");
    d.bracket = sp.bracket_pp(d.jh2, sp.h2());
    VectorXd off = d.bracket - sp.center * (sp.center.transpose() * d.bracket);
    if (d.bracket.norm() < 1e-6 || off.norm() > 1e-9)
        throw StructuralError(sp.desc.id + ": [J H2, H2] is not a nonzero central element");
    d.z_ratio = d.bracket.dot(*sp.z) / sp.z->squaredNorm();
    return d;
}

inline WLambdaPlane w_lambda_plane(const SymmetricPair& sp, double theta,
                                   const ComplexStructureData& cs)
{
    WLambdaPlane w;
    w.theta = theta;
    w.a = std::cos(theta) * sp.h1() + std::sin(theta) * cs.jh2;
    w.b = sp.h2();
    w.plane = gauge_fix(w.a, w.b);
    return w;
}

inline WLambdaPlane w_lambda_plane(const SymmetricPair& sp, double theta)
{
    return w_lambda_plane(sp, theta, complex_structure_data(sp));
}

// Columns: the infinitesimal action of k_l on the plane, as an element of
// Hom(V, V-perp) stacked as (T a; T b).
inline MatrixXd plane_tangent_action(const SymmetricPair& sp, const VectorXd& a, const VectorXd& b)
{
    const auto pd = sp.dim_p();
    MatrixXd P = MatrixXd::Identity(pd, pd) - a * a.transpose() - b * b.transpose();
    MatrixXd cols(2 * pd, sp.dim_k());
    for (int l = 0; l < sp.dim_k(); ++l) {
        cols.col(l).head(pd) = P * (sp.adk[l] * a);
        cols.col(l).tail(pd) = P * (sp.adk[l] * b);
    }
    return cols;
}

// Dimension of K.[V] in the Grassmannian. The k basis and the plane frame are
// orthonormal, so the action columns are O(1) and an absolute cutoff is used;
// a relative one would count roundoff when the orbit is a point.
inline int orbit_dimension(const SymmetricPair& sp, const QuadricPoint& q)
{
    check_plane(sp, q);
    MatrixXd cols = plane_tangent_action(sp, q.a, q.b);
    Eigen::JacobiSVD<MatrixXd> svd(cols);
    const auto& s = svd.singularValues();
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > kRankTol)
            ++r;
    return r;
}

// Max |omega| over pairs of orbit directions at q.
inline double isotropy_defect(const SymmetricPair& sp, const QuadricPoint& q)
{
    check_plane(sp, q);
    MatrixXd cols = plane_tangent_action(sp, q.a, q.b);
    const auto pd = sp.dim_p();
    MatrixXd ta = cols.topRows(pd), tb = cols.bottomRows(pd);
    // omega(T_i, T_j) = <T_i b, T_j a> - <T_i a, T_j b>
    MatrixXd w = tb.transpose() * ta - ta.transpose() * tb;
    return max_abs(w);
}

inline bool isotropic_check(const SymmetricPair& sp, const QuadricPoint& q, double tol = 1e-9)
{
    return isotropy_defect(sp, q) < tol;
}

struct SweepRow {
    double theta;
    double norm_sq;
    int orbit_dim;
    double central_defect;
};

inline std::vector<SweepRow> w_lambda_sweep(const SymmetricPair& sp, int points = 720)
{
    const auto cs = complex_structure_data(sp);
    std::vector<SweepRow> rows;
    for (int j = 0; j < points; ++j) {
        double th = -std::numbers::pi + 2 * std::numbers::pi * j / points;
        auto w = w_lambda_plane(sp, th, cs);
        auto m = moment_map(sp, w.plane);
        rows.push_back({th, m.norm_sq, orbit_dimension(sp, w.plane), (m.mu - m.center_part).norm()});
    }
    return rows;
}

} // namespace isolag
