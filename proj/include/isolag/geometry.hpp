#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "sympair.hpp"

namespace isolag {

// x = Ad(exp xi) H and nrm = Ad(exp xi) H' in p-coordinates.
struct HypersurfaceSample {
    VectorXd xi;
    MatrixXd g;        // Ad(exp xi) on p
    MatrixXd g_k;      // Ad(exp xi) on k
    VectorXd x, nrm;
    MatrixXd tangent;  // orthonormal columns spanning T_x N
};

struct CurvatureClass {
    double kappa;
    int mult;
    double angle;  // arccot(kappa) in (0, pi)
};

struct PrincipalCurvatureProfile {
    std::vector<CurvatureClass> classes;  // sorted by angle
    int g() const { return static_cast<int>(classes.size()); }
    int total_multiplicity() const
    {
        int s = 0;
        for (const auto& c : classes)
            s += c.mult;
        return s;
    }
};

inline double arccot(double k) { return std::numbers::pi / 2 - std::atan(k); }

// Unit normal direction in a: rotate H by +pi/2.
inline VectorXd normal_in_a(const SymmetricPair& sp, double theta)
{
    return -std::sin(theta) * sp.h1() + std::cos(theta) * sp.h2();
}

inline HypersurfaceSample orbit_sample(const SymmetricPair& sp, double theta, const VectorXd& xi)
{
    const VectorXd h = regular_element(sp, theta);
    const VectorXd hn = normal_in_a(sp, theta);
    HypersurfaceSample s;
    s.xi = xi;
    s.g = sp.Ad_p(xi);
    s.g_k = sp.Ad_k(xi);
    s.x = s.g * h;
    s.nrm = s.g * hn;
    MatrixXd ys(sp.dim_p(), sp.sum_multiplicities());
    int c = 0;
    for (const auto& r : sp.roots) {
        ys.middleCols(c, r.mult) = r.Y;
        c += r.mult;
    }
    s.tangent = s.g * ys;
    return s;
}

inline std::vector<HypersurfaceSample> orbit_samples(const SymmetricPair& sp, double theta,
                                                     int count, std::uint64_t seed)
{
    if (count < 1)
        throw DomainError("sample count must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::vector<HypersurfaceSample> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        VectorXd xi(sp.dim_k());
        for (int l = 0; l < sp.dim_k(); ++l)
            xi(l) = nd(rng);
        out.push_back(orbit_sample(sp, theta, xi));
    }
    return out;
}

// Largest violation of |x| = |nrm| = 1, <x,nrm> = 0, tangent orthonormal and
// orthogonal to x and nrm.
inline double sample_defect(const HypersurfaceSample& s)
{
    double d = std::max({std::abs(s.x.norm() - 1.0), std::abs(s.nrm.norm() - 1.0),
                         std::abs(s.x.dot(s.nrm))});
    const auto n = s.tangent.cols();
    d = std::max(d, max_abs(s.tangent.transpose() * s.tangent - MatrixXd::Identity(n, n)));
    d = std::max(d, (s.tangent.transpose() * s.x).cwiseAbs().maxCoeff());
    d = std::max(d, (s.tangent.transpose() * s.nrm).cwiseAbs().maxCoeff());
    return d;
}

// kappa_gamma = -gamma(H')/gamma(H), roots with equal kappa merged.
inline PrincipalCurvatureProfile principal_curvatures(const SymmetricPair& sp, double theta)
{
    regular_element(sp, theta);
    const Eigen::Vector2d h(std::cos(theta), std::sin(theta));
    const Eigen::Vector2d hn(-std::sin(theta), std::cos(theta));
    PrincipalCurvatureProfile p;
    for (const auto& r : sp.roots) {
        const double k = -r.at(hn) / r.at(h);
        auto it = std::find_if(p.classes.begin(), p.classes.end(),
                               [&](const CurvatureClass& c) {
                                   return std::abs(c.kappa - k) <= 1e-9 * std::max(1.0, std::abs(k));
                               });
        if (it != p.classes.end())
            it->mult += r.mult;
        else
            p.classes.push_back({k, r.mult, arccot(k)});
    }
    std::sort(p.classes.begin(), p.classes.end(),
              [](const CurvatureClass& a, const CurvatureClass& b) { return a.angle < b.angle; });
    return p;
}

// Largest deviation of consecutive arccot gaps from pi/g (cyclically mod pi).
inline double angle_spacing_defect(const PrincipalCurvatureProfile& p)
{
    const int g = p.g();
    if (g < 2)
        return 0.0;
    const double step = std::numbers::pi / g;
    double worst = 0.0;
    for (int i = 0; i < g; ++i) {
        double a = p.classes[static_cast<std::size_t>(i)].angle;
        double b = i + 1 < g ? p.classes[static_cast<std::size_t>(i + 1)].angle
                             : p.classes[0].angle + std::numbers::pi;
        worst = std::max(worst, std::abs(b - a - step));
    }
    return worst;
}

inline double palmer_phase(const std::vector<std::pair<double, int>>& kappas)
{
    double s = 0.0;
    for (auto [k, m] : kappas)
        s += m * std::atan(k);
    return s;
}

inline double palmer_phase(const PrincipalCurvatureProfile& p)
{
    std::vector<std::pair<double, int>> ks;
    for (const auto& c : p.classes)
        ks.emplace_back(c.kappa, c.mult);
    return palmer_phase(ks);
}

// Shape operator A = -d(nrm) on the tangent frame, from the infinitesimal
// action of k: A (ad(k_l) x) = -ad(k_l) nrm.
inline MatrixXd shape_operator(const SymmetricPair& sp, const HypersurfaceSample& s)
{
    const auto n = s.tangent.cols();
    MatrixXd dx(n, sp.dim_k()), dn(n, sp.dim_k());
    for (int l = 0; l < sp.dim_k(); ++l) {
        dx.col(l) = s.tangent.transpose() * (sp.adk[l] * s.x);
        dn.col(l) = -s.tangent.transpose() * (sp.adk[l] * s.nrm);
    }
    if (numerical_rank(dx) < n)
        throw RankDeficiency("orbit tangent map has rank below n");
    return dn * dx.transpose() * (dx * dx.transpose()).inverse();
}

// Central difference with one Richardson step.
template <class F>
VectorXd richardson_derivative(F&& f, double h)
{
    VectorXd d1 = (f(h) - f(-h)) / (2 * h);
    VectorXd d2 = (f(h / 2) - f(-h / 2)) / h;
    return (4 * d2 - d1) / 3;
}

// Same operator from finite differences of x and nrm along exp(t eta).
inline MatrixXd shape_operator_fd(const SymmetricPair& sp, const HypersurfaceSample& s,
                                  double h = 1e-3)
{
    const auto n = s.tangent.cols();
    MatrixXd dx(n, sp.dim_k()), dn(n, sp.dim_k());
    for (int l = 0; l < sp.dim_k(); ++l) {
        const MatrixXd ad = sp.adk[l];
        auto fx = [&](double t) -> VectorXd { return expm(t * ad) * s.x; };
        auto fn = [&](double t) -> VectorXd { return expm(t * ad) * s.nrm; };
        dx.col(l) = s.tangent.transpose() * richardson_derivative(fx, h);
        dn.col(l) = -s.tangent.transpose() * richardson_derivative(fn, h);
    }
    if (numerical_rank(dx) < n)
        throw RankDeficiency("orbit tangent map has rank below n");
    return dn * dx.transpose() * (dx * dx.transpose()).inverse();
}

inline VectorXd sorted_eigenvalues(const MatrixXd& a)
{
    MatrixXd s = 0.5 * (a + a.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(s, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

// Closed-form profile expanded with multiplicity, sorted ascending.
inline VectorXd expanded_curvatures(const PrincipalCurvatureProfile& p)
{
    std::vector<double> v;
    for (const auto& c : p.classes)
        for (int i = 0; i < c.mult; ++i)
            v.push_back(c.kappa);
    std::sort(v.begin(), v.end());
    return Eigen::Map<VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// ---------------------------------------------------------------------------
// oriented 2-planes

struct QuadricPoint {
    VectorXd a, b;
};

// Rotate within the plane so that b has no e_k component and <a, e_k> > 0,
// k the first index where the plane's projection is nonzero.
inline QuadricPoint gauge_fix(const VectorXd& a, const VectorXd& b)
{
    for (Eigen::Index k = 0; k < a.size(); ++k) {
        double r = std::hypot(a(k), b(k));
        if (r > 1e-12) {
            double psi = std::atan2(b(k), a(k));
            double c = std::cos(psi), s = std::sin(psi);
            QuadricPoint q{c * a + s * b, -s * a + c * b};
            q.b(k) = 0.0;
            return q;
        }
    }
    throw DomainError("degenerate plane");
}

inline QuadricPoint make_plane(const VectorXd& a, const VectorXd& b)
{
    VectorXd u = a.normalized();
    VectorXd v = b - u.dot(b) * u;
    if (v.norm() < 1e-12)
        throw DomainError("frame vectors are dependent");
    return gauge_fix(u, v.normalized());
}

inline QuadricPoint gauss_map(const HypersurfaceSample& s) { return gauge_fix(s.x, s.nrm); }

// |a|-1, |b|-1, <a,b>, and |sum z_k^2| for z = (a + i b)/sqrt(2).
inline double quadric_defect(const QuadricPoint& q)
{
    std::complex<double> s = 0.0;
    for (Eigen::Index k = 0; k < q.a.size(); ++k) {
        std::complex<double> z(q.a(k), q.b(k));
        s += z * z / 2.0;
    }
    return std::max({std::abs(q.a.norm() - 1.0), std::abs(q.b.norm() - 1.0),
                     std::abs(q.a.dot(q.b)), std::abs(s)});
}

inline QuadricPoint act(const MatrixXd& g, const QuadricPoint& q)
{
    return gauge_fix(g * q.a, g * q.b);
}

inline double plane_distance(const QuadricPoint& p, const QuadricPoint& q)
{
    return std::max((p.a - q.a).cwiseAbs().maxCoeff(), (p.b - q.b).cwiseAbs().maxCoeff());
}

// Element of Hom(V, V-perp): images of a and b.
struct TangentHom {
    VectorXd ta, tb;
};

inline double kahler_form(const TangentHom& t, const TangentHom& s)
{
    return t.tb.dot(s.ta) - t.ta.dot(s.tb);
}

using FrameFn = std::function<std::pair<VectorXd, VectorXd>(const VectorXd&, const VectorXd&)>;

inline std::pair<VectorXd, VectorXd> gauss_frame(const VectorXd& x, const VectorXd& n)
{
    return {x, n};
}

inline constexpr double kFdStep = 1e-5;

// Differential of the plane family along exp(t eta) (eta in k-coords), by
// central differences with Richardson extrapolation.
inline TangentHom plane_differential(const SymmetricPair& sp, const HypersurfaceSample& s,
                                     const VectorXd& eta, const FrameFn& frame,
                                     double h = kFdStep)
{
    const MatrixXd ad = sp.ad_p(eta);
    auto [a0, b0] = frame(s.x, s.nrm);
    MatrixXd P = MatrixXd::Identity(a0.size(), a0.size()) - a0 * a0.transpose() - b0 * b0.transpose();
    auto fa = [&](double t) -> VectorXd {
        MatrixXd e = expm(t * ad);
        return frame(e * s.x, e * s.nrm).first;
    };
    auto fb = [&](double t) -> VectorXd {
        MatrixXd e = expm(t * ad);
        return frame(e * s.x, e * s.nrm).second;
    };
    return {P * richardson_derivative(fa, h), P * richardson_derivative(fb, h)};
}

// Orbit directions whose action at the sample sweeps the tangent frame:
// Ad(g) X_{gamma,i}.
inline std::vector<VectorXd> tangent_directions(const SymmetricPair& sp, const HypersurfaceSample& s)
{
    std::vector<VectorXd> out;
    for (const auto& r : sp.roots)
        for (int i = 0; i < r.mult; ++i)
            out.push_back(s.g_k * r.X.col(i));
    return out;
}

inline std::vector<TangentHom> plane_differentials(const SymmetricPair& sp,
                                                   const HypersurfaceSample& s,
                                                   const FrameFn& frame = gauss_frame)
{
    std::vector<TangentHom> out;
    for (const auto& eta : tangent_directions(sp, s))
        out.push_back(plane_differential(sp, s, eta, frame));
    const int n = static_cast<int>(out.size());
    MatrixXd stacked(2 * s.x.size(), n);
    for (int i = 0; i < n; ++i) {
        stacked.col(i).head(s.x.size()) = out[static_cast<std::size_t>(i)].ta;
        stacked.col(i).tail(s.x.size()) = out[static_cast<std::size_t>(i)].tb;
    }
    if (numerical_rank(stacked) < n)
        throw RankDeficiency("plane differential has rank below n");
    return out;
}

inline double kahler_max(const std::vector<TangentHom>& ts)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = i + 1; j < ts.size(); ++j)
            worst = std::max(worst, std::abs(kahler_form(ts[i], ts[j])));
    return worst;
}

inline double kahler_pullback_max(const SymmetricPair& sp,
                                  const std::vector<HypersurfaceSample>& samples,
                                  const FrameFn& frame = gauss_frame)
{
    double worst = 0.0;
    for (const auto& s : samples)
        worst = std::max(worst, kahler_max(plane_differentials(sp, s, frame)));
    return worst;
}

// A non-Lagrangian family for contrast: the normal is turned inside the fixed
// coordinate 3-space span(e0, e1, e2) by an angle depending on the position,
// then re-orthonormalized against x.
inline FrameFn perturbed_frame(double strength = 0.5)
{
    return [strength](const VectorXd& x, const VectorXd& n) -> std::pair<VectorXd, VectorXd> {
        const double psi = strength * x(0);
        const double c = std::cos(psi), s = std::sin(psi);
        VectorXd m = n;
        m(1) = c * n(1) - s * n(2);
        m(2) = s * n(1) + c * n(2);
        m -= x.dot(m) * x;
        return {x, m.normalized()};
    };
}

// ---------------------------------------------------------------------------
// B_v

struct BvSpectrum {
    VectorXd eigenvalues;  // ascending
    double lagrange_residual = 0.0;
    double isometry_residual = 0.0;
};

struct BvFrame {
    MatrixXd ta, tb;  // columns: T_i(a), T_i(b)
    MatrixXd linv;    // inverse Cholesky factor of the induced metric
};

inline BvFrame bv_frame(const std::vector<TangentHom>& ts)
{
    const auto n = static_cast<Eigen::Index>(ts.size());
    BvFrame f;
    f.ta.resize(ts[0].ta.size(), n);
    f.tb.resize(ts[0].tb.size(), n);
    for (Eigen::Index i = 0; i < n; ++i) {
        f.ta.col(i) = ts[static_cast<std::size_t>(i)].ta;
        f.tb.col(i) = ts[static_cast<std::size_t>(i)].tb;
    }
    MatrixXd G = f.ta.transpose() * f.ta + f.tb.transpose() * f.tb;
    Eigen::LLT<MatrixXd> llt(G);
    if (llt.info() != Eigen::Success)
        throw RankDeficiency("induced metric is not positive definite");
    MatrixXd L = llt.matrixL();
    f.linv = L.inverse();
    return f;
}

// Symmetric representation L^{-1} M_v^T M_w L^{-T}.
inline MatrixXd bv_gram(const BvFrame& f, double phi_v, double phi_w)
{
    MatrixXd mv = std::cos(phi_v) * f.ta + std::sin(phi_v) * f.tb;
    MatrixXd mw = std::cos(phi_w) * f.ta + std::sin(phi_w) * f.tb;
    return f.linv * mv.transpose() * mw * f.linv.transpose();
}

// v = cos(phi) a + sin(phi) b, jv = v rotated by +pi/2 in V.
inline BvSpectrum b_operator_spectrum(const BvFrame& f, double phi)
{
    const double phj = phi + std::numbers::pi / 2;
    MatrixXd vv = bv_gram(f, phi, phi), vj = bv_gram(f, phi, phj), jv = bv_gram(f, phj, phi),
             jj = bv_gram(f, phj, phj);
    BvSpectrum out;
    out.eigenvalues = sorted_eigenvalues(vv);
    out.lagrange_residual = max_abs(vj - jv);
    out.isometry_residual = max_abs(vv + jj - MatrixXd::Identity(vv.rows(), vv.cols()));
    return out;
}

// (cos phi - kappa sin phi)^2 / (1 + kappa^2), expanded and sorted.
inline VectorXd b_operator_closed_form(const PrincipalCurvatureProfile& p, double phi)
{
    std::vector<double> v;
    for (const auto& c : p.classes) {
        double t = std::cos(phi) - c.kappa * std::sin(phi);
        for (int i = 0; i < c.mult; ++i)
            v.push_back(t * t / (1 + c.kappa * c.kappa));
    }
    std::sort(v.begin(), v.end());
    return Eigen::Map<VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Kernel of B_v as orthonormal columns in the metric-normalized coordinates.
inline MatrixXd bv_kernel(const BvFrame& f, double phi, double tol = 1e-6)
{
    MatrixXd g = bv_gram(f, phi, phi);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (g + g.transpose()));
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        if (es.eigenvalues()(i) < tol)
            idx.push_back(i);
    MatrixXd k(g.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j)
        k.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(idx[j]);
    return k;
}

} // namespace isolag
