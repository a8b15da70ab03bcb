#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "linalg.hpp"

namespace isolag {

// ---------------------------------------------------------------------------
// catalog

struct CatalogRow {
    std::string family;                   // "AI2", "BDI2", ...
    std::vector<std::string> param_names; // e.g. {"p", "n"}
    std::vector<int> default_params;
    int g;
    std::string group_u, group_k;
    std::string n_formula, m1_formula, m2_formula;
    std::string quotient;                 // N = K/K0
    std::string constraint;               // human readable
    bool matrix_realizable;
};

inline const std::vector<CatalogRow>& catalog_rows()
{
    static const std::vector<CatalogRow> rows = {
        {"S1xBDII", {"n"}, {3}, 1, "S1xSO(n+2)", "SO(n+1)", "n", "n", "n", "S^n", "n>=1", true},
        {"BDIIxBDII", {"p", "n"}, {1, 3}, 2, "SO(p+2)xSO(n+2-p)", "SO(p+1)xSO(n+1-p)", "n", "p",
         "n-p", "S^pxS^(n-p)", "1<=p<=n-1", true},
        {"AI2", {}, {}, 3, "SU(3)", "SO(3)", "3", "1", "1", "SO(3)/(Z2+Z2)", "", true},
        {"a2", {}, {}, 3, "SU(3)xSU(3)", "SU(3)", "6", "2", "2", "SU(3)/T^2", "", true},
        {"AII2", {}, {}, 3, "SU(6)", "Sp(3)", "12", "4", "4", "Sp(3)/Sp(1)^3", "", true},
        {"EIV", {}, {}, 3, "E6", "F4", "24", "8", "8", "F4/Spin(8)", "", false},
        {"b2", {}, {}, 4, "SO(5)xSO(5)", "SO(5)", "8", "2", "2", "SO(5)/T^2", "", true},
        {"AIII2", {"m"}, {3}, 4, "SU(m+2)", "S(U(m)xU(2))", "4m-2", "2", "2m-3",
         "S(U(m)xU(2))/(SU(m-2)xT^2)", "m>=2", true},
        {"BDI2", {"m"}, {3}, 4, "SO(m+2)", "SO(m)xSO(2)", "2m-2", "1", "m-2",
         "(SO(m)xSO(2))/(SO(m-2)xZ2)", "m>=3", true},
        {"CII2", {"m"}, {2}, 4, "Sp(m+2)", "Sp(m)xSp(2)", "8m-2", "4", "4m-5",
         "(Sp(m)xSp(2))/(Sp(m-2)xSp(1)^2)", "m>=2", true},
        {"DIII2", {}, {}, 4, "SO(10)", "U(5)", "18", "4", "5", "U(5)/(SU(2)xSU(2)xT^1)", "", true},
        {"EIII", {}, {}, 4, "E6", "Spin(10).T", "30", "6", "9", "(Spin(10).T)/(SU(4).T)", "",
         false},
        {"g2", {}, {}, 6, "G2xG2", "G2", "12", "2", "2", "G2/T^2", "", false},
        {"G", {}, {}, 6, "G2", "SO(4)", "6", "1", "1", "SO(4)/(Z2+Z2)", "", false},
    };
    return rows;
}

inline const CatalogRow& catalog_row(const std::string& family)
{
    for (const auto& r : catalog_rows())
        if (r.family == family)
            return r;
    throw ConfigError("unknown pair type '" + family + "'");
}

// Evaluates an integer linear expression such as "4m-5" or "n+2-p".
inline long eval_linear(const std::string& expr, const std::map<std::string, long>& vars)
{
    long total = 0;
    std::size_t i = 0;
    bool any = false;
    while (i < expr.size()) {
        long sign = 1;
        if (expr[i] == '+' || expr[i] == '-') {
            sign = expr[i] == '-' ? -1 : 1;
            ++i;
        } else if (any) {
            throw DomainError("malformed expression '" + expr + "'");
        }
        long coef = 1;
        bool has_num = false;
        if (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i]))) {
            coef = 0;
            while (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i])))
                coef = coef * 10 + (expr[i++] - '0');
            has_num = true;
        }
        long val = 1;
        if (i < expr.size() && std::isalpha(static_cast<unsigned char>(expr[i]))) {
            std::string name(1, expr[i++]);
            auto it = vars.find(name);
            if (it == vars.end())
                throw DomainError("unbound variable '" + name + "' in '" + expr + "'");
            val = it->second;
        } else if (!has_num) {
            throw DomainError("malformed expression '" + expr + "'");
        }
        total += sign * coef * val;
        any = true;
    }
    if (!any)
        throw DomainError("empty expression");
    return total;
}

struct PairDescriptor {
    std::string family;
    std::vector<int> params;
    std::string id;  // canonical, e.g. "BDIIxBDII(1,3)"
    int g = 0;
    int n = 0;
    int m1 = 0, m2 = 0;
    std::string group_u, group_k, quotient;
    bool matrix_realizable = false;
};

// Parameters are kept small enough for dense numerics.
inline constexpr int kMaxParam = 12;

inline PairDescriptor describe(const std::string& family, std::vector<int> params)
{
    const CatalogRow& row = catalog_row(family);
    if (params.empty())
        params = row.default_params;
    if (params.size() != row.param_names.size())
        throw ConfigError(family + " takes " + std::to_string(row.param_names.size()) +
                          " parameter(s)");
    std::map<std::string, long> vars;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (params[i] < 0 || params[i] > kMaxParam)
            throw ConfigError(family + ": parameter out of range");
        vars[row.param_names[i]] = params[i];
    }
    bool ok = true;
    if (family == "S1xBDII")
        ok = params[0] >= 1;
    else if (family == "BDIIxBDII")
        ok = params[0] >= 1 && params[0] <= params[1] - 1;
    else if (family == "AIII2" || family == "CII2")
        ok = params[0] >= 2;
    else if (family == "BDI2")
        ok = params[0] >= 3;
    if (!ok)
        throw ConfigError(family + ": parameters violate " + row.constraint);

    PairDescriptor d;
    d.family = family;
    d.params = params;
    d.id = family;
    if (!params.empty()) {
        d.id += "(";
        for (std::size_t i = 0; i < params.size(); ++i)
            d.id += (i ? "," : "") + std::to_string(params[i]);
        d.id += ")";
    }
    d.g = row.g;
    d.n = static_cast<int>(eval_linear(row.n_formula, vars));
    d.m1 = static_cast<int>(eval_linear(row.m1_formula, vars));
    d.m2 = static_cast<int>(eval_linear(row.m2_formula, vars));
    d.group_u = row.group_u;
    d.group_k = row.group_k;
    d.quotient = row.quotient;
    d.matrix_realizable = row.matrix_realizable;
    return d;
}

// "AI2", "BDI2(4)", "BDIIxBDII(1,3)"; a bare family name takes the default
// parameters.
inline PairDescriptor parse_pair_id(const std::string& id)
{
    auto open = id.find('(');
    std::string family = id.substr(0, open);
    std::vector<int> params;
    if (open != std::string::npos) {
        if (id.back() != ')')
            throw ConfigError("malformed pair id '" + id + "'");
        std::string inside = id.substr(open + 1, id.size() - open - 2);
        std::size_t pos = 0;
        while (pos <= inside.size()) {
            auto comma = inside.find(',', pos);
            std::string tok = inside.substr(pos, comma == std::string::npos ? std::string::npos
                                                                            : comma - pos);
            if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) {
                    return std::isdigit(static_cast<unsigned char>(c));
                }) || tok.size() > 3)
                throw ConfigError("malformed pair id '" + id + "'");
            params.push_back(std::stoi(tok));
            if (comma == std::string::npos)
                break;
            pos = comma + 1;
        }
        if (params.empty())
            throw ConfigError("malformed pair id '" + id + "'");
    }
    return describe(family, params);
}

// One descriptor per row at its default parameters.
inline std::vector<PairDescriptor> load_catalog()
{
    std::vector<PairDescriptor> out;
    for (const auto& r : catalog_rows())
        out.push_back(describe(r.family, r.default_params));
    return out;
}

// Pairs for which {0} != c(k) and c(k) lies in m.
inline bool expected_center_condition(const PairDescriptor& d)
{
    if (d.family == "S1xBDII")
        return d.params[0] == 1;
    if (d.family == "BDIIxBDII") {
        int p = d.params[0], n = d.params[1];
        return n == 2 || p == 1 || p == n - 1;
    }
    if (d.family == "BDI2")
        return true;
    if (d.family == "AIII2")
        return d.params[0] == 2;
    return false;
}

// ---------------------------------------------------------------------------
// symmetric pair

struct RestrictedRoot {
    Eigen::Vector2d gamma;  // real values on (H1, H2)
    int mult = 0;
    MatrixXd X;             // k-coordinates, one column per i
    MatrixXd Y;             // p-coordinates

    double at(const Eigen::Vector2d& h) const { return gamma.dot(h); }
};

// All vectors below are coordinates over orthonormal bases of k and p with
// respect to <,>_u; p_mats[0], p_mats[1] are H1, H2, so a = span(e0, e1).
struct SymmetricPair {
    PairDescriptor desc;
    MatrixLieAlgebra u;
    MatrixXd sigma;  // X -> sigma X sigma^T
    std::vector<MatrixXd> k_mats, p_mats;
    std::vector<MatrixXd> adk;   // ad(k_l) on p
    std::vector<MatrixXd> adkk;  // ad(k_l) on k
    std::vector<RestrictedRoot> roots;
    MatrixXd k0;      // centralizer of a in k, orthonormal columns
    MatrixXd center;  // c(k), orthonormal columns
    std::optional<VectorXd> z;  // complex-structure generator, k-coords
    bool center_condition = false;

    int dim_k() const { return static_cast<int>(k_mats.size()); }
    int dim_p() const { return static_cast<int>(p_mats.size()); }

    VectorXd h1() const { return VectorXd::Unit(dim_p(), 0); }
    VectorXd h2() const { return VectorXd::Unit(dim_p(), 1); }

    MatrixXd p_matrix(const VectorXd& c) const
    {
        MatrixXd m = MatrixXd::Zero(u.ambient_dim, u.ambient_dim);
        for (int i = 0; i < dim_p(); ++i)
            m += c(i) * p_mats[i];
        return m;
    }
    MatrixXd k_matrix(const VectorXd& c) const
    {
        MatrixXd m = MatrixXd::Zero(u.ambient_dim, u.ambient_dim);
        for (int i = 0; i < dim_k(); ++i)
            m += c(i) * k_mats[i];
        return m;
    }
    VectorXd p_coords(const MatrixXd& m) const
    {
        VectorXd c(dim_p());
        for (int i = 0; i < dim_p(); ++i)
            c(i) = inner(u, p_mats[i], m);
        return c;
    }
    VectorXd k_coords(const MatrixXd& m) const
    {
        VectorXd c(dim_k());
        for (int i = 0; i < dim_k(); ++i)
            c(i) = inner(u, k_mats[i], m);
        return c;
    }

    // ad(xi) on p and on k
    MatrixXd ad_p(const VectorXd& xi) const
    {
        MatrixXd a = MatrixXd::Zero(dim_p(), dim_p());
        for (int l = 0; l < dim_k(); ++l)
            if (xi(l) != 0.0)
                a += xi(l) * adk[l];
        return a;
    }
    MatrixXd ad_k(const VectorXd& xi) const
    {
        MatrixXd a = MatrixXd::Zero(dim_k(), dim_k());
        for (int l = 0; l < dim_k(); ++l)
            if (xi(l) != 0.0)
                a += xi(l) * adkk[l];
        return a;
    }
    MatrixXd Ad_p(const VectorXd& xi) const { return expm(ad_p(xi)); }
    MatrixXd Ad_k(const VectorXd& xi) const { return expm(ad_k(xi)); }

    // [a,b] for a, b in p, as k-coordinates
    VectorXd bracket_pp(const VectorXd& a, const VectorXd& b) const
    {
        VectorXd c(dim_k());
        for (int l = 0; l < dim_k(); ++l)
            c(l) = b.dot(adk[l] * a);
        return c;
    }

    // rows (ad(k_l) h)^T, so that M_h y = k-coords of [h, y]
    MatrixXd bracket_with(const VectorXd& h) const
    {
        MatrixXd m(dim_k(), dim_p());
        for (int l = 0; l < dim_k(); ++l)
            m.row(l) = (adk[l] * h).transpose();
        return m;
    }

    // J = ad(Z) on p
    MatrixXd complex_structure() const
    {
        if (!z)
            throw UnsupportedCase(desc.id + ": no complex-structure generator stored");
        return ad_p(*z);
    }

    int sum_multiplicities() const
    {
        int s = 0;
        for (const auto& r : roots)
            s += r.mult;
        return s;
    }
};

namespace detail {

struct Realization {
    MatrixLieAlgebra u;
    MatrixXd sigma;
    MatrixXd H1, H2;
    std::optional<MatrixXd> Z;
};

inline MatrixXd block_diag(const MatrixXd& a, const MatrixXd& b)
{
    MatrixXd m = MatrixXd::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    m.topLeftCorner(a.rows(), a.cols()) = a;
    m.bottomRightCorner(b.rows(), b.cols()) = b;
    return m;
}

inline MatrixXd diag_signs(int n, int negatives_from, int negatives_to)
{
    VectorXd d = VectorXd::Ones(n);
    for (int i = negatives_from; i < negatives_to; ++i)
        d(i) = -1.0;
    return d.asDiagonal();
}

// real n x n matrix m viewed as complex, realified
inline MatrixXd as_complex(const MatrixXd& m) { return block_diag(m, m); }

inline MatrixXd swap_blocks(int half)
{
    MatrixXd p = MatrixXd::Zero(2 * half, 2 * half);
    p.topRightCorner(half, half).setIdentity();
    p.bottomLeftCorner(half, half).setIdentity();
    return p;
}

inline MatrixXd imag_diag(const std::vector<double>& d)
{
    MatrixXcd z = MatrixXcd::Zero(static_cast<Eigen::Index>(d.size()),
                                  static_cast<Eigen::Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i)
        z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = {0.0, d[i]};
    return realify(z);
}

inline Realization realize(const PairDescriptor& d)
{
    const auto& f = d.family;
    auto par = [&](int i) { return d.params.at(static_cast<std::size_t>(i)); };
    Realization r;
    if (f == "S1xBDII") {
        const int n = par(0);
        r.u = direct_sum(make_u1(), make_so(n + 2));
        r.sigma = block_diag(diag_signs(2, 1, 2), diag_signs(n + 2, 0, 1));
        r.H1 = embed_block(make_u1().basis[0], 0, r.u.ambient_dim);
        r.H2 = embed_block(elementary_rotation(n + 2, 0, 1), 2, r.u.ambient_dim);
        if (n == 1)
            r.Z = embed_block(elementary_rotation(3, 1, 2), 2, r.u.ambient_dim);
    } else if (f == "BDIIxBDII") {
        const int p = par(0), n = par(1);
        const int a = p + 2, b = n + 2 - p;
        r.u = direct_sum(make_so(a), make_so(b));
        r.sigma = block_diag(diag_signs(a, 0, 1), diag_signs(b, 0, 1));
        r.H1 = embed_block(elementary_rotation(b, 0, 1), a, a + b);
        r.H2 = embed_block(elementary_rotation(a, 0, 1), 0, a + b);
        if (p == 1)
            r.Z = embed_block(elementary_rotation(3, 2, 1), 0, a + b);
    } else if (f == "AI2") {
        r.u = make_su(3);
        r.sigma = conj_sign(3);
        r.H1 = imag_diag({1, -1, 0});
        r.H2 = imag_diag({1, 1, -2});
    } else if (f == "a2") {
        r.u = direct_sum(make_su(3), make_su(3));
        r.sigma = swap_blocks(6);
        MatrixXd d1 = imag_diag({1, -1, 0}), d2 = imag_diag({1, 1, -2});
        r.H1 = block_diag(d1, -d1);
        r.H2 = block_diag(d2, -d2);
    } else if (f == "AII2") {
        r.u = make_su(6);
        r.sigma = realify(symplectic_j(3)) * conj_sign(6);
        r.H1 = imag_diag({1, -1, 0, 1, -1, 0});
        r.H2 = imag_diag({1, 1, -2, 1, 1, -2});
    } else if (f == "b2") {
        r.u = direct_sum(make_so(5), make_so(5));
        r.sigma = swap_blocks(5);
        MatrixXd l01 = elementary_rotation(5, 0, 1), l23 = elementary_rotation(5, 2, 3);
        r.H1 = block_diag(l01, -l01);
        r.H2 = block_diag(l23, -l23);
    } else if (f == "AIII2") {
        const int m = par(0);
        r.u = make_su(m + 2);
        r.sigma = as_complex(diag_signs(m + 2, 0, 2));
        r.H1 = as_complex(elementary_rotation(m + 2, 1, 3));
        r.H2 = as_complex(elementary_rotation(m + 2, 0, 2));
    } else if (f == "BDI2") {
        const int m = par(0);
        r.u = make_so(m + 2);
        r.sigma = diag_signs(m + 2, 2, m + 2);
        r.H1 = elementary_rotation(m + 2, 1, 3);
        r.H2 = elementary_rotation(m + 2, 0, 2);
        r.Z = elementary_rotation(m + 2, 0, 1);
    } else if (f == "CII2") {
        const int m = par(0), q = m + 2;
        r.u = make_sp(q);
        MatrixXd dd = diag_signs(q, 0, 2);
        r.sigma = as_complex(block_diag(dd, dd));
        r.H1 = as_complex(block_diag(elementary_rotation(q, 1, 3), elementary_rotation(q, 1, 3)));
        r.H2 = as_complex(block_diag(elementary_rotation(q, 0, 2), elementary_rotation(q, 0, 2)));
    } else if (f == "DIII2") {
        r.u = make_so(10);
        MatrixXd j = MatrixXd::Zero(10, 10);
        j.topRightCorner(5, 5) = -MatrixXd::Identity(5, 5);
        j.bottomLeftCorner(5, 5) = MatrixXd::Identity(5, 5);
        r.sigma = j;
        MatrixXd a23 = elementary_rotation(5, 2, 3), a01 = elementary_rotation(5, 0, 1);
        r.H1 = block_diag(a23, -a23);
        r.H2 = block_diag(a01, -a01);
    } else {
        throw UnsupportedCase(d.id + " has no matrix model here");
    }
    return r;
}

// Gram-Schmidt under <,>_u.
inline void orthonormal_append(const MatrixLieAlgebra& u, std::vector<MatrixXd>& out,
                               MatrixXd v, double drop_tol = 1e-9)
{
    double n0 = std::sqrt(std::max(0.0, inner(u, v, v)));
    if (n0 == 0.0)
        return;
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : out)
            v -= inner(u, q, v) * q;
    double n1 = std::sqrt(std::max(0.0, inner(u, v, v)));
    if (n1 > drop_tol * n0)
        out.push_back(v / n1);
}

} // namespace detail

inline constexpr double kClusterTol = 1e-6;
inline constexpr double kClusterGap = 1e-4;
// generic reference angle for clustering
inline const double kReferenceAngle = 1.0 / std::sqrt(2.0);

inline Eigen::Vector2d reference_direction()
{
    return {std::cos(kReferenceAngle), std::sin(kReferenceAngle)};
}

// k, p, a only.
inline SymmetricPair canonical_decomposition(const PairDescriptor& desc)
{
    if (!desc.matrix_realizable)
        throw UnsupportedCase(desc.id + " is not matrix-realizable");
    auto r = detail::realize(desc);
    SymmetricPair sp;
    sp.desc = desc;
    sp.u = r.u;
    sp.sigma = r.sigma;
    const MatrixXd& S = r.sigma;
    if (max_abs(S * S.transpose() - MatrixXd::Identity(S.rows(), S.cols())) > 1e-14)
        throw StructuralError(desc.id + ": involution is not orthogonal");

    auto sig = [&](const MatrixXd& x) -> MatrixXd { return S * x * S.transpose(); };
    for (const auto* h : {&r.H1, &r.H2}) {
        if (r.u.projection_residual(*h) > 1e-12 || max_abs(sig(*h) + *h) > 1e-14)
            throw StructuralError(desc.id + ": stored a-basis element not in p");
    }
    if (max_abs(commutator(r.H1, r.H2)) > 1e-14)
        throw StructuralError(desc.id + ": stored a-basis does not commute");

    detail::orthonormal_append(r.u, sp.p_mats, r.H1);
    detail::orthonormal_append(r.u, sp.p_mats, r.H2);
    if (sp.p_mats.size() != 2 || std::abs(inner(r.u, r.H1, r.H2)) > 1e-14)
        throw StructuralError(desc.id + ": stored a-basis is not orthogonal");
    // sigma is a signed permutation in every model, so both halves are exact
    for (const auto& x : r.u.basis) {
        MatrixXd s = sig(x);
        detail::orthonormal_append(r.u, sp.k_mats, 0.5 * (x + s));
        detail::orthonormal_append(r.u, sp.p_mats, 0.5 * (x - s));
    }
    if (sp.dim_k() + sp.dim_p() != r.u.dim())
        throw StructuralError(desc.id + ": k + p does not span u");
    if (sp.dim_p() != desc.n + 2)
        throw StructuralError(desc.id + ": dim p = " + std::to_string(sp.dim_p()) +
                              ", expected n + 2 = " + std::to_string(desc.n + 2));

    const int kd = sp.dim_k(), pd = sp.dim_p();
    sp.adk.assign(static_cast<std::size_t>(kd), MatrixXd::Zero(pd, pd));
    sp.adkk.assign(static_cast<std::size_t>(kd), MatrixXd::Zero(kd, kd));
    for (int l = 0; l < kd; ++l) {
        for (int j = 0; j < pd; ++j) {
            MatrixXd c = commutator(sp.k_mats[l], sp.p_mats[j]);
            for (int i = 0; i < pd; ++i)
                sp.adk[l](i, j) = inner(r.u, sp.p_mats[i], c);
        }
        for (int j = 0; j < kd; ++j) {
            MatrixXd c = commutator(sp.k_mats[l], sp.k_mats[j]);
            for (int i = 0; i < kd; ++i)
                sp.adkk[l](i, j) = inner(r.u, sp.k_mats[i], c);
        }
    }
    if (r.Z)
        sp.z = sp.k_coords(*r.Z);
    return sp;
}

inline double root_eval(const RestrictedRoot& g, double theta)
{
    return g.gamma(0) * std::cos(theta) + g.gamma(1) * std::sin(theta);
}

// Groups a sorted spectrum (from index `from`) into clusters of width
// kClusterTol * scale; neighbouring clusters must be kClusterGap * scale apart.
inline std::vector<std::pair<int, int>> cluster_spectrum(const VectorXd& ev, int from, double scale,
                                                         const std::string& who = "spectrum")
{
    std::vector<std::pair<int, int>> out;
    const int n = static_cast<int>(ev.size());
    int start = from;
    while (start < n) {
        int end = start + 1;
        while (end < n && ev(end) - ev(end - 1) <= kClusterTol * scale)
            ++end;
        if (end < n && ev(end) - ev(end - 1) < kClusterGap * scale)
            throw DegeneracyError(who + ": eigenvalues " + std::to_string(ev(end - 1)) + " and " +
                                  std::to_string(ev(end)) + " are neither clustered nor separated");
        out.emplace_back(start, end);
        start = end;
    }
    return out;
}

// Completes the pair: restricted roots, standard bases, k0, center.
inline void restricted_root_decomposition(SymmetricPair& sp)
{
    const int kd = sp.dim_k(), pd = sp.dim_p();
    const Eigen::Vector2d ref = reference_direction();
    const VectorXd hs = ref(0) * sp.h1() + ref(1) * sp.h2();
    const MatrixXd M1 = sp.bracket_with(sp.h1()), M2 = sp.bracket_with(sp.h2());
    const MatrixXd Ms = sp.bracket_with(hs);

    if (max_abs(M1 * sp.h2()) > 1e-12)
        throw StructuralError(sp.desc.id + ": a is not abelian");

    Eigen::SelfAdjointEigenSolver<MatrixXd> es(Ms.transpose() * Ms);
    const VectorXd& ev = es.eigenvalues();
    const MatrixXd& V = es.eigenvectors();
    const double top = std::max(1.0, ev.cwiseAbs().maxCoeff());

    int zeros = 0;
    while (zeros < pd && std::abs(ev(zeros)) <= kClusterTol * top)
        ++zeros;
    if (zeros != 2)
        throw StructuralError(sp.desc.id + ": centralizer of a in p has dimension " +
                              std::to_string(zeros) + " (a not maximal or H* singular)");

    sp.roots.clear();
    for (auto [start, end] : cluster_spectrum(ev, zeros, top, sp.desc.id)) {
        const int m = end - start;
        MatrixXd Yc = V.middleCols(start, m);
        MatrixXd q1 = (M1 * Yc).transpose() * (M1 * Yc);
        MatrixXd q2 = (M2 * Yc).transpose() * (M2 * Yc);
        MatrixXd q12 = (M1 * Yc).transpose() * (M2 * Yc);
        const double c1 = q1.trace() / m, c2 = q2.trace() / m, c12 = q12.trace() / m;
        double dev = std::max({max_abs(q1 - c1 * MatrixXd::Identity(m, m)),
                               max_abs(q2 - c2 * MatrixXd::Identity(m, m)),
                               max_abs(q12 - c12 * MatrixXd::Identity(m, m))});
        if (dev > 1e-8 * top)
            throw DegeneracyError(sp.desc.id + ": eigenspace of (ad H*)^2 is not a joint root space");
        RestrictedRoot g;
        g.gamma = {std::sqrt(std::max(0.0, c1)), std::sqrt(std::max(0.0, c2))};
        if (c12 < 0.0)
            g.gamma(1) = -g.gamma(1);
        double gs = g.gamma.dot(ref);
        if (gs < 0.0) {
            g.gamma = -g.gamma;
            gs = -gs;
        }
        g.mult = m;
        g.Y = Yc;
        g.X = -Ms * Yc / gs;
        sp.roots.push_back(std::move(g));
    }

    MatrixXd C(2 * pd, kd);
    C.topRows(pd) = M1.transpose();
    C.bottomRows(pd) = M2.transpose();
    sp.k0 = null_space(C);

    MatrixXd stacked(kd * kd, kd);
    for (int l = 0; l < kd; ++l)
        stacked.middleRows(l * kd, kd) = sp.adkk[l];
    sp.center = null_space(stacked);

    if (sp.k0.cols() + sp.sum_multiplicities() != kd)
        throw StructuralError(sp.desc.id + ": dim k != dim k0 + sum m(gamma)");
    if (sp.sum_multiplicities() != sp.desc.n)
        throw StructuralError(sp.desc.id + ": sum of multiplicities != n");

    bool in_m = sp.center.cols() > 0 &&
                max_abs(sp.k0.transpose() * sp.center) <= 1e-9;
    sp.center_condition = in_m;
}

inline SymmetricPair build_pair(const PairDescriptor& desc)
{
    auto sp = canonical_decomposition(desc);
    restricted_root_decomposition(sp);
    return sp;
}

inline SymmetricPair build_pair(const std::string& id) { return build_pair(parse_pair_id(id)); }

// Max residual of the standard-basis relations at h (p-coords in a).
inline double std_basis_residual(const SymmetricPair& sp, const Eigen::Vector2d& hc)
{
    const VectorXd h = hc(0) * sp.h1() + hc(1) * sp.h2();
    const MatrixXd Mh = sp.bracket_with(h);
    double worst = 0.0;
    for (const auto& g : sp.roots) {
        const double v = g.gamma.dot(hc);
        // [H, X] = v Y  and  [H, Y] = -v X
        worst = std::max(worst, max_abs(-Mh.transpose() * g.X - v * g.Y));
        worst = std::max(worst, max_abs(Mh * g.Y + v * g.X));
    }
    return worst;
}

// Largest projection residual among [k,k] in k, [k,p] in p, [p,p] in k.
inline double decomposition_residual(const SymmetricPair& sp)
{
    double worst = 0.0;
    auto res_k = [&](const MatrixXd& m) { return max_abs(m - sp.k_matrix(sp.k_coords(m))); };
    auto res_p = [&](const MatrixXd& m) { return max_abs(m - sp.p_matrix(sp.p_coords(m))); };
    for (int i = 0; i < sp.dim_k(); ++i) {
        for (int j = i + 1; j < sp.dim_k(); ++j)
            worst = std::max(worst, res_k(commutator(sp.k_mats[i], sp.k_mats[j])));
        for (int j = 0; j < sp.dim_p(); ++j)
            worst = std::max(worst, res_p(commutator(sp.k_mats[i], sp.p_mats[j])));
    }
    for (int i = 0; i < sp.dim_p(); ++i)
        for (int j = i + 1; j < sp.dim_p(); ++j)
            worst = std::max(worst, res_k(commutator(sp.p_mats[i], sp.p_mats[j])));
    return worst;
}

// H = cos(theta) H1 + sin(theta) H2, rejected within 1e-6 of a wall.
inline VectorXd regular_element(const SymmetricPair& sp, double theta)
{
    for (const auto& g : sp.roots) {
        double dist = std::abs(root_eval(g, theta)) / g.gamma.norm();
        if (dist <= 1e-6)
            throw SingularElement(sp.desc.id + ": theta = " + std::to_string(theta) +
                                  " lies on a root wall");
    }
    return std::cos(theta) * sp.h1() + std::sin(theta) * sp.h2();
}

} // namespace isolag
