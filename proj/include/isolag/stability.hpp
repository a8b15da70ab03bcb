#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "data.hpp"
#include "errors.hpp"
#include "rational.hpp"
#include "rootsys.hpp"
#include "sympair.hpp"

namespace isolag {

// g = 3 cases: K and its root system, the lattice D(K, K0) lives in.
struct StabilityCase {
    std::string id;
    char k_family;
    int k_rank;
    Lattice lattice;
    std::string quotient;  // K / K[a]
};

inline const std::vector<StabilityCase>& stability_cases()
{
    static const std::vector<StabilityCase> cases = {
        {"AI2", 'A', 1, Lattice::weight, "SU(2)/K~[a]"},
        {"a2", 'A', 2, Lattice::root, "SU(3)/T^2.Z3"},
        {"AII2", 'C', 3, Lattice::root, "Sp(3)/Sp(1)^3.Z3"},
        {"EIV", 'F', 4, Lattice::root, "F4/Spin(8).Z3"},
    };
    return cases;
}

inline const StabilityCase& stability_case(const std::string& id)
{
    for (const auto& c : stability_cases())
        if (c.id == id)
            return c;
    throw ConfigError("unknown stability case: " + id);
}

struct ConstantsRow {
    std::string case_id;
    int n = 0;
    int dim_p = 0;
    int dim_k = 0;
    Rational b_inv;
    Rational gamma1_norm_sq;
    Rational C;
    Rational Cn;
};

inline int lie_algebra_dim(const RootSystemData& rs)
{
    return rs.rank + 2 * static_cast<int>(rs.positive_roots.size());
}

// b = 1 - dim p / (2 dim k), C b (dim p - 2) = 1, |gamma_1|^2 = 1/(dim p - 2).
inline ConstantsRow casimir_constants(const std::string& id)
{
    const auto& c = stability_case(id);
    ConstantsRow r;
    r.case_id = id;
    r.n = describe(id, {}).n;
    r.dim_p = r.n + 2;
    r.dim_k = lie_algebra_dim(build_root_system(c.k_family, c.k_rank));
    Rational b = 1 - Rational(r.dim_p) / (2 * r.dim_k);
    r.b_inv = 1 / b;
    r.gamma1_norm_sq = Rational(1) / (r.dim_p - 2);
    r.C = 1 / (b * (r.dim_p - 2));
    r.Cn = r.C * r.n;
    return r;
}

inline RootSystemData case_root_system(const std::string& id)
{
    const auto& c = stability_case(id);
    return build_root_system(c.k_family, c.k_rank);
}

// The closed forms for -c(Lambda) with Lambda = sum m_i L_i = sum p_i alpha_i.
inline Rational case_eigenvalue_formula(const std::string& id, const std::vector<int>& m, const RVec& p)
{
    auto rs = case_root_system(id);
    auto w = make_weight(rs, m);
    if (p.size() != w.p.size())
        throw DomainError(id + ": root coordinates have wrong length");
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != w.p[i])
            throw DomainError(id + ": root coordinates " + rational_list(p) + " do not match " +
                              weight_label(w));
    auto M = [&](int i) { return Rational(m[i]); };
    if (id == "AI2")
        return M(0) * (M(0) + 2) / 8;
    if (id == "a2")
        return (M(0) * p[0] + M(1) * p[1] + 2 * p[0] + 2 * p[1]) / 6;
    if (id == "AII2")
        return (M(0) * p[0] + M(1) * p[1] + 2 * M(2) * p[2] + 2 * p[0] + 2 * p[1] + 4 * p[2]) / 16;
    // EIV
    return (M(0) * p[0] + M(1) * p[1] + M(2) * p[2] / 2 + M(3) * p[3] / 2 + 2 * p[0] + 2 * p[1] + p[2] +
            p[3]) /
           18;
}

// ---------------------------------------------------------------------------
// SU(2) finite subgroups and the representations rho_m on homogeneous
// polynomials, basis v_k = z0^(m-k) z1^k / sqrt(k! (m-k)!).

using Mat2c = Eigen::Matrix2cd;
using cd = std::complex<double>;

inline std::vector<Mat2c> k0_tilde_elements()
{
    const cd i(0, 1);
    Mat2c e, a, b, c;
    e << 1, 0, 0, 1;
    a << 0, -1, 1, 0;
    b << i, 0, 0, -i;
    c << 0, i, i, 0;
    return {e, -e, a, -a, b, -b, c, -c};
}

inline Mat2c b_element()
{
    const cd h(0.5, 0.5), g(-0.5, 0.5), f(0.5, -0.5);
    Mat2c B;
    B << h, h, g, f;
    return B;
}

// Printed extra generators of K~[a]: +-B and +-B^2.
inline std::vector<Mat2c> ka_tilde_generators()
{
    auto gens = k0_tilde_elements();
    Mat2c B = b_element(), B2 = B * B;
    for (const Mat2c& x : {B, Mat2c(-B), B2, Mat2c(-B2)})
        gens.push_back(x);
    return gens;
}

inline std::vector<Mat2c> group_closure(const std::vector<Mat2c>& gens, std::size_t max_order = 256)
{
    std::vector<Mat2c> g;
    auto known = [&](const Mat2c& x) {
        return std::any_of(g.begin(), g.end(), [&](const Mat2c& y) { return (x - y).cwiseAbs().maxCoeff() < 1e-12; });
    };
    for (const auto& x : gens)
        if (!known(x))
            g.push_back(x);
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < gens.size(); ++j) {
            Mat2c y = g[i] * gens[j];
            if (!known(y)) {
                g.push_back(y);
                if (g.size() > max_order)
                    throw NumericalConsistency("group closure exceeded order bound");
            }
        }
    return g;
}

enum class Su2Subgroup { K0_tilde, Ka_tilde };

inline const std::vector<Mat2c>& su2_subgroup(Su2Subgroup s)
{
    static const std::vector<Mat2c> k0 = group_closure(k0_tilde_elements());
    static const std::vector<Mat2c> ka = group_closure(ka_tilde_generators());
    return s == Su2Subgroup::K0_tilde ? k0 : ka;
}

// (rho_m(g) f)(z) = f(z g) with z = (z0, z1) a row vector.
inline Eigen::MatrixXcd rho(int m, const Mat2c& g)
{
    if (m < 0)
        throw DomainError("rho: negative degree");
    // z0' = g00 z0 + g10 z1, z1' = g01 z0 + g11 z1; polynomials indexed by power of z1
    auto mul = [](const std::vector<cd>& a, const std::vector<cd>& b) {
        std::vector<cd> c(a.size() + b.size() - 1, cd(0));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                c[i + j] += a[i] * b[j];
        return c;
    };
    const std::vector<cd> x0 = {g(0, 0), g(1, 0)}, x1 = {g(0, 1), g(1, 1)};
    std::vector<double> norm(m + 1);
    for (int k = 0; k <= m; ++k)
        norm[k] = std::sqrt(std::tgamma(k + 1.0) * std::tgamma(m - k + 1.0));
    Eigen::MatrixXcd R(m + 1, m + 1);
    for (int k = 0; k <= m; ++k) {
        std::vector<cd> poly = {cd(1)};
        for (int t = 0; t < m - k; ++t)
            poly = mul(poly, x0);
        for (int t = 0; t < k; ++t)
            poly = mul(poly, x1);
        for (int j = 0; j <= m; ++j)
            R(j, k) = poly[j] * norm[j] / norm[k];
    }
    return R;
}

inline Eigen::MatrixXcd su2_fixed_projector(int m, const std::vector<Mat2c>& group)
{
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(m + 1, m + 1);
    for (const auto& g : group)
        P += rho(m, g);
    return P / static_cast<double>(group.size());
}

inline double su2_fixed_trace(int m, Su2Subgroup s) { return su2_fixed_projector(m, su2_subgroup(s)).trace().real(); }

inline int su2_fixed_dimension(int m, Su2Subgroup s)
{
    if (m < 0)
        throw DomainError("su2_fixed_dimension: negative degree");
    Eigen::MatrixXcd P = su2_fixed_projector(m, su2_subgroup(s));
    cd tr = P.trace();
    double r = std::round(tr.real());
    if (std::abs(tr.real() - r) > 1e-8 || std::abs(tr.imag()) > 1e-8)
        throw NumericalConsistency("projector trace " + std::to_string(tr.real()) + " is not an integer");
    return static_cast<int>(r);
}

// (1/|G|) sum_g sin((m+1) t_g) / sin(t_g) with tr g = 2 cos t_g.
inline double su2_character_average(int m, Su2Subgroup s)
{
    const auto& G = su2_subgroup(s);
    double sum = 0.0;
    for (const auto& g : G) {
        double c = std::clamp(g.trace().real() / 2.0, -1.0, 1.0);
        double t = std::acos(c);
        if (std::abs(std::sin(t)) < 1e-12)
            sum += (c > 0 ? 1.0 : (m % 2 ? -1.0 : 1.0)) * (m + 1);
        else
            sum += std::sin((m + 1) * t) / std::sin(t);
    }
    return sum / static_cast<double>(G.size());
}

// Unit-basis vector w_i / w'_i spanning (V_m)_{K0}, m even.
inline std::vector<Eigen::VectorXcd> k0_fixed_spanning_set(int m)
{
    std::vector<Eigen::VectorXcd> out;
    if (m % 2)
        return out;
    int p = m / 2;
    if (p % 2 == 0) {
        int l = p / 2;
        for (int i = 1; i <= l + 1; ++i) {
            Eigen::VectorXcd w = Eigen::VectorXcd::Zero(m + 1);
            w(2 * (i - 1)) += 0.5;
            w(4 * l - 2 * (i - 1)) += 0.5;
            out.push_back(w);
        }
    } else {
        int l = (p - 1) / 2;
        for (int i = 1; i <= l; ++i) {
            Eigen::VectorXcd w = Eigen::VectorXcd::Zero(m + 1);
            w(2 * i - 1) += 0.5;
            w(4 * l - 2 * i + 3) -= 0.5;
            out.push_back(w);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

struct Candidate {
    DominantWeight weight;
    std::string label;
    Rational eigenvalue;  // -c(Lambda)
    int fixed_dim = 0;    // dim (V)_{K[a]}
    BigInt weyl_dim;
    std::string source;   // computed / curated / derived / trivial
};

struct StabilityReport {
    std::string case_id;
    int g = 3;
    Rational Cn;
    std::vector<Candidate> candidates;
    std::optional<Rational> min_positive_eigenvalue;
    bool h_stable = false;
    std::optional<BigInt> nullity;
    std::optional<BigInt> killing_nullity;  // dim so(n+2) - dim k
    bool strict = false;
    std::string rule;
};

inline const BranchingDatum& find_branching(const std::vector<BranchingDatum>& data, const std::string& id,
                                            const DominantWeight& w)
{
    for (const auto& d : data)
        if (d.case_id == id && d.weight == w.m)
            return d;
    throw IncompleteData(id + ": no branching datum for weight " + weight_label(w));
}

inline StabilityReport stability_verdict(const std::string& id, const std::vector<BranchingDatum>& branching)
{
    const auto& sc = stability_case(id);
    const auto rs = case_root_system(id);
    const auto cons = casimir_constants(id);
    StabilityReport rep;
    rep.case_id = id;
    rep.Cn = cons.Cn;
    rep.rule = "min -c over D(K,K[a]) \\ 0 equals Cn";
    for (const auto& w : dominant_weights_below(rs, cons.Cn, sc.lattice)) {
        Candidate c;
        c.weight = w;
        c.label = weight_label(w);
        c.eigenvalue = casimir_eigenvalue(rs, w);
        c.weyl_dim = weyl_dimension(rs, w);
        bool zero = std::all_of(w.m.begin(), w.m.end(), [](int x) { return x == 0; });
        if (zero) {
            c.fixed_dim = 1;
            c.source = "trivial";
        } else if (id == "AI2") {
            c.fixed_dim = su2_fixed_dimension(w.m[0], Su2Subgroup::Ka_tilde);
            c.source = "computed";
        } else {
            const auto& d = find_branching(branching, id, w);
            if (d.fixed_dim > c.weyl_dim)
                throw ConfigError(id + ": fixed dimension exceeds Weyl dimension for " + c.label);
            c.fixed_dim = d.fixed_dim;
            c.source = d.source;
        }
        rep.candidates.push_back(std::move(c));
    }
    for (const auto& c : rep.candidates)
        if (c.eigenvalue > 0 && c.fixed_dim > 0 &&
            (!rep.min_positive_eigenvalue || c.eigenvalue < *rep.min_positive_eigenvalue))
            rep.min_positive_eigenvalue = c.eigenvalue;
    rep.h_stable = rep.min_positive_eigenvalue && *rep.min_positive_eigenvalue == cons.Cn;
    BigInt nul = 0;
    for (const auto& c : rep.candidates)
        if (c.eigenvalue == cons.Cn)
            nul += BigInt(c.fixed_dim) * c.weyl_dim;
    rep.nullity = nul;
    int N = cons.n + 2;
    rep.killing_nullity = BigInt(N * (N - 1) / 2 - cons.dim_k);
    rep.strict = rep.h_stable && nul == *rep.killing_nullity;
    return rep;
}

inline StabilityReport stability_verdict(const std::string& id) { return stability_verdict(id, load_branching()); }

inline StabilityReport stability_verdict_g1(int n)
{
    if (n < 1)
        throw DomainError("g=1 needs n >= 1");
    StabilityReport r;
    r.case_id = "S1xBDII(" + std::to_string(n) + ")";
    r.g = 1;
    r.h_stable = true;
    r.rule = "g=1: always stable";
    return r;
}

// Clifford S^m1 x S^m2; the pair is unordered.
inline StabilityReport stability_verdict_g2(int m1, int m2)
{
    if (m1 < 1 || m2 < 1)
        throw DomainError("g=2 needs m1, m2 >= 1");
    StabilityReport r;
    r.case_id = "BDIIxBDII(" + std::to_string(std::min(m1, m2)) + "," + std::to_string(m1 + m2) + ")";
    r.g = 2;
    r.h_stable = std::abs(m2 - m1) < 3;
    r.rule = "g=2: stable iff |m2-m1| < 3";
    return r;
}

} // namespace isolag
