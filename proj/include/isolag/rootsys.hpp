#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace isolag {

// Root data in the usual Euclidean models (Bourbaki numbering):
//   A_l in R^{l+1}, B_l C_l D_l F_4 in R^l, E_6 in R^8.
struct RootSystemData {
    char family = 'A';
    int rank = 0;
    int ambient = 0;
    std::vector<RVec> simple_roots;
    std::vector<std::vector<int>> cartan; // cartan[i][j] = 2(a_i,a_j)/(a_j,a_j)
    std::vector<RVec> fundamental_weights;
    std::vector<RVec> positive_roots;
    RVec delta;
    RVec highest_root;
    // (x,y)_K = killing_normalizer * (x,y) is the form dual to the Killing form
    Rational killing_normalizer;

    std::string label() const { return std::string(1, family) + std::to_string(rank); }
};

struct DominantWeight {
    std::vector<int> m;  // over fundamental weights
    RVec p;              // over simple roots
};

enum class Lattice { root, weight };

namespace detail {

inline RVec ev(int n, std::initializer_list<std::pair<int, Rational>> entries)
{
    RVec v = rzeros(static_cast<std::size_t>(n));
    for (const auto& [i, c] : entries)
        v[static_cast<std::size_t>(i)] = c;
    return v;
}

inline std::vector<RVec> simple_roots_for(char family, int l, int& ambient)
{
    std::vector<RVec> s;
    const Rational one(1), half = rat(1, 2);
    auto chain = [&](int n, int count) {
        for (int i = 0; i < count; ++i)
            s.push_back(ev(n, {{i, one}, {i + 1, -one}}));
    };
    switch (family) {
    case 'A':
        ambient = l + 1;
        chain(ambient, l);
        break;
    case 'B':
        ambient = l;
        chain(l, l - 1);
        s.push_back(ev(l, {{l - 1, one}}));
        break;
    case 'C':
        ambient = l;
        chain(l, l - 1);
        s.push_back(ev(l, {{l - 1, Rational(2)}}));
        break;
    case 'D':
        ambient = l;
        chain(l, l - 1);
        s.push_back(ev(l, {{l - 2, one}, {l - 1, one}}));
        break;
    case 'F':
        ambient = 4;
        s.push_back(ev(4, {{1, one}, {2, -one}}));
        s.push_back(ev(4, {{2, one}, {3, -one}}));
        s.push_back(ev(4, {{3, one}}));
        s.push_back(ev(4, {{0, half}, {1, -half}, {2, -half}, {3, -half}}));
        break;
    case 'E': {
        ambient = 8;
        RVec a1 = rzeros(8);
        for (int i = 0; i < 8; ++i)
            a1[i] = (i == 0 || i == 7) ? half : -half;
        s.push_back(a1);
        s.push_back(ev(8, {{0, one}, {1, one}}));
        for (int i = 0; i < 4; ++i)
            s.push_back(ev(8, {{i + 1, one}, {i, -one}}));
        break;
    }
    default:
        break;
    }
    return s;
}

inline int expected_positive_count(char family, int l)
{
    switch (family) {
    case 'A': return l * (l + 1) / 2;
    case 'B':
    case 'C': return l * l;
    case 'D': return l * (l - 1);
    case 'E': return 36;
    case 'F': return 24;
    }
    return -1;
}

} // namespace detail

inline bool supported_root_type(char family, int l)
{
    switch (family) {
    case 'A': return l >= 1;
    case 'B': return l >= 2;
    case 'C': return l >= 2;
    case 'D': return l >= 3;
    case 'E': return l == 6;
    case 'F': return l == 4;
    }
    return false;
}

// Integer coefficients of v over the simple roots; v must lie in the root
// lattice span.
inline RVec simple_root_coords(const RootSystemData& rs, const RVec& v)
{
    auto c = solve_in_span(rs.simple_roots, v);
    if (!c)
        throw DomainError(rs.label() + ": vector not in the span of the simple roots");
    return *c;
}

inline RootSystemData build_root_system(char family, int rank)
{
    if (!supported_root_type(family, rank))
        throw ConfigError(std::string("unsupported root system ") + family + std::to_string(rank));
    RootSystemData rs;
    rs.family = family;
    rs.rank = rank;
    rs.simple_roots = detail::simple_roots_for(family, rank, rs.ambient);
    const int l = rank;
    const auto& a = rs.simple_roots;

    rs.cartan.assign(l, std::vector<int>(l, 0));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) {
            Rational c = 2 * dot(a[i], a[j]) / dot(a[j], a[j]);
            if (!is_integer(c))
                throw StructuralError(rs.label() + ": non-integral Cartan entry");
            rs.cartan[i][j] = static_cast<int>(c.get_num().get_si());
        }

    // positive roots by height, using root strings through simple roots
    std::vector<RVec> roots = a;
    std::vector<RVec> layer = a;
    auto known = [&](const RVec& v) { return std::find(roots.begin(), roots.end(), v) != roots.end(); };
    while (!layer.empty()) {
        std::vector<RVec> next;
        for (const auto& beta : layer)
            for (int i = 0; i < l; ++i) {
                if (beta == a[i])
                    continue;
                int r = 0;
                while (known(beta - Rational(r + 1) * a[i]))
                    ++r;
                Rational pair = 2 * dot(beta, a[i]) / dot(a[i], a[i]);
                Rational q = Rational(r) - pair;
                if (q > 0) {
                    RVec up = beta + a[i];
                    if (!known(up) && std::find(next.begin(), next.end(), up) == next.end())
                        next.push_back(up);
                }
            }
        for (const auto& v : next)
            roots.push_back(v);
        layer = std::move(next);
    }
    rs.positive_roots = roots;
    if (static_cast<int>(roots.size()) != detail::expected_positive_count(family, rank))
        throw StructuralError(rs.label() + ": found " + std::to_string(roots.size()) +
                              " positive roots");
    rs.highest_root = roots.back();

    // Lambda_i = sum_k (A^{-1})_{ik} alpha_k
    std::vector<RVec> am(l, rzeros(l));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            am[i][j] = rs.cartan[i][j];
    auto ainv = inverse(am);
    for (int i = 0; i < l; ++i) {
        RVec w = rzeros(rs.ambient);
        for (int k = 0; k < l; ++k)
            w = w + ainv[i][k] * a[k];
        rs.fundamental_weights.push_back(w);
    }

    rs.delta = rzeros(rs.ambient);
    for (const auto& r : roots)
        rs.delta = rs.delta + rat(1, 2) * r;
    RVec wsum = rzeros(rs.ambient);
    for (const auto& w : rs.fundamental_weights)
        wsum = wsum + w;
    if (wsum != rs.delta)
        throw StructuralError(rs.label() + ": delta differs from the sum of fundamental weights");

    // B(H_x, H_y) = c (x,y), c = sum over all roots (alpha,x)^2 / (x,x)
    Rational c = 0;
    for (const auto& r : roots) {
        Rational t = dot(r, a[0]);
        c += 2 * t * t;
    }
    c /= dot(a[0], a[0]);
    rs.killing_normalizer = 1 / c;
    return rs;
}

inline DominantWeight make_weight(const RootSystemData& rs, const std::vector<int>& m)
{
    if (static_cast<int>(m.size()) != rs.rank)
        throw DomainError(rs.label() + ": weight needs " + std::to_string(rs.rank) + " coordinates");
    for (int x : m)
        if (x < 0)
            throw DomainError(rs.label() + ": weight is not dominant");
    RVec v = rzeros(rs.ambient);
    for (int i = 0; i < rs.rank; ++i)
        v = v + Rational(m[i]) * rs.fundamental_weights[i];
    return {m, simple_root_coords(rs, v)};
}

inline RVec weight_vector(const RootSystemData& rs, const DominantWeight& w)
{
    RVec v = rzeros(rs.ambient);
    for (int i = 0; i < rs.rank; ++i)
        v = v + Rational(w.m[i]) * rs.fundamental_weights[i];
    return v;
}

inline bool in_root_lattice(const DominantWeight& w)
{
    return std::all_of(w.p.begin(), w.p.end(), [](const Rational& x) { return is_integer(x); });
}

// -c(Lambda) = <Lambda, Lambda + 2 delta> with the Killing-dual form.
inline Rational casimir_eigenvalue(const RootSystemData& rs, const DominantWeight& w)
{
    RVec v = weight_vector(rs, w);
    return rs.killing_normalizer * dot(v, v + Rational(2) * rs.delta);
}

inline BigInt weyl_dimension(const RootSystemData& rs, const DominantWeight& w)
{
    RVec shifted = weight_vector(rs, w) + rs.delta;
    Rational d = 1;
    for (const auto& r : rs.positive_roots)
        d *= dot(shifted, r) / dot(rs.delta, r);
    if (!is_integer(d))
        throw NumericalConsistency(rs.label() + ": non-integral Weyl dimension");
    return d.get_num();
}

// All dominant weights with Casimir value <= cap, sorted by (value, m).
// Bound: <L, L+2d> >= <L, 2d> >= m_i <L_i, 2d>.
inline std::vector<DominantWeight> dominant_weights_below(const RootSystemData& rs,
                                                         const Rational& cap,
                                                         Lattice lattice = Lattice::root)
{
    std::vector<int> bound(rs.rank);
    for (int i = 0; i < rs.rank; ++i) {
        Rational unit = rs.killing_normalizer * dot(rs.fundamental_weights[i], Rational(2) * rs.delta);
        bound[i] = cap < 0 ? -1 : static_cast<int>(floor_int(cap / unit).get_si());
    }
    std::vector<DominantWeight> out;
    if (cap < 0)
        return out;
    std::vector<int> m(rs.rank, 0);
    while (true) {
        DominantWeight w = make_weight(rs, m);
        if ((lattice == Lattice::weight || in_root_lattice(w)) && casimir_eigenvalue(rs, w) <= cap)
            out.push_back(w);
        int i = 0;
        while (i < rs.rank && m[i] == bound[i]) {
            m[i] = 0;
            ++i;
        }
        if (i == rs.rank)
            break;
        ++m[i];
    }
    std::stable_sort(out.begin(), out.end(), [&](const DominantWeight& x, const DominantWeight& y) {
        Rational cx = casimir_eigenvalue(rs, x), cy = casimir_eigenvalue(rs, y);
        if (cx != cy)
            return cx < cy;
        return x.m < y.m;
    });
    return out;
}

inline std::string weight_label(const DominantWeight& w)
{
    std::string s;
    for (std::size_t i = 0; i < w.m.size(); ++i) {
        if (w.m[i] == 0)
            continue;
        if (!s.empty())
            s += "+";
        if (w.m[i] != 1)
            s += std::to_string(w.m[i]);
        s += "L" + std::to_string(i + 1);
    }
    return s.empty() ? "0" : s;
}

inline bool is_root(const RootSystemData& rs, const RVec& v)
{
    for (const auto& r : rs.positive_roots)
        if (r == v || r == Rational(-1) * v)
            return true;
    return false;
}

// ---------------------------------------------------------------------------
// Hermitian cases: strongly orthogonal roots gamma_1 = alpha_{i0},
// gamma_2 = highest root, and the center generator xi_{i0} (the fundamental
// coweight dual to alpha_{i0}). Vectors are the coordinates of H_alpha; the
// imaginary unit in alpha(H) = sqrt(-1)(H_alpha, H) is bookkeeping only.
struct HermitianCaseData {
    std::string label;
    int param = 0;
    char family = 'A';
    int rank = 0;
    RVec alpha_tilde;
    int i0 = 0; // 1-based
    RVec alpha_i0;
    RVec xi_i0;
    RVec h_gamma1;
    RVec h_gamma2;
};

// Stored tables. AIII2 takes m >= 2, BII2 and DII2 take the rank l.
inline HermitianCaseData hermitian_case(const std::string& label, int param = 0)
{
    HermitianCaseData d;
    d.label = label;
    d.param = param;
    const Rational one(1), half = rat(1, 2);
    if (label == "AIII2") {
        const int m = param;
        if (m < 2)
            throw ConfigError("AIII2 needs m >= 2");
        const int n = m + 2;
        d.family = 'A';
        d.rank = m + 1;
        d.alpha_tilde = detail::ev(n, {{0, one}, {n - 1, -one}});
        d.i0 = 2;
        d.alpha_i0 = detail::ev(n, {{1, one}, {2, -one}});
        d.xi_i0 = rzeros(n);
        for (int j = 0; j < n; ++j)
            d.xi_i0[j] = (j < 2 ? one : Rational(0)) - rat(2, n);
    } else if (label == "BII2" || label == "DII2") {
        const int l = param;
        if ((label == "BII2" && l < 2) || (label == "DII2" && l < 3))
            throw ConfigError(label + ": rank too small");
        d.family = label[0];
        d.rank = l;
        d.alpha_tilde = detail::ev(l, {{0, one}, {1, one}});
        d.i0 = 1;
        d.alpha_i0 = detail::ev(l, {{0, one}, {1, -one}});
        d.xi_i0 = detail::ev(l, {{0, one}});
    } else if (label == "DIII2") {
        d.family = 'D';
        d.rank = 5;
        d.alpha_tilde = detail::ev(5, {{0, one}, {1, one}});
        d.i0 = 4;
        d.alpha_i0 = detail::ev(5, {{3, one}, {4, -one}});
        d.xi_i0 = detail::ev(5, {{0, half}, {1, half}, {2, half}, {3, half}, {4, -half}});
    } else if (label == "EIII") {
        d.family = 'E';
        d.rank = 6;
        d.alpha_tilde = RVec{half, half, half, half, half, -half, -half, half};
        d.i0 = 1;
        d.alpha_i0 = RVec{half, -half, -half, -half, -half, -half, -half, half};
        const Rational t = rat(2, 3);
        d.xi_i0 = RVec{0, 0, 0, 0, 0, -t, -t, t};
    } else {
        throw ConfigError("unknown Hermitian case " + label);
    }
    d.h_gamma1 = d.alpha_i0;
    d.h_gamma2 = d.alpha_tilde;
    return d;
}

// The same data derived from build_root_system, for cross-checking the table.
inline HermitianCaseData hermitian_case_computed(const std::string& label, int param = 0)
{
    HermitianCaseData d = hermitian_case(label, param);
    auto rs = build_root_system(d.family, d.rank);
    d.alpha_tilde = rs.highest_root;
    d.alpha_i0 = rs.simple_roots[d.i0 - 1];
    d.xi_i0 = (Rational(2) / dot(d.alpha_i0, d.alpha_i0)) * rs.fundamental_weights[d.i0 - 1];
    d.h_gamma1 = d.alpha_i0;
    d.h_gamma2 = d.alpha_tilde;
    return d;
}

// xi_{i0} lies in span{H_gamma1, H_gamma2}
inline bool center_condition(const HermitianCaseData& d)
{
    return solve_in_span({d.h_gamma1, d.h_gamma2}, d.xi_i0).has_value();
}

} // namespace isolag
