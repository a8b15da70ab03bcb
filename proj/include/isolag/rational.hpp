#pragma once

#include <gmpxx.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace isolag {

using Rational = mpq_class;
using BigInt = mpz_class;
using RVec = std::vector<Rational>;

inline Rational rat(long p, long q = 1)
{
    if (q == 0)
        throw DomainError("rational with zero denominator");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

// "p/q", or "p" when the denominator is 1
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline std::string to_string(const BigInt& z) { return z.get_str(); }

inline Rational parse_rational(const std::string& s)
{
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0)
        throw DomainError("not a rational: '" + s + "'");
    r.canonicalize();
    return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline BigInt floor_int(const Rational& r)
{
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline RVec rzeros(std::size_t n) { return RVec(n, Rational(0)); }

inline RVec unit_rvec(std::size_t n, std::size_t i)
{
    RVec v = rzeros(n);
    v[i] = 1;
    return v;
}

inline Rational dot(const RVec& a, const RVec& b)
{
    if (a.size() != b.size())
        throw StructuralError("rational dot: length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

inline RVec operator+(const RVec& a, const RVec& b)
{
    if (a.size() != b.size())
        throw StructuralError("rational add: length mismatch");
    RVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

inline RVec operator-(const RVec& a, const RVec& b)
{
    if (a.size() != b.size())
        throw StructuralError("rational sub: length mismatch");
    RVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

inline RVec operator*(const Rational& c, const RVec& a)
{
    RVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = c * a[i];
    return r;
}

inline bool is_zero(const RVec& a)
{
    for (const auto& x : a)
        if (x != 0)
            return false;
    return true;
}

inline std::string to_string(const RVec& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ",";
        s += to_string(v[i]);
    }
    return s + ")";
}

// Solve sum_j c_j cols[j] = rhs exactly. Returns nullopt when rhs is not in
// the span. The columns need not be independent; free variables are set to 0.
inline std::optional<RVec> solve_in_span(const std::vector<RVec>& cols, const RVec& rhs)
{
    const std::size_t rows = rhs.size();
    const std::size_t nc = cols.size();
    std::vector<RVec> m(rows, rzeros(nc + 1));
    for (std::size_t j = 0; j < nc; ++j) {
        if (cols[j].size() != rows)
            throw StructuralError("solve_in_span: length mismatch");
        for (std::size_t i = 0; i < rows; ++i)
            m[i][j] = cols[j][i];
    }
    for (std::size_t i = 0; i < rows; ++i)
        m[i][nc] = rhs[i];

    std::vector<std::size_t> pivcol;
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0)
                continue;
            Rational f = m[i][c] / m[r][c];
            for (std::size_t k = c; k <= nc; ++k)
                m[i][k] -= f * m[r][k];
        }
        pivcol.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (m[i][nc] != 0)
            return std::nullopt;
    RVec sol = rzeros(nc);
    for (std::size_t i = 0; i < r; ++i)
        sol[pivcol[i]] = m[i][nc] / m[i][pivcol[i]];
    return sol;
}

// Inverse of a square rational matrix given as rows.
inline std::vector<RVec> inverse(const std::vector<RVec>& a)
{
    const std::size_t n = a.size();
    std::vector<RVec> m(n, rzeros(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = a[i][j];
        m[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0)
            ++p;
        if (p == n)
            throw DomainError("inverse: singular matrix");
        std::swap(m[p], m[c]);
        Rational d = m[c][c];
        for (auto& x : m[c])
            x /= d;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c] == 0)
                continue;
            Rational f = m[i][c];
            for (std::size_t k = 0; k < 2 * n; ++k)
                m[i][k] -= f * m[c][k];
        }
    }
    std::vector<RVec> inv(n, rzeros(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv[i][j] = m[i][n + j];
    return inv;
}

} // namespace isolag
