#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <vector>

namespace isolag {

using Eigen::MatrixXd;
using Eigen::VectorXd;

inline constexpr double kRankTol = 1e-8;

// Singular values above rel_tol * largest.
inline int numerical_rank(const MatrixXd& m, double rel_tol = kRankTol)
{
    if (m.size() == 0)
        return 0;
    Eigen::JacobiSVD<MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0)
        return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * s(0))
            ++r;
    return r;
}

// Orthonormal basis (columns) of the kernel of m.
inline MatrixXd null_space(const MatrixXd& m, double rel_tol = kRankTol)
{
    const Eigen::Index n = m.cols();
    if (m.rows() == 0)
        return MatrixXd::Identity(n, n);
    Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    double top = s.size() ? s(0) : 0.0;
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * std::max(top, 1.0))
            ++r;
    return svd.matrixV().rightCols(n - r);
}

// Orthonormalizes the columns of m (two passes of modified Gram-Schmidt),
// dropping columns whose residual is below drop_tol relative to their norm.
inline MatrixXd orthonormal_columns(const MatrixXd& m, double drop_tol = 1e-9)
{
    std::vector<VectorXd> out;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        VectorXd v = m.col(j);
        double n0 = v.norm();
        if (n0 == 0.0)
            continue;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : out)
                v -= q.dot(v) * q;
        double n1 = v.norm();
        if (n1 > drop_tol * n0)
            out.push_back(v / n1);
    }
    MatrixXd q(m.rows(), static_cast<Eigen::Index>(out.size()));
    for (std::size_t j = 0; j < out.size(); ++j)
        q.col(static_cast<Eigen::Index>(j)) = out[j];
    return q;
}

inline MatrixXd expm(const MatrixXd& m) { return m.exp(); }

inline double max_abs(const MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

} // namespace isolag
