#include <gtest/gtest.h>

#include <isolag/verify.hpp>

#include <random>

using namespace isolag;

namespace {

constexpr int kTrials = 10;

PairDescriptor random_pair(std::mt19937_64& rng)
{
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    switch (pick(0, 4)) {
    case 0:
        return describe("S1xBDII", {pick(1, 6)});
    case 1: {
        int n = pick(2, 7);
        return describe("BDIIxBDII", {pick(1, n - 1), n});
    }
    case 2:
        return describe("AIII2", {pick(2, 5)});
    case 3:
        return describe("BDI2", {pick(3, 8)});
    default:
        return describe("CII2", {pick(2, 3)});
    }
}

// A level at least 0.05 away from every root wall.
double random_level(const SymmetricPair& sp, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
    for (;;) {
        double t = u(rng);
        bool ok = true;
        for (const auto& g : sp.roots)
            ok = ok && std::abs(root_eval(g, t)) / g.gamma.norm() > 0.05;
        if (ok)
            return t;
    }
}

VectorXd gaussian(int n, std::mt19937_64& rng)
{
    std::normal_distribution<double> nd;
    VectorXd v(n);
    for (int i = 0; i < n; ++i)
        v(i) = nd(rng);
    return v;
}

} // namespace

TEST(Property, multiplicities_follow_the_table_formulas)
{
    std::mt19937_64 rng(101);
    for (int t = 0; t < kTrials; ++t) {
        auto d = random_pair(rng);
        auto sp = build_pair(d);
        EXPECT_EQ(sp.dim_p(), d.n + 2) << d.id;
        EXPECT_EQ(sp.sum_multiplicities(), d.n) << d.id;
        auto prof = principal_curvatures(sp, random_level(sp, rng));
        ASSERT_EQ(prof.g(), d.g) << d.id;
        std::multiset<int> got, want;
        for (const auto& c : prof.classes)
            got.insert(c.mult);
        for (int i = 0; i < d.g; ++i)
            want.insert(d.g == 1 ? d.m1 : (i % 2 ? d.m2 : d.m1));
        EXPECT_EQ(got, want) << d.id;
        EXPECT_LT(angle_spacing_defect(prof), 1e-9) << d.id;
    }
}

TEST(Property, structural_residuals_are_small)
{
    std::mt19937_64 rng(202);
    for (int t = 0; t < kTrials; ++t) {
        auto sp = build_pair(random_pair(rng));
        EXPECT_LT(decomposition_residual(sp), 1e-10) << sp.desc.id;
        EXPECT_LT(std_basis_residual(sp, reference_direction()), 1e-9) << sp.desc.id;
        EXPECT_EQ(sp.center_condition, expected_center_condition(sp.desc)) << sp.desc.id;
    }
}

TEST(Property, gauss_image_is_lagrangian_with_constant_phase)
{
    std::mt19937_64 rng(303);
    for (int t = 0; t < kTrials; ++t) {
        auto sp = build_pair(random_pair(rng));
        const double theta = random_level(sp, rng);
        auto prof = principal_curvatures(sp, theta);
        const VectorXd expect = expanded_curvatures(prof);
        const double phase = palmer_phase(prof);
        for (const auto& s : orbit_samples(sp, theta, 3, rng())) {
            EXPECT_LT(sample_defect(s), 1e-9);
            VectorXd k = sorted_eigenvalues(shape_operator(sp, s));
            double scale = std::max(1.0, expect.cwiseAbs().maxCoeff());
            EXPECT_LT((k - expect).cwiseAbs().maxCoeff() / scale, 1e-7) << sp.desc.id;
            double ph = 0.0;
            for (Eigen::Index i = 0; i < k.size(); ++i)
                ph += std::atan(k(i));
            EXPECT_NEAR(ph, phase, 1e-8) << sp.desc.id;
            EXPECT_LT(kahler_max(plane_differentials(sp, s)), 1e-9) << sp.desc.id;
            EXPECT_LT(moment_map(sp, gauss_map(s)).norm_sq, 1e-18) << sp.desc.id;
        }
    }
}

TEST(Property, moment_map_identities_on_random_planes)
{
    std::mt19937_64 rng(404);
    for (int t = 0; t < kTrials; ++t) {
        auto sp = build_pair(random_pair(rng));
        const int dp = sp.dim_p();
        QuadricPoint q = make_plane(gaussian(dp, rng), gaussian(dp, rng));
        auto m = moment_map(sp, q);
        EXPECT_NEAR(m.norm_sq, sectional_curvature(sp, q), 1e-10) << sp.desc.id;
        EXPECT_GE(m.norm_sq, 0.0);

        // swapping the frame reverses orientation
        EXPECT_LT((moment_map(sp, QuadricPoint{q.b, q.a}).mu + m.mu).norm(), 1e-12);

        // rotating inside the plane changes nothing
        const double phi = 0.7;
        QuadricPoint r{std::cos(phi) * q.a + std::sin(phi) * q.b, -std::sin(phi) * q.a + std::cos(phi) * q.b};
        EXPECT_LT((moment_map(sp, r).mu - m.mu).norm(), 1e-12);

        VectorXd xi = 0.5 * gaussian(sp.dim_k(), rng);
        auto moved = moment_map(sp, act(sp.Ad_p(xi), q));
        EXPECT_LT((moved.mu - sp.Ad_k(xi) * m.mu).norm(), 1e-10) << sp.desc.id;
    }
}

TEST(Property, casimir_and_weyl_dimension)
{
    std::mt19937_64 rng(505);
    const std::vector<std::pair<char, int>> types = {{'A', 1}, {'A', 2}, {'A', 3}, {'B', 2}, {'C', 3},
                                                     {'D', 4}, {'F', 4}, {'E', 6}};
    for (auto [fam, rank] : types) {
        auto rs = build_root_system(fam, rank);
        EXPECT_EQ(static_cast<int>(rs.positive_roots.size()), detail::expected_positive_count(fam, rank));
        for (int t = 0; t < 6; ++t) {
            std::vector<int> m(static_cast<std::size_t>(rank)), bump(static_cast<std::size_t>(rank), 0);
            for (auto& x : m)
                x = std::uniform_int_distribution<int>(0, 3)(rng);
            bump[static_cast<std::size_t>(std::uniform_int_distribution<int>(0, rank - 1)(rng))] = 1;
            auto w = make_weight(rs, m);
            std::vector<int> m2 = m;
            for (std::size_t i = 0; i < m.size(); ++i)
                m2[i] += bump[i];
            auto w2 = make_weight(rs, m2);
            auto c = casimir_eigenvalue(rs, w);
            bool zero = std::all_of(m.begin(), m.end(), [](int x) { return x == 0; });
            EXPECT_EQ(c == 0, zero);
            EXPECT_GT(casimir_eigenvalue(rs, w2), c);
            EXPECT_GE(weyl_dimension(rs, w), 1);
            EXPECT_GT(weyl_dimension(rs, w2), weyl_dimension(rs, w));
        }
    }
}

TEST(Property, lie_brackets_on_random_elements)
{
    std::mt19937_64 rng(606);
    for (const auto& alg : {make_so(5), make_su(3), make_sp(2)}) {
        for (int t = 0; t < 4; ++t) {
            MatrixXd x = MatrixXd::Zero(alg.ambient_dim, alg.ambient_dim), y = x, z = x;
            VectorXd cx = gaussian(alg.dim(), rng), cy = gaussian(alg.dim(), rng), cz = gaussian(alg.dim(), rng);
            for (int i = 0; i < alg.dim(); ++i) {
                x += cx(i) * alg.basis[static_cast<std::size_t>(i)];
                y += cy(i) * alg.basis[static_cast<std::size_t>(i)];
                z += cz(i) * alg.basis[static_cast<std::size_t>(i)];
            }
            EXPECT_LT(jacobi_defect(x, y, z), 1e-10);
            EXPECT_LT(definition_defect(alg, commutator(x, y)), 1e-10);
            double k = killing_form(alg, x, y);
            EXPECT_NEAR(k, killing_form_adtrace(alg, x, y), 1e-9 * std::max(1.0, std::abs(k)));
            EXPECT_LT(killing_form(alg, x, x), 0.0);
        }
    }
}

TEST(Property, g2_rule_is_symmetric_and_matches_gap)
{
    for (int a = 1; a <= 15; ++a)
        for (int b = 1; b <= 15; ++b) {
            auto v = stability_verdict_g2(a, b);
            EXPECT_EQ(v.h_stable, stability_verdict_g2(b, a).h_stable);
            EXPECT_EQ(v.h_stable, std::abs(a - b) < 3);
        }
}
