#include <gtest/gtest.h>

#include <isolag/stability.hpp>

#include <cmath>
#include <set>

using namespace isolag;

namespace {

std::set<std::vector<int>> weight_set(const StabilityReport& r)
{
    std::set<std::vector<int>> s;
    for (const auto& c : r.candidates)
        s.insert(c.weight.m);
    return s;
}

} // namespace

TEST(Constants, table_values)
{
    struct Row {
        const char* id;
        int n, p, k;
        Rational binv, g1, cn;
    };
    const Row rows[] = {{"AI2", 3, 5, 3, 6, rat(1, 3), 6},
                        {"a2", 6, 8, 8, 2, rat(1, 6), 2},
                        {"AII2", 12, 14, 21, rat(3, 2), rat(1, 12), rat(3, 2)},
                        {"EIV", 24, 26, 52, rat(4, 3), rat(1, 24), rat(4, 3)}};
    for (const auto& r : rows) {
        auto c = casimir_constants(r.id);
        EXPECT_EQ(c.n, r.n) << r.id;
        EXPECT_EQ(c.dim_p, r.p) << r.id;
        EXPECT_EQ(c.dim_k, r.k) << r.id;
        EXPECT_EQ(c.b_inv, r.binv) << r.id;
        EXPECT_EQ(c.gamma1_norm_sq, r.g1) << r.id;
        EXPECT_EQ(c.Cn, r.cn) << r.id;
    }
    EXPECT_THROW(casimir_constants("b2"), ConfigError);
}

TEST(Constants, identities)
{
    for (const auto& sc : stability_cases()) {
        auto c = casimir_constants(sc.id);
        EXPECT_EQ(1 / c.b_inv, 1 - Rational(c.dim_p) / (2 * c.dim_k));
        EXPECT_EQ(c.C / c.b_inv * (c.dim_p - 2), 1);
        EXPECT_EQ(c.Cn, c.C * c.n);
    }
}

TEST(Constants, dims_agree_with_matrix_models)
{
    for (const char* id : {"AI2", "a2", "AII2"}) {
        auto sp = build_pair(id);
        auto c = casimir_constants(id);
        EXPECT_EQ(sp.dim_p(), c.dim_p) << id;
        EXPECT_EQ(sp.dim_k(), c.dim_k) << id;
    }
}

TEST(CaseFormula, printed_examples)
{
    EXPECT_EQ(case_eigenvalue_formula("a2", {1, 1}, {1, 1}), 1);
    EXPECT_EQ(case_eigenvalue_formula("AII2", {1, 0, 1}, {2, 3, 2}), rat(3, 2));
    EXPECT_EQ(case_eigenvalue_formula("EIV", {0, 0, 1, 0}, {2, 4, 6, 3}), rat(4, 3));
    EXPECT_EQ(case_eigenvalue_formula("AI2", {4}, {2}), 3);
    EXPECT_EQ(case_eigenvalue_formula("AI2", {6}, {3}), 6);
    EXPECT_THROW(case_eigenvalue_formula("a2", {1, 1}, {1, 2}), DomainError);
    EXPECT_THROW(case_eigenvalue_formula("a2", {1, 1}, {1}), DomainError);
}

TEST(CaseFormula, equals_freudenthal_up_to_five)
{
    int checked = 0;
    for (const auto& sc : stability_cases()) {
        auto rs = case_root_system(sc.id);
        std::vector<int> m(rs.rank, 0);
        while (true) {
            auto w = make_weight(rs, m);
            EXPECT_EQ(case_eigenvalue_formula(sc.id, m, w.p), casimir_eigenvalue(rs, w)) << sc.id;
            ++checked;
            int i = 0;
            while (i < rs.rank && m[i] == 5)
                m[i++] = 0;
            if (i == rs.rank)
                break;
            ++m[i];
        }
    }
    EXPECT_EQ(checked, 6 + 36 + 216 + 1296);
}

TEST(Su2, group_orders_and_closure)
{
    EXPECT_EQ(su2_subgroup(Su2Subgroup::K0_tilde).size(), 8u);
    EXPECT_EQ(su2_subgroup(Su2Subgroup::Ka_tilde).size(), 24u);
    for (const auto& g : su2_subgroup(Su2Subgroup::Ka_tilde)) {
        EXPECT_LT((g.adjoint() * g - Mat2c::Identity()).cwiseAbs().maxCoeff(), 1e-14);
        EXPECT_LT(std::abs(g.determinant() - cd(1)), 1e-14);
    }
    // B is not in K0, and B^3 = -1
    Mat2c B = b_element();
    for (const auto& g : su2_subgroup(Su2Subgroup::K0_tilde))
        EXPECT_GT((g - B).cwiseAbs().maxCoeff(), 0.1);
    EXPECT_LT((B * B * B + Mat2c::Identity()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Su2, rho_is_a_unitary_representation)
{
    const auto& G = su2_subgroup(Su2Subgroup::Ka_tilde);
    for (int m : {1, 4, 7}) {
        for (std::size_t i = 0; i < G.size(); i += 5)
            for (std::size_t j = 0; j < G.size(); j += 7) {
                auto a = rho(m, G[i]), b = rho(m, G[j]), ab = rho(m, G[i] * G[j]);
                // (rho(g) rho(h) f)(z) = f(z g h)
                EXPECT_LT((ab - a * b).cwiseAbs().maxCoeff(), 1e-12);
                EXPECT_LT((a.adjoint() * a - Eigen::MatrixXcd::Identity(m + 1, m + 1)).cwiseAbs().maxCoeff(),
                          1e-12);
            }
    }
    EXPECT_THROW(rho(-1, Mat2c::Identity()), DomainError);
}

TEST(Su2, printed_fixed_dimensions)
{
    EXPECT_EQ(su2_fixed_dimension(4, Su2Subgroup::Ka_tilde), 0);
    EXPECT_EQ(su2_fixed_dimension(6, Su2Subgroup::Ka_tilde), 1);
    EXPECT_EQ(su2_fixed_dimension(4, Su2Subgroup::K0_tilde), 2);
    EXPECT_EQ(su2_fixed_dimension(2, Su2Subgroup::K0_tilde), 0);
    for (int m = 1; m <= 19; m += 2)
        EXPECT_EQ(su2_fixed_dimension(m, Su2Subgroup::K0_tilde), 0) << m;
}

TEST(Su2, k0_dimensions_follow_the_spanning_sets)
{
    const auto& K0 = su2_subgroup(Su2Subgroup::K0_tilde);
    for (int m = 0; m <= 20; ++m) {
        int want = m % 2 ? 0 : (m % 4 == 0 ? m / 4 + 1 : (m - 2) / 4);
        EXPECT_EQ(su2_fixed_dimension(m, Su2Subgroup::K0_tilde), want) << m;
        auto span = k0_fixed_spanning_set(m);
        if (m % 2 == 0 && m > 0)
            EXPECT_EQ(static_cast<int>(span.size()), want) << m;
        Eigen::MatrixXcd P = su2_fixed_projector(m, K0);
        for (const auto& w : span) {
            EXPECT_LT((P * w - w).norm(), 1e-12) << m;
            for (const auto& g : K0)
                EXPECT_LT((rho(m, g) * w - w).norm(), 1e-12) << m;
        }
        if (!span.empty()) {
            Eigen::MatrixXcd W(m + 1, span.size());
            for (std::size_t i = 0; i < span.size(); ++i)
                W.col(static_cast<Eigen::Index>(i)) = span[i];
            EXPECT_EQ(Eigen::FullPivLU<Eigen::MatrixXcd>(W).rank(), want);
        }
    }
}

TEST(Su2, projector_traces_are_integral_and_match_characters)
{
    for (auto s : {Su2Subgroup::K0_tilde, Su2Subgroup::Ka_tilde})
        for (int m = 0; m <= 20; ++m) {
            double t = su2_fixed_trace(m, s);
            EXPECT_LT(std::abs(t - std::round(t)), 1e-8) << m;
            EXPECT_NEAR(t, su2_character_average(m, s), 1e-9) << m;
        }
}

TEST(Su2, printed_images_under_B)
{
    // rho_4(B) w1 = -(z0^4 - 6 z0^2 z1^2 + z1^4) / (4 sqrt(4!)),
    // rho_4(B) w2 = -(z0^4 + 2 z0^2 z1^2 + z1^4) / (4 2!)
    auto w = k0_fixed_spanning_set(4);
    ASSERT_EQ(w.size(), 2u);
    Eigen::MatrixXcd R = rho(4, b_element());
    const double s24 = std::sqrt(24.0), s4 = 2.0;  // |z0^4| = sqrt(4!), |z0^2 z1^2| = 2!
    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(5), e2 = Eigen::VectorXcd::Zero(5);
    e1(0) = -s24 / (4 * s24);
    e1(2) = 6 * s4 / (4 * s24);
    e1(4) = -s24 / (4 * s24);
    e2(0) = -s24 / 8;
    e2(2) = -2 * s4 / 8;
    e2(4) = -s24 / 8;
    EXPECT_LT((R * w[0] - e1).norm(), 1e-12);
    EXPECT_LT((R * w[1] - e2).norm(), 1e-12);
    auto w6 = k0_fixed_spanning_set(6);
    ASSERT_EQ(w6.size(), 1u);
    EXPECT_LT((rho(6, b_element()) * w6[0] - w6[0]).norm(), 1e-12);
}

TEST(Verdict, g3_cases_are_strictly_stable)
{
    struct Want {
        const char* id;
        long nullity, killing;
    };
    for (const auto& w : {Want{"AI2", 7, 10 - 3}, Want{"a2", 20, 28 - 8}, Want{"AII2", 70, 91 - 21},
                          Want{"EIV", 273, 325 - 52}}) {
        auto r = stability_verdict(w.id);
        EXPECT_TRUE(r.h_stable) << w.id;
        EXPECT_TRUE(r.strict) << w.id;
        ASSERT_TRUE(r.nullity && r.min_positive_eigenvalue);
        EXPECT_EQ(*r.nullity, w.nullity) << w.id;
        EXPECT_EQ(*r.killing_nullity, w.killing) << w.id;
        EXPECT_EQ(*r.min_positive_eigenvalue, r.Cn) << w.id;
        for (const auto& c : r.candidates)
            EXPECT_LE(BigInt(c.fixed_dim), c.weyl_dim);
    }
}

TEST(Verdict, candidate_sets)
{
    EXPECT_EQ(weight_set(stability_verdict("a2")),
              (std::set<std::vector<int>>{{0, 0}, {3, 0}, {0, 3}, {1, 1}}));
    EXPECT_EQ(weight_set(stability_verdict("AII2")),
              (std::set<std::vector<int>>{{0, 0, 0}, {2, 0, 0}, {0, 1, 0}, {1, 0, 1}}));
    EXPECT_EQ(weight_set(stability_verdict("EIV")),
              (std::set<std::vector<int>>{{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}));
    auto ai = stability_verdict("AI2");
    EXPECT_EQ(ai.candidates.size(), 7u);  // m = 0..6
    for (const auto& c : ai.candidates)
        EXPECT_EQ(c.fixed_dim, (c.weight.m[0] == 0 || c.weight.m[0] == 6) ? 1 : 0);
}

TEST(Verdict, missing_branching_datum_names_the_weight)
{
    auto data = load_branching();
    std::erase_if(data, [](const BranchingDatum& d) { return d.case_id == "AII2" && d.weight == std::vector<int>{1, 0, 1}; });
    try {
        stability_verdict("AII2", data);
        FAIL() << "expected IncompleteData";
    } catch (const IncompleteData& e) {
        EXPECT_NE(std::string(e.what()).find("L1+L3"), std::string::npos);
    }
    EXPECT_NO_THROW(stability_verdict("AI2", {}));
}

TEST(Verdict, altered_branching_flips_the_verdict)
{
    auto data = load_branching();
    for (auto& d : data)
        if (d.case_id == "a2" && d.weight == std::vector<int>{1, 1})
            d.fixed_dim = 1;
    auto r = stability_verdict("a2", data);
    EXPECT_FALSE(r.h_stable);
    EXPECT_EQ(*r.min_positive_eigenvalue, 1);
}

TEST(Verdict, g1_and_g2_rules)
{
    EXPECT_TRUE(stability_verdict_g1(5).h_stable);
    EXPECT_FALSE(stability_verdict_g2(1, 4).h_stable);
    EXPECT_TRUE(stability_verdict_g2(2, 2).h_stable);
    EXPECT_TRUE(stability_verdict_g2(1, 3).h_stable);
    EXPECT_FALSE(stability_verdict_g2(5, 2).h_stable);
    EXPECT_THROW(stability_verdict_g2(0, 3), DomainError);
}

TEST(Verdict, g2_rule_matches_real_quadric_rows)
{
    auto t1 = load_table1();
    int n = 0;
    for (int m1 = 1; m1 <= 11; ++m1)
        for (int m2 = 1; m1 + m2 <= 12; ++m2) {
            int p = std::min(m1, m2) + 1, q = std::max(m1, m2) + 1;
            EXPECT_EQ(stability_verdict_g2(m1, m2).h_stable, table1_quadric_row(t1, p, q).h_stable)
                << m1 << "," << m2;
            ++n;
        }
    EXPECT_EQ(n, 66);
    for (int k = 2; k <= 12; ++k)
        EXPECT_EQ(stability_verdict_g1(k).h_stable, table1_quadric_row(t1, 1, k + 1).h_stable);
}
