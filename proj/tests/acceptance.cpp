// One line per acceptance criterion; exit status 1 if any fails.

#include <isolag/verify.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

using namespace isolag;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            if (ok)
                detail.clear();
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

std::string join(const std::vector<std::string>& v)
{
    std::string s;
    for (const auto& x : v)
        s += (s.empty() ? "" : ",") + x;
    return s;
}

Outcome constants()
{
    Outcome o;
    const char* want[4][7] = {{"AI2", "3", "5", "3", "6", "1/3", "6"},
                              {"a2", "6", "8", "8", "2", "1/6", "2"},
                              {"AII2", "12", "14", "21", "3/2", "1/12", "3/2"},
                              {"EIV", "24", "26", "52", "4/3", "1/24", "4/3"}};
    for (const auto& w : want) {
        auto c = casimir_constants(w[0]);
        std::vector<std::string> got = {c.case_id, std::to_string(c.n), std::to_string(c.dim_p), std::to_string(c.dim_k),
                                        to_string(c.b_inv), to_string(c.gamma1_norm_sq), to_string(c.Cn)};
        for (int j = 0; j < 7; ++j)
            o.require(got[static_cast<std::size_t>(j)] == w[j], std::string(w[0]) + " got (" + join(got) + ")");
    }
    o.detail = o.ok ? "4 cases exact" : o.detail;
    return o;
}

Outcome candidates()
{
    Outcome o;
    struct Want {
        const char* id;
        std::map<std::string, std::string> coords;  // label -> root coordinates
    };
    const Want want[] = {{"a2", {{"0", "0 0"}, {"3L1", "2 1"}, {"3L2", "1 2"}, {"L1+L2", "1 1"}}},
                         {"AII2", {{"0", "0 0 0"}, {"2L1", "2 2 1"}, {"L2", "1 2 1"}, {"L1+L3", "2 3 2"}}},
                         {"EIV", {{"0", "0 0 0 0"}, {"L1", "2 3 4 2"}, {"L3", "2 4 6 3"}, {"L4", "1 2 3 2"}}}};
    auto branching = load_branching();
    for (const auto& w : want) {
        auto rep = stability_verdict(w.id, branching);
        std::map<std::string, std::string> got;
        for (const auto& c : rep.candidates) {
            std::vector<std::string> p;
            for (const auto& x : c.weight.p)
                p.push_back(to_string(x));
            std::string s;
            for (const auto& x : p)
                s += (s.empty() ? "" : " ") + x;
            got[c.label] = s;
        }
        o.require(got == w.coords, std::string(w.id) + " candidate set differs");
    }
    o.detail = o.ok ? "A2, C3, F4 sets and root coordinates exact" : o.detail;
    return o;
}

Outcome freudenthal()
{
    Outcome o;
    int checked = 0;
    for (const char* id : {"a2", "AII2", "EIV"}) {
        auto rs = case_root_system(id);
        std::vector<int> m(static_cast<std::size_t>(rs.rank), 0);
        for (;;) {
            auto w = make_weight(rs, m);
            if (case_eigenvalue_formula(id, m, w.p) != casimir_eigenvalue(rs, w))
                o.require(false, std::string(id) + " " + weight_label(w));
            ++checked;
            std::size_t i = 0;
            while (i < m.size() && m[i] == 5)
                m[i++] = 0;
            if (i == m.size())
                break;
            ++m[i];
        }
    }
    o.require(checked == 36 + 216 + 1296, "weight count " + std::to_string(checked));
    if (o.ok)
        o.detail = std::to_string(checked) + " weights exact";
    return o;
}

Outcome nullity()
{
    Outcome o;
    const std::map<std::string, std::pair<int, int>> want = {
        {"AI2", {7, 10 - 3}}, {"a2", {20, 28 - 8}}, {"AII2", {70, 91 - 21}}, {"EIV", {273, 325 - 52}}};
    std::vector<std::string> got;
    for (const auto& [id, w] : want) {
        auto rep = stability_verdict(id);
        o.require(rep.nullity && *rep.nullity == w.first, id + " nullity");
        o.require(rep.killing_nullity && *rep.killing_nullity == w.second, id + " killing nullity");
        o.require(rep.h_stable && rep.strict, id + " not strictly stable");
        if (rep.nullity)
            got.push_back(id + "=" + to_string(*rep.nullity));
    }
    if (o.ok)
        o.detail = "nullities " + join(got) + ", all strict";
    return o;
}

Outcome su2()
{
    Outcome o;
    o.require(su2_fixed_dimension(4, Su2Subgroup::Ka_tilde) == 0, "m=4 Ka");
    o.require(su2_fixed_dimension(6, Su2Subgroup::Ka_tilde) == 1, "m=6 Ka");
    o.require(su2_fixed_dimension(4, Su2Subgroup::K0_tilde) == 2, "m=4 K0");
    double worst = 0.0;
    for (int m = 0; m <= 19; ++m) {
        if (m % 2 == 1)
            o.require(su2_fixed_dimension(m, Su2Subgroup::K0_tilde) == 0, "m=" + std::to_string(m) + " K0");
        for (auto s : {Su2Subgroup::K0_tilde, Su2Subgroup::Ka_tilde}) {
            double t = su2_fixed_trace(m, s);
            worst = std::max(worst, std::abs(t - std::round(t)));
        }
    }
    o.require(worst < 1e-8, "trace off integer by " + fmt_real(worst));
    if (o.ok)
        o.detail = "fixed dims as printed; worst trace defect " + fmt_real(worst);
    return o;
}

Outcome suite(const std::string& name, std::size_t& records)
{
    Outcome o;
    VerifyConfig cfg;
    cfg.suite = name;
    auto rep = run_verify(cfg);
    records = rep.records.size();
    int unsupported = 0;
    for (const auto& r : rep.records) {
        if (r.status == "fail")
            o.require(false, r.name + "=" + r.value);
        unsupported += r.status == "unsupported";
    }
    if (o.ok)
        o.detail = std::to_string(records - static_cast<std::size_t>(unsupported)) + " checks pass, " +
                   std::to_string(unsupported) + " unsupported (no matrix model)";
    return o;
}

Outcome geometry()
{
    std::size_t n = 0;
    auto o = suite("geometry", n);
    int realizable = 0;
    for (const auto& d : default_pairs())
        realizable += d.matrix_realizable;
    // ten checks per realizable pair, one unsupported record otherwise
    o.require(n == static_cast<std::size_t>(10 * realizable + (static_cast<int>(default_pairs().size()) - realizable)),
              "record count " + std::to_string(n));
    return o;
}

Outcome moment()
{
    std::size_t n = 0;
    auto o = suite("moment", n);
    VerifyConfig cfg;
    for (const auto& d : wlambda_pairs()) {
        auto recs = moment_checks(d, cfg);
        int w = 0;
        for (const auto& r : recs)
            w += r.name.find("/wlambda_") != std::string::npos && r.status == "pass";
        o.require(w == 4, d.id + " W_lambda checks");
    }
    return o;
}

Outcome low_g()
{
    Outcome o;
    auto t1 = load_table1();
    int pairs = 0;
    for (int m1 = 1; m1 <= 11; ++m1)
        for (int m2 = 1; m1 + m2 <= 12; ++m2) {
            bool v = stability_verdict_g2(m1, m2).h_stable;
            o.require(v == (std::abs(m2 - m1) < 3), "rule at " + std::to_string(m1) + "," + std::to_string(m2));
            int p = std::min(m1, m2) + 1, q = std::max(m1, m2) + 1;
            o.require(v == table1_quadric_row(t1, p, q).h_stable, "Table 1 at " + std::to_string(m1) + "," + std::to_string(m2));
            ++pairs;
        }
    for (int n = 1; n <= 12; ++n)
        o.require(stability_verdict_g1(n).h_stable, "g=1 n=" + std::to_string(n));
    if (o.ok)
        o.detail = "g=1 stable for n<=12; g=2 rule on " + std::to_string(pairs) + " pairs";
    return o;
}

Outcome golden()
{
    Outcome o;
    for (const auto& w : table_names()) {
        auto diff = golden_difference(compute_table(w), read_data_file(golden_file(w)));
        o.require(diff.empty(), w + ": " + diff);
    }
    auto t1 = load_table1();
    o.require(t1.size() == 14, "Table 1 rows");
    if (t1.size() == 14) {
        const char* lambda[4] = {"1/2", "1/2", "1/2", "1/6"};
        for (int i = 0; i < 4; ++i)
            o.require(t1[static_cast<std::size_t>(10 + i)].lambda1 == lambda[i], "exceptional row " + std::to_string(i));
    }
    std::map<std::string, int> curated;
    for (const auto& b : load_branching())
        if (b.source == "curated")
            curated[b.case_id + ":" + int_list(b.weight)] = b.fixed_dim;
    const std::map<std::string, int> printed = {{"a2:3 0", 1},       {"a2:0 3", 1},       {"a2:1 1", 0},
                                                {"AII2:2 0 0", 0},   {"AII2:1 0 1", 1},   {"EIV:1 0 0 0", 0},
                                                {"EIV:0 0 1 0", 1},  {"EIV:0 0 0 1", 0}};
    o.require(curated == printed, "curated branching differs");
    if (o.ok)
        o.detail = std::to_string(table_names().size()) + " golden tables, Table 1 and branching as printed";
    return o;
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char* title;
        double limit;  // seconds, 0 for none
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all = {
        {1, "constants table", 1.0, constants},
        {2, "candidate weights", 0.0, candidates},
        {3, "Freudenthal consistency", 5.0, freudenthal},
        {4, "nullity and strictness", 0.0, nullity},
        {5, "SU(2) fixed spaces", 0.0, su2},
        {6, "geometry suite", 30.0, geometry},
        {7, "moment suite", 20.0, moment},
        {8, "g=1 / g=2 verdicts", 0.0, low_g},
        {9, "curated data golden files", 0.0, golden},
    };
    int failed = 0;
    for (const auto& c : all) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit > 0 && s >= c.limit)
            o.require(false, "runtime " + std::to_string(s) + " s over " + std::to_string(c.limit) + " s");
        std::printf("criterion %d %-28s %s  (%.2f s) %s\n", c.id, c.title, o.ok ? "PASS" : "FAIL", s, o.detail.c_str());
        failed += !o.ok;
    }
    std::printf("%s: %d of %zu criteria pass\n", failed ? "FAIL" : "PASS", static_cast<int>(all.size()) - failed,
                all.size());
    return failed ? 1 : 0;
}
