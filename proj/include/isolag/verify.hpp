#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "data.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "moment.hpp"
#include "rootsys.hpp"
#include "stability.hpp"
#include "sympair.hpp"

namespace isolag {

// Report format (one record per line, tab separated):
//   check  name  status  value  threshold  citation
// status is pass, fail or unsupported. Lines starting with '#' are header and
// summary. Exact rationals print as p/q, reals as %.6e. No timing is written
// so that reports are byte-identical for a fixed config.

struct GeometryTolerances {
    double curvature_spread = 1e-7;
    double angle_spacing = 1e-7;
    double kahler = 1e-9;
    double palmer = 1e-9;
    double bv_identity = 1e-8;
    double bv_closed_form = 1e-7;
};

struct VerifyConfig {
    std::string suite = "all";
    std::optional<std::string> pair;
    int samples = 100;
    std::uint64_t seed = 42;
    std::optional<double> tol_geom;  // replaces every geometry threshold
    std::string out;                 // empty: stdout
    double theta = 0.3;              // orbit level in a
    int sweep_points = 720;
    int bv_grid = 360;
};

struct CheckRecord {
    std::string check, name, status, value, threshold, citation;
};

struct Report {
    std::string suite;
    std::vector<CheckRecord> records;
    double seconds = 0.0;

    bool pass() const
    {
        return std::none_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.status == "fail"; });
    }
    void append(std::vector<CheckRecord> more)
    {
        for (auto& r : more)
            records.push_back(std::move(r));
    }
};

inline std::string fmt_real(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

inline const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> s = {"geometry", "moment", "stability", "all"};
    return s;
}

inline void validate(const VerifyConfig& c)
{
    if (std::find(suite_names().begin(), suite_names().end(), c.suite) == suite_names().end())
        throw ConfigError("unknown suite '" + c.suite + "'");
    if (c.samples < 1)
        throw ConfigError("--samples must be >= 1");
    if (c.tol_geom && !(*c.tol_geom > 0))
        throw ConfigError("--tol-geom must be > 0");
    if (c.pair)
        parse_pair_id(*c.pair);
}

inline GeometryTolerances geometry_tolerances(const VerifyConfig& c)
{
    GeometryTolerances t;
    if (c.tol_geom)
        t.curvature_spread = t.angle_spacing = t.kahler = t.palmer = t.bv_identity = t.bv_closed_form =
            *c.tol_geom;
    return t;
}

namespace detail {

struct Recorder {
    std::string check, prefix;
    std::vector<CheckRecord> out;

    void below(const std::string& name, double value, double tol, const std::string& cite)
    {
        out.push_back({check, prefix + name, value < tol ? "pass" : "fail", fmt_real(value), "<" + fmt_real(tol), cite});
    }
    void equal(const std::string& name, const std::string& got, const std::string& want, const std::string& cite)
    {
        out.push_back({check, prefix + name, got == want ? "pass" : "fail", got, "=" + want, cite});
    }
    void truth(const std::string& name, bool ok, const std::string& value, const std::string& cite)
    {
        out.push_back({check, prefix + name, ok ? "pass" : "fail", value, "true", cite});
    }
    void unsupported(const std::string& name, const std::string& why)
    {
        out.push_back({check, prefix + name, "unsupported", "-", "-", why});
    }
    void error(const std::string& name, const std::exception& e)
    {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\t', ' ');
        out.push_back({check, prefix + name, "fail", "error: " + msg, "-", "-"});
    }
    template <class F>
    void guard(const std::string& name, F&& f)
    {
        try {
            f();
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            error(name, e);
        }
    }
};

inline std::string multiset(std::vector<int> v)
{
    std::sort(v.begin(), v.end());
    return int_list(v);
}

} // namespace detail

// ---------------------------------------------------------------------------
// geometry

inline std::vector<CheckRecord> geometry_checks(const PairDescriptor& d, const VerifyConfig& cfg)
{
    detail::Recorder r{"geometry", d.id + "/", {}};
    if (!d.matrix_realizable) {
        r.unsupported("all", "no matrix model for this pair");
        return r.out;
    }
    const auto tol = geometry_tolerances(cfg);
    r.guard("build", [&] {
        auto sp = build_pair(d);
        auto prof = principal_curvatures(sp, cfg.theta);
        auto samples = orbit_samples(sp, cfg.theta, cfg.samples, cfg.seed);

        std::vector<int> mults;
        for (const auto& c : prof.classes)
            mults.push_back(c.mult);
        r.equal("distinct_curvatures", std::to_string(prof.g()), std::to_string(d.g), "g distinct principal curvatures");
        std::vector<int> want_m = {d.m1, d.m2};
        if (d.g == 1)
            want_m = {d.m1};
        std::vector<int> want_all;
        for (int i = 0; i < d.g; ++i)
            want_all.push_back(want_m[static_cast<std::size_t>(i) % want_m.size()]);
        r.equal("multiplicities", detail::multiset(mults), detail::multiset(want_all), "Table 2 multiplicities");
        r.below("arccot_spacing", angle_spacing_defect(prof), tol.angle_spacing, "arccot(kappa_i) spaced by pi/g");

        const VectorXd expect = expanded_curvatures(prof);
        const double phase = palmer_phase(prof);
        double spread = 0.0, ph_lo = 1e300, ph_hi = -1e300, kahler = 0.0, sample_def = 0.0;
        double bv_lag = 0.0, bv_iso = 0.0, bv_closed = 0.0;
        const int grid = cfg.bv_grid;
        std::vector<VectorXd> closed(static_cast<std::size_t>(grid));
        for (int j = 0; j < grid; ++j)
            closed[static_cast<std::size_t>(j)] = b_operator_closed_form(prof, 2 * std::numbers::pi * j / grid);
        for (const auto& s : samples) {
            sample_def = std::max(sample_def, sample_defect(s));
            VectorXd k = sorted_eigenvalues(shape_operator(sp, s));
            spread = std::max(spread, (k - expect).cwiseAbs().maxCoeff());
            double ph = 0.0;
            for (Eigen::Index i = 0; i < k.size(); ++i)
                ph += std::atan(k(i));
            ph_lo = std::min(ph_lo, ph);
            ph_hi = std::max(ph_hi, ph);
            auto ts = plane_differentials(sp, s);
            kahler = std::max(kahler, kahler_max(ts));
            auto f = bv_frame(ts);
            for (int j = 0; j < grid; ++j) {
                auto b = b_operator_spectrum(f, 2 * std::numbers::pi * j / grid);
                bv_lag = std::max(bv_lag, b.lagrange_residual);
                bv_iso = std::max(bv_iso, b.isometry_residual);
                bv_closed = std::max(bv_closed, (b.eigenvalues - closed[static_cast<std::size_t>(j)]).cwiseAbs().maxCoeff());
            }
        }
        r.below("sample_on_orbit", sample_def, 1e-9, "samples lie on the unit sphere orbit");
        r.below("curvature_spread", spread, tol.curvature_spread, "principal curvatures constant along the orbit");
        r.below("kahler_pullback_max", kahler, tol.kahler, "Gauss map is Lagrangian");
        double ph_spread = std::max(ph_hi - ph_lo, std::max(std::abs(ph_hi - phase), std::abs(ph_lo - phase)));
        r.below("palmer_phase_spread", ph_spread, tol.palmer, "sum atan(kappa_i) constant (Palmer)");
        r.below("bv_lagrange", bv_lag, tol.bv_identity, "B_v Lagrangian identity");
        r.below("bv_isometry", bv_iso, tol.bv_identity, "B_v isometry identity");
        r.below("bv_closed_form", bv_closed, tol.bv_closed_form, "spectrum (cos phi - kappa sin phi)^2/(1+kappa^2)");
    });
    return r.out;
}

// ---------------------------------------------------------------------------
// moment

inline std::vector<CheckRecord> moment_checks(const PairDescriptor& d, const VerifyConfig& cfg)
{
    detail::Recorder r{"moment", d.id + "/", {}};
    if (!d.matrix_realizable) {
        r.unsupported("all", "no matrix model for this pair");
        return r.out;
    }
    r.guard("build", [&] {
        auto sp = build_pair(d);
        auto samples = orbit_samples(sp, cfg.theta, cfg.samples, cfg.seed);
        double gauss = 0.0;
        for (const auto& s : samples)
            gauss = std::max(gauss, std::sqrt(moment_map(sp, gauss_map(s)).norm_sq));
        r.below("mu_on_gauss_image", gauss, 1e-9, "moment map vanishes on the Gauss image");

        std::mt19937_64 rng(cfg.seed + 1);
        std::normal_distribution<double> nd;
        auto randv = [&](Eigen::Index n) {
            VectorXd v(n);
            for (auto& x : v)
                x = nd(rng);
            return v;
        };
        double equiv = 0.0, sec = 0.0;
        for (int t = 0; t < cfg.samples; ++t) {
            auto q = make_plane(randv(sp.dim_p()), randv(sp.dim_p()));
            auto m = moment_map(sp, q);
            VectorXd xi = randv(sp.dim_k());
            QuadricPoint moved{sp.Ad_p(xi) * q.a, sp.Ad_p(xi) * q.b};
            equiv = std::max(equiv, (moment_map(sp, moved).mu - sp.Ad_k(xi) * m.mu).cwiseAbs().maxCoeff());
            sec = std::max(sec, std::abs(m.norm_sq - sectional_curvature(sp, q)));
        }
        r.below("equivariance", equiv, 1e-9, "mu(k.V) = Ad(k) mu(V)");
        r.below("norm_sq_is_sectional_curvature", sec, 1e-9, "|mu|^2 = K(V)");

        if (!sp.z)
            return;
        auto rows = w_lambda_sweep(sp, cfg.sweep_points);
        double best = 0.0, central = 0.0;
        for (const auto& row : rows) {
            best = std::max(best, row.norm_sq);
            central = std::max(central, row.central_defect);
        }
        r.below("wlambda_mu_central", central, 1e-9, "mu(W_lambda) lies in the center of k");
        bool max_at_quarter = true;
        std::map<int, int> dims_quarter, dims_generic;
        for (const auto& row : rows) {
            bool quarter = std::abs(std::abs(row.theta) - std::numbers::pi / 2) < 1e-12;
            bool is_max = std::abs(row.norm_sq - best) <= 1e-12 * std::max(1.0, best);
            if (quarter != is_max)
                max_at_quarter = false;
            (quarter ? dims_quarter : dims_generic)[row.orbit_dim]++;
        }
        r.truth("wlambda_max_at_quarter_turns", max_at_quarter, fmt_real(best), "|mu|^2 maximal exactly at theta = +-pi/2");
        auto dims = [](const std::map<int, int>& m) {
            std::string s;
            for (const auto& [k, v] : m)
                s += (s.empty() ? "" : " ") + std::to_string(k) + "x" + std::to_string(v);
            return s;
        };
        int quarter_dim = 0, generic_dim = 0;
        if (d.family == "BDI2") {
            quarter_dim = d.params[0] - 1;
            generic_dim = 2 * d.params[0] - 2;
        } else {
            quarter_dim = 0;
            generic_dim = d.n;
        }
        int quarters = 0;
        for (const auto& row : rows)
            if (std::abs(std::abs(row.theta) - std::numbers::pi / 2) < 1e-12)
                ++quarters;
        r.equal("wlambda_orbit_dim_quarter", dims(dims_quarter),
                std::to_string(quarter_dim) + "x" + std::to_string(quarters), "orbit dimension at theta = +-pi/2");
        r.equal("wlambda_orbit_dim_generic", dims(dims_generic),
                std::to_string(generic_dim) + "x" + std::to_string(static_cast<int>(rows.size()) - quarters),
                "orbit dimension away from +-pi/2");
    });
    return r.out;
}

// ---------------------------------------------------------------------------
// tables

struct TableData {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

inline TableData constants_table()
{
    TableData t{{"case", "n", "dim_p", "dim_k", "b_inv", "gamma1_norm_sq", "Cn"}, {}};
    for (const auto& sc : stability_cases()) {
        auto c = casimir_constants(sc.id);
        t.rows.push_back({c.case_id, std::to_string(c.n), std::to_string(c.dim_p), std::to_string(c.dim_k),
                          to_string(c.b_inv), to_string(c.gamma1_norm_sq), to_string(c.Cn)});
    }
    return t;
}

inline TableData candidates_table(const std::vector<BranchingDatum>& branching)
{
    TableData t{{"case", "weight", "weight_m", "root_coords", "neg_c", "fixed_dim", "weyl_dim"}, {}};
    for (const auto& sc : stability_cases()) {
        auto rep = stability_verdict(sc.id, branching);
        for (const auto& c : rep.candidates)
            t.rows.push_back({sc.id, c.label, int_list(c.weight.m), rational_list(c.weight.p), to_string(c.eigenvalue),
                              std::to_string(c.fixed_dim), to_string(c.weyl_dim)});
    }
    return t;
}

inline TableData table2_table()
{
    TableData t{{"family", "g", "U", "K", "n", "m1", "m2", "N", "constraint"}, {}};
    for (const auto& row : catalog_rows())
        t.rows.push_back({row.family, std::to_string(row.g), row.group_u, row.group_k, row.n_formula, row.m1_formula,
                          row.m2_formula, row.quotient, row.constraint});
    return t;
}

inline TableData table1_table(const std::vector<Table1Row>& rows)
{
    TableData t{{"M", "L", "einstein", "lambda1", "h_stable", "stable"}, {}};
    auto yn = [](bool b) { return std::string(b ? "Yes" : "No"); };
    for (const auto& r : rows)
        t.rows.push_back({r.ambient, r.lagrangian, yn(r.einstein), r.lambda1, yn(r.h_stable), yn(r.stable)});
    return t;
}

inline const std::vector<std::string>& table_names()
{
    static const std::vector<std::string> s = {"constants", "candidates", "table2", "table1"};
    return s;
}

inline TableData compute_table(const std::string& which)
{
    if (which == "constants")
        return constants_table();
    if (which == "candidates")
        return candidates_table(load_branching());
    if (which == "table2")
        return table2_table();
    if (which == "table1")
        return table1_table(load_table1());
    throw ConfigError("unknown table '" + which + "'");
}

inline std::string golden_file(const std::string& which)
{
    if (which == "constants")
        return "constants_golden.csv";
    if (which == "candidates")
        return "candidates_golden.csv";
    if (which == "table2")
        return "table2.csv";
    if (which == "table1")
        return "table1.csv";
    throw ConfigError("unknown table '" + which + "'");
}

inline std::string render_csv(const TableData& t)
{
    std::string s = csv_line(t.header) + "\n";
    for (const auto& r : t.rows)
        s += csv_line(r) + "\n";
    return s;
}

// Golden file restricted to the computed columns; "" if identical, otherwise
// the first difference.
inline std::string golden_difference(const TableData& t, const CsvTable& golden)
{
    std::vector<int> cols;
    for (const auto& h : t.header) {
        auto it = std::find(golden.header.begin(), golden.header.end(), h);
        if (it == golden.header.end())
            return "golden lacks column " + h;
        cols.push_back(static_cast<int>(it - golden.header.begin()));
    }
    if (golden.rows.size() != t.rows.size())
        return "row count " + std::to_string(t.rows.size()) + " vs golden " + std::to_string(golden.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (golden.rows[i][static_cast<std::size_t>(cols[j])] != t.rows[i][j])
                return "row " + std::to_string(i + 1) + " column " + t.header[j] + ": '" + t.rows[i][j] +
                       "' vs golden '" + golden.rows[i][static_cast<std::size_t>(cols[j])] + "'";
    return "";
}

inline void write_table(const std::string& which, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / (which + ".csv"));
    if (!out)
        throw ConfigError("cannot write " + (dir / (which + ".csv")).string());
    out << render_csv(compute_table(which));
}

// ---------------------------------------------------------------------------
// stability

inline std::vector<CheckRecord> stability_checks()
{
    detail::Recorder r{"stability", "", {}};
    r.guard("constants", [&] {
        const std::map<std::string, std::string> printed = {{"AI2", "3 5 3 6 1/3 6"},
                                                            {"a2", "6 8 8 2 1/6 2"},
                                                            {"AII2", "12 14 21 3/2 1/12 3/2"},
                                                            {"EIV", "24 26 52 4/3 1/24 4/3"}};
        for (const auto& sc : stability_cases()) {
            auto c = casimir_constants(sc.id);
            std::string got = std::to_string(c.n) + " " + std::to_string(c.dim_p) + " " + std::to_string(c.dim_k) +
                              " " + to_string(c.b_inv) + " " + to_string(c.gamma1_norm_sq) + " " + to_string(c.Cn);
            r.equal(sc.id + "/constants", got, printed.at(sc.id), "constants b^-1, |gamma1|^2, Cn");
        }
    });
    r.guard("candidates", [&] {
        const std::map<std::string, std::string> printed = {
            {"a2", "0:0 0;3L1:2 1;3L2:1 2;L1+L2:1 1"},
            {"AII2", "0:0 0 0;2L1:2 2 1;L1+L3:2 3 2;L2:1 2 1"},
            {"EIV", "0:0 0 0 0;L1:2 3 4 2;L3:2 4 6 3;L4:1 2 3 2"}};
        for (const auto& [id, want] : printed) {
            const auto& sc = stability_case(id);
            auto rs = case_root_system(id);
            std::vector<std::string> parts;
            for (const auto& w : dominant_weights_below(rs, casimir_constants(id).Cn, sc.lattice))
                parts.push_back(weight_label(w) + ":" + rational_list(w.p));
            std::sort(parts.begin(), parts.end());
            std::string got;
            for (const auto& p : parts)
                got += (got.empty() ? "" : ";") + p;
            r.equal(id + "/candidate_weights", got, want, "dominant weights with -c <= Cn");
        }
    });
    r.guard("freudenthal", [&] {
        for (const auto& sc : stability_cases()) {
            auto rs = case_root_system(sc.id);
            std::vector<int> m(rs.rank, 0);
            int n = 0, bad = 0;
            while (true) {
                auto w = make_weight(rs, m);
                if (case_eigenvalue_formula(sc.id, m, w.p) != casimir_eigenvalue(rs, w))
                    ++bad;
                ++n;
                int i = 0;
                while (i < rs.rank && m[i] == 5)
                    m[i++] = 0;
                if (i == rs.rank)
                    break;
                ++m[i];
            }
            r.truth(sc.id + "/case_formula_vs_freudenthal", bad == 0,
                    std::to_string(n - bad) + "/" + std::to_string(n), "eigenvalue formula is Freudenthal");
        }
    });
    r.guard("su2", [&] {
        r.equal("su2/order_K0", std::to_string(su2_subgroup(Su2Subgroup::K0_tilde).size()), "8", "K~0 has order 8");
        r.equal("su2/order_Ka", std::to_string(su2_subgroup(Su2Subgroup::Ka_tilde).size()), "24", "K~[a] has order 24");
        r.equal("su2/V4_Ka", std::to_string(su2_fixed_dimension(4, Su2Subgroup::Ka_tilde)), "0", "(V4) fixed by K~[a] is 0");
        r.equal("su2/V6_Ka", std::to_string(su2_fixed_dimension(6, Su2Subgroup::Ka_tilde)), "1", "(V6) fixed by K~[a] is 1-dim");
        r.equal("su2/V4_K0", std::to_string(su2_fixed_dimension(4, Su2Subgroup::K0_tilde)), "2", "(V4) fixed by K~0 spanned by w1, w2");
        int odd_bad = 0;
        double worst = 0.0;
        for (int m = 0; m <= 20; ++m) {
            for (auto s : {Su2Subgroup::K0_tilde, Su2Subgroup::Ka_tilde}) {
                double t = su2_fixed_trace(m, s);
                worst = std::max(worst, std::abs(t - std::round(t)));
            }
            if (m % 2 && m <= 19 && su2_fixed_dimension(m, Su2Subgroup::K0_tilde) != 0)
                ++odd_bad;
        }
        r.equal("su2/odd_m_K0", std::to_string(odd_bad), "0", "no K~0-fixed vectors for odd m");
        r.below("su2/trace_integrality", worst, 1e-8, "projector traces are integers");
    });
    r.guard("verdicts", [&] {
        const std::map<std::string, long> nullity = {{"AI2", 7}, {"a2", 20}, {"AII2", 70}, {"EIV", 273}};
        auto branching = load_branching();
        for (const auto& sc : stability_cases()) {
            auto rep = stability_verdict(sc.id, branching);
            r.equal(sc.id + "/lambda1", rep.min_positive_eigenvalue ? to_string(*rep.min_positive_eigenvalue) : "none",
                    to_string(rep.Cn), "lambda_1 equals Cn");
            r.equal(sc.id + "/nullity", to_string(*rep.nullity), std::to_string(nullity.at(sc.id)), "nullity");
            r.equal(sc.id + "/killing_nullity", to_string(*rep.killing_nullity), std::to_string(nullity.at(sc.id)),
                    "dim so(n+2) - dim k");
            r.truth(sc.id + "/strictly_stable", rep.h_stable && rep.strict,
                    std::string(rep.h_stable ? "H-stable" : "not H-stable") + (rep.strict ? ", strict" : ""),
                    "strictly Hamiltonian stable");
        }
        auto t1 = load_table1();
        int checked = 0, bad = 0;
        for (int m1 = 1; m1 <= 11; ++m1)
            for (int m2 = 1; m1 + m2 <= 12; ++m2) {
                ++checked;
                bool rule = stability_verdict_g2(m1, m2).h_stable;
                bool t = table1_quadric_row(t1, std::min(m1, m2) + 1, std::max(m1, m2) + 1).h_stable;
                if (rule != t || rule != (std::abs(m2 - m1) < 3))
                    ++bad;
            }
        r.truth("g2/rule_vs_table1", bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked),
                "g=2 stable iff m2-m1 < 3");
        int g1bad = 0;
        for (int n = 2; n <= 12; ++n)
            if (!stability_verdict_g1(n).h_stable || !table1_quadric_row(t1, 1, n + 1).h_stable)
                ++g1bad;
        r.truth("g1/stable", g1bad == 0, std::to_string(11 - g1bad) + "/11", "g=1 Hamiltonian stable");
    });
    r.guard("golden", [&] {
        for (const auto& which : table_names()) {
            auto diff = golden_difference(compute_table(which), read_data_file(golden_file(which)));
            r.truth("tables/" + which, diff.empty(), diff.empty() ? "identical" : diff, "golden copy of " + which);
        }
        for (const auto& row : catalog_rows()) {
            if (!row.matrix_realizable)
                continue;
            auto d = describe(row.family, {});
            auto sp = build_pair(d);
            std::vector<int> want = {d.m1, d.m2};
            if (d.g == 1)
                want = {d.m1};
            std::vector<int> all;
            for (int i = 0; i < d.g; ++i)
                all.push_back(want[static_cast<std::size_t>(i) % want.size()]);
            // proportional roots (g = 1) share one curvature class
            std::vector<int> classes;
            for (const auto& c : principal_curvatures(sp, 0.3).classes)
                classes.push_back(c.mult);
            r.equal("table2/" + d.id, std::to_string(sp.dim_p() - 2) + ";" + detail::multiset(classes),
                    std::to_string(d.n) + ";" + detail::multiset(all), "Table 2 dim N and multiplicities");
        }
    });
    return r.out;
}

// ---------------------------------------------------------------------------

inline std::vector<PairDescriptor> default_pairs()
{
    std::vector<PairDescriptor> v;
    for (const auto& row : catalog_rows())
        v.push_back(describe(row.family, {}));
    return v;
}

inline std::vector<PairDescriptor> wlambda_pairs()
{
    return {describe("BDI2", {3}), describe("BDI2", {4}), describe("BDIIxBDII", {1, 3})};
}

inline Report run_verify(const VerifyConfig& cfg)
{
    validate(cfg);
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.suite = cfg.suite;
    const bool all = cfg.suite == "all";
    std::vector<PairDescriptor> pairs;
    if (cfg.pair)
        pairs.push_back(parse_pair_id(*cfg.pair));
    else
        pairs = default_pairs();

    std::vector<std::future<std::vector<CheckRecord>>> jobs;
    if (all || cfg.suite == "geometry")
        for (const auto& d : pairs)
            jobs.push_back(std::async(std::launch::async, [d, cfg] { return geometry_checks(d, cfg); }));
    if (all || cfg.suite == "moment") {
        auto mp = pairs;
        if (!cfg.pair)
            for (const auto& w : wlambda_pairs())
                if (std::none_of(mp.begin(), mp.end(), [&](const PairDescriptor& x) { return x.id == w.id; }))
                    mp.push_back(w);
        for (const auto& d : mp)
            jobs.push_back(std::async(std::launch::async, [d, cfg] { return moment_checks(d, cfg); }));
    }
    for (auto& j : jobs)
        rep.append(j.get());
    if (all || cfg.suite == "stability") {
        if (!cfg.pair) {
            rep.append(stability_checks());
        } else {
            detail::Recorder r{"stability", "", {}};
            const auto& d = pairs[0];
            r.guard(d.id, [&] {
                if (d.g == 1) {
                    r.truth(d.id + "/verdict", stability_verdict_g1(d.n).h_stable, "H-stable", "g=1 Hamiltonian stable");
                } else if (d.g == 2) {
                    auto v = stability_verdict_g2(d.m1, d.m2);
                    r.truth(d.id + "/verdict", v.h_stable == (std::abs(d.m2 - d.m1) < 3),
                            v.h_stable ? "H-stable" : "not H-stable", "g=2 stable iff m2-m1 < 3");
                } else if (d.g == 3) {
                    auto v = stability_verdict(d.family);
                    r.truth(d.id + "/strictly_stable", v.h_stable && v.strict,
                            "nullity " + to_string(*v.nullity), "strictly Hamiltonian stable");
                } else {
                    r.unsupported(d.id + "/verdict", "stability for g = 4, 6 is not decided here");
                }
            });
            rep.append(std::move(r.out));
        }
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline std::string render_report(const Report& rep, const VerifyConfig& cfg)
{
    std::ostringstream os;
    os << "# isolag report v1\n";
    os << "# schema: check\tname\tstatus\tvalue\tthreshold\tcitation\n";
    os << "# suite=" << rep.suite << " pair=" << (cfg.pair ? *cfg.pair : "-") << " samples=" << cfg.samples
       << " seed=" << cfg.seed << " theta=" << fmt_real(cfg.theta)
       << " tol_geom=" << (cfg.tol_geom ? fmt_real(*cfg.tol_geom) : "default") << "\n";
    int pass = 0, fail = 0, unsup = 0;
    for (const auto& r : rep.records) {
        os << r.check << '\t' << r.name << '\t' << r.status << '\t' << r.value << '\t' << r.threshold << '\t'
           << r.citation << '\n';
        (r.status == "pass" ? pass : r.status == "fail" ? fail : unsup)++;
    }
    os << "# summary: " << rep.records.size() << " checks, " << pass << " pass, " << fail << " fail, " << unsup
       << " unsupported; overall " << (rep.pass() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

inline std::string render_sweep(const std::vector<SweepRow>& rows)
{
    std::string s = "theta,norm_sq,orbit_dim,central_defect\n";
    char buf[128];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.12f,%.12e,%d,%.3e\n", r.theta, r.norm_sq, r.orbit_dim, r.central_defect);
        s += buf;
    }
    return s;
}

} // namespace isolag
