#include <CLI11.hpp>

#include <isolag/verify.hpp>

#include <fstream>
#include <iostream>

using namespace isolag;

namespace {

int write_or_print(const std::string& path, const std::string& text)
{
    if (path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(path);
    if (!out) {
        std::cerr << "isolag: cannot write " << path << "\n";
        return 2;
    }
    out << text;
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"isolag: Lagrangian Gauss images in complex hyperquadrics, verification tool"};
    app.require_subcommand(1);

    VerifyConfig cfg;
    std::string pair;
    double tol_geom = 0.0;

    auto* verify = app.add_subcommand("verify", "run a verification suite and write a report");
    verify->add_option("--suite", cfg.suite, "geometry, moment, stability or all");
    verify->add_option("--pair", pair, "pair id, e.g. AI2 or BDI2(4)");
    verify->add_option("--samples", cfg.samples, "orbit samples per pair")->default_val(100);
    verify->add_option("--seed", cfg.seed, "sampling seed")->default_val(42);
    verify->add_option("--tol-geom", tol_geom, "absolute tolerance for every geometry check");
    verify->add_option("--out", cfg.out, "report path (default stdout)");

    std::string which = "all";
    std::string out_dir = ".";
    auto* tables = app.add_subcommand("tables", "write computed tables as CSV");
    tables->add_option("which", which, "constants, candidates, table2, table1 or all");
    tables->add_option("--out", out_dir, "output directory");

    std::string sweep_pair = "BDI2(3)";
    int points = 720;
    std::string sweep_out;
    auto* sweep = app.add_subcommand("sweep", "W_lambda theta sweep as CSV");
    sweep->add_option("--pair", sweep_pair, "pair with a W_lambda family");
    sweep->add_option("--samples", points, "number of theta points")->default_val(720);
    sweep->add_option("--out", sweep_out, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*verify) {
            if (!pair.empty())
                cfg.pair = pair;
            if (verify->count("--tol-geom"))
                cfg.tol_geom = tol_geom;
            Report rep = run_verify(cfg);
            if (int rc = write_or_print(cfg.out, render_report(rep, cfg)))
                return rc;
            std::cerr << "isolag: " << rep.records.size() << " checks in " << rep.seconds << " s, "
                      << (rep.pass() ? "PASS" : "FAIL") << "\n";
            return rep.pass() ? 0 : 1;
        }
        if (*tables) {
            std::vector<std::string> list;
            if (which == "all")
                list = table_names();
            else
                list = {which};
            bool same = true;
            for (const auto& w : list) {
                write_table(w, out_dir);
                auto diff = golden_difference(compute_table(w), read_data_file(golden_file(w)));
                if (!diff.empty()) {
                    std::cerr << "isolag: " << w << " differs from golden copy: " << diff << "\n";
                    same = false;
                }
            }
            return same ? 0 : 1;
        }
        if (*sweep) {
            if (points < 1)
                throw ConfigError("--samples must be >= 1");
            auto sp = build_pair(sweep_pair);
            return write_or_print(sweep_out, render_sweep(w_lambda_sweep(sp, points)));
        }
    } catch (const ConfigError& e) {
        std::cerr << "isolag: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedCase& e) {
        std::cerr << "isolag: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "isolag: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
