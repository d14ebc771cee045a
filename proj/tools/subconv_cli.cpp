// Batch driver: runs the verification suites and writes machine reports.
//
// Exit codes: 0 all assertions pass, 1 assertion failure, 2 configuration
// error (unknown subcommand, bad flag, looser-than-default tolerance).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "subconv/exponents.hpp"
#include "subconv/simd.hpp"
#include "subconv/suite.hpp"

namespace {

std::string default_out_dir() {
    const char* env = std::getenv("SUBCONV_OUT_DIR");
    return env ? std::string(env) : std::string();
}

// summary of the run in the requested format, next to the module reports
void write_summary(const subconv::suite::SuiteResult& res,
                   const subconv::suite::Options& opt) {
    if (opt.out_dir.empty()) return;
    std::filesystem::create_directories(opt.out_dir);
    if (opt.format == "json") {
        nlohmann::json out;
        out["schema_version"] = "1";
        out["suite"] = res.suite;
        out["pass"] = res.pass();
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& c : res.checks)
            checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        out["checks"] = checks;
        std::ofstream os(std::filesystem::path(opt.out_dir) / "summary.json",
                         std::ios::binary | std::ios::trunc);
        os << out.dump(2) << "\n";
    } else {
        std::ofstream os(std::filesystem::path(opt.out_dir) / "summary.csv",
                         std::ios::binary | std::ios::trunc);
        os << "suite,check,pass,detail\n";
        for (const auto& c : res.checks) {
            std::string detail = c.detail;
            for (char& ch : detail)
                if (ch == ',') ch = ';';
            os << res.suite << "," << c.name << "," << (c.pass ? 1 : 0) << "," << detail
               << "\n";
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"subconv: verification suites for the delta-method arithmetic core"};
    app.require_subcommand(0, 1);

    subconv::suite::Options opt;
    opt.out_dir = default_out_dir();

    bool no_simd = false;
    app.add_option("--seed", opt.seed, "master seed for all randomized grids");
    app.add_option("--out", opt.out_dir, "output directory for machine reports");
    app.add_option("--format", opt.format, "report format: csv or json");
    app.add_option("--trials", opt.kfrac_trials, "trial count for kfrac experiments");
    app.add_option("--threads", opt.threads, "worker threads for exhaustive grids");
    app.add_option("--tol-delta", opt.tol_delta, "delta-identity tolerance (stricter only)");
    app.add_option("--tol-voronoi", opt.tol_voronoi, "Voronoi tolerance (stricter only)");
    app.add_option("--tol-sheval", opt.tol_sheval, "Shat tolerance scale (stricter only)");
    app.add_option("--tol-vpoisson", opt.tol_vpoisson, "Poisson V tolerance (stricter only)");
    app.add_option("--tol-hecke", opt.tol_hecke, "Hecke relation tolerance (stricter only)");
    app.add_flag("--no-simd", no_simd, "force the scalar reference kernels");

    std::string sigma_str = "1/20";
    int jval = 2;
    CLI::App* sub_exp = nullptr;
    for (const std::string& name : subconv::suite::suite_names()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->fallthrough();
        if (name == "exponents-solve") {
            sub_exp = sub;
            sub->add_option("--sigma", sigma_str, "sigma as an exact fraction a/b");
            sub->add_option("--j", jval, "amplifier index j (1 or 2)");
        }
    }
    app.add_subcommand("all", "run every suite")->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (app.get_subcommands().empty()) {
        std::cerr << "error: a subcommand is required; one of:";
        for (const std::string& n : subconv::suite::suite_names()) std::cerr << " " << n;
        std::cerr << " all\n";
        return 2;
    }

    if (no_simd) subconv::simd::force_isa(subconv::simd::Isa::Scalar);

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        subconv::suite::validate_options(opt);
        subconv::suite::SuiteResult res;
        if (sub_exp != nullptr && name == "exponents-solve") {
            subconv::exponents::Rational sigma = subconv::exponents::Rational::parse(sigma_str);
            res = subconv::suite::exponents_solve(opt, jval, sigma);
            // headline values on stdout
            std::cout << "delta(j=" << jval << ", sigma=" << sigma.str()
                      << ") = " << subconv::exponents::final_delta(jval, sigma).str() << "\n";
        } else {
            res = subconv::suite::run_suite(name, opt);
        }
        subconv::suite::print_result(res, std::cout);
        write_summary(res, opt);
        return res.pass() ? 0 : 1;
    } catch (const subconv::PreconditionViolated& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const subconv::InvalidSigma& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 1;
    }
}
