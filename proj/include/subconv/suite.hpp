#pragma once

// Named verification suites: each runs a spec'd grid at pinned tolerances
// and returns per-check pass/fail plus machine-readable report files.
// The CLI subcommands and the acceptance tests both drive these.

#include <iosfwd>
#include <string>
#include <vector>

#include "subconv/arith.hpp"
#include "subconv/exponents.hpp"

namespace subconv::suite {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;

    bool pass() const {
        for (const CheckResult& c : checks)
            if (!c.pass) return false;
        return true;
    }
    double seconds() const {
        double s = 0.0;
        for (const CheckResult& c : checks) s += c.seconds;
        return s;
    }
};

struct Options {
    arith::u64 seed = 20240516;
    std::string out_dir;         // machine reports written when non-empty
    std::string format = "csv";  // csv | json
    // pinned tolerances; overrides may only be stricter (validated)
    double tol_delta = 1e-6;
    double tol_voronoi = 1e-5;
    double tol_sheval = 1e-8;    // scaled by c1*c2
    double tol_vpoisson = 1e-4;  // scaled by max(|V|, 1)
    double tol_hecke = 1e-9;
    int kfrac_trials = 200;
    int threads = 2;
};

// Throws PreconditionViolated if any tolerance is looser than its default.
void validate_options(const Options& opt);

SuiteResult charsums_verify(const Options& opt);
SuiteResult delta_verify(const Options& opt);
SuiteResult voronoi_verify(const Options& opt);
SuiteResult hecke_verify(const Options& opt);
SuiteResult amplifier_verify(const Options& opt);
SuiteResult sheval_verify(const Options& opt);
SuiteResult kfrac_experiment(const Options& opt);
SuiteResult pipeline_run(const Options& opt);
SuiteResult exponents_solve(const Options& opt, int j, const exponents::Rational& sigma);

std::vector<std::string> suite_names();
// Runs one suite by name ("all" runs the union).
SuiteResult run_suite(const std::string& name, const Options& opt);

void print_result(const SuiteResult& r, std::ostream& os);

} // namespace subconv::suite
