// End-to-end checks of the CLI binary: exit codes, determinism of the
// machine reports, and the documented flag surface.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args) {
    std::string cmd = std::string(SUBCONV_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("cli exit codes") {
    CHECK(run_cli("exponents-solve --sigma 1/20 --j 2") == 0);
    CHECK(run_cli("definitely-not-a-subcommand") == 2);
    CHECK(run_cli("") == 2);
    // looser-than-default tolerance is a configuration error
    CHECK(run_cli("delta-verify --tol-delta 1e-3") == 2);
}

TEST_CASE("cli headline exponent output") {
    std::string out = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                      "/subconv_cli_out.txt";
    std::string cmd = std::string(SUBCONV_CLI_PATH) +
                      " exponents-solve --sigma 1/20 --j 2 > " + out + " 2>/dev/null";
    REQUIRE(std::system(cmd.c_str()) == 0);
    std::string text = slurp(out);
    CHECK(text.find("1/524") != std::string::npos);
    fs::remove(out);

    std::string cmd1 = std::string(SUBCONV_CLI_PATH) +
                       " exponents-solve --sigma 1/20 --j 1 > " + out + " 2>/dev/null";
    REQUIRE(std::system(cmd1.c_str()) == 0);
    CHECK(slurp(out).find("1/302") != std::string::npos);
    fs::remove(out);
}

TEST_CASE("report determinism under a fixed seed") {
    fs::path dir1 = fs::temp_directory_path() / "subconv_rep1";
    fs::path dir2 = fs::temp_directory_path() / "subconv_rep2";
    fs::remove_all(dir1);
    fs::remove_all(dir2);
    REQUIRE(run_cli("kfrac-experiment --trials 12 --seed 99 --out " + dir1.string()) == 0);
    REQUIRE(run_cli("kfrac-experiment --trials 12 --seed 99 --out " + dir2.string()) == 0);
    std::string a = slurp(dir1 / "kfrac_trials.csv");
    std::string b = slurp(dir2 / "kfrac_trials.csv");
    REQUIRE(!a.empty());
    CHECK(a == b);
    // a different seed changes the trial draw
    fs::remove_all(dir2);
    REQUIRE(run_cli("kfrac-experiment --trials 12 --seed 100 --out " + dir2.string()) == 0);
    CHECK(slurp(dir2 / "kfrac_trials.csv") != a);
    fs::remove_all(dir1);
    fs::remove_all(dir2);
}

TEST_CASE("exponents json report") {
    fs::path dir = fs::temp_directory_path() / "subconv_expjson";
    fs::remove_all(dir);
    REQUIRE(run_cli("exponents-solve --sigma 1/20 --j 2 --out " + dir.string()) == 0);
    std::string text = slurp(dir / "exponents.json");
    CHECK(text.find("\"schema_version\": \"1\"") != std::string::npos);
    CHECK(text.find("1/524") != std::string::npos);
    CHECK(text.find("1/302") != std::string::npos);
    CHECK(text.find("-33/262") != std::string::npos);
    fs::remove_all(dir);
}
