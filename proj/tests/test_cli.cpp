// End-to-end command-line tests: exit codes, JSON output shape, config
// resolution, artifact files, and reproducibility.  The binary path arrives
// as the first non-flag argument (supplied by the test driver).
#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "herzlab/field.h"
#include "herzlab/io.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string g_cli;
fs::path g_dir;

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out = g_dir / ("stdout_" + std::to_string(counter));
    const fs::path err = g_dir / ("stderr_" + std::to_string(counter));
    ++counter;
    const std::string cmd =
        g_cli + " " + args + " > " + out.string() + " 2> " + err.string();
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.code = (rc >= 0 && WIFEXITED(rc)) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string write_config(const json& cfg) {
    static int counter = 0;
    const fs::path p = g_dir / ("config_" + std::to_string(counter++) + ".json");
    std::ofstream out(p);
    out << cfg.dump(2);
    return p.string();
}

/// Parses the JSON document that ends the output (progress lines may precede).
json tail_json(const std::string& text) {
    const auto pos = text.find('{');
    REQUIRE(pos != std::string::npos);
    return json::parse(text.substr(pos));
}

}  // namespace

TEST_CASE("help and usage errors") {
    CHECK(run_cli("norm --help").code == 0);
    const RunResult help = run_cli("--help");
    CHECK(help.code == 0);
    CHECK(help.out.find("norm") != std::string::npos);
    CHECK(help.out.find("verify") != std::string::npos);

    CHECK(run_cli("").code == 2);                  // a subcommand is required
    CHECK(run_cli("norm --bogus-flag").code == 2);
    CHECK(run_cli("frobnicate").code == 2);
}

TEST_CASE("norm command resolves defaults and prints both norms") {
    const RunResult r = run_cli("norm --output " + (g_dir / "n1").string());
    REQUIRE(r.code == 0);
    const json doc = tail_json(r.out);
    CHECK(doc["command"] == "norm");
    CHECK(doc["config"]["grid"]["points_per_axis"] == 256);
    CHECK(doc["config"]["field"]["kind"] == "gaussian_bump");
    CHECK(doc["config"]["norm"]["p"] == 2.0);
    CHECK(doc["result"]["herz_norm"].get<double>() > 0.0);
    CHECK(doc["result"]["ktl_norm"].get<double>() > 0.0);
    CHECK(doc["result"]["levels"].get<int>() > 0);
}

TEST_CASE("bad configs exit with code 2 and a diagnostic") {
    const std::string bad = write_config({{"norm", {{"p", -1.0}}}});
    const RunResult r = run_cli("norm --config " + bad);
    CHECK(r.code == 2);
    CHECK(r.err.find("error:") != std::string::npos);

    CHECK(run_cli("norm --config /does/not/exist.json").code == 2);

    const fs::path garbled = g_dir / "garbled.json";
    std::ofstream(garbled) << "{ not json";
    CHECK(run_cli("norm --config " + garbled.string()).code == 2);
}

TEST_CASE("decompose reports an exact partition and reconstruction") {
    const std::string cfg = write_config(
        {{"grid", {{"points_per_axis", 256}}}, {"field", {{"kind", "random_band"}}}});
    const RunResult r = run_cli("decompose --config " + cfg + " --output " +
                                (g_dir / "d1").string());
    REQUIRE(r.code == 0);
    const json doc = tail_json(r.out);
    CHECK(doc["result"]["partition_deviation"].get<double>() <= 1e-12);
    CHECK(doc["result"]["reconstruction_rel_l2_error"].get<double>() <= 1e-10);
    const std::string csv = doc["result"]["multiplier_csv"];
    REQUIRE(fs::exists(csv));
    std::string header;
    std::getline(std::ifstream(csv), header);
    CHECK(header.rfind("bin,xi_abs,m_0", 0) == 0);
}

TEST_CASE("heat writes the flowed field and contracts the L2 norm") {
    const RunResult r = run_cli("heat --output " + (g_dir / "h1").string());
    REQUIRE(r.code == 0);
    const json doc = tail_json(r.out);
    CHECK(doc["result"]["output_l2"].get<double>() <=
          doc["result"]["input_l2"].get<double>() * (1 + 1e-12));
    const std::string base = doc["result"]["field_base"];
    REQUIRE(fs::exists(base + ".csv"));
    REQUIRE(fs::exists(base + ".json"));
    const herzlab::SampledField f = herzlab::read_field(base);
    CHECK(f.grid().points_per_axis == 256);
}

TEST_CASE("solve integrates constant data to the scalar solution") {
    // u0 = 0.5, G(u) = u^2: u(0.2) = 0.5 / (1 - 0.5 * 0.2) = 0.5555...
    const std::string cfg = write_config(
        {{"grid", {{"points_per_axis", 16}}},
         {"field", {{"kind", "constant"}, {"value", 0.5}}},
         {"norm", {{"s", 0.4}}},
         {"solve", {{"T", 0.2}, {"steps", 64}, {"picard_max", 500}}}});
    const RunResult r =
        run_cli("solve --config " + cfg + " --output " + (g_dir / "s1").string());
    REQUIRE(r.code == 0);
    const json doc = tail_json(r.out);
    CHECK(doc["result"]["status"] == "completed");
    CHECK(doc["result"]["iterations"].get<int>() > 1);
    REQUIRE(fs::exists(doc["result"]["trajectory_csv"].get<std::string>()));
    const std::string base = doc["result"]["final_field_base"];
    const herzlab::SampledField final_u = herzlab::read_field(base);
    CHECK(final_u.values()[0].real() ==
          doctest::Approx(0.5 / 0.9).epsilon(1e-3));
}

TEST_CASE("verify runs a named check and writes a reproducible report") {
    const std::string out1 = (g_dir / "v1").string();
    const std::string out2 = (g_dir / "v2").string();
    const RunResult r1 =
        run_cli("verify --suite hardy_sequences --seed 5 --output " + out1);
    REQUIRE(r1.code == 0);
    CHECK(r1.out.find("[pass] hardy_sequences") != std::string::npos);
    REQUIRE(fs::exists(out1 + "_report.json"));

    const RunResult r2 =
        run_cli("verify --suite hardy_sequences --seed 5 --output " + out2);
    REQUIRE(r2.code == 0);
    const json a = json::parse(slurp(out1 + "_report.json"));
    const json b = json::parse(slurp(out2 + "_report.json"));
    // Everything except wall-clock metadata is a function of config + seed.
    CHECK(a["reports"] == b["reports"]);
    CHECK(a["summary"] == b["summary"]);
    CHECK(a["config"] == b["config"]);
    CHECK(a["summary"]["all_passed"] == true);

    CHECK(run_cli("verify --suite no_such_check").code == 2);
}

TEST_CASE("seed selects the random field deterministically") {
    const std::string cfg =
        write_config({{"field", {{"kind", "random_band"}, {"s", 0.5}}}});
    const json a = tail_json(run_cli("norm --config " + cfg + " --seed 42").out);
    const json b = tail_json(run_cli("norm --config " + cfg + " --seed 42").out);
    const json c = tail_json(run_cli("norm --config " + cfg + " --seed 43").out);
    CHECK(a["result"] == b["result"]);
    CHECK(a["result"]["ktl_norm"] != c["result"]["ktl_norm"]);
}

int main(int argc, char** argv) {
    std::vector<char*> pass;
    pass.push_back(argv[0]);
    for (int i = 1; i < argc; ++i) {
        if (g_cli.empty() && argv[i][0] != '-') {
            g_cli = argv[i];  // path to the command-line binary under test
            continue;
        }
        pass.push_back(argv[i]);
    }
    if (g_cli.empty()) {
        std::fprintf(stderr, "usage: test_cli <path-to-cli-binary> [doctest args]\n");
        return 1;
    }
    g_dir = fs::temp_directory_path() / "herzlab_cli_tests";
    fs::create_directories(g_dir);
    doctest::Context ctx(static_cast<int>(pass.size()), pass.data());
    const int rc = ctx.run();
    fs::remove_all(g_dir);
    return rc;
}
