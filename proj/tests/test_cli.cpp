#include "trunclap/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace trunclap;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<const char*> args) {
    args.insert(args.begin(), "trunclap");
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(args.size()), args.data(), out, err);
    return {code, out.str(), err.str()};
}

const char* kDisk = R"({"type":"ball","r":1})";
const char* kTriangle = R"({"type":"polygon","vertices":[[0,0],[1,0],[0.4,0.9]]})";

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("closed forms skip the solver") {
        const Run r = run({"solve", "--domain", kDisk});
        REQUIRE(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["analytic"] == true);
        CHECK(j["mu"].get<double>() == doctest::Approx(2.4674011002723395));
    }

    TEST_CASE("forced numeric solve reports both values") {
        const Run r = run({"solve", "--domain", kDisk, "--force-numeric", "--h", "0.125", "--stencil", "2"});
        REQUIRE(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["analytic"] == false);
        CHECK(j["W"] == 2);
        CHECK(j["mu"].get<double>() == doctest::Approx(j["analytic_mu"].get<double>()).epsilon(0.05));
        CHECK(j["mu_low"].get<double>() <= j["mu_high"].get<double>());
    }

    TEST_CASE("polygon solve is deterministic to the byte") {
        const Run a = run({"solve", "--domain", kTriangle, "--h", "0.0625"});
        const Run b = run({"solve", "--domain", kTriangle, "--h", "0.0625"});
        REQUIRE(a.code == 0);
        CHECK(a.out == b.out);
    }

    TEST_CASE("sweep emits a refinement table") {
        const Run r = run({"solve", "--domain", kTriangle, "--sweep", "--sweep-h", "1/8,1/16", "--sweep-W", "1,2"});
        REQUIRE(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["rows"].size() == 4);
    }

    TEST_CASE("bounds subcommand") {
        const Run r = run({"bounds", "--domain", R"({"type":"hyperrect","alphas":[1,1,1]})"});
        REQUIRE(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["dim"] == 3);
        CHECK(j["equality_certified"] == true);
    }

    TEST_CASE("input errors exit with 1") {
        CHECK(run({"solve"}).code == 1);                                        // missing --domain
        CHECK(run({"solve", "--domain", kDisk, "--bogus"}).code == 1);
        CHECK(run({"frobnicate"}).code == 1);
        const Run bad = run({"solve", "--domain", "{\"type\":\"ball\""});
        CHECK(bad.code == 1);
        CHECK(bad.err.find("error") != std::string::npos);
        CHECK(run({"solve", "--domain", kTriangle, "--h", "-1"}).code == 1);
        CHECK(run({"solve", "--domain", R"({"type":"reuleaux","n":4,"width":1})"}).code == 1);
        CHECK(run({"solve", "--domain", kDisk, "--pseudo-time", "--policy-iteration"}).code == 1);
    }

    TEST_CASE("solver failures exit with 2") {
        const Run r = run({"solve", "--domain", kTriangle, "--h", "0.0625", "--max-outer", "1", "--tol-bracket",
                           "1e-12"});
        CHECK(r.code == 2);
        CHECK(r.err.find("bracket not closed") != std::string::npos);
        const Run stalled =
            run({"solve", "--domain", kTriangle, "--h", "0.0625", "--pseudo-time", "--max-inner", "3"});
        CHECK(stalled.code == 2);
        CHECK(stalled.err.find("inner solver stalled") != std::string::npos);
    }

    TEST_CASE("explore subcommands") {
        const Run rect = run({"explore", "rectangles", "--constraint", "perimeter", "--level", "4", "--n", "1,2,4"});
        REQUIRE(rect.code == 0);
        CHECK(nlohmann::json::parse(rect.out)[0]["metadata"]["strictly_decreasing"] == true);
        const Run shrink = run({"explore", "shrinking", "--eps", "0.5,0.25", "--h", "0.0625"});
        CHECK(shrink.code == 0);
        const Run haus = run({"explore", "hausdorff", "--n", "6,12", "--h", "0.0625"});
        CHECK(haus.code == 0);
        CHECK(nlohmann::json::parse(haus.out)[0]["rows"].size() == 2);
    }

    TEST_CASE("explore writes csv, json and plot data") {
        const auto dir = std::filesystem::temp_directory_path() / "trunclap_cli_test";
        std::filesystem::remove_all(dir);
        const std::string d = dir.string();
        const Run r = run({"explore", "rectangles", "--n", "1,2", "--out", d.c_str(), "--plot-data"});
        REQUIRE(r.code == 0);
        CHECK(std::filesystem::exists(dir / "rectangles_volume.csv"));
        CHECK(std::filesystem::exists(dir / "rectangles_volume.json"));
        CHECK(std::filesystem::exists(dir / "rectangles_volume_mu_vs_n.dat"));
        std::filesystem::remove_all(dir);
    }

    TEST_CASE("verify runs a suite") {
        const Run r = run({"verify", "--suite", "analytic", "--json"});
        CHECK(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["passed"] == j["total"]);
        CHECK(run({"verify", "--suite", "nonsense"}).code == 1);
    }

    TEST_CASE("binary reports a missing domain file") {
        const std::string cmd = std::string(TRUNCLAP_CLI_PATH) + " solve --domain /no/such/shape.json 2>&1";
        FILE* p = popen(cmd.c_str(), "r");
        REQUIRE(p != nullptr);
        std::string text;
        char buf[256];
        while (std::fgets(buf, sizeof buf, p)) text += buf;
        const int status = pclose(p);
        CHECK(WIFEXITED(status));
        CHECK(WEXITSTATUS(status) == 1);
        CHECK(text.find("/no/such/shape.json") != std::string::npos);
    }
}
