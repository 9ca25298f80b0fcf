#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qtp/config.hpp"
#include "qtp/csv.hpp"
#include "qtp/scenario.hpp"

using namespace qtp;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_dir(const std::string& leaf) {
    const fs::path d = fs::temp_directory_path() / leaf;
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("config defaults round-trip through JSON") {
    for (const char* name : {"arrival_single", "arrival_pair", "mi_sweep",
                             "scatter_chain", "hierarchy_check"}) {
        const ScenarioConfig cfg = config_defaults(name);
        CHECK_NOTHROW(cfg.validate());
        const ScenarioConfig back = config_from_json_string(cfg.to_json_string());
        CHECK(back.to_json_string() == cfg.to_json_string());
        CHECK(config_hash(back) == config_hash(cfg));
    }
    CHECK_THROWS_AS(config_defaults("bogus"), ValidationError);
}

TEST_CASE("schema is strict") {
    CHECK_THROWS_AS(config_from_json_string("{ not json"), ValidationError);
    CHECK_THROWS_AS(config_from_json_string(R"({"scenario": "arrival_single",
                                               "tpyo": 1})"),
                    ValidationError);
    CHECK_THROWS_AS(config_from_json_string(R"({"scenario": "unknown_thing"})"),
                    ValidationError);
}

TEST_CASE("validation applies the resolution rule") {
    ScenarioConfig cfg = config_defaults("arrival_single");
    cfg.kgrid.count = 50;  // far too coarse for x = 200, t <= 225
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("config hash tracks content") {
    const ScenarioConfig a = config_defaults("arrival_pair");
    ScenarioConfig b = a;
    b.a = 4.5;
    CHECK(config_hash(a) != config_hash(b));
    CHECK(config_hash(a).size() == 16);
}

TEST_CASE("scenario output is byte deterministic") {
    const ScenarioConfig cfg = config_defaults("arrival_single");
    const ResultBundle r1 = run_scenario(cfg);
    const ResultBundle r2 = run_scenario(cfg);

    const fs::path d1 = temp_dir("qtp_test_csv_1");
    const fs::path d2 = temp_dir("qtp_test_csv_2");
    const auto paths1 = emit_csv(r1, d1.string());
    const auto paths2 = emit_csv(r2, d2.string());
    REQUIRE(paths1.size() == paths2.size());
    REQUIRE(!paths1.empty());
    for (size_t i = 0; i < paths1.size(); ++i)
        CHECK(slurp(paths1[i]) == slurp(paths2[i]));

    // stamped header: version + config hash comment, then the column row
    const std::string head = slurp(paths1[0]);
    CHECK(head.rfind("# qtp ", 0) == 0);
    CHECK(head.find(config_hash(cfg)) != std::string::npos);

    SUBCASE("summary lookup") {
        CHECK(r1.summary_value("p1_mass") == doctest::Approx(1.0).epsilon(1e-9));
        CHECK_THROWS_AS(r1.summary_value("no_such_metric"), Error);
        CHECK(r1.find("arrival_p1") != nullptr);
        CHECK(r1.find("missing_table") == nullptr);
    }
    fs::remove_all(d1);
    fs::remove_all(d2);
}

#ifdef QTP_TOOL_PATH
TEST_CASE("tool exit codes and artifacts") {
    const std::string tool = QTP_TOOL_PATH;
    REQUIRE(fs::exists(tool));
    const fs::path dir = temp_dir("qtp_test_tool");
    const fs::path good = dir / "good.json";
    const fs::path bad = dir / "bad.json";
    {
        std::ofstream out(good);
        out << config_defaults("hierarchy_check").to_json_string();
    }
    {
        std::ofstream out(bad);
        out << R"({"scenario": "arrival_single", "tpyo": 1})";
    }
    auto run = [](const std::string& cmd) {
        const int rc = std::system((cmd + " > /dev/null 2>&1").c_str());
        return WEXITSTATUS(rc);
    };
    CHECK(run(tool + " validate " + good.string()) == 0);
    CHECK(run(tool + " validate " + bad.string()) == 2);
    CHECK(run(tool + " validate " + (dir / "absent.json").string()) == 2);
    CHECK(run(tool + " run " + good.string() + " --out " + (dir / "out").string()) ==
          0);
    CHECK(fs::exists(dir / "out" / "summary.csv"));
    fs::remove_all(dir);
}
#endif
