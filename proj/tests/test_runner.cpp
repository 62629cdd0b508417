#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "werner/phi.hpp"
#include "werner/runner.hpp"

using namespace werner;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

RunConfig base_config(const std::string& command, const std::string& out) {
    RunConfig cfg;
    cfg.command = command;
    cfg.seed = 12345;
    cfg.seed_set = true;
    cfg.output_path = out;
    return cfg;
}

void cleanup(const std::string& out) {
    std::filesystem::remove(out);
    std::filesystem::remove(out + ".artifacts.json");
    std::filesystem::remove(out + ".traces.csv");
}

}  // namespace

TEST_SUITE("runner") {

TEST_CASE("finalize_config validates and fills defaults") {
    RunConfig cfg = base_config("identities", "");
    finalize_config(cfg);
    CHECK(cfg.samples == 200);
    CHECK(cfg.output_path == "identities.jsonl");

    cfg = base_config("search", "");
    finalize_config(cfg);
    CHECK(cfg.samples == 100);
    CHECK(cfg.traces_path == "search.jsonl.traces.csv");

    cfg = base_config("psd-scan", "");
    cfg.format = "csv";
    finalize_config(cfg);
    CHECK(cfg.output_path == "psd-scan.csv");

    cfg = base_config("identities", "");
    cfg.seed_set = false;
    CHECK_THROWS_AS(finalize_config(cfg), ConfigError);
    cfg = base_config("no-such-command", "");
    CHECK_THROWS_AS(finalize_config(cfg), ConfigError);
    cfg = base_config("identities", "");
    cfg.format = "xml";
    CHECK_THROWS_AS(finalize_config(cfg), ConfigError);
    cfg = base_config("identities", "");
    cfg.tolerances["no_such_tol"] = 1.0;
    CHECK_THROWS_AS(finalize_config(cfg), ConfigError);
    cfg = base_config("identities", "");
    cfg.tolerances["phi_rel"] = -1.0;
    CHECK_THROWS_AS(finalize_config(cfg), ConfigError);
    cfg = base_config("det-sample", "");
    cfg.d = 2;
    CHECK_THROWS_AS(finalize_config(cfg), ConfigError);
    cfg = base_config("oracle-crosscheck", "");
    cfg.d = 6;
    CHECK_THROWS_AS(finalize_config(cfg), ConfigError);
    cfg = base_config("psd-scan", "");
    cfg.minor_order = 19;  // 2 d^2 = 18 for d = 3
    CHECK_THROWS_AS(finalize_config(cfg), ConfigError);
    cfg = base_config("onedistill-scan", "");
    cfg.t_step = 0.0;
    CHECK_THROWS_AS(finalize_config(cfg), ConfigError);
    cfg = base_config("onedistill-scan", "");
    cfg.t_max = 1.2;
    CHECK_THROWS_AS(finalize_config(cfg), ConfigError);
    cfg = base_config("identities", "");
    cfg.samples = -4;
    CHECK_THROWS_AS(finalize_config(cfg), ConfigError);
}

TEST_CASE("apply_config_json merges values and rejects unknown keys") {
    RunConfig cfg;
    apply_config_json(cfg, Json{{"d", 4},
                                {"seed", 99},
                                {"samples", 7},
                                {"restricted", true},
                                {"tolerances", Json{{"phi_rel", 1e-8}}}});
    CHECK(cfg.d == 4);
    CHECK(cfg.seed == 99);
    CHECK(cfg.seed_set);
    CHECK(cfg.samples == 7);
    CHECK(cfg.restricted);
    CHECK(cfg.tolerances.at("phi_rel") == 1e-8);
    CHECK_THROWS_AS(apply_config_json(cfg, Json{{"unknown_key", 1}}), ConfigError);
    CHECK_THROWS_AS(apply_config_json(cfg, Json::array()), ConfigError);
    CHECK_THROWS_AS(apply_config_json(cfg, Json{{"d", "three"}}), ConfigError);
}

TEST_CASE("identities: header echo, records, pass") {
    const std::string out = temp_path("runner_identities.jsonl");
    RunConfig cfg = base_config("identities", out);
    cfg.d = 3;
    cfg.samples = 6;
    finalize_config(cfg);
    CHECK(run(cfg) == kExitPass);

    const std::vector<std::string> lines = read_lines(out);
    REQUIRE(lines.size() == 8);  // header + 6 samples + summary
    const Json header = Json::parse(lines.front());
    CHECK(header.at("record") == "header");
    CHECK(header.at("command") == "identities");
    CHECK(header.at("config").at("d") == 3);
    CHECK(header.at("config").at("seed") == 12345);
    CHECK(header.contains("timestamp"));
    for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
        const Json rec = Json::parse(lines[i]);
        CHECK(rec.at("record") == "sample");
        CHECK_FALSE(rec.at("violation").get<bool>());
        CHECK(rec.at("phi_dev").get<double>() < 1e-9);
    }
    const Json summary = Json::parse(lines.back());
    CHECK(summary.at("record") == "summary");
    CHECK(summary.at("violations") == 0);
    CHECK(summary.at("completed") == 6);
    CHECK_FALSE(std::filesystem::exists(out + ".artifacts.json"));
    cleanup(out);
}

TEST_CASE("reruns with the same config are byte-identical after the header") {
    const std::string out1 = temp_path("runner_rerun1.jsonl");
    const std::string out2 = temp_path("runner_rerun2.jsonl");
    for (const std::string* out : {&out1, &out2}) {
        RunConfig cfg = base_config("diag-verify", *out);
        cfg.d = 3;
        cfg.samples = 8;
        cfg.threads = out == &out2 ? 3 : 1;  // worker count must not matter
        finalize_config(cfg);
        CHECK(run(cfg) == kExitPass);
    }
    std::vector<std::string> a = read_lines(out1), b = read_lines(out2);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i] == b[i]);  // skip header
    cleanup(out1);
    cleanup(out2);
}

TEST_CASE("tolerance overrides can force violations and artifact dumps") {
    const std::string out = temp_path("runner_violation.jsonl");
    RunConfig cfg = base_config("identities", out);
    cfg.d = 3;
    cfg.samples = 3;
    cfg.tolerances["phi_rel"] = 1e-300;  // everything trips
    finalize_config(cfg);
    CHECK(run(cfg) == kExitViolation);
    const Json artifacts = load_json_file(out + ".artifacts.json");
    REQUIRE(artifacts.at("items").size() == 3);
    const MatrixQuadruple q =
        quadruple_from_json(artifacts.at("items").at(0).at("quadruple"));
    CHECK(q.X.rows() == 3);  // full-precision reproducer round-trips
    cleanup(out);
}

TEST_CASE("psd-scan: d = 2 warning, restricted and unrestricted agree") {
    const std::string out = temp_path("runner_psd.jsonl");
    RunConfig cfg = base_config("psd-scan", out);
    cfg.d = 2;
    cfg.samples = 10;
    finalize_config(cfg);
    CHECK(run(cfg) == kExitPass);
    bool warned = false;
    for (const std::string& line : read_lines(out))
        if (Json::parse(line).at("record") == "warning") warned = true;
    CHECK(warned);

    int violations[2] = {-1, -1};
    for (int mode = 0; mode < 2; ++mode) {
        RunConfig scan = base_config("psd-scan", out);
        scan.d = 3;
        scan.samples = 25;
        scan.minor_order = 10;
        scan.restricted = mode == 1;
        finalize_config(scan);
        CHECK(run(scan) == kExitPass);
        const std::vector<std::string> lines = read_lines(out);
        violations[mode] = Json::parse(lines.back()).at("violations").get<int>();
    }
    CHECK(violations[0] == 0);
    CHECK(violations[1] == 0);
    cleanup(out);
}

TEST_CASE("det-sample passes on a small ensemble") {
    const std::string out = temp_path("runner_det.jsonl");
    RunConfig cfg = base_config("det-sample", out);
    cfg.d = 3;
    cfg.samples = 12;
    finalize_config(cfg);
    CHECK(run(cfg) == kExitPass);
    const std::vector<std::string> lines = read_lines(out);
    const Json summary = Json::parse(lines.back());
    CHECK_FALSE(summary.at("any_zero").get<bool>());
    CHECK(summary.at("completed") == 12);
    cleanup(out);
}

TEST_CASE("search: restart records, trace CSV and best point") {
    const std::string out = temp_path("runner_search.jsonl");
    RunConfig cfg = base_config("search", out);
    cfg.d = 3;
    cfg.samples = 3;
    finalize_config(cfg);
    CHECK(run(cfg) == kExitPass);

    const std::vector<std::string> lines = read_lines(out);
    const Json summary = Json::parse(lines.back());
    CHECK(summary.at("n_candidates") == 0);
    CHECK(summary.at("best_value").get<double>() >= -1e-8);
    CHECK(summary.at("best_point").contains("X"));
    CHECK(summary.at("traces_path") == out + ".traces.csv");

    const std::vector<std::string> traces = read_lines(out + ".traces.csv");
    REQUIRE_FALSE(traces.empty());
    CHECK(traces.front() == "restart,iter,value");
    std::size_t expected_rows = 0;
    for (const std::string& line : lines) {
        const Json rec = Json::parse(line);
        if (rec.at("record") == "restart")
            expected_rows += 2 * rec.at("iterations").get<std::size_t>();
    }
    CHECK(traces.size() == 1 + expected_rows);
    cleanup(out);
}

TEST_CASE("onedistill-scan sees the threshold") {
    const std::string out = temp_path("runner_scan.jsonl");
    RunConfig cfg = base_config("onedistill-scan", out);
    cfg.d = 3;
    cfg.samples = 3;  // restarts per grid point
    cfg.t_min = 0.5;
    cfg.t_max = 0.6;
    cfg.t_step = 0.1;
    finalize_config(cfg);
    CHECK(run(cfg) == kExitPass);
    const std::vector<std::string> lines = read_lines(out);
    const Json summary = Json::parse(lines.back());
    CHECK(summary.at("monotone").get<bool>());
    CHECK(summary.at("first_negative_t").get<double>() == doctest::Approx(0.6));
    cleanup(out);
}

TEST_CASE("oracle-crosscheck emits the four values") {
    const std::string out = temp_path("runner_oracle.jsonl");
    RunConfig cfg = base_config("oracle-crosscheck", out);
    cfg.d = 2;
    cfg.samples = 4;
    finalize_config(cfg);
    CHECK(run(cfg) == kExitPass);
    const std::vector<std::string> lines = read_lines(out);
    const Json rec = Json::parse(lines[1]);
    CHECK(rec.at("record") == "sample");
    CHECK(rec.at("max_dev").get<double>() < 1e-9);
    CHECK(rec.contains("phi_vector"));
    CHECK(rec.contains("oracle"));
    cleanup(out);
}

TEST_CASE("continuation certifies and agrees with the direct test") {
    const std::string out = temp_path("runner_cont.jsonl");
    RunConfig cfg = base_config("continuation", out);
    cfg.d = 3;
    cfg.samples = 2;
    cfg.steps = 12;
    finalize_config(cfg);
    CHECK(run(cfg) == kExitPass);
    const std::vector<std::string> lines = read_lines(out);
    for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
        const Json rec = Json::parse(lines[i]);
        CHECK(rec.at("status") == "positive_definite");
        CHECK(rec.at("agree").get<bool>());
        CHECK(rec.at("path").is_array());
    }
    cleanup(out);
}

TEST_CASE("csv format keeps rows tabular and metadata as comments") {
    const std::string out = temp_path("runner_csv.csv");
    RunConfig cfg = base_config("identities", out);
    cfg.d = 3;
    cfg.samples = 3;
    cfg.format = "csv";
    finalize_config(cfg);
    CHECK(run(cfg) == kExitPass);
    const std::vector<std::string> lines = read_lines(out);
    REQUIRE(lines.size() == 6);  // header comment, columns, 3 rows, summary comment
    CHECK(lines[0].rfind("# {", 0) == 0);
    CHECK(lines[1] ==
          "record,index,phi_dev,invariance_dev,ab_dev,lambda_dev,det_unitary_dev,det_gl_dev,"
          "violation");
    CHECK(lines[2].rfind("sample,0,", 0) == 0);
    CHECK(lines.back().rfind("# {", 0) == 0);
    cleanup(out);
}

TEST_CASE("a pending interrupt flag truncates the run with a status record") {
    const std::string out = temp_path("runner_interrupt.jsonl");
    RunConfig cfg = base_config("det-sample", out);
    cfg.d = 3;
    cfg.samples = 5;
    finalize_config(cfg);
    interrupt_flag().store(true);
    const int code = run(cfg);
    interrupt_flag().store(false);
    CHECK(code == kExitInterrupted);
    const std::vector<std::string> lines = read_lines(out);
    const Json last = Json::parse(lines.back());
    CHECK(last.at("record") == "status");
    CHECK(last.at("status") == "interrupted");
    cleanup(out);
}

}  // TEST_SUITE
