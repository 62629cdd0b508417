#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "werner/io.hpp"
#include "werner/rng.hpp"

using namespace werner;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::string read_all(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("matrix JSON round-trip is exact") {
    Rng rng(17);
    const CMat m = rng.cgaussian_matrix(2, 3);
    const Json j = matrix_to_json(m);
    CHECK(j.at("rows") == 2);
    CHECK(j.at("cols") == 3);
    const CMat back = matrix_from_json(j);
    CHECK((back - m).norm() == 0.0);
    // and through the 17-digit text form as well
    const CMat back2 = matrix_from_json(Json::parse(dump_full_precision(j)));
    CHECK((back2 - m).norm() == 0.0);
}

TEST_CASE("matrix_from_json rejects malformed input") {
    CHECK_THROWS_AS(matrix_from_json(Json::array()), IoError);
    CHECK_THROWS_AS(matrix_from_json(Json{{"rows", 2}, {"cols", 2}, {"re", Json::array()}}),
                    IoError);
    Json j = matrix_to_json(CMat::Identity(2, 2));
    j["im"][0] = Json::array({0.0});  // short row
    CHECK_THROWS_AS(matrix_from_json(j), IoError);
    j = matrix_to_json(CMat::Identity(2, 2));
    j["rows"] = 0;
    CHECK_THROWS_AS(matrix_from_json(j), IoError);
}

TEST_CASE("dump_full_precision: 17 significant digits, sorted keys") {
    CHECK(dump_full_precision(Json(0.1)) == "0.10000000000000001");
    CHECK(dump_full_precision(Json(1.0 / 3.0)) == "0.33333333333333331");
    CHECK(dump_full_precision(Json(3)) == "3");
    CHECK(dump_full_precision(Json(true)) == "true");
    CHECK(dump_full_precision(Json("a\"b\nc")) == "\"a\\\"b\\nc\"");
    CHECK(dump_full_precision(Json{{"b", 1}, {"a", 2}}) == "{\"a\":2,\"b\":1}");
    CHECK(dump_full_precision(Json(std::numeric_limits<double>::infinity())) == "null");
    // round-trip exactness for an unfriendly double
    const double x = 0.1 + 0.2;
    CHECK(Json::parse(dump_full_precision(Json(x))).get<double>() == x);
    // repeated dumps are byte-identical
    const Json tree{{"x", 1.0 / 7.0}, {"v", Json::array({1, 2.5, false})}};
    CHECK(dump_full_precision(tree) == dump_full_precision(tree));
}

TEST_CASE("file round-trip and error paths") {
    const std::string path = temp_path("werner_io_test.json");
    const Json j{{"k", 0.25}, {"m", matrix_to_json(CMat::Identity(2, 2))}};
    save_json_file(path, j);
    const Json back = load_json_file(path);
    CHECK(back.at("k").get<double>() == 0.25);
    CHECK((matrix_from_json(back.at("m")) - CMat::Identity(2, 2)).norm() == 0.0);
    std::filesystem::remove(path);

    CHECK_THROWS_AS(load_json_file(temp_path("werner_io_missing.json")), IoError);
    {
        std::ofstream bad(path);
        bad << "{not json";
    }
    CHECK_THROWS_AS(load_json_file(path), IoError);
    std::filesystem::remove(path);
}

TEST_CASE("RecordWriter emits one record per line and flushes") {
    const std::string path = temp_path("werner_io_records.jsonl");
    {
        RecordWriter w(path);
        w.write_json(Json{{"record", "header"}, {"n", 1}});
        w.write_line("plain line");
    }
    CHECK(read_all(path) == "{\"n\":1,\"record\":\"header\"}\nplain line\n");
    std::filesystem::remove(path);
    CHECK_THROWS_AS(RecordWriter("/nonexistent-dir/x/y.jsonl"), IoError);
}

}  // TEST_SUITE
