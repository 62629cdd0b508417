// JSON interchange. Matrices travel as
//   {"rows": n, "cols": m, "re": [[..]], "im": [[..]]}
// with row-major nested arrays. Output records are emitted through a writer
// that serializes every double with 17 significant digits so records
// round-trip exactly and reruns are byte-identical.
#pragma once

#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "werner/linalg.hpp"

namespace werner {

using Json = nlohmann::json;

Json matrix_to_json(const CMat& m);
CMat matrix_from_json(const Json& j);  // rejects mismatched dimensions

// Serialize a JSON tree with %.17g doubles (keys in nlohmann's sorted order).
std::string dump_full_precision(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

// Line-oriented record sink (JSONL or CSV) with explicit flushing so partial
// output survives interruption.
class RecordWriter {
public:
    explicit RecordWriter(const std::string& path);

    void write_json(const Json& record);
    void write_line(const std::string& line);
    void flush();

private:
    std::ofstream out_;
};

}  // namespace werner
