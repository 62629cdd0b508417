#include "werner/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace werner {

Json matrix_to_json(const CMat& m) {
    Json re = Json::array();
    Json im = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json re_row = Json::array();
        Json im_row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            re_row.push_back(m(i, j).real());
            im_row.push_back(m(i, j).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

CMat matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re") ||
        !j.contains("im"))
        throw IoError("matrix JSON: expected object with rows/cols/re/im");
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    if (rows <= 0 || cols <= 0) throw IoError("matrix JSON: non-positive dimensions");
    const Json& re = j.at("re");
    const Json& im = j.at("im");
    if (!re.is_array() || !im.is_array() || static_cast<Eigen::Index>(re.size()) != rows ||
        static_cast<Eigen::Index>(im.size()) != rows)
        throw IoError("matrix JSON: row count mismatch");
    CMat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Json& re_row = re.at(i);
        const Json& im_row = im.at(i);
        if (static_cast<Eigen::Index>(re_row.size()) != cols ||
            static_cast<Eigen::Index>(im_row.size()) != cols)
            throw IoError("matrix JSON: column count mismatch in row " + std::to_string(i));
        for (Eigen::Index jcol = 0; jcol < cols; ++jcol)
            m(i, jcol) = Complex(re_row.at(jcol).get<double>(), im_row.at(jcol).get<double>());
    }
    ensure_finite(m, "matrix JSON");
    return m;
}

namespace {

void escape_string(const std::string& s, std::string& out) {
    out.push_back('"');
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out.push_back(c);
                }
        }
    }
    out.push_back('"');
}

void dump_value(const Json& j, std::string& out) {
    switch (j.type()) {
        case Json::value_t::null: out += "null"; break;
        case Json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; break;
        case Json::value_t::number_integer:
        case Json::value_t::number_unsigned: out += j.dump(); break;
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            if (!std::isfinite(v)) {
                out += "null";  // JSON has no inf/nan; callers encode these explicitly
                break;
            }
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out += buf;
            break;
        }
        case Json::value_t::string: escape_string(j.get<std::string>(), out); break;
        case Json::value_t::array: {
            out.push_back('[');
            bool first = true;
            for (const auto& item : j) {
                if (!first) out.push_back(',');
                first = false;
                dump_value(item, out);
            }
            out.push_back(']');
            break;
        }
        case Json::value_t::object: {
            out.push_back('{');
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out.push_back(',');
                first = false;
                escape_string(it.key(), out);
                out.push_back(':');
                dump_value(it.value(), out);
            }
            out.push_back('}');
            break;
        }
        default: out += j.dump(); break;
    }
}

}  // namespace

std::string dump_full_precision(const Json& j) {
    std::string out;
    dump_value(j, out);
    return out;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw IoError("parse error in " + path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << dump_full_precision(j) << '\n';
}

RecordWriter::RecordWriter(const std::string& path) : out_(path) {
    if (!out_) throw IoError("cannot write " + path);
}

void RecordWriter::write_json(const Json& record) {
    out_ << dump_full_precision(record) << '\n';
    out_.flush();
}

void RecordWriter::write_line(const std::string& line) {
    out_ << line << '\n';
    out_.flush();
}

void RecordWriter::flush() {
    out_.flush();
}

}  // namespace werner
