#include "numrad/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "numrad/errors.hpp"

namespace numrad {

using nlohmann::json;

ComplexMatrix parse_matrix_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("matrix document must be a JSON object");
    if (!doc.contains("n") || !doc["n"].is_number_integer()) throw ParseError("missing integer field \"n\"");
    if (!doc.contains("entries") || !doc["entries"].is_array()) throw ParseError("missing array field \"entries\"");

    const auto n = doc["n"].get<long long>();
    if (n < 1) throw ParseError("\"n\" must be >= 1");
    const json& rows = doc["entries"];
    if (static_cast<long long>(rows.size()) != n) throw ParseError("\"entries\" must have n rows");

    ComplexMatrix m(n, n);
    for (long long i = 0; i < n; ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<long long>(row.size()) != n)
            throw ParseError("row " + std::to_string(i) + " is ragged");
        for (long long j = 0; j < n; ++j) {
            const json& z = row[static_cast<std::size_t>(j)];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
                throw ParseError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") must be a [re, im] pair");
            const double re = z[0].get<double>();
            const double im = z[1].get<double>();
            if (!std::isfinite(re) || !std::isfinite(im))
                throw ParseError("entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not finite");
            m(i, j) = Complex(re, im);
        }
    }
    return m;
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_matrix_json(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::string matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return json{{"n", m.rows()}, {"entries", std::move(rows)}}.dump();
}

} // namespace numrad
