#include "io.hpp"

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "gram.hpp"
#include "rat.hpp"

namespace latdist {

namespace {

using nlohmann::json;

Rat entry_from_json(const json& cell) {
    if (cell.is_string()) return parse_rat(cell.get<std::string>());
    if (cell.is_number_integer()) return Rat(Int(cell.get<std::int64_t>()));
    fail(errc::parse, "basis entries must be rational strings or integers");
}

MatrixFile parse_matrix_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        fail(errc::parse, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) fail(errc::parse, "matrix file must be a JSON object");
    if (!doc.contains("n") || !doc["n"].is_number_integer())
        fail(errc::parse, "matrix file needs an integer field \"n\"");
    const long n = doc["n"].get<long>();
    if (n < 1) fail(errc::parse, "\"n\" must be at least 1");
    if (!doc.contains("basis") || !doc["basis"].is_array())
        fail(errc::parse, "matrix file needs an array field \"basis\"");
    const json& grid = doc["basis"];
    const long m = static_cast<long>(grid.size());
    if (m < n) fail(errc::parse, "basis grid has fewer rows than columns");

    MatrixFile out;
    out.matrix = RatMatrix(static_cast<int>(m), static_cast<int>(n));
    for (long i = 0; i < m; ++i) {
        const json& row = grid[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<long>(row.size()) != n)
            fail(errc::parse, "basis row " + std::to_string(i) + " does not have n entries");
        for (long j = 0; j < n; ++j)
            out.matrix(static_cast<int>(i), static_cast<int>(j)) =
                entry_from_json(row[static_cast<std::size_t>(j)]);
    }
    if (doc.contains("label")) {
        if (!doc["label"].is_string()) fail(errc::parse, "\"label\" must be a string");
        out.label = doc["label"].get<std::string>();
    }
    return out;
}

bool integer_token(const std::string& tok) {
    std::size_t k = 0;
    if (tok[k] == '-' || tok[k] == '+') ++k;
    if (k == tok.size()) return false;
    for (; k < tok.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(tok[k]))) return false;
    return true;
}

MatrixFile parse_matrix_grid(const std::string& text) {
    std::vector<std::vector<Rat>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream toks(line);
        std::vector<Rat> row;
        std::string tok;
        while (toks >> tok) {
            if (!integer_token(tok))
                fail(errc::parse, "grid entries must be integers, got \"" + tok + "\"");
            row.push_back(parse_rat(tok));
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) fail(errc::parse, "empty matrix text");
    const std::size_t n = rows[0].size();
    for (const auto& row : rows)
        if (row.size() != n) fail(errc::parse, "grid rows have unequal lengths");
    if (rows.size() < n) fail(errc::parse, "basis grid has fewer rows than columns");

    MatrixFile out;
    out.matrix = RatMatrix(static_cast<int>(rows.size()), static_cast<int>(n));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.matrix(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    return out;
}

}  // namespace

MatrixFile parse_matrix_text(const std::string& text) {
    std::size_t k = 0;
    while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
    if (k == text.size()) fail(errc::parse, "empty matrix text");
    MatrixFile out = text[k] == '{' ? parse_matrix_json(text) : parse_matrix_grid(text);
    gram_schmidt(out.matrix);
    return out;
}

std::string matrix_file_json(const RatMatrix& m, const std::string& label) {
    json doc;
    doc["n"] = m.cols();
    json grid = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(rat_str(m(i, j)));
        grid.push_back(std::move(row));
    }
    doc["basis"] = std::move(grid);
    if (!label.empty()) doc["label"] = label;
    return doc.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::parse, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(errc::parse, "cannot write " + path);
    out << text;
    if (!out) fail(errc::parse, "failed writing " + path);
}

std::string fnv1a64_hex(const std::string& data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

}  // namespace latdist
