#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "chart.hpp"
#include "distance_matrix.hpp"
#include "errors.hpp"

namespace pmspace::io {

using json = nlohmann::ordered_json;

/// A matrix read from disk: CSV (n lines of n comma-separated values) or
/// JSON ({"n":, "labels":?, "matrix": [[...], ...]}). Labels are carried
/// through for display only.
struct MatrixDocument {
    DistanceMatrix matrix;
    std::optional<std::vector<std::string>> labels;
};

using Coords = std::variant<NaturalCoords, CanonicalCoords>;

/// Shortest decimal string that parses back to the same double.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline double parse_cell(std::string_view cell) {
    cell = trim(cell);
    double v = 0.0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size())
        throw parse_error("cannot parse number: '" + std::string(cell) + "'");
    if (!std::isfinite(v)) throw parse_error("matrix entries must be finite");
    return v;
}

inline double finite_number(const json& j, const char* what) {
    if (!j.is_number()) throw parse_error(std::string(what) + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw parse_error(std::string(what) + " must be finite");
    return v;
}

}  // namespace detail

inline MatrixDocument parse_matrix_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (detail::trim(line).empty()) continue;
        std::vector<double> row;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            const std::string_view cell =
                std::string_view(line).substr(start, comma == std::string::npos ? comma : comma - start);
            row.push_back(detail::parse_cell(cell));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        rows.push_back(std::move(row));
    }
    for (const auto& row : rows)
        if (row.size() != rows.size()) throw parse_error("matrix CSV is not square");
    return {DistanceMatrix::from_rows(rows), std::nullopt};
}

inline MatrixDocument parse_matrix_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("matrix"))
        throw parse_error("matrix JSON needs fields \"n\" and \"matrix\"");
    if (!j["n"].is_number_unsigned()) throw parse_error("\"n\" must be a nonnegative integer");
    const std::size_t n = j["n"].get<std::size_t>();
    if (!j["matrix"].is_array() || j["matrix"].size() != n)
        throw parse_error("\"matrix\" must be a list of n rows");
    std::vector<std::vector<double>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        const json& row = j["matrix"][i];
        if (!row.is_array() || row.size() != n) throw parse_error("matrix JSON row has wrong length");
        for (const json& cell : row) rows[i].push_back(detail::finite_number(cell, "matrix entry"));
    }
    MatrixDocument doc{DistanceMatrix::from_rows(rows), std::nullopt};
    if (j.contains("labels")) {
        if (!j["labels"].is_array() || j["labels"].size() != n)
            throw parse_error("\"labels\" must list one string per point");
        std::vector<std::string> labels;
        for (const json& l : j["labels"]) {
            if (!l.is_string()) throw parse_error("labels must be strings");
            labels.push_back(l.get<std::string>());
        }
        doc.labels = std::move(labels);
    }
    return doc;
}

inline MatrixDocument parse_matrix(const std::string& text) {
    for (char ch : text) {
        if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') continue;
        return ch == '{' ? parse_matrix_json(text) : parse_matrix_csv(text);
    }
    return parse_matrix_csv(text);  // empty file: the 0-point matrix
}

inline MatrixDocument read_matrix_file(const std::filesystem::path& path) {
    return parse_matrix(read_text_file(path));
}

inline std::string format_matrix_csv(const DistanceMatrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (j) out += ',';
            out += format_double(m(i, j));
        }
        out += '\n';
    }
    return out;
}

inline json matrix_to_json(const DistanceMatrix& m,
                           const std::optional<std::vector<std::string>>& labels = std::nullopt) {
    json j;
    j["n"] = m.size();
    if (labels) j["labels"] = *labels;
    json rows = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.size(); ++k) row.push_back(m(i, k));
        rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
    return j;
}

inline json natural_to_json(const NaturalCoords& c) {
    json j;
    j["n"] = c.n;
    json levels = json::array();
    for (const ChartLevel& level : c.levels) {
        json l;
        l["s"] = level.s;
        l["u"] = level.u;
        levels.push_back(std::move(l));
    }
    j["levels"] = std::move(levels);
    return j;
}

inline json canonical_to_json(const CanonicalCoords& q) {
    json j;
    j["n"] = q.n;
    j["closed"] = q.closed;
    j["half_open"] = q.half_open;
    return j;
}

inline Coords parse_coords_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_unsigned())
        throw parse_error("coords JSON needs a nonnegative integer field \"n\"");
    const std::size_t n = j["n"].get<std::size_t>();

    if (j.contains("levels")) {
        if (n < 1) throw parse_error("natural coords need n >= 1");
        if (!j["levels"].is_array() || j["levels"].size() != n - 1)
            throw parse_error("natural coords need n-1 levels");
        NaturalCoords c{n, {}};
        for (std::size_t l = 0; l < n - 1; ++l) {
            const json& jl = j["levels"][l];
            if (!jl.is_object() || !jl.contains("s") || !jl.contains("u"))
                throw parse_error("each level needs fields \"s\" and \"u\"");
            ChartLevel level;
            level.s = detail::finite_number(jl["s"], "coordinate s");
            if (!jl["u"].is_array() || jl["u"].size() != l)
                throw parse_error("level u-list length does not match its position");
            for (const json& u : jl["u"]) level.u.push_back(detail::finite_number(u, "coordinate u"));
            c.levels.push_back(std::move(level));
        }
        return c;
    }
    if (j.contains("closed") && j.contains("half_open")) {
        if (n < 2) throw parse_error("canonical coords need n >= 2");
        CanonicalCoords q;
        q.n = n;
        if (!j["closed"].is_array() || j["closed"].size() != coordinate_count(n) - 1)
            throw parse_error("canonical coords need n(n-1)/2 - 1 closed values");
        for (const json& v : j["closed"]) q.closed.push_back(detail::finite_number(v, "closed coordinate"));
        q.half_open = detail::finite_number(j["half_open"], "half_open");
        return q;
    }
    throw parse_error("coords JSON needs either \"levels\" or \"closed\"/\"half_open\"");
}

inline Coords read_coords_file(const std::filesystem::path& path) {
    return parse_coords_json(read_text_file(path));
}

}  // namespace pmspace::io
