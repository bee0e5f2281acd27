#include "coopcell/table.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace coopcell {

namespace {

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') out += '"';
    }
    out += '"';
    return out;
}

std::string cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.8e", v);
    return buf;
}

} // namespace

void Table::add_row(std::initializer_list<double> cells) {
    if (cells.size() != columns.size())
        throw std::invalid_argument("Table::add_row: row width != column count");
    rows.emplace_back(cells);
}

std::string csv_string(const Table& table, const MetaList& meta) {
    std::string out;
    for (const auto& [k, v] : meta) out += "# " + k + " = " + v + "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += csv_quote(table.columns[c]);
    }
    out += "\r\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += cell(row[c]);
        }
        out += "\r\n";
    }
    return out;
}

std::string json_string(const Table& table, const MetaList& meta) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json cfg;
    for (const auto& [k, v] : meta) cfg[k] = v;
    j["config"] = std::move(cfg);
    j["columns"] = table.columns;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) j["rows"].push_back(row);
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path);
}

} // namespace coopcell
