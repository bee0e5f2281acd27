#pragma once
// Column-oriented result tables and their CSV/JSON serializations.
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace coopcell {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_row(std::initializer_list<double> cells);
};

using MetaList = std::vector<std::pair<std::string, std::string>>;

// RFC-4180 with `# key = value` comment lines ahead of the header row;
// numeric cells in scientific notation, 9 significant digits.
std::string csv_string(const Table& table, const MetaList& meta);
std::string json_string(const Table& table, const MetaList& meta);

void write_text_file(const std::string& path, const std::string& content);

} // namespace coopcell
