#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace opo {

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> notes;      // extra '#' lines after the parameter echo
    std::vector<Table> sections;         // appended blocks, e.g. interval rows

    void add(std::vector<Cell> row);
};

// 17 significant digits, '.' decimal, shortest round-trip form when shorter.
std::string format_double(double v);

// Header: '# opo <version>', '# task=...', '# key=value' per parameter.
std::string render_csv(const Table& t, const std::string& task,
                       const std::map<std::string, std::string>& params);
std::string render_json(const Table& t, const std::string& task,
                        const std::map<std::string, std::string>& params);

// Writes to path.tmp then renames. Throws IoError.
void write_atomic(const std::string& path, const std::string& content);

} // namespace opo
