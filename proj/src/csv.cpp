#include "opo/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "opo/types.hpp"

namespace opo {

void Table::add(std::vector<Cell> row)
{
    if (row.size() != columns.size()) throw NumericalError("table row width does not match its header");
    rows.push_back(std::move(row));
}

std::string format_double(double v)
{
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

namespace {

std::string cell_text(const Cell& c)
{
    if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    return std::get<std::string>(c);
}

void render_block(std::ostringstream& o, const Table& t)
{
    for (std::size_t i = 0; i < t.columns.size(); ++i) o << (i ? "," : "") << t.columns[i];
    o << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) o << (i ? "," : "") << cell_text(row[i]);
        o << '\n';
    }
}

nlohmann::ordered_json block_json(const Table& t)
{
    nlohmann::ordered_json j;
    j["columns"] = t.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        auto r = nlohmann::ordered_json::array();
        for (const auto& c : row) {
            if (const auto* d = std::get_if<double>(&c)) r.push_back(*d);
            else if (const auto* i = std::get_if<long long>(&c)) r.push_back(*i);
            else r.push_back(std::get<std::string>(c));
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    if (!t.notes.empty()) j["notes"] = t.notes;
    return j;
}

} // namespace

std::string render_csv(const Table& t, const std::string& task,
                       const std::map<std::string, std::string>& params)
{
    std::ostringstream o;
    o << "# opo " << OPO_VERSION << '\n';
    o << "# task=" << task << '\n';
    for (const auto& [k, v] : params)
        if (k != "task") o << "# " << k << '=' << v << '\n';
    for (const auto& n : t.notes) o << "# " << n << '\n';
    render_block(o, t);
    for (const auto& s : t.sections) {
        for (const auto& n : s.notes) o << "# " << n << '\n';
        render_block(o, s);
    }
    return o.str();
}

std::string render_json(const Table& t, const std::string& task,
                        const std::map<std::string, std::string>& params)
{
    nlohmann::ordered_json j;
    j["version"] = OPO_VERSION;
    j["task"] = task;
    j["params"] = params;
    j["table"] = block_json(t);
    if (!t.sections.empty()) {
        auto s = nlohmann::ordered_json::array();
        for (const auto& b : t.sections) s.push_back(block_json(b));
        j["sections"] = std::move(s);
    }
    return j.dump(1) + "\n";
}

void write_atomic(const std::string& path, const std::string& content)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open '" + tmp + "' for writing");
        f.write(content.data(), std::streamsize(content.size()));
        f.flush();
        if (!f) throw IoError("write to '" + tmp + "' failed");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw IoError("cannot move output into place at '" + path + "'");
    }
}

} // namespace opo
