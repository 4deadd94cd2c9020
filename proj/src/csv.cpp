#include "stnet/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "stnet/error.hpp"

namespace stnet::csv {
namespace {

// Splits one record; returns false at end of input. A quoted field may span lines.
bool read_record(std::istream& in, char delim, std::vector<std::string>& out, std::size_t& line,
                 const std::string& source)
{
    out.clear();
    std::string field;
    bool in_quotes = false;
    bool any = false;
    const std::size_t start_line = line + 1;
    int c;
    while ((c = in.get()) != EOF) {
        any = true;
        const char ch = static_cast<char>(c);
        if (in_quotes) {
            if (ch == '"') {
                if (in.peek() == '"') {
                    field.push_back('"');
                    in.get();
                } else {
                    in_quotes = false;
                }
            } else {
                if (ch == '\n') ++line;
                field.push_back(ch);
            }
        } else if (ch == '"') {
            in_quotes = true;
        } else if (ch == delim) {
            out.push_back(std::move(field));
            field.clear();
        } else if (ch == '\n') {
            ++line;
            out.push_back(std::move(field));
            return true;
        } else if (ch != '\r') {
            field.push_back(ch);
        }
    }
    if (in_quotes) throw InputError(source + ":" + std::to_string(start_line) + ": unterminated quoted field");
    if (!any) return false;
    ++line;
    out.push_back(std::move(field));
    return true;
}

bool blank(const std::vector<std::string>& rec) { return rec.size() == 1 && rec[0].empty(); }

}  // namespace

Table Table::read(std::istream& in, const std::string& source_name, char delimiter)
{
    Table t;
    t.source_ = source_name;
    std::size_t line = 0;
    std::vector<std::string> rec;
    if (!read_record(in, delimiter, rec, line, source_name) || blank(rec)) {
        throw InputError(source_name + ": missing header row");
    }
    t.header_ = rec;
    for (std::size_t i = 0; i < t.header_.size(); ++i) {
        if (!t.index_.emplace(t.header_[i], i).second) {
            throw InputError(source_name + ": duplicate column '" + t.header_[i] + "'");
        }
    }
    while (read_record(in, delimiter, rec, line, source_name)) {
        if (blank(rec)) continue;
        if (rec.size() != t.header_.size()) {
            throw InputError(source_name + ":" + std::to_string(line) + ": expected " + std::to_string(t.header_.size()) +
                             " fields, found " + std::to_string(rec.size()));
        }
        t.rows_.push_back(rec);
        t.lines_.push_back(line);
    }
    return t;
}

Table Table::read_file(const std::filesystem::path& path, char delimiter)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    return read(in, path.string(), delimiter);
}

const std::string& Table::at(std::size_t row, std::string_view column) const
{
    auto it = index_.find(column);
    if (it == index_.end()) throw InputError(source_ + ": missing column '" + std::string(column) + "'");
    return rows_.at(row)[it->second];
}

bool Table::has_column(std::string_view column) const { return index_.find(column) != index_.end(); }

void Table::require_columns(std::initializer_list<std::string_view> columns) const
{
    for (std::string_view c : columns) {
        if (!has_column(c)) throw InputError(source_ + ": missing column '" + std::string(c) + "'");
    }
}

std::string escape(std::string_view field, char delimiter)
{
    if (field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& os, const std::vector<std::string>& fields, char delimiter)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << delimiter;
        os << escape(fields[i], delimiter);
    }
    os << '\n';
}

double parse_number(std::string_view text, const Table& table, std::size_t row, std::string_view column)
{
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw InputError(table.source() + ":" + std::to_string(table.line_of(row)) + ": column '" +
                         std::string(column) + "': expected a number, found '" + std::string(text) + "'");
    }
    return v;
}

long parse_integer(std::string_view text, const Table& table, std::size_t row, std::string_view column)
{
    long v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw InputError(table.source() + ":" + std::to_string(table.line_of(row)) + ": column '" +
                         std::string(column) + "': expected an integer, found '" + std::string(text) + "'");
    }
    return v;
}

}  // namespace stnet::csv
