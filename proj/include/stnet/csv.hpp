#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace stnet::csv {

/// A delimited table with a header row. Fields may be double-quoted; "" escapes a quote.
class Table {
public:
    static Table read(std::istream& in, const std::string& source_name, char delimiter = ',');
    static Table read_file(const std::filesystem::path& path, char delimiter = ',');

    const std::vector<std::string>& header() const { return header_; }
    std::size_t row_count() const { return rows_.size(); }

    /// 1-based line number of a data row in the source (header is line 1).
    std::size_t line_of(std::size_t row) const { return lines_[row]; }

    /// Field by column name; throws InputError naming the source if the column is missing.
    const std::string& at(std::size_t row, std::string_view column) const;
    bool has_column(std::string_view column) const;

    /// Throws InputError unless every listed column is present.
    void require_columns(std::initializer_list<std::string_view> columns) const;

    const std::string& source() const { return source_; }

private:
    std::string source_;
    std::vector<std::string> header_;
    std::map<std::string, std::size_t, std::less<>> index_;
    std::vector<std::vector<std::string>> rows_;
    std::vector<std::size_t> lines_;
};

/// Quotes a field only when it contains the delimiter, a quote or a newline.
std::string escape(std::string_view field, char delimiter = ',');

void write_row(std::ostream& os, const std::vector<std::string>& fields, char delimiter = ',');

double parse_number(std::string_view text, const Table& table, std::size_t row, std::string_view column);
long parse_integer(std::string_view text, const Table& table, std::size_t row, std::string_view column);

}  // namespace stnet::csv
