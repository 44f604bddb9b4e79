#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace tradecirc {

/// Minimal delimited-text reader: UTF-8, one record per line, no quoting.
/// Trailing carriage returns are stripped so CRLF files parse the same as LF.
class CsvReader {
public:
    explicit CsvReader(std::istream& in, char delimiter = ',');

    /// Reads the first line and checks it matches `expected` exactly.
    /// Throws IoError on an unreadable stream, FormatError on a bad header.
    void expect_header(const std::vector<std::string>& expected);

    /// Next data row split into fields, or nullopt at end of input.
    /// Blank lines are skipped.
    std::optional<std::vector<std::string>> next_row();

    /// 1-based line number of the row most recently returned.
    std::size_t line_number() const { return line_; }

private:
    std::istream& in_;
    char delimiter_;
    std::size_t line_ = 0;
};

std::vector<std::string> split_fields(const std::string& line, char delimiter);

/// Joins fields with the delimiter; no escaping (fields must not contain it).
std::string join_fields(const std::vector<std::string>& fields, char delimiter);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double value);

}  // namespace tradecirc
