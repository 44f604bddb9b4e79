#include "tradecirc/csv.hpp"

#include <charconv>

#include "tradecirc/errors.hpp"

namespace tradecirc {

CsvReader::CsvReader(std::istream& in, char delimiter) : in_(in), delimiter_(delimiter) {}

void CsvReader::expect_header(const std::vector<std::string>& expected) {
    if (!in_.good()) throw IoError("cannot read input stream");
    std::string line;
    if (!std::getline(in_, line)) throw FormatError("missing header row");
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fields = split_fields(line, delimiter_);
    if (fields != expected) {
        throw FormatError("unexpected header: got \"" + line + "\", want \"" +
                          join_fields(expected, delimiter_) + "\"");
    }
}

std::optional<std::vector<std::string>> CsvReader::next_row() {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        return split_fields(line, delimiter_);
    }
    return std::nullopt;
}

std::vector<std::string> split_fields(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(delimiter, start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

std::string join_fields(const std::vector<std::string>& fields, char delimiter) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out.push_back(delimiter);
        out += fields[i];
    }
    return out;
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;  // 64 bytes always suffice for a double
    return std::string(buf, ptr);
}

}  // namespace tradecirc
