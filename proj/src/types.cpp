#include "tradecirc/types.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace tradecirc {

YearMonth YearMonth::from_index(int idx) {
    int year = idx / 12;
    int month = idx % 12;
    if (month < 0) {
        month += 12;
        year -= 1;
    }
    return YearMonth{year, month + 1};
}

std::string YearMonth::str() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
    return buf;
}

std::optional<YearMonth> YearMonth::parse(std::string_view text) {
    if (text.size() != 7 || text[4] != '-') return std::nullopt;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u}) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
    }
    int year = 0;
    int month = 0;
    std::from_chars(text.data(), text.data() + 4, year);
    std::from_chars(text.data() + 5, text.data() + 7, month);
    if (month < 1 || month > 12) return std::nullopt;
    return YearMonth{year, month};
}

std::vector<YearMonth> PeriodRange::months() const {
    std::vector<YearMonth> out;
    if (last < first) return out;
    out.reserve(static_cast<std::size_t>(length()));
    for (int idx = first.index(); idx <= last.index(); ++idx) {
        out.push_back(YearMonth::from_index(idx));
    }
    return out;
}

bool is_valid_country_code(std::string_view code) {
    if (code.size() < 2 || code.size() > 3) return false;
    if (!std::isupper(static_cast<unsigned char>(code[0]))) return false;
    for (char c : code) {
        unsigned char u = static_cast<unsigned char>(c);
        if (!std::isupper(u) && !std::isdigit(u)) return false;
    }
    return true;
}

bool is_valid_hs6(std::string_view code) {
    if (code.size() != 6) return false;
    for (char c : code) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::string_view hs_chapter(const Hs6& code) {
    return std::string_view(code).substr(0, 2);
}

}  // namespace tradecirc
