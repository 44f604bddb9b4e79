#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tradecirc {

// Country and product codes are opaque validated strings; no numeric
// conversion is ever applied to them.
using CountryCode = std::string;
using Hs6 = std::string;

/// Calendar month, the finest time resolution in the data.
struct YearMonth {
    int year = 0;
    int month = 0;  // 1..12

    auto operator<=>(const YearMonth&) const = default;

    /// Months since year 0, for distance arithmetic.
    int index() const { return year * 12 + (month - 1); }
    static YearMonth from_index(int idx);

    YearMonth next() const { return from_index(index() + 1); }

    std::string str() const;  // "YYYY-MM"
    static std::optional<YearMonth> parse(std::string_view text);
};

/// Inclusive month interval.
struct PeriodRange {
    YearMonth first;
    YearMonth last;

    auto operator<=>(const PeriodRange&) const = default;

    bool contains(YearMonth t) const { return first <= t && t <= last; }
    int length() const { return last.index() - first.index() + 1; }
    std::vector<YearMonth> months() const;
};

// 2-3 uppercase alphanumeric characters, leading letter (covers ISO3,
// the EU aggregate label and synthetic codes alike).
bool is_valid_country_code(std::string_view code);

// Exactly six digits.
bool is_valid_hs6(std::string_view code);

/// Chapter = first two digits of an HS6 code.
std::string_view hs_chapter(const Hs6& code);

}  // namespace tradecirc
