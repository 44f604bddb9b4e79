#include <charconv>
#include <sstream>

#include "doctest.h"
#include "tradecirc/csv.hpp"
#include "tradecirc/errors.hpp"

using namespace tradecirc;

TEST_CASE("CsvReader checks the header and iterates rows") {
    std::istringstream in("a,b,c\n1,2,3\n\n4,,6\n");
    CsvReader reader(in);
    reader.expect_header({"a", "b", "c"});

    auto row = reader.next_row();
    REQUIRE(row.has_value());
    CHECK(*row == std::vector<std::string>{"1", "2", "3"});
    CHECK(reader.line_number() == 2);

    row = reader.next_row();  // the blank line is skipped
    REQUIRE(row.has_value());
    CHECK(*row == std::vector<std::string>{"4", "", "6"});
    CHECK(reader.line_number() == 4);

    CHECK_FALSE(reader.next_row().has_value());
}

TEST_CASE("CsvReader strips carriage returns") {
    std::istringstream in("a,b\r\n1,2\r\n");
    CsvReader reader(in);
    reader.expect_header({"a", "b"});
    auto row = reader.next_row();
    REQUIRE(row.has_value());
    CHECK(*row == std::vector<std::string>{"1", "2"});
}

TEST_CASE("CsvReader rejects a wrong header") {
    std::istringstream in("a;b\n");
    CsvReader reader(in);
    CHECK_THROWS_AS(reader.expect_header({"a", "b"}), FormatError);

    std::istringstream empty("");
    CsvReader reader2(empty);
    CHECK_THROWS_AS(reader2.expect_header({"a"}), FormatError);
}

TEST_CASE("CsvReader honors a custom delimiter") {
    std::istringstream in("a;b\n1;2\n");
    CsvReader reader(in, ';');
    reader.expect_header({"a", "b"});
    auto row = reader.next_row();
    REQUIRE(row.has_value());
    CHECK(*row == std::vector<std::string>{"1", "2"});
}

TEST_CASE("split and join round-trip") {
    CHECK(split_fields("a,b,,d", ',') == std::vector<std::string>{"a", "b", "", "d"});
    CHECK(split_fields("", ',') == std::vector<std::string>{""});
    CHECK(split_fields(",", ',') == std::vector<std::string>{"", ""});
    CHECK(join_fields({"a", "b", "", "d"}, ',') == "a,b,,d");
}

TEST_CASE("format_double round-trips exactly") {
    for (double v : {0.0, 1.0, 110.0, 0.1, 1.0 / 3.0, 12345.678901234567, 1e-9, 3.372e8}) {
        std::string text = format_double(v);
        double back = 0.0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), back);
        REQUIRE(ec == std::errc());
        CHECK(ptr == text.data() + text.size());
        CHECK(back == v);
    }
    CHECK(format_double(110.0) == "110");
}
