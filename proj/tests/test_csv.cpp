#include "iceberg/csv.hpp"
#include "iceberg/errors.hpp"

#include <doctest.h>

#include "support.hpp"

#include <array>

using namespace iceberg;
using testsupport::TempDir;
using testsupport::write_file;

namespace {
constexpr std::array<std::string_view, 3> kHeader = {"a", "b", "c"};
}

TEST_CASE("csv reader parses plain and quoted fields") {
    TempDir dir;
    const auto path = write_file(dir.file("t.csv"),
                                 "a,b,c\n"
                                 "1,two,3\n"
                                 "\"x,y\",\"he said \"\"hi\"\"\",z\r\n");
    csv::Reader reader(path, kHeader);
    std::vector<std::string> row;
    REQUIRE(reader.next(row));
    CHECK(row == std::vector<std::string>{"1", "two", "3"});
    REQUIRE(reader.next(row));
    CHECK(row[0] == "x,y");
    CHECK(row[1] == "he said \"hi\"");
    CHECK(row[2] == "z");
    CHECK_FALSE(reader.next(row));
}

TEST_CASE("csv reader rejects wrong header") {
    TempDir dir;
    const auto path = write_file(dir.file("t.csv"), "a,b,wrong\n1,2,3\n");
    CHECK_THROWS_AS(csv::Reader(path, kHeader), InputError);
}

TEST_CASE("csv reader rejects ragged rows with a line number") {
    TempDir dir;
    const auto path = write_file(dir.file("t.csv"), "a,b,c\n1,2\n");
    csv::Reader reader(path, kHeader);
    std::vector<std::string> row;
    CHECK_THROWS_WITH_AS(reader.next(row),
                         doctest::Contains(":2: expected 3 fields"), InputError);
}

TEST_CASE("csv reader rejects a missing file naming the path") {
    CHECK_THROWS_WITH_AS(csv::Reader("/nonexistent/nope.csv", kHeader),
                         doctest::Contains("/nonexistent/nope.csv"), InputError);
}

TEST_CASE("csv number formatting round-trips") {
    TempDir dir;
    const double value = 0.1 + 0.2; // not representable, exercises shortest repr
    const auto path = dir.file("t.csv");
    {
        csv::Writer writer(path, std::array<std::string_view, 1>{"v"});
        writer.row(std::array<std::string, 1>{csv::format_double(value)});
    }
    csv::Reader reader(path, std::array<std::string_view, 1>{"v"});
    std::vector<std::string> row;
    REQUIRE(reader.next(row));
    CHECK(reader.to_double(row[0], "v") == value);
}

TEST_CASE("csv writer quotes fields containing separators") {
    TempDir dir;
    const auto path = dir.file("t.csv");
    {
        csv::Writer writer(path, std::array<std::string_view, 2>{"a", "b"});
        writer.row(std::array<std::string, 2>{"plain", "with,comma"});
    }
    CHECK(testsupport::read_file(path) == "a,b\nplain,\"with,comma\"\n");
}
