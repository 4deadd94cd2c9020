#include <sstream>

#include <doctest.h>

#include "stnet/csv.hpp"
#include "stnet/error.hpp"

using namespace stnet;

TEST_SUITE("csv")
{
    TEST_CASE("quoted fields and line numbers")
    {
        std::istringstream in("a,b,c\n1,\"x,y\",3\n\n4,\"say \"\"hi\"\"\",6\r\n");
        const csv::Table t = csv::Table::read(in, "t.csv");
        REQUIRE(t.row_count() == 2);
        CHECK(t.at(0, "b") == "x,y");
        CHECK(t.at(1, "b") == "say \"hi\"");
        CHECK(t.at(1, "c") == "6");
        CHECK(t.line_of(0) == 2);
        CHECK(t.line_of(1) == 4);
        CHECK_THROWS_AS(t.at(0, "zz"), InputError);
    }

    TEST_CASE("ragged rows and bad numbers name the line")
    {
        std::istringstream ragged("a,b\n1\n");
        CHECK_THROWS_WITH_AS(csv::Table::read(ragged, "r.csv"), doctest::Contains("r.csv:2"), InputError);

        std::istringstream in("a,b\n1,x\n");
        const csv::Table t = csv::Table::read(in, "n.csv");
        CHECK_THROWS_WITH_AS(csv::parse_number(t.at(0, "b"), t, 0, "b"), doctest::Contains("n.csv:2"), InputError);
        CHECK(csv::parse_integer(t.at(0, "a"), t, 0, "a") == 1);
        CHECK_THROWS_AS(csv::parse_integer("1.5", t, 0, "a"), InputError);
    }

    TEST_CASE("escape round trip")
    {
        CHECK(csv::escape("plain") == "plain");
        CHECK(csv::escape("a,b") == "\"a,b\"");
        CHECK(csv::escape("q\"") == "\"q\"\"\"");
        std::ostringstream out;
        csv::write_row(out, {"h1", "h2"});
        csv::write_row(out, {"x,y", "z\"w"});
        std::istringstream back(out.str());
        const csv::Table t = csv::Table::read(back, "rt");
        CHECK(t.at(0, "h1") == "x,y");
        CHECK(t.at(0, "h2") == "z\"w");
    }
}
