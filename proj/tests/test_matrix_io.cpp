#include <sstream>
#include <string>

#include "doctest.h"

#include "cohlab/errors.hpp"
#include "cohlab/matrix_io.hpp"

using namespace cohlab;

TEST_CASE("complex tokens parse in all supported spellings") {
    CHECK(parse_complex("1", 1, 1) == Cx(1.0, 0.0));
    CHECK(parse_complex("-2.5", 1, 1) == Cx(-2.5, 0.0));
    CHECK(parse_complex("3i", 1, 1) == Cx(0.0, 3.0));
    CHECK(parse_complex("-0.25i", 1, 1) == Cx(0.0, -0.25));
    CHECK(parse_complex("i", 1, 1) == Cx(0.0, 1.0));
    CHECK(parse_complex("-i", 1, 1) == Cx(0.0, -1.0));
    CHECK(parse_complex("0.5+0.25i", 1, 1) == Cx(0.5, 0.25));
    CHECK(parse_complex("0.5-0.25i", 1, 1) == Cx(0.5, -0.25));
    CHECK(parse_complex("1e-3+2e-4i", 1, 1) == Cx(1e-3, 2e-4));
    CHECK(parse_complex("2+i", 1, 1) == Cx(2.0, 1.0));
    CHECK(parse_complex("2-i", 1, 1) == Cx(2.0, -1.0));
}

TEST_CASE("malformed tokens report their position") {
    CHECK_THROWS_AS(parse_complex("abc", 3, 2), ParseError);
    try {
        parse_complex("1+2j", 5, 4);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 5);
        CHECK(e.column == 4);
    }
}

TEST_CASE("matrix text round trips bit for bit") {
    ComplexMatrix m(2);
    m(0, 0) = Cx(0.5, 0.0);
    m(0, 1) = Cx(0.25, -0.125);
    m(1, 0) = Cx(0.25, 0.125);
    m(1, 1) = Cx(0.5, 0.0);

    std::ostringstream out;
    write_matrix(out, m);
    std::istringstream in(out.str());
    const ComplexMatrix back = parse_matrix(in);
    CHECK(back.max_abs_diff(m) == 0.0);

    std::ostringstream out2;
    write_matrix(out2, back);
    CHECK(out.str() == out2.str());
}

TEST_CASE("structural errors carry line and column") {
    std::istringstream missing("2\n0.5 0.5\n");
    CHECK_THROWS_AS(parse_matrix(missing), ParseError);

    std::istringstream short_row("2\n0.5\n0.5 0.5\n");
    try {
        parse_matrix(short_row);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.column == 2);
    }

    std::istringstream long_row("2\n0.5 0.5 0.5\n0.5 0.5\n");
    CHECK_THROWS_AS(parse_matrix(long_row), ParseError);

    std::istringstream bad_header("two\n");
    CHECK_THROWS_AS(parse_matrix(bad_header), ParseError);

    std::istringstream oversized("65\n");
    CHECK_THROWS_AS(parse_matrix(oversized), ParseError);
}

TEST_CASE("missing files fail loudly") {
    CHECK_THROWS_AS(parse_matrix_file("/nonexistent/state.txt"), Error);
}
