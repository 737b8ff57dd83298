#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "helpers.hpp"

using namespace isoclouds;

TEST_CASE("csv parsing") {
  SECTION("comments, blanks, and whitespace are tolerated") {
    std::istringstream in("# header\n\n 1.0 , 2.0\n-3,4e-1\n");
    PointCloud A = parse_csv(in, "test");
    REQUIRE(A.dim() == 2);
    REQUIRE(A.size() == 2);
    REQUIRE(A.coords()(0, 0) == 1.0);
    REQUIRE(A.coords()(1, 1) == 0.4);
  }

  SECTION("bad number reports the line") {
    std::istringstream in("1,2\n3,oops\n");
    try {
      parse_csv(in, "test");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      REQUIRE(e.line == 2);
    }
  }

  SECTION("inconsistent dimension reports the line") {
    std::istringstream in("1,2\n3\n");
    try {
      parse_csv(in, "test");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      REQUIRE(e.line == 2);
    }
  }

  SECTION("empty input is a parse error") {
    std::istringstream in("# only a comment\n");
    REQUIRE_THROWS_AS(parse_csv(in, "test"), ParseError);
  }

  SECTION("non-finite values are rejected") {
    std::istringstream in("1,inf\n");
    REQUIRE_THROWS_AS(parse_csv(in, "test"), ParseError);
  }
}

TEST_CASE("xyz parsing") {
  SECTION("standard chemistry file") {
    std::istringstream in("3\ncomment line\nO 0.0 0.0 0.1\nH 0.0 0.75 -0.47\nH 0.0 -0.75 -0.47\n");
    PointCloud A = parse_xyz(in, "test");
    REQUIRE(A.dim() == 3);
    REQUIRE(A.size() == 3);
    REQUIRE(A.coords()(1, 1) == 0.75);
  }

  SECTION("missing atoms reports an error") {
    std::istringstream in("3\ncomment\nO 0 0 0\n");
    REQUIRE_THROWS_AS(parse_xyz(in, "test"), ParseError);
  }

  SECTION("bad count line") {
    std::istringstream in("zero\ncomment\n");
    REQUIRE_THROWS_AS(parse_xyz(in, "test"), ParseError);
  }
}

TEST_CASE("file reading end to end") {
  std::string dir = ISOCLOUDS_DATA_DIR;
  PointCloud T = read_cloud_file(dir + "/trapezium.csv");
  REQUIRE(T.size() == 4);
  REQUIRE(T.dim() == 2);

  PointCloud W = read_cloud_file(dir + "/water.xyz");
  REQUIRE(W.size() == 3);
  REQUIRE(W.dim() == 3);

  REQUIRE_THROWS_AS(read_cloud_file(dir + "/does_not_exist.csv"), ParseError);
}
