#include <doctest.h>

#include "generators.hpp"
#include "rcsim/parsing.hpp"

using namespace rcsim;

TEST_CASE("paper5q parsing") {
  SUBCASE("plain markers") {
    Paper5Q p = parse_paper5q(
        "[Question 1]\nalpha\n[Question 2]\nbeta\n[Question 3]\ngamma\n"
        "[Question 4]\ndelta\n[Question 5]\nepsilon\n");
    CHECK(p.answers[0] == "alpha");
    CHECK(p.answers[4] == "epsilon");
  }
  SUBCASE("bracket-tolerant, case-insensitive, same-line answers") {
    Paper5Q p = parse_paper5q(
        "question 1: alpha\nQUESTION 2 - beta\n[question 3] gamma\n"
        "Question 4. delta\n[Question 5]\nepsilon");
    CHECK(p.answers[0] == "alpha");
    CHECK(p.answers[1] == "beta");
    CHECK(p.answers[2] == "gamma");
    CHECK(p.answers[3] == "delta");
  }
  SUBCASE("preamble before the first marker is ignored") {
    Paper5Q p = parse_paper5q(
        "Sure, here is the proposal:\n[Question 1]\na\n[Question 2]\nb\n"
        "[Question 3]\nc\n[Question 4]\nd\n[Question 5]\ne");
    CHECK(p.answers[0] == "a");
  }
  SUBCASE("multi-line answers keep their lines") {
    Paper5Q p = parse_paper5q(
        "[Question 1]\nline one\nline two\n[Question 2]\nb\n[Question 3]\nc\n"
        "[Question 4]\nd\n[Question 5]\ne");
    CHECK(p.answers[0] == "line one\nline two");
  }
  SUBCASE("missing marker") {
    CHECK_THROWS_AS(parse_paper5q("[Question 1]\na\n[Question 2]\nb"), ParseError);
    try {
      parse_paper5q("[Question 1]\na\n[Question 2]\nb\n[Question 4]\nd\n[Question 5]\ne");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.code() == ParseErrorCode::MissingQuestionMarker);
    }
  }
  SUBCASE("duplicate marker") {
    try {
      parse_paper5q("[Question 1]\na\n[Question 1]\nb");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.code() == ParseErrorCode::DuplicateQuestionMarker);
    }
  }
  SUBCASE("empty answer") {
    try {
      parse_paper5q("[Question 1]\n\n[Question 2]\nb\n[Question 3]\nc\n[Question 4]\nd\n"
                    "[Question 5]\ne");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.code() == ParseErrorCode::EmptyAnswer);
    }
  }
  SUBCASE("markers outside 1..5 are content") {
    Paper5Q p = parse_paper5q(
        "[Question 1]\nQuestion 6 remains open\n[Question 2]\nb\n[Question 3]\nc\n"
        "[Question 4]\nd\n[Question 5]\ne");
    CHECK(p.answers[0] == "Question 6 remains open");
  }
}

TEST_CASE("paper5q round-trip on randomized well-formed samples") {
  std::mt19937_64 rng(7001);
  for (int i = 0; i < 200; ++i) {
    Paper5Q original = testgen::random_paper5q(rng);
    CHECK(parse_paper5q(format_paper5q(original)) == original);
  }
}

TEST_CASE("bullet parsing") {
  SUBCASE("plain bullets") {
    CHECK(parse_bullets("- a\n- b") == std::vector<std::string>{"a", "b"});
  }
  SUBCASE("indentation tolerated") {
    CHECK(parse_bullets("  - c") == std::vector<std::string>{"c"});
  }
  SUBCASE("continuation lines join the previous bullet") {
    CHECK(parse_bullets("- first\n  continues here\n- second") ==
          std::vector<std::string>{"first continues here", "second"});
  }
  SUBCASE("preamble ignored") {
    CHECK(parse_bullets("Here are the strengths:\n- only one") ==
          std::vector<std::string>{"only one"});
  }
  SUBCASE("no bullets") {
    try {
      parse_bullets("nothing here\njust prose");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.code() == ParseErrorCode::NoBullets);
    }
  }
  SUBCASE("empty bullets dropped, all-empty fails") {
    CHECK(parse_bullets("-\n- real") == std::vector<std::string>{"real"});
    CHECK_THROWS_AS(parse_bullets("-\n- \n-"), ParseError);
  }
}

TEST_CASE("bullet round-trip on randomized well-formed samples") {
  std::mt19937_64 rng(7002);
  for (int i = 0; i < 200; ++i) {
    auto original = testgen::random_bullets(rng);
    CHECK(parse_bullets(format_bullets(original)) == original);
  }
}

TEST_CASE("score extraction") {
  CHECK(parse_score("7") == 7);
  CHECK(parse_score("Your score is: [8]") == 8);
  CHECK(parse_score("10") == 10);
  CHECK(parse_score("score: 3 out of 10") == 3);

  SUBCASE("zero is out of range, not skipped") {
    try {
      parse_score("0");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.code() == ParseErrorCode::ScoreOutOfRange);
    }
  }
  SUBCASE("eleven is out of range") {
    CHECK_THROWS_AS(parse_score("11"), ParseError);
  }
  SUBCASE("huge values stay out of range") {
    CHECK_THROWS_AS(parse_score("123456789123456789123"), ParseError);
  }
  SUBCASE("no digits at all") {
    try {
      parse_score("excellent work");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.code() == ParseErrorCode::NoScoreFound);
    }
  }
}

TEST_CASE("format_review embeds bullets and score") {
  ReviewRecord r{{"s1", "s2"}, {"w1"}, 6};
  std::string text = format_review(r);
  CHECK(text.find("Score: 6") != std::string::npos);
  CHECK(text.find("- s1") != std::string::npos);
  CHECK(text.find("- w1") != std::string::npos);
}
