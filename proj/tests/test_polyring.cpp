#include "doctest.h"

#include "gpk/error.hpp"
#include "gpk/polynomial.hpp"

using gpk::Polynomial;

TEST_CASE("canonical text walks names ascending, exponents descending") {
  Polynomial q = Polynomial::variable("q");
  Polynomial v = Polynomial::variable("v");
  CHECK((q * q + q * v).to_text() == "q^2 + q*v");
  Polynomial X = Polynomial::variable("X");
  Polynomial Y = Polynomial::variable("Y");
  CHECK((Y + X + X * X).to_text() == "X^2 + X + Y");
  CHECK(Polynomial().to_text() == "0");
  CHECK((X - X).is_zero());
  CHECK((X * Y - Y * X).to_text() == "0");
}

TEST_CASE("parse inverts canonical text") {
  for (const char* text : {"0", "1", "-1", "X", "q^2 + q*v",
                           "-1 + 3*X^2*Y + q*v", "X^3 - 3*X^2 + 2*X",
                           "X1^2 + X2", "2", "1 - X"}) {
    CAPTURE(text);
    CHECK(Polynomial::parse(text).to_text() == text);
  }
}

TEST_CASE("ring identities") {
  Polynomial X = Polynomial::variable("X");
  Polynomial Y = Polynomial::variable("Y");
  Polynomial two = Polynomial::constant(2);
  CHECK((X + Y) * (X - Y) == X * X - Y * Y);
  CHECK((X + Y).pow(2) == X * X + two * X * Y + Y * Y);
  CHECK(X.pow(0) == Polynomial::constant(1));
  CHECK((X + Y).pow(1) == X + Y);
  CHECK(X * Polynomial() == Polynomial());
}

TEST_CASE("substitution replaces every occurrence at once") {
  Polynomial p = Polynomial::parse("X^2 + Y");
  CHECK(p.substitute("X", Polynomial::variable("Y")).to_text() == "Y^2 + Y");
  CHECK(Polynomial::parse("X^2 - X")
            .substitute("X", Polynomial::constant(3)) ==
        Polynomial::constant(6));
  CHECK(p.substitute("Z", Polynomial::constant(0)) == p);
  CHECK(Polynomial::parse("X*Y").substitute("X", Polynomial::variable("Y"))
            .to_text() == "Y^2");
}

TEST_CASE("variable powers: zero collapses, negative is rejected") {
  CHECK(Polynomial::variable("X", 0) == Polynomial::constant(1));
  CHECK_THROWS_AS(Polynomial::variable("X", -1), gpk::Error);
}

TEST_CASE("coefficient sign census") {
  CHECK(Polynomial::parse("X + 2").coefficients_positive());
  CHECK_FALSE(Polynomial::parse("X - 1").coefficients_positive());
  CHECK(Polynomial().coefficients_positive());
}

TEST_CASE("machine-facing term listing is canonical") {
  auto terms = Polynomial::parse("-1 + 3*X^2*Y + q*v").canonical_terms();
  REQUIRE(terms.size() == 3);
  CHECK(terms[0].first == "-1");
  CHECK(terms[0].second.empty());
  CHECK(terms[1].first == "3");
  REQUIRE(terms[1].second.size() == 2);
  CHECK(terms[1].second[0] == std::pair<std::string, int>{"X", 2});
  CHECK(terms[1].second[1] == std::pair<std::string, int>{"Y", 1});
  CHECK(terms[2].first == "1");
  REQUIRE(terms[2].second.size() == 2);
  CHECK(terms[2].second[0] == std::pair<std::string, int>{"q", 1});
  CHECK(terms[2].second[1] == std::pair<std::string, int>{"v", 1});
}
