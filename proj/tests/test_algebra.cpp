#include "mhv/algebra.hpp"
#include "mhv/element_io.hpp"
#include "mhv/errors.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace mhv;

namespace {

Element P(const char* s) { return parse_element(s); }

std::vector<Basis> basis_range(int bound) { return Window::basis_up_to(bound); }

}  // namespace

TEST(Rational, ParsesCanonicalForms) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-2/6"), Rational(-1, 3));
  EXPECT_EQ(parse_rational("0/5"), Rational(0));
  EXPECT_EQ(to_string(Rational(3, 2)), "3/2");
  EXPECT_EQ(to_string(Rational(-4)), "-4");
  EXPECT_EQ(to_pq_string(Rational(0)), "0/1");
  EXPECT_EQ(to_pq_string(Rational(3)), "3/1");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/-2"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
}

TEST(Rational, ArbitraryPrecision) {
  Rational big = parse_rational("123456789012345678901234567890/7");
  EXPECT_EQ(big * 7, parse_rational("123456789012345678901234567890"));
}

TEST(Element, CanonicalSparseForm) {
  Element x = Element::d(1) + Element::h(2);
  x -= Element::d(1);
  EXPECT_EQ(x, Element::h(2));
  EXPECT_EQ(x.size(), 1u);
  EXPECT_TRUE((x - x).is_zero());
  EXPECT_EQ(Element(Basis::c(), 0), Element());
}

TEST(ElementIo, FormatAndParseRoundTrip) {
  for (const char* s : {"2*d[3] + 1/2*h[-1] - c", "4*d[0] + 1/2*c", "1/2*l", "-d[-7]", "0", "d[0] + h[0] + c + l"}) {
    EXPECT_EQ(format_element(P(s)), s) << s;
  }
  EXPECT_EQ(format_element(P("c + d[1] - 0*l + d[1]")), "2*d[1] + c");
  EXPECT_EQ(format_element(P("h[2] - h[2]")), "0");
  EXPECT_EQ(P("3/6*d[1]"), Rational(1, 2) * Element::d(1));
}

TEST(ElementIo, ParseErrorsCarryPosition) {
  auto position = [](const char* s) -> std::ptrdiff_t {
    try {
      parse_element(s);
    } catch (const ParseError& e) {
      EXPECT_FALSE(e.expected().empty());
      return static_cast<std::ptrdiff_t>(e.position());
    }
    return -1;
  };
  EXPECT_EQ(position("d["), 2);
  EXPECT_EQ(position("d[1] + "), 7);
  EXPECT_EQ(position("x"), 0);
  EXPECT_EQ(position("1/0*d[1]"), 2);
  EXPECT_EQ(position("3"), 0);
  EXPECT_EQ(position("d[1]]"), 4);
}

TEST(ElementIo, JsonRoundTrip) {
  const Element x = P("2*d[3] + 1/2*h[-1] - c + 7/3*l");
  const Json j = element_to_json(x);
  EXPECT_EQ(j.dump(), R"({"d":{"3":"2/1"},"h":{"-1":"1/2"},"c":"-1/1","l":"7/3"})");
  EXPECT_EQ(element_from_json(j), x);
  EXPECT_EQ(element_to_json(Element()).dump(), "{}");
  EXPECT_EQ(window_from_json(window_to_json(Window(10, 5))), Window(10, 5));
  EXPECT_EQ(window_from_json(Json{{"outer", 4}}), Window(4, 4));
}

TEST(Bracket, PrintedRelations) {
  EXPECT_EQ(bracket(P("d[2]"), P("d[-2]")), P("4*d[0] + 1/2*c"));
  EXPECT_EQ(bracket(P("d[1]"), P("h[-2]")), P("3/2*h[-1]"));
  EXPECT_EQ(bracket(P("h[0]"), P("h[-1]")), P("1/2*l"));
  EXPECT_EQ(bracket(P("c"), P("d[5]")), Element());
  EXPECT_EQ(bracket(P("l"), P("h[3]")), Element());
  EXPECT_EQ(bracket(P("d[3]"), P("d[-3]")), P("6*d[0] + 2*c"));
  EXPECT_EQ(bracket(P("d[1]"), P("d[-1]")), P("2*d[0]"));
  // [d_m, h_{k+1/2}] = -(k+1/2) h_{m+k+1/2}
  EXPECT_EQ(bracket(P("d[4]"), P("h[2]")), P("-5/2*h[6]"));
  EXPECT_EQ(bracket(P("h[-1]"), P("h[0]")), P("-1/2*l"));
}

TEST(Bracket, BilinearExtension) {
  const Element x = P("d[1] + 2*h[0]");
  const Element y = P("d[-1] - h[-1]");
  Element expected;
  for (const auto& [bx, cx] : x.terms()) {
    for (const auto& [by, cy] : y.terms()) expected.add_scaled(bracket(bx, by), cx * cy);
  }
  EXPECT_EQ(bracket(x, y), expected);
}

TEST(Bracket, AntisymmetryAndCentrality) {
  for (Basis x : basis_range(4)) {
    for (Basis y : basis_range(4)) {
      EXPECT_EQ(bracket(x, y), -bracket(y, x));
    }
    EXPECT_TRUE(bracket(x, Basis::c()).is_zero());
    EXPECT_TRUE(bracket(x, Basis::l()).is_zero());
  }
}

TEST(Bracket, JacobiExhaustiveSmall) {
  const auto b = basis_range(3);
  for (Basis x : b)
    for (Basis y : b)
      for (Basis z : b) ASSERT_TRUE(jacobi_defect(Element(x), Element(y), Element(z)).is_zero());
}

TEST(Bracket, JacobiRandomCombinations) {
  std::mt19937_64 rng(11);
  auto random_element = [&] {
    Element e;
    for (Basis b : basis_range(5)) {
      if (rng() % 4 == 0) e.add_term(b, Rational(static_cast<long>(rng() % 11) - 5, static_cast<long>(rng() % 4) + 1));
    }
    return e;
  };
  for (int i = 0; i < 50; ++i) {
    EXPECT_TRUE(jacobi_defect(random_element(), random_element(), random_element()).is_zero());
  }
}

TEST(Degree, Examples) {
  EXPECT_EQ(degree(P("d[3]")).value, 3);
  EXPECT_EQ(degree(P("h[-2]")).value, -2);
  EXPECT_EQ(degree(P("l")).value, -1);
  EXPECT_EQ(degree(P("c + d[0] + h[0]")).value, 0);
  EXPECT_EQ(degree(P("h[-1] + l")).value, -1);
  EXPECT_FALSE(degree(P("d[1] + d[2]")).homogeneous());
  EXPECT_TRUE(degree(Element()).zero);
}

TEST(Degree, BracketIsAdditive) {
  for (Basis x : basis_range(5)) {
    for (Basis y : basis_range(5)) {
      const Element br = bracket(x, y);
      if (br.is_zero()) continue;
      EXPECT_EQ(degree(br).value, degree(x) + degree(y));
    }
  }
}

TEST(Window, BasisAndContainment) {
  Window w(2, 1);
  EXPECT_EQ(w.basis().size(), 2u * 5 + 2);
  EXPECT_EQ(w.interior_basis().size(), 2u * 3 + 2);
  EXPECT_TRUE(w.contains(P("d[2] + h[-2] + c")));
  EXPECT_FALSE(w.contains(P("d[3]")));
  EXPECT_FALSE(w.interior_contains(Basis::h(2)));
  EXPECT_THROW(Window(2, 3), InvalidArgument);
  EXPECT_THROW(Window(0, 0), InvalidArgument);
}
