#include "mhv/algebra.hpp"
#include "mhv/errors.hpp"
#include "mhv/maps.hpp"

#include <gtest/gtest.h>

using namespace mhv;

namespace {

Element P(const char* s) { return parse_element(s); }

// Pairs whose bracket stays inside the window.
template <typename F>
void for_closed_pairs(const Window& w, F&& f) {
  for (Basis x : w.basis())
    for (Basis y : w.basis())
      if (w.contains(bracket(x, y))) f(x, y);
}

}  // namespace

TEST(SpecialMaps, ImageTables) {
  const Window w(6);
  const GradedMap d1 = make_D1(w);
  const GradedMap d2 = make_D2(w);
  EXPECT_EQ(apply_map(d1, P("l")), P("2*l"));
  EXPECT_EQ(apply_map(d1, P("d[5]")), Element());
  EXPECT_EQ(apply_map(d1, P("c")), Element());
  EXPECT_EQ(apply_map(d1, P("h[-4]")), P("h[-4]"));
  EXPECT_EQ(apply_map(d2, P("d[3]")), P("h[3]"));
  EXPECT_EQ(apply_map(d2, P("h[-1]")), P("l"));
  EXPECT_EQ(apply_map(d2, P("h[1]")), Element());
  EXPECT_EQ(apply_map(d2, P("c + l")), Element());
  EXPECT_EQ(apply_map(d2, Element()), Element());
  EXPECT_EQ(d1.delta(), 0);
  EXPECT_EQ(d2.codomain(), Codomain::H);
}

TEST(SpecialMaps, OutOfWindowArgumentNamesVector) {
  const GradedMap d1 = make_D1(Window(3));
  try {
    apply_map(d1, P("d[4]"));
    FAIL() << "expected WindowViolation";
  } catch (const WindowViolation& e) {
    EXPECT_NE(std::string(e.what()).find("d[4]"), std::string::npos);
  }
}

TEST(SpecialMaps, LeibnizHoldsEverywhere) {
  const Window w(6);
  for (const GradedMap& m : {make_D1(w), make_D2(w)}) {
    for_closed_pairs(w, [&](Basis x, Basis y) { EXPECT_TRUE(derivation_defect(m, x, y).is_zero()); });
  }
  EXPECT_TRUE(derivation_defect(make_D1(w), Basis::d(1), Basis::h(-2)).is_zero());
}

TEST(SpecialMaps, D1AndD2Independent) {
  // k1 D1 + k2 D2 at h_{-1/2} is k1 h_{-1/2} + k2 l.
  EXPECT_EQ(apply_D1(P("h[-1]")), P("h[-1]"));
  EXPECT_EQ(apply_D2(P("h[-1]")), P("l"));
}

TEST(SpecialMaps, D2AgreesWithInnerMapOfHalf) {
  const Window w(8);
  const GradedMap d2 = make_D2(w);
  const GradedMap inner = ad(P("-2*h[0]"), w, Codomain::H);
  for (Basis b : w.basis()) EXPECT_EQ(d2.image(b), inner.image(b)) << basis_key(b);
  EXPECT_EQ(d2, inner);
}

TEST(InnerMap, PrintedExamples) {
  const Window w(5);
  const GradedMap m = ad(P("2*h[-1]"), w, Codomain::H);
  EXPECT_EQ(m.delta(), -1);
  for (int n = -5; n <= 5; ++n) EXPECT_EQ(m.image(Basis::d(n)), Element::h(n - 1));
  for (int n = -5; n <= 5; ++n) EXPECT_EQ(m.image(Basis::h(n)), n == 0 ? P("l") : Element());
  EXPECT_TRUE(ad(P("c"), w, Codomain::D).images().empty());
  EXPECT_TRUE(ad(P("l"), w, Codomain::H).images().empty());
}

TEST(InnerMap, LeibnizForHomogeneousElements) {
  const Window w(4);
  for (const char* u : {"d[2]", "h[-3]", "3*d[-1] + 1/2*h[-1] + l", "d[0] + c"}) {
    const GradedMap m = ad(P(u), w, Codomain::D);
    for_closed_pairs(w, [&](Basis x, Basis y) {
      if (!w.contains(m.image(x)) || !w.contains(m.image(y))) return;
      EXPECT_TRUE(derivation_defect(m, x, y).is_zero()) << u << " " << basis_key(x) << " " << basis_key(y);
    });
  }
}

TEST(InnerMap, RejectsInhomogeneousOrForeignU) {
  EXPECT_THROW(ad(P("d[1] + d[2]"), Window(3), Codomain::D), InvalidArgument);
  EXPECT_THROW(ad(P("d[1]"), Window(3), Codomain::H), InvalidArgument);
}

TEST(GradedMap, ValidatesImages) {
  const Window w(3);
  EXPECT_THROW(GradedMap(0, Codomain::H, w, {{Basis::d(1), P("h[2]")}}), InvalidArgument);
  EXPECT_THROW(GradedMap(0, Codomain::H, w, {{Basis::d(1), P("d[1]")}}), InvalidArgument);
  EXPECT_THROW(GradedMap(0, Codomain::H, w, {{Basis::d(4), P("h[4]")}}), WindowViolation);
  EXPECT_THROW(GradedMap(1, Codomain::D, w, {{Basis::d(1), P("d[2] + h[1]")}}), InvalidArgument);
  EXPECT_NO_THROW(GradedMap(1, Codomain::D, w, {{Basis::d(1), P("d[2] + h[2]")}, {Basis::l(), Element()}}));
  EXPECT_NO_THROW(GradedMap(0, Codomain::H, w, {{Basis::c(), Element()}, {Basis::l(), P("l")}}));
}

TEST(GradedMap, JsonRoundTrip) {
  const Window w(3);
  const GradedMap m = make_D2(w);
  const Json j = graded_map_to_json(m);
  EXPECT_EQ(j["delta"], 0);
  EXPECT_EQ(j["codomain"], "H");
  EXPECT_EQ(j["images"]["d[2]"].dump(), R"({"h":{"2":"1/1"}})");
  EXPECT_EQ(graded_map_from_json(j, w), m);
  EXPECT_EQ(graded_map_from_json(j).window().outer(), 3);
}

TEST(Descriptor, Examples) {
  EXPECT_EQ(apply_descriptor({Element(), 1, 0}, P("l")), P("2*l"));
  EXPECT_EQ(apply_descriptor({P("2*h[-1]"), 0, 0}, P("d[0]")), P("h[-1]"));
  EXPECT_EQ(apply_descriptor({Element(), 0, 0}, P("d[3] + h[1] + c")), Element());
  EXPECT_EQ(apply_descriptor({P("d[1]"), 0, 0}, P("d[2]")), P("d[3]"));
  EXPECT_THROW(apply_descriptor({P("d[9]"), 0, 0}, P("d[0]"), Window(4)), WindowViolation);
}

TEST(Descriptor, LinearInBothArguments) {
  const DerivationDescriptor w1{P("d[2] + 3*h[-1]"), 5, Rational(-1, 2)};
  const DerivationDescriptor w2{P("h[0] - c + l"), Rational(1, 3), 2};
  const Element x = P("d[1] - 2*h[-1] + l");
  const Element y = P("h[3] + 1/2*d[-2]");
  const Rational s(7, 4);
  EXPECT_EQ(apply_descriptor(w1 + s * w2, x), apply_descriptor(w1, x) + s * apply_descriptor(w2, x));
  EXPECT_EQ(apply_descriptor(w1, x + s * y), apply_descriptor(w1, x) + s * apply_descriptor(w1, y));
}
