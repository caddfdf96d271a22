#include "mhv/registry.hpp"

#include "mhv/algebra.hpp"
#include "mhv/derivation_solver.hpp"
#include "mhv/errors.hpp"
#include "mhv/two_local.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <random>
#include <set>

namespace mhv {

namespace {

using linalg::QVector;

constexpr const char* kVerified = "verified";
constexpr const char* kVerifiedAtWindow = "verified-at-window";
constexpr const char* kDiscrepancy = "discrepancy";
constexpr const char* kViolation = "violation";

struct Entry {
  std::string verdict;
  Json computed = Json::object();
  Json claim = Json::object();
  Json witnesses = Json::array();
};

std::string q(const Rational& r) { return to_pq_string(r); }
std::string fmt(const Element& x) { return format_element(x); }

std::vector<int> degrees_for(const Window& w, bool include_zero, bool include_minus_one) {
  std::vector<int> out;
  const int bound = registry_degree_bound(w);
  for (int d = -bound; d <= bound; ++d) {
    if (d == 0 && !include_zero) continue;
    if (d == -1 && !include_minus_one) continue;
    out.push_back(d);
  }
  return out;
}

Entry check_jacobi() {
  constexpr int kBound = 6;
  const auto basis = Window::basis_up_to(kBound);
  long pairs = 0;
  long triples = 0;
  Entry e;
  for (Basis x : basis) {
    for (Basis y : basis) {
      ++pairs;
      if (!(bracket(x, y) + bracket(y, x)).is_zero()) {
        e.witnesses.push_back({{"antisymmetry", {basis_key(x), basis_key(y)}}});
      }
      for (Basis z : basis) {
        ++triples;
        const Element j = jacobi_defect(Element(x), Element(y), Element(z));
        if (!j.is_zero()) e.witnesses.push_back({{"jacobi", {basis_key(x), basis_key(y), basis_key(z)}}, {"defect", fmt(j)}});
      }
    }
  }
  e.computed = {{"bound", kBound}, {"pairs", pairs}, {"triples", triples}, {"failures", e.witnesses.size()}};
  e.claim = {{"failures", 0}};
  e.verdict = e.witnesses.empty() ? kVerified : kViolation;
  return e;
}

Entry check_grading() {
  constexpr int kBound = 8;
  const auto basis = Window::basis_up_to(kBound);
  long pairs = 0;
  Entry e;
  for (Basis x : basis) {
    for (Basis y : basis) {
      ++pairs;
      const Element z = bracket(x, y);
      const Degree dz = degree(z);
      const bool additive = dz.zero || (dz.homogeneous() && *dz.value == degree(x) + degree(y));
      const bool module = !in_heisenberg(y) || std::all_of(z.terms().begin(), z.terms().end(),
                                                           [](const auto& t) { return in_heisenberg(t.first); });
      if (!additive || !module) {
        e.witnesses.push_back({{"pair", {basis_key(x), basis_key(y)}}, {"bracket", fmt(z)}});
      }
    }
  }
  e.computed = {{"bound", kBound}, {"pairs", pairs}, {"failures", e.witnesses.size()}};
  e.claim = {{"degree_additive", true}, {"heisenberg_is_submodule", true}};
  e.verdict = e.witnesses.empty() ? kVerified : kViolation;
  return e;
}

// The ungraded Leibniz system splits by degree: no equation mixes unknowns
// x -> t with different deg t - deg x.
Entry check_graded_split(const Window& w) {
  const int bound = std::min(w.outer(), 4);
  const auto basis = Window::basis_up_to(bound);
  long rows = 0;
  long mixed = 0;
  Entry e;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      const Basis x = basis[i];
      const Basis y = basis[j];
      const Element xy = bracket(x, y);
      bool inside = true;
      for (const auto& [b, c] : xy.terms()) inside = inside && Window::within(b, bound);
      if (!inside) continue;
      std::map<Basis, std::set<int>> shifts;  // output -> deg t - deg s over its unknowns
      for (Basis t : basis) {
        for (const auto& [b, c] : xy.terms()) shifts[t].insert(degree(t) - degree(b));
        const Element left = bracket(t, y);
        for (const auto& [o, c] : left.terms()) shifts[o].insert(degree(t) - degree(x));
        const Element right = bracket(x, t);
        for (const auto& [o, c] : right.terms()) shifts[o].insert(degree(t) - degree(y));
      }
      for (const auto& [o, s] : shifts) {
        ++rows;
        if (s.size() > 1) {
          ++mixed;
          if (e.witnesses.size() < 5) e.witnesses.push_back({{"pair", {basis_key(x), basis_key(y)}}, {"output", basis_key(o)}});
        }
      }
    }
  }
  e.computed = {{"bound", bound}, {"equations", rows}, {"mixed_degree_equations", mixed}};
  e.claim = {{"mixed_degree_equations", 0}};
  e.verdict = mixed == 0 ? kVerifiedAtWindow : kViolation;
  return e;
}

Entry check_h1_subalgebra() {
  Entry e;
  bool ok = true;
  Json dims = Json::object();
  Json excluded = Json::object();
  for (int n = -6; n <= 6; ++n) {
    const auto r = h1_D0_Hn(n);
    if (n == 0 || n == -1) {
      excluded[std::to_string(n)] = {{"der_dim", r.der_dim}, {"inner_dim", r.inner_dim}, {"dim", r.dim}};
      continue;
    }
    dims[std::to_string(n)] = r.dim;
    ok = ok && r.dim == 0;
    for (const auto& wit : r.witnesses) {
      ok = ok && wit.reproduces;
      e.witnesses.push_back({{"n", n}, {"a", q(wit.a)}, {"E", fmt(wit.e)}, {"reproduces", wit.reproduces}});
    }
  }
  e.computed = {{"dims", dims}, {"excluded_degrees", excluded}};
  e.claim = {{"dim", 0}, {"degrees", "[-6,6] without 0,-1"}};
  e.verdict = ok ? kVerified : kViolation;
  return e;
}

Entry check_hom(bool zero_source) {
  Entry e;
  bool ok = true;
  Json dims = Json::array();
  for (int m = -6; m <= 6; ++m) {
    if ((m == 0) != zero_source) continue;
    for (int n = -6; n <= 6; ++n) {
      if (zero_source ? (n == 0 || n == -1) : n == m) continue;
      const auto r = hom_D0(m, n);
      if (r.dim != 0) {
        ok = false;
        dims.push_back({{"m", m}, {"n", n}, {"dim", r.dim}});
      }
    }
  }
  e.computed = {{"nonzero", dims}, {"bound", 6}};
  e.claim = {{"dim", 0}};
  e.verdict = ok ? kVerified : kViolation;
  return e;
}

Json map_family_json(const GradedMap& m) {
  Json out = Json::object();
  for (const auto& [b, img] : m.images()) out[basis_key(b)] = fmt(img);
  return out;
}

Entry check_degree_minus_one(const Window& w) {
  Entry e;
  const auto h1 = h1_component(Codomain::H, -1, w);
  const auto& rep = h1.report;
  bool ok = rep.space_dim == 1 && rep.outer_dim == 0 && rep.stable;
  if (rep.space_dim == 1) {
    const GradedMap& sol = rep.solutions.front();
    const Rational c = sol.image(Basis::d(0)).coeff(Basis::h(-1));
    bool family = !c.is_zero();
    for (Basis b : Window::basis_up_to(w.interior())) {
      Element expected;
      if (b.kind == Kind::D) expected = Element(Basis::h(b.index - 1), c);
      if (b.kind == Kind::H && b.index == 0) expected = Element(Basis::l(), c);
      family = family && sol.image(b) == expected;
    }
    const Element witness = Element(Basis::h(-1), 2 * c);
    const bool inner = ad(witness, Window(w.interior()), Codomain::H) == sol;
    ok = ok && family && inner;
    e.witnesses.push_back({{"c", q(c)}, {"inner_witness", fmt(witness)}, {"matches_family", family}, {"equals_ad", inner}});
  }
  e.computed = {{"space_dim", rep.space_dim}, {"inner_dim", rep.inner_dim}, {"outer_dim", rep.outer_dim}, {"stable", rep.stable}};
  e.claim = {{"space_dim", 1}, {"outer_dim", 0}};
  e.verdict = ok ? kVerifiedAtWindow : kViolation;
  return e;
}

// d_n -> a h_{n+1/2}, h_{n+1/2} -> b h_{n+1/2} + delta_{n,-1} a l, c -> 0, l -> 2b l.
GradedMap degree_zero_family(const Rational& a, const Rational& b, const Window& w) {
  GradedMap::Images images;
  for (Basis x : w.basis()) {
    Element img;
    if (x.kind == Kind::D) img = Element(Basis::h(x.index), a);
    if (x.kind == Kind::H) {
      img = Element(x, b);
      if (x.index == -1) img.add_term(Basis::l(), a);
    }
    if (x.kind == Kind::L) img = Element(Basis::l(), 2 * b);
    images.emplace(x, std::move(img));
  }
  return GradedMap(0, Codomain::H, w, std::move(images));
}

Entry check_degree_zero(const Window& w) {
  Entry e;
  const auto rep = solve_graded_derivations(Codomain::H, 0, w);
  const InteriorCoordinates coords(Codomain::H, 0, w.interior());
  std::vector<QVector> space;
  for (const auto& s : rep.solutions) space.push_back(coords.to_vector(s));
  const Window interior(w.interior());
  const auto fa = coords.to_vector(degree_zero_family(1, 0, interior));
  const auto fb = coords.to_vector(degree_zero_family(0, 1, interior));
  const bool a_in = linalg::membership(fa, space).has_value();
  const bool b_in = linalg::membership(fb, space).has_value();
  const bool spans = rep.space_dim == 2 && linalg::rank_of(std::vector<QVector>{fa, fb}) == 2;
  e.computed = {{"space_dim", rep.space_dim}, {"inner_dim", rep.inner_dim}, {"outer_dim", rep.outer_dim},
                {"stable", rep.stable}, {"family_a_in_space", a_in}, {"family_b_in_space", b_in}};
  e.claim = {{"space_dim", 2}, {"family", "(a,b)"}};
  for (const auto& s : rep.solutions) e.witnesses.push_back(map_family_json(s));
  e.verdict = (a_in && b_in && spans && rep.stable) ? kVerifiedAtWindow : kViolation;
  return e;
}

Json membership_json(const std::optional<MembershipVerdict>& m) {
  if (!m) return nullptr;
  Json coords = Json::array();
  for (const auto& c : m->inner_coordinates) coords.push_back(q(c));
  return {{"in_space", m->in_space}, {"in_inner", m->in_inner}, {"inner_coordinates", coords}};
}

// D2 against ad(-2 h_{1/2}) on every basis vector of the window.
std::pair<Json, bool> d2_table(const Window& w) {
  Json rows = Json::array();
  bool all_equal = true;
  const Element u = Element(Basis::h(0), -2);
  for (Basis b : w.basis()) {
    const Element d2 = apply_D2(Element(b));
    const Element adv = bracket(Element(b), u);
    const bool equal = d2 == adv;
    all_equal = all_equal && equal;
    rows.push_back({{"x", basis_key(b)}, {"D2", fmt(d2)}, {"ad", fmt(adv)}, {"equal", equal}});
  }
  return {rows, all_equal};
}

Entry check_h1_degree_zero(const Window& w, Codomain codomain) {
  Entry e;
  const Window wider(w.outer() + 2, w.interior());
  const auto h1 = h1_component(codomain, 0, w);
  const auto h1_wide = h1_component(codomain, 0, wider);
  const auto [table, table_equal] = d2_table(w);
  const auto [table_wide, table_equal_wide] = d2_table(wider);
  const bool d2_inner = h1.d2 && h1.d2->in_inner;
  const bool d1_inner = h1.d1 && h1.d1->in_inner;
  const bool consistent = d2_inner == table_equal && table_equal == table_equal_wide;
  const bool stable = h1.report.outer_dim == h1_wide.report.outer_dim && h1_wide.d2 && h1_wide.d2->in_inner == d2_inner &&
                      h1_wide.d1 && h1_wide.d1->in_inner == d1_inner && h1.report.stable;
  e.computed = {{"codomain", to_string(codomain)},
                {"space_dim", h1.report.space_dim},
                {"inner_dim", h1.report.inner_dim},
                {"outer_dim", h1.report.outer_dim},
                {"D1", membership_json(h1.d1)},
                {"D2", membership_json(h1.d2)},
                {"D2_equals_ad_table", table_equal},
                {"verdicts_agree", consistent},
                {"stable_across_windows", stable},
                {"wider_window", window_to_json(wider)}};
  if (codomain == Codomain::D) {
    Json outer = Json::object();
    bool nonzero_outer = false;
    for (int d : degrees_for(w, false, true)) {
      const auto r = solve_graded_derivations(codomain, d, w);
      outer[std::to_string(d)] = r.outer_dim;
      nonzero_outer = nonzero_outer || r.outer_dim != 0 || !r.stable;
    }
    e.computed["nonzero_degree_outer_dims"] = outer;
    if (nonzero_outer) {
      e.verdict = kViolation;
      return e;
    }
  }
  e.claim = {{"outer_dim", 2}, {"outer_basis", {"D1", "D2"}}};
  e.witnesses.push_back({{"D2_vs_ad(-2*h[0])", table}});
  if (!consistent || !stable || d1_inner || !(h1.d1 && h1.d1->in_space)) {
    e.verdict = kViolation;
  } else {
    e.verdict = h1.report.outer_dim == 2 ? kVerifiedAtWindow : kDiscrepancy;
  }
  return e;
}

Entry check_nonzero_degrees(const Window& w) {
  Entry e;
  Json outer = Json::object();
  bool ok = true;
  for (int d : degrees_for(w, false, false)) {
    const auto r = solve_graded_derivations(Codomain::H, d, w);
    outer[std::to_string(d)] = r.outer_dim;
    ok = ok && r.outer_dim == 0 && r.stable;
  }
  // Degree-0 derivations meet the inner maps in ad(h_{1/2}); the sum is not direct.
  const auto zero = solve_graded_derivations(Codomain::H, 0, w);
  e.computed = {{"outer_dims", outer}, {"degree_zero_inner_overlap_dim", zero.inner_dim}};
  e.claim = {{"nonzero_degree_outer_dim", 0}, {"degree_zero_overlap_dim", 0}};
  if (zero.inner_dim > 0) {
    e.witnesses.push_back({{"overlap", "ad(h[0])"}, {"family_a_equals", "ad(-2*a*h[0])"}});
  }
  if (!ok) {
    e.verdict = kViolation;
  } else {
    e.verdict = zero.inner_dim == 0 ? kVerifiedAtWindow : kDiscrepancy;
  }
  return e;
}

Entry check_equivariant(const Window& w) {
  Entry e;
  Json dims = Json::object();
  bool ok = true;
  std::set<int> outers{3, 5, 8, w.outer()};
  for (int n : outers) {
    const int dim = equivariant_hom_H_to_V(Window(n));
    dims[std::to_string(n)] = dim;
    ok = ok && dim == 0;
  }
  e.computed = {{"dims_by_outer", dims}};
  e.claim = {{"dim", 0}};
  e.verdict = ok ? kVerified : kViolation;
  return e;
}

// Constraint rows of the four stabilizer cases, in DescriptorCoordinates.
std::vector<QVector> case_constraints(const Element& z, const DescriptorCoordinates& c) {
  const int n = c.bound();
  std::vector<QVector> rows;
  auto row = [&](std::initializer_list<std::pair<linalg::Index, Rational>> entries) {
    QVector r = QVector::Zero(c.size());
    for (const auto& [i, v] : entries) r(i) = v;
    rows.push_back(std::move(r));
  };
  const Basis b = z.terms().begin()->first;
  if (b.kind == Kind::D) {
    for (int j = -n; j <= n; ++j) {
      if (j != b.index) row({{c.a(j), 1}});
      if (j != 0) row({{c.b(j), 1}});
    }
    row({{c.beta(), 1}, {c.b(0), Rational(1, 2)}});
  } else if (b.index == 0) {
    for (int j = -n; j <= n; ++j) {
      if (j != 0) row({{c.a(j), 1}});
    }
    row({{c.b(-1), 1}});
    row({{c.alpha(), 1}, {c.a(0), Rational(-1, 2)}});
  } else if (b.index == -1) {
    for (int j = -n; j <= n; ++j) {
      if (j != 0) row({{c.a(j), 1}});
    }
    row({{c.alpha(), 1}, {c.a(0), Rational(1, 2)}});
    row({{c.beta(), 1}, {c.b(0), Rational(1, 2)}});
  } else {
    for (int j = -n; j <= n; ++j) {
      if (j != 0) row({{c.a(j), 1}});
    }
    if (std::abs(-1 - b.index) <= n) row({{c.b(-1 - b.index), 1}});
    row({{c.alpha(), 1}, {c.a(0), -Rational(2 * b.index + 1, 2)}});
  }
  return rows;
}

Entry check_stabilizer_cases(const Window& w) {
  Entry e;
  const Window win(w.outer());
  std::vector<Element> zs{Element::d(0), Element::d(3), Element::d(-2), Element::h(0), Element::h(-1),
                          Element::h(2), Element::h(-3)};
  bool ok = true;
  for (const auto& z : zs) {
    if (!win.contains(z)) continue;
    const auto s = stabilizer_space(z, win);
    const auto expected = case_constraints(z, s.coords);
    const auto r = linalg::rref(linalg::columns(expected, s.coords.size()).transpose());
    const bool match = r.rank == s.constraints.rank &&
                       r.reduced.topRows(r.rank) == s.constraints.reduced.topRows(s.constraints.rank);
    ok = ok && match;
    e.witnesses.push_back({{"z", fmt(z)}, {"constraints", s.constraints.rank}, {"free", s.basis.size()}, {"match", match}});
  }
  e.computed = {{"bound", win.outer()}, {"cases_checked", zs.size()}};
  e.claim = {{"cases", {"d_i", "h[0]", "h[-1]", "h[i], i not in {0,-1}"}}};
  e.verdict = ok ? kVerifiedAtWindow : kViolation;
  return e;
}

std::vector<StabilizerSpace> stabilizers(const std::vector<Element>& zs, const Window& w) {
  std::vector<StabilizerSpace> out;
  for (const auto& z : zs) out.push_back(stabilizer_space(z, w));
  return out;
}

std::vector<Element> all_d(const Window& w) {
  std::vector<Element> out;
  for (int i = -w.outer(); i <= w.outer(); ++i) out.push_back(Element::d(i));
  return out;
}

Entry check_d_values_forced(const Window& w) {
  Entry e;
  const Window win(w.outer());
  const auto anchors = stabilizers({Element::d(0), Element::d(1)}, win);
  bool ok = true;
  Json nonzero = Json::array();
  for (int i = -win.outer(); i <= win.outer(); ++i) {
    const auto vals = attainable_values(Element::d(i), anchors);
    if (!vals.empty()) {
      ok = false;
      nonzero.push_back(i);
    }
  }
  e.computed = {{"bound", win.outer()}, {"indices_with_freedom", nonzero}};
  e.claim = {{"values_on_d", 0}};
  e.verdict = ok ? kVerifiedAtWindow : kViolation;
  return e;
}

std::vector<Element> sample_points(const Window& w, std::mt19937_64& rng, int random_count) {
  std::vector<Element> out{Element::h(2), Element::l(), Element::c(), Element::d(3),
                           Element::d(2) + Element::h(-1) + Element(Basis::l(), 3), composite_point(2)};
  for (int k = 0; k < random_count; ++k) {
    Element x;
    for (Basis b : Window::basis_up_to(3)) {
      if (rng() % 3 == 0) x.add_term(b, random_rational(rng, true));
    }
    if (x.is_zero()) x = Element::h(1);
    out.push_back(std::move(x));
  }
  std::erase_if(out, [&w](const Element& x) { return !w.contains(x); });
  return out;
}

Entry check_pattern(const Window& w, std::uint64_t seed) {
  Entry e;
  const Window win(w.outer());
  std::mt19937_64 rng(seed);
  const auto anchors = stabilizers(all_d(win), win);
  bool ok = true;
  for (const auto& x : sample_points(win, rng, 4)) {
    const auto vals = attainable_values(x, anchors);
    bool in_pattern = true;
    for (const auto& v : vals) in_pattern = in_pattern && shape_scalar(x, v).has_value();
    ok = ok && in_pattern;
    e.witnesses.push_back({{"x", fmt(x)}, {"pattern", fmt(shape_pattern(x))}, {"attainable_dim", vals.size()},
                           {"within_pattern", in_pattern}});
  }
  e.computed = {{"bound", win.outer()}, {"anchors", "d_i, |i| <= bound"}};
  e.claim = {{"value_in_span_of_pattern", true}};
  e.verdict = ok ? kVerifiedAtWindow : kViolation;
  return e;
}

Entry check_vanishing(const Window& w, std::uint64_t seed) {
  Entry e;
  constexpr int t = 2;
  const Window win(w.outer());
  const Element x0 = composite_point(t);
  if (!win.contains(x0)) {
    e.verdict = "out-of-scope";
    e.computed = {{"reason", "window too small for d[4] + h[2]"}};
    return e;
  }
  std::vector<Element> anchor_points = all_d(win);
  anchor_points.push_back(Element::h(t - 1));
  const auto step1 = attainable_values(x0, stabilizers(anchor_points, win));
  anchor_points.push_back(x0);
  const auto anchors2 = stabilizers(anchor_points, win);
  std::mt19937_64 rng(seed ^ 0x35ULL);
  std::vector<Element> ys;
  for (Basis b : win.basis()) ys.emplace_back(b);
  for (auto& y : sample_points(win, rng, 4)) ys.push_back(std::move(y));
  // Pairs with the zero-valued anchors may leave a multiple of the pattern
  // free at y; anything outside the pattern would contradict the pattern check.
  Json free_points = Json::array();
  bool outside_pattern = false;
  for (const auto& y : ys) {
    const auto vals = attainable_values(y, anchors2);
    if (vals.empty()) continue;
    Json basis = Json::array();
    for (const auto& v : vals) {
      basis.push_back(fmt(v));
      outside_pattern = outside_pattern || !shape_scalar(y, v).has_value();
    }
    free_points.push_back({{"y", fmt(y)}, {"attainable", basis}});
  }
  e.computed = {{"t", t},
                {"composite_attainable_dim", step1.size()},
                {"anchors", "d_i (|i| <= bound), h[t-1], d[2t] + h[t]"},
                {"points_checked", ys.size()},
                {"points_with_freedom", free_points}};
  e.claim = {{"composite_value", 0}, {"values_forced_by_anchor_pairs", true}};
  if (outside_pattern) {
    e.verdict = kViolation;
  } else {
    e.verdict = (step1.empty() && free_points.empty()) ? kVerifiedAtWindow : kDiscrepancy;
  }
  return e;
}

Entry check_recovery(const Window& w, std::uint64_t seed) {
  Entry e;
  constexpr int kRoundTrips = 10;
  constexpr int kPerturbed = 5;
  const Window win(w.outer());
  std::mt19937_64 rng(seed);
  int recovered = 0;
  int detected = 0;
  for (int k = 0; k < kRoundTrips; ++k) {
    const auto w0 = random_descriptor(rng);
    const auto o = descriptor_oracle(w0, win);
    const auto r = recover_derivation(o);
    bool same = r.verdict == Verdict::Derivation;
    for (Basis b : win.basis()) same = same && recovered_action(r, Element(b)) == apply_descriptor(w0, Element(b));
    recovered += same ? 1 : 0;
  }
  for (int k = 0; k < kPerturbed; ++k) {
    auto o = descriptor_oracle(random_descriptor(rng), win);
    const Element point = perturb_oracle(o, rng);
    const auto r = recover_derivation(o);
    const bool caught = r.verdict == Verdict::Violation && r.witness && *r.witness == point;
    detected += caught ? 1 : 0;
    e.witnesses.push_back({{"tampered", fmt(point)}, {"witness", r.witness ? fmt(*r.witness) : ""}});
  }
  e.computed = {{"round_trips", kRoundTrips}, {"recovered", recovered}, {"perturbed", kPerturbed}, {"detected", detected}};
  e.claim = {{"every_two_local_is_derivation", true}};
  e.verdict = (recovered == kRoundTrips && detected == kPerturbed) ? kVerifiedAtWindow : kViolation;
  return e;
}

using Check = std::function<Entry(const Window&, std::uint64_t)>;

const std::vector<std::pair<std::string, Check>>& checks() {
  static const std::vector<std::pair<std::string, Check>> table{
      {"jacobi", [](const Window&, std::uint64_t) { return check_jacobi(); }},
      {"2.1", [](const Window&, std::uint64_t) { return check_grading(); }},
      {"YY", [](const Window& w, std::uint64_t) { return check_graded_split(w); }},
      {"UU", [](const Window&, std::uint64_t) { return check_h1_subalgebra(); }},
      {"RR", [](const Window&, std::uint64_t) { return check_hom(false); }},
      {"PP", [](const Window&, std::uint64_t) { return check_hom(true); }},
      {"2.9", [](const Window& w, std::uint64_t) { return check_degree_zero(w); }},
      {"2.10", [](const Window& w, std::uint64_t) { return check_degree_minus_one(w); }},
      {"QQ", [](const Window& w, std::uint64_t) { return check_nonzero_degrees(w); }},
      {"PO", [](const Window& w, std::uint64_t) { return check_h1_degree_zero(w, Codomain::H); }},
      {"ZA", [](const Window& w, std::uint64_t) { return check_equivariant(w); }},
      {"VB", [](const Window& w, std::uint64_t) { return check_h1_degree_zero(w, Codomain::D); }},
      {"3.1", [](const Window& w, std::uint64_t) { return check_stabilizer_cases(w); }},
      {"3.2", [](const Window& w, std::uint64_t) { return check_d_values_forced(w); }},
      {"3.4", check_pattern},
      {"3.5", check_vanishing},
      {"3.6", check_recovery},
  };
  return table;
}

}  // namespace

int registry_degree_bound(const Window& w) {
  return std::max(0, w.outer() - w.interior() - kBufferMargin);
}

const std::vector<std::string>& registry_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, fn] : checks()) out.push_back(id);
    return out;
  }();
  return ids;
}

std::string canonical_registry_id(const std::string& id) {
  static const std::map<std::string, std::string> aliases{{"RF", "3.1"}, {"KM", "3.2"}};
  if (auto it = aliases.find(id); it != aliases.end()) return it->second;
  const auto& ids = registry_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) throw InvalidArgument("unknown lemma id '" + id + "'");
  return id;
}

Json run_lemma_registry(const Window& w, std::uint64_t seed, const std::vector<std::string>& only) {
  std::set<std::string> selected;
  for (const auto& id : only) selected.insert(canonical_registry_id(id));

  std::vector<std::pair<std::string, std::future<Entry>>> jobs;
  for (const auto& [id, fn] : checks()) {
    if (!selected.empty() && !selected.contains(id)) continue;
    jobs.emplace_back(id, std::async(std::launch::async, fn, w, seed));
  }
  Json results = Json::array();
  for (auto& [id, job] : jobs) {
    Json entry = Json::object();
    entry["lemma"] = id;
    try {
      Entry e = job.get();
      entry["verdict"] = e.verdict;
      entry["computed"] = std::move(e.computed);
      entry["paper_claim"] = std::move(e.claim);
      entry["witnesses"] = std::move(e.witnesses);
    } catch (const Error& ex) {
      entry["verdict"] = kViolation;
      entry["computed"] = {{"error", ex.what()}};
      entry["paper_claim"] = Json::object();
      entry["witnesses"] = Json::array();
    }
    results.push_back(std::move(entry));
  }
  Json out = Json::object();
  out["window"] = window_to_json(w);
  out["seed"] = seed;
  out["results"] = std::move(results);
  return out;
}

bool registry_has_violation(const Json& report) {
  for (const auto& r : report.at("results")) {
    if (r.at("verdict") == kViolation) return true;
  }
  return false;
}

}  // namespace mhv
