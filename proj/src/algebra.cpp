#include "mhv/algebra.hpp"

namespace mhv {

namespace {

// r = k + 1/2 for h_{k+1/2}.
Rational half_index(int k) { return Rational(2 * k + 1, 2); }

Element bracket_dd(int m, int n) {
  Element out(Basis::d(m + n), Rational(m - n));
  if (m + n == 0) {
    const Integer mm(m);
    out.add_term(Basis::c(), Rational(mm * mm * mm - mm, 12));
  }
  return out;
}

Element bracket_dh(int m, int k) { return Element(Basis::h(m + k), -half_index(k)); }

Element bracket_hh(int k, int j) {
  if (k + j + 1 != 0) return {};
  return Element(Basis::l(), half_index(k));
}

}  // namespace

Element bracket(Basis x, Basis y) {
  if (x.kind == Kind::C || x.kind == Kind::L || y.kind == Kind::C || y.kind == Kind::L) return {};
  if (x.kind == Kind::D && y.kind == Kind::D) return bracket_dd(x.index, y.index);
  if (x.kind == Kind::D) return bracket_dh(x.index, y.index);
  if (y.kind == Kind::D) return -bracket_dh(y.index, x.index);
  return bracket_hh(x.index, y.index);
}

Element bracket(const Element& x, const Element& y) {
  Element out;
  for (const auto& [bx, cx] : x.terms()) {
    for (const auto& [by, cy] : y.terms()) out.add_scaled(bracket(bx, by), cx * cy);
  }
  return out;
}

Element jacobi_defect(const Element& x, const Element& y, const Element& z) {
  return bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
}

}  // namespace mhv
