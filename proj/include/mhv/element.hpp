#ifndef MHV_ELEMENT_HPP
#define MHV_ELEMENT_HPP

#include "mhv/rational.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mhv {

/// Basis of the algebra: d_m, h_{k+1/2} (stored by k), c and l.
/// The enumerator order is the canonical term order.
enum class Kind : std::uint8_t { D = 0, H = 1, C = 2, L = 3 };

struct Basis {
  Kind kind = Kind::D;
  int index = 0;  // m for D, k for H (h_{k+1/2}); always 0 for C and L

  static constexpr Basis d(int m) { return {Kind::D, m}; }
  static constexpr Basis h(int k) { return {Kind::H, k}; }
  static constexpr Basis c() { return {Kind::C, 0}; }
  static constexpr Basis l() { return {Kind::L, 0}; }

  friend constexpr auto operator<=>(const Basis&, const Basis&) = default;
};

/// Degree of a basis vector: deg d_m = m, deg h_{k+1/2} = k, deg c = 0, deg l = -1.
constexpr int degree(Basis b) {
  switch (b.kind) {
    case Kind::D:
    case Kind::H:
      return b.index;
    case Kind::C:
      return 0;
    case Kind::L:
      return -1;
  }
  return 0;
}

/// True for basis vectors of the twisted Heisenberg ideal (h_r and l).
constexpr bool in_heisenberg(Basis b) { return b.kind == Kind::H || b.kind == Kind::L; }

/// "d[m]", "h[k]", "c" or "l".
std::string basis_key(Basis b);

/// Finite linear combination of basis vectors, kept in canonical sparse form:
/// no stored coefficient is zero, so equality of elements is map equality.
class Element {
 public:
  using Terms = std::map<Basis, Rational>;

  Element() = default;
  explicit Element(Basis b, Rational coef = 1);

  static Element d(int m) { return Element(Basis::d(m)); }
  static Element h(int k) { return Element(Basis::h(k)); }
  static Element c() { return Element(Basis::c()); }
  static Element l() { return Element(Basis::l()); }

  const Terms& terms() const& noexcept { return terms_; }
  Terms terms() && { return std::move(terms_); }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Coefficient of `b` (zero if absent).
  Rational coeff(Basis b) const;

  /// this += coef * b, dropping the entry if it cancels.
  void add_term(Basis b, const Rational& coef);
  void add_scaled(const Element& other, const Rational& scale);

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(const Rational& s);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a) { return a *= Rational(-1); }
  friend Element operator*(const Rational& s, Element a) { return a *= s; }
  friend Element operator*(Element a, const Rational& s) { return a *= s; }
  friend bool operator==(const Element&, const Element&) = default;

  /// Lexicographic on the canonical term list; used to key maps by element.
  friend bool operator<(const Element& a, const Element& b);

  /// Largest |index| over the D and H terms (0 if there are none).
  int max_abs_index() const;

 private:
  Terms terms_;
};

struct Degree {
  std::optional<int> value;  // common degree of a nonzero homogeneous element
  bool zero = false;         // set for the zero element (value stays empty)

  bool homogeneous() const { return value.has_value(); }
};

Degree degree(const Element& x);

/// Truncation window: outer bound N and interior bound M, 1 <= M <= N.
class Window {
 public:
  Window(int outer, int interior);
  explicit Window(int outer) : Window(outer, outer) {}

  int outer() const noexcept { return outer_; }
  int interior() const noexcept { return interior_; }

  bool contains(Basis b) const { return within(b, outer_); }
  bool interior_contains(Basis b) const { return within(b, interior_); }
  bool contains(const Element& x) const;

  /// {d_m, h_k : |m|,|k| <= N} plus c and l, in canonical order.
  std::vector<Basis> basis() const { return basis_up_to(outer_); }
  std::vector<Basis> interior_basis() const { return basis_up_to(interior_); }

  static std::vector<Basis> basis_up_to(int bound);
  static bool within(Basis b, int bound);

  friend bool operator==(const Window&, const Window&) = default;

 private:
  int outer_;
  int interior_;
};

}  // namespace mhv

#endif  // MHV_ELEMENT_HPP
