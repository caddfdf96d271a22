#include "mhv/element.hpp"

#include "mhv/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace mhv {

std::string basis_key(Basis b) {
  switch (b.kind) {
    case Kind::D:
      return "d[" + std::to_string(b.index) + "]";
    case Kind::H:
      return "h[" + std::to_string(b.index) + "]";
    case Kind::C:
      return "c";
    case Kind::L:
      return "l";
  }
  return {};
}

Element::Element(Basis b, Rational coef) { add_term(b, coef); }

Rational Element::coeff(Basis b) const {
  auto it = terms_.find(b);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Element::add_term(Basis b, const Rational& coef) {
  if (coef.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(b, coef);
  if (inserted) return;
  it->second += coef;
  if (it->second.is_zero()) terms_.erase(it);
}

void Element::add_scaled(const Element& other, const Rational& scale) {
  if (scale.is_zero()) return;
  for (const auto& [b, c] : other.terms_) add_term(b, c * scale);
}

Element& Element::operator+=(const Element& other) {
  for (const auto& [b, c] : other.terms_) add_term(b, c);
  return *this;
}

Element& Element::operator-=(const Element& other) {
  for (const auto& [b, c] : other.terms_) add_term(b, -c);
  return *this;
}

Element& Element::operator*=(const Rational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [b, c] : terms_) c *= s;
  return *this;
}

bool operator<(const Element& a, const Element& b) {
  return std::lexicographical_compare(a.terms_.begin(), a.terms_.end(), b.terms_.begin(),
                                      b.terms_.end(), [](const auto& x, const auto& y) {
                                        if (x.first != y.first) return x.first < y.first;
                                        return x.second < y.second;
                                      });
}

int Element::max_abs_index() const {
  int m = 0;
  for (const auto& [b, c] : terms_) m = std::max(m, std::abs(b.index));
  return m;
}

Degree degree(const Element& x) {
  Degree out;
  if (x.is_zero()) {
    out.zero = true;
    return out;
  }
  const int first = degree(x.terms().begin()->first);
  for (const auto& [b, c] : x.terms()) {
    if (degree(b) != first) return out;
  }
  out.value = first;
  return out;
}

Window::Window(int outer, int interior) : outer_(outer), interior_(interior) {
  if (interior < 1) throw InvalidArgument("window interior must be positive");
  if (outer < interior) throw InvalidArgument("window interior exceeds outer bound");
}

bool Window::within(Basis b, int bound) {
  return (b.kind == Kind::C || b.kind == Kind::L) || std::abs(b.index) <= bound;
}

bool Window::contains(const Element& x) const {
  return std::all_of(x.terms().begin(), x.terms().end(),
                     [this](const auto& t) { return contains(t.first); });
}

std::vector<Basis> Window::basis_up_to(int bound) {
  std::vector<Basis> out;
  out.reserve(4 * static_cast<std::size_t>(bound) + 4);
  for (int m = -bound; m <= bound; ++m) out.push_back(Basis::d(m));
  for (int k = -bound; k <= bound; ++k) out.push_back(Basis::h(k));
  out.push_back(Basis::c());
  out.push_back(Basis::l());
  return out;
}

}  // namespace mhv
