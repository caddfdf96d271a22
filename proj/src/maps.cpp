#include "mhv/maps.hpp"

#include "mhv/algebra.hpp"
#include "mhv/errors.hpp"

#include <algorithm>

namespace mhv {

std::string to_string(Codomain c) { return c == Codomain::H ? "H" : "D"; }

Codomain parse_codomain(std::string_view s) {
  if (s == "H" || s == "h") return Codomain::H;
  if (s == "D" || s == "d") return Codomain::D;
  throw InvalidArgument("codomain must be H or D, got '" + std::string(s) + "'");
}

namespace {

void require_in_window(const Window& w, Basis b) {
  if (!w.contains(b)) {
    throw WindowViolation("basis vector " + basis_key(b) + " is outside the window |index| <= " +
                          std::to_string(w.outer()));
  }
}

bool in_codomain(const Element& x, Codomain c) {
  if (c == Codomain::D) return true;
  return std::all_of(x.terms().begin(), x.terms().end(),
                     [](const auto& t) { return in_heisenberg(t.first); });
}

}  // namespace

GradedMap::GradedMap(int delta, Codomain codomain, Window window, Images images)
    : delta_(delta), codomain_(codomain), window_(window) {
  for (auto& [b, img] : images) {
    require_in_window(window_, b);
    if (img.is_zero()) continue;
    const Degree dg = degree(img);
    if (!dg.homogeneous() || *dg.value != degree(b) + delta_) {
      throw InvalidArgument("image of " + basis_key(b) + " is not homogeneous of degree " +
                            std::to_string(degree(b) + delta_) + ": " + format_element(img));
    }
    if (!in_codomain(img, codomain_)) {
      throw InvalidArgument("image of " + basis_key(b) + " leaves the codomain H: " + format_element(img));
    }
    images_.emplace(b, std::move(img));
  }
}

Element GradedMap::image(Basis b) const {
  require_in_window(window_, b);
  auto it = images_.find(b);
  return it == images_.end() ? Element{} : it->second;
}

Element apply_map(const GradedMap& m, const Element& x) {
  Element out;
  for (const auto& [b, c] : x.terms()) out.add_scaled(m.image(b), c);
  return out;
}

Element apply_D1(const Element& x) {
  Element out;
  for (const auto& [b, c] : x.terms()) {
    if (b.kind == Kind::H) out.add_term(b, c);
    if (b.kind == Kind::L) out.add_term(b, 2 * c);
  }
  return out;
}

Element apply_D2(const Element& x) {
  Element out;
  for (const auto& [b, c] : x.terms()) {
    if (b.kind == Kind::D) out.add_term(Basis::h(b.index), c);
    if (b.kind == Kind::H && b.index == -1) out.add_term(Basis::l(), c);
  }
  return out;
}

namespace {

template <typename F>
GradedMap tabulate(int delta, Codomain codomain, const Window& w, F&& f) {
  GradedMap::Images images;
  for (Basis b : w.basis()) images.emplace(b, f(Element(b)));
  return GradedMap(delta, codomain, w, std::move(images));
}

}  // namespace

GradedMap make_D1(const Window& w) { return tabulate(0, Codomain::H, w, apply_D1); }

GradedMap make_D2(const Window& w) { return tabulate(0, Codomain::H, w, apply_D2); }

GradedMap ad(const Element& u, const Window& w, Codomain codomain) {
  const Degree dg = degree(u);
  if (!dg.zero && !dg.homogeneous()) {
    throw InvalidArgument("ad(u) needs a homogeneous u; split " + format_element(u) +
                          " into homogeneous parts");
  }
  if (!in_codomain(u, codomain)) {
    throw InvalidArgument("ad(u) into H needs u in H, got " + format_element(u));
  }
  const int delta = dg.value.value_or(0);
  return tabulate(delta, codomain, w, [&u](const Element& x) { return bracket(x, u); });
}

Element derivation_defect(const GradedMap& m, Basis x, Basis y) {
  const Element xy = bracket(x, y);
  const Element ex(x);
  const Element ey(y);
  return apply_map(m, xy) - bracket(m.image(x), ey) - bracket(ex, m.image(y));
}

DerivationDescriptor& DerivationDescriptor::operator+=(const DerivationDescriptor& o) {
  u += o.u;
  alpha += o.alpha;
  beta += o.beta;
  return *this;
}

DerivationDescriptor operator*(const Rational& s, DerivationDescriptor a) {
  a.u *= s;
  a.alpha *= s;
  a.beta *= s;
  return a;
}

Element apply_descriptor(const DerivationDescriptor& w, const Element& x) {
  Element out = bracket(x, w.u);
  out.add_scaled(apply_D1(x), w.alpha);
  out.add_scaled(apply_D2(x), w.beta);
  return out;
}

Element apply_descriptor(const DerivationDescriptor& w, const Element& x, const Window& window) {
  for (const auto& [b, c] : x.terms()) require_in_window(window, b);
  for (const auto& [b, c] : w.u.terms()) require_in_window(window, b);
  return apply_descriptor(w, x);
}

Json graded_map_to_json(const GradedMap& m) {
  Json images = Json::object();
  for (const auto& [b, img] : m.images()) images[basis_key(b)] = element_to_json(img);
  Json out = Json::object();
  out["delta"] = m.delta();
  out["codomain"] = to_string(m.codomain());
  out["images"] = std::move(images);
  return out;
}

GradedMap graded_map_from_json(const Json& j, std::optional<Window> window) {
  GradedMap::Images images;
  int bound = 1;
  for (const auto& [key, value] : j.at("images").items()) {
    const Basis b = parse_basis_key(key);
    bound = std::max(bound, std::abs(b.index));
    images.emplace(b, element_from_json(value));
  }
  return GradedMap(j.at("delta").get<int>(), parse_codomain(j.at("codomain").get<std::string>()),
                   window.value_or(Window(bound)), std::move(images));
}

Json descriptor_to_json(const DerivationDescriptor& w) {
  Json out = Json::object();
  out["u"] = element_to_json(w.u);
  out["alpha"] = to_pq_string(w.alpha);
  out["beta"] = to_pq_string(w.beta);
  return out;
}

}  // namespace mhv
