#include "mhv/two_local.hpp"

#include "mhv/algebra.hpp"
#include "mhv/errors.hpp"

#include <algorithm>
#include <set>

namespace mhv {

using linalg::Index;
using linalg::QMatrix;
using linalg::QVector;

const Element& TwoLocalOracle::value(const Element& x) const {
  auto it = values.find(x);
  if (it == values.end()) throw InvalidArgument("oracle has no value at " + format_element(x));
  return it->second;
}

std::vector<TwoLocalViolation> verify_two_local(const TwoLocalOracle& o) {
  std::vector<TwoLocalViolation> out;
  for (const auto& [pair, w] : o.selectors) {
    const auto& [x, y] = pair;
    auto vx = o.values.find(x);
    auto vy = o.values.find(y);
    if (vx == o.values.end() || vy == o.values.end()) {
      const Element& missing = vx == o.values.end() ? x : y;
      out.push_back({x, y, missing, Element{}, "no value recorded at " + format_element(missing)});
      continue;
    }
    const Element dx = apply_descriptor(w, x) - vx->second;
    const Element dy = apply_descriptor(w, y) - vy->second;
    if (!dx.is_zero()) {
      out.push_back({x, y, x, dx, "selector disagrees with the value at " + format_element(x)});
    } else if (!dy.is_zero()) {
      out.push_back({x, y, y, dy, "selector disagrees with the value at " + format_element(y)});
    }
  }
  return out;
}

DescriptorCoordinates::DescriptorCoordinates(int bound) : bound_(bound) {
  if (bound < 0) throw InvalidArgument("descriptor coordinates need a nonnegative bound");
}

Index DescriptorCoordinates::a(int j) const {
  if (std::abs(j) > bound_) throw WindowViolation("a[" + std::to_string(j) + "] is outside the window");
  return j + bound_;
}

Index DescriptorCoordinates::b(int j) const {
  if (std::abs(j) > bound_) throw WindowViolation("b[" + std::to_string(j) + "] is outside the window");
  return (2 * bound_ + 1) + j + bound_;
}

std::string DescriptorCoordinates::name(Index i) const {
  const Index span = 2 * bound_ + 1;
  if (i < span) return "a[" + std::to_string(i - bound_) + "]";
  if (i < 2 * span) return "b[" + std::to_string(i - span - bound_) + "]";
  static const char* const tail[] = {"l1", "l2", "alpha", "beta"};
  return tail[i - 2 * span];
}

DerivationDescriptor DescriptorCoordinates::to_descriptor(const QVector& v) const {
  DerivationDescriptor w;
  for (int j = -bound_; j <= bound_; ++j) {
    w.u.add_term(Basis::d(j), -v(a(j)));
    w.u.add_term(Basis::h(j), -v(b(j)));
  }
  w.u.add_term(Basis::c(), -v(l1()));
  w.u.add_term(Basis::l(), -v(l2()));
  w.alpha = v(alpha());
  w.beta = v(beta());
  return w;
}

QVector DescriptorCoordinates::from_descriptor(const DerivationDescriptor& w) const {
  QVector v = QVector::Zero(size());
  for (const auto& [basis, c] : w.u.terms()) {
    switch (basis.kind) {
      case Kind::D:
        v(a(basis.index)) = -c;
        break;
      case Kind::H:
        v(b(basis.index)) = -c;
        break;
      case Kind::C:
        v(l1()) = -c;
        break;
      case Kind::L:
        v(l2()) = -c;
        break;
    }
  }
  v(alpha()) = w.alpha;
  v(beta()) = w.beta;
  return v;
}

std::map<Basis, QVector> DescriptorCoordinates::action_forms(const Element& x) const {
  std::map<Basis, QVector> forms;
  for (Index i = 0; i < size(); ++i) {
    QVector unit = QVector::Zero(size());
    unit(i) = 1;
    const Element img = apply_descriptor(to_descriptor(unit), x);
    for (const auto& [e, c] : img.terms()) {
      auto [it, fresh] = forms.try_emplace(e, QVector::Zero(size()));
      it->second(i) = c;
    }
  }
  return forms;
}

std::vector<DerivationDescriptor> StabilizerSpace::descriptors() const {
  std::vector<DerivationDescriptor> out;
  out.reserve(basis.size());
  for (const auto& v : basis) out.push_back(coords.to_descriptor(v));
  return out;
}

StabilizerSpace stabilizer_space(const std::vector<Element>& zs, const Window& w) {
  for (const auto& z : zs) {
    if (!w.contains(z)) {
      throw WindowViolation(format_element(z) + " is outside the window |index| <= " + std::to_string(w.outer()));
    }
  }
  StabilizerSpace out;
  out.coords = DescriptorCoordinates(w.outer());
  std::vector<QVector> rows;
  for (const auto& z : zs) {
    for (auto& [e, form] : out.coords.action_forms(z)) rows.push_back(std::move(form));
  }
  QMatrix m = QMatrix::Zero(static_cast<Index>(rows.size()), out.coords.size());
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Index>(i)) = rows[i].transpose();
  out.constraints = linalg::rref(m);
  out.basis = linalg::detail::kernel_from_rref<Rational>(out.constraints.reduced, out.constraints.pivots,
                                                         out.coords.size())
                  .vectors;
  for (const auto& d : out.descriptors()) {
    for (const auto& z : zs) {
      if (!apply_descriptor(d, z).is_zero()) {
        throw ConsistencyError("stabilizer basis descriptor does not annihilate " + format_element(z));
      }
    }
  }
  return out;
}

namespace {

// Coordinates of elements over a fixed, ordered list of basis vectors.
class ElementSpace {
 public:
  explicit ElementSpace(std::vector<Basis> basis) : basis_(std::move(basis)) {
    for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], static_cast<Index>(i));
  }

  Index size() const { return static_cast<Index>(basis_.size()); }

  QVector to_vector(const Element& x) const {
    QVector v = QVector::Zero(size());
    for (const auto& [b, c] : x.terms()) v(index_.at(b)) = c;
    return v;
  }

  Element to_element(const QVector& v) const {
    Element out;
    for (Index i = 0; i < v.size(); ++i) out.add_term(basis_[static_cast<std::size_t>(i)], v(i));
    return out;
  }

 private:
  std::vector<Basis> basis_;
  std::map<Basis, Index> index_;
};

std::vector<QVector> reduced_basis(const std::vector<QVector>& vs, Index length) {
  if (vs.empty()) return {};
  const auto r = linalg::rref(linalg::columns(vs, length).transpose());
  std::vector<QVector> out;
  for (Index k = 0; k < r.rank; ++k) out.push_back(r.reduced.row(k).transpose());
  return out;
}

std::vector<QVector> intersect(const std::vector<QVector>& u, const std::vector<QVector>& w, Index length) {
  if (u.empty() || w.empty()) return {};
  QMatrix m(length, static_cast<Index>(u.size() + w.size()));
  for (std::size_t i = 0; i < u.size(); ++i) m.col(static_cast<Index>(i)) = u[i];
  for (std::size_t i = 0; i < w.size(); ++i) m.col(static_cast<Index>(u.size() + i)) = w[i];
  std::vector<QVector> out;
  for (const auto& k : linalg::kernel_basis(m).vectors) {
    QVector v = QVector::Zero(length);
    for (std::size_t i = 0; i < u.size(); ++i) v += k(static_cast<Index>(i)) * u[i];
    out.push_back(std::move(v));
  }
  return reduced_basis(out, length);
}

}  // namespace

std::vector<Element> attainable_values(const Element& x, const std::vector<Element>& anchors,
                                       const Window& w) {
  std::vector<StabilizerSpace> stabs;
  for (const auto& z : anchors) stabs.push_back(stabilizer_space(z, w));
  return attainable_values(x, stabs);
}

std::vector<Element> attainable_values(const Element& x, const std::vector<StabilizerSpace>& anchors) {
  if (anchors.empty()) throw InvalidArgument("attainable_values needs at least one anchor");
  std::vector<std::vector<Element>> images;
  std::set<Basis> support;
  for (const auto& stab : anchors) {
    auto& imgs = images.emplace_back();
    for (const auto& s : stab.descriptors()) {
      Element v = apply_descriptor(s, x);
      for (const auto& [b, c] : v.terms()) support.insert(b);
      imgs.push_back(std::move(v));
    }
  }
  const ElementSpace space(std::vector<Basis>(support.begin(), support.end()));
  auto vectors_of = [&space](const std::vector<Element>& es) {
    std::vector<QVector> out;
    for (const auto& e : es) out.push_back(space.to_vector(e));
    return out;
  };
  std::vector<QVector> current = reduced_basis(vectors_of(images.front()), space.size());
  for (std::size_t i = 1; i < images.size() && !current.empty(); ++i) {
    current = intersect(current, reduced_basis(vectors_of(images[i]), space.size()), space.size());
  }
  std::vector<Element> out;
  for (const auto& v : current) out.push_back(space.to_element(v));
  return out;
}

Element shape_pattern(const Element& x) {
  Element out;
  for (const auto& [b, c] : x.terms()) {
    if (b.kind == Kind::H) out.add_term(b, c);
    if (b.kind == Kind::L) out.add_term(b, 2 * c);
  }
  return out;
}

std::optional<Rational> shape_scalar(const Element& x, const Element& value) {
  const Element pattern = shape_pattern(x);
  if (pattern.is_zero()) return value.is_zero() ? std::optional<Rational>(Rational(0)) : std::nullopt;
  const auto& [lead, lead_coef] = *pattern.terms().begin();
  const Rational lambda = value.coeff(lead) / lead_coef;
  if (value != lambda * pattern) return std::nullopt;
  return lambda;
}

std::optional<Rational> check_pattern_shape(const TwoLocalOracle& o, const Element& x) {
  for (const auto& [point, value] : o.values) {
    if (point.size() == 1 && point.terms().begin()->first.kind == Kind::D && !value.is_zero()) {
      throw InvalidArgument("shape check needs a map vanishing on every d_i, but the value at " +
                            format_element(point) + " is " + format_element(value));
    }
  }
  return shape_scalar(x, o.value(x));
}

namespace {

// Recorded points in report order: window basis first, then other points.
std::vector<Element> ordered_points(const TwoLocalOracle& o) {
  std::vector<Element> out;
  for (Basis b : o.window.basis()) {
    if (o.values.contains(Element(b))) out.emplace_back(b);
  }
  for (const auto& [point, value] : o.values) {
    if (point.size() != 1 || point.terms().begin()->second != 1) out.push_back(point);
  }
  return out;
}

DerivationDescriptor fit_base(const TwoLocalOracle& o) {
  const DescriptorCoordinates coords(o.window.outer());
  std::vector<QVector> rows;
  std::vector<Rational> rhs;
  for (const Element& p : {Element::d(0), Element::d(1)}) {
    const Element& value = o.value(p);
    auto forms = coords.action_forms(p);
    std::set<Basis> outputs;
    for (const auto& [e, f] : forms) outputs.insert(e);
    for (const auto& [e, c] : value.terms()) outputs.insert(e);
    for (Basis e : outputs) {
      auto it = forms.find(e);
      rows.push_back(it == forms.end() ? QVector(QVector::Zero(coords.size())) : it->second);
      rhs.push_back(value.coeff(e));
    }
  }
  const Index n = coords.size();
  QMatrix aug(static_cast<Index>(rows.size()), n + 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    aug.row(static_cast<Index>(i)).head(n) = rows[i].transpose();
    aug(static_cast<Index>(i), n) = rhs[i];
  }
  const auto r = linalg::rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == n) {
    throw NotTwoLocal("no derivation reproduces the values at d[0] and d[1]: " +
                      format_element(o.value(Element::d(0))) + " and " + format_element(o.value(Element::d(1))));
  }
  QVector particular = QVector::Zero(n);
  for (std::size_t k = 0; k < r.pivots.size(); ++k) {
    particular(r.pivots[k]) = r.reduced(static_cast<Index>(k), n);
  }
  const DerivationDescriptor base = coords.to_descriptor(particular);
  for (const Element& p : {Element::d(0), Element::d(1)}) {
    if (apply_descriptor(base, p) != o.value(p)) throw ConsistencyError("fitted descriptor misses " + format_element(p));
  }
  return base;
}

}  // namespace

RecoveryReport recover_derivation(const TwoLocalOracle& o, int t) {
  if (t == 0 || t == 1) throw InvalidArgument("t must not be 0 or 1");
  const Element anchor = Element::h(t - 1);
  for (const Element& p : {Element::d(0), Element::d(1), anchor}) {
    if (!o.window.contains(p)) throw InvalidArgument(format_element(p) + " is outside the oracle window");
  }
  for (Basis b : o.window.basis()) o.value(Element(b));

  RecoveryReport out;
  out.t = t;
  out.base = fit_base(o);
  auto residual = [&](const Element& x) { return o.value(x) - apply_descriptor(out.base, x); };

  const Element at_anchor = residual(anchor);
  const auto lambda = shape_scalar(anchor, at_anchor);
  if (!lambda) {
    out.verdict = Verdict::Violation;
    out.witness = anchor;
    out.witness_residual = at_anchor;
    out.violation_kind = "shape";
    out.residual_max_support = static_cast<int>(at_anchor.size());
    return out;
  }
  out.lambda = *lambda;

  out.verdict = Verdict::Derivation;
  for (const Element& x : ordered_points(o)) {
    const Element r = residual(x) - out.lambda * apply_D1(x);
    out.residual_max_support = std::max(out.residual_max_support, static_cast<int>(r.size()));
    if (!r.is_zero() && !out.witness) {
      out.verdict = Verdict::Violation;
      out.witness = x;
      out.witness_residual = r;
      out.violation_kind = "residual";
    }
  }
  return out;
}

Element recovered_action(const RecoveryReport& r, const Element& x) {
  Element out = apply_descriptor(r.base, x);
  out.add_scaled(apply_D1(x), r.lambda);
  return out;
}

Element composite_point(int t) { return Element::d(2 * t) + Element::h(t); }

Rational random_rational(std::mt19937_64& rng, bool nonzero) {
  long p = nonzero ? static_cast<long>(rng() % 9) + 1 : static_cast<long>(rng() % 19) - 9;
  if (nonzero && rng() % 2 == 0) p = -p;
  const long q = static_cast<long>(rng() % 9) + 1;
  return Rational(p) / Rational(q);
}

DerivationDescriptor random_descriptor(std::mt19937_64& rng) {
  DerivationDescriptor w;
  for (Basis b : Window::basis_up_to(3)) {
    if (rng() % 2 == 0) w.u.add_term(b, random_rational(rng, true));
  }
  w.alpha = random_rational(rng);
  w.beta = random_rational(rng);
  return w;
}

TwoLocalOracle descriptor_oracle(const DerivationDescriptor& w, const Window& window, int t) {
  TwoLocalOracle o;
  o.window = window;
  std::vector<Element> points;
  for (Basis b : window.basis()) points.emplace_back(b);
  const Element composite = composite_point(t);
  if (window.contains(composite)) points.push_back(composite);
  for (const auto& x : points) o.values.emplace(x, apply_descriptor(w, x, window));
  for (const Element& a : {Element::d(0), Element::d(1), Element::h(t - 1)}) {
    if (!window.contains(a)) continue;
    for (const auto& x : points) {
      if (x != a) o.selectors.emplace(std::pair{a, x}, w);
    }
  }
  return o;
}

TwoLocalOracle with_stabilizer_noise(TwoLocalOracle o, std::mt19937_64& rng) {
  for (auto& [pair, w] : o.selectors) {
    const StabilizerSpace s = stabilizer_space({pair.first, pair.second}, o.window);
    QVector noise = QVector::Zero(s.coords.size());
    for (const auto& v : s.basis) noise += random_rational(rng) * v;
    w += s.coords.to_descriptor(noise);
  }
  return o;
}

Element perturb_oracle(TwoLocalOracle& o, std::mt19937_64& rng, int t) {
  const std::set<Element> fixed{Element::d(0), Element::d(1), Element::h(t - 1)};
  std::vector<Element> candidates;
  for (const auto& x : ordered_points(o)) {
    if (!fixed.contains(x)) candidates.push_back(x);
  }
  if (candidates.empty()) throw InvalidArgument("oracle has no point to perturb");
  const Element point = candidates[rng() % candidates.size()];
  const std::vector<Basis> basis = o.window.basis();
  const Basis target = basis[rng() % basis.size()];
  o.values.at(point).add_term(target, random_rational(rng, true));
  return point;
}

Json oracle_to_json(const TwoLocalOracle& o) {
  Json values = Json::object();
  for (const auto& x : ordered_points(o)) values[format_element(x)] = element_to_json(o.values.at(x));
  Json selectors = Json::array();
  for (const auto& [pair, w] : o.selectors) {
    Json s = Json::object();
    s["x"] = format_element(pair.first);
    s["y"] = format_element(pair.second);
    s["u"] = element_to_json(w.u);
    s["alpha"] = to_pq_string(w.alpha);
    s["beta"] = to_pq_string(w.beta);
    selectors.push_back(std::move(s));
  }
  Json out = Json::object();
  out["window"] = window_to_json(o.window);
  out["values"] = std::move(values);
  out["selectors"] = std::move(selectors);
  return out;
}

TwoLocalOracle oracle_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("window") || !j.contains("values")) {
    throw InvalidArgument("oracle JSON needs \"window\" and \"values\"");
  }
  TwoLocalOracle o;
  o.window = window_from_json(j.at("window"));
  if (!j.at("values").is_object()) throw InvalidArgument("oracle \"values\" must be an object");
  for (const auto& [key, value] : j.at("values").items()) {
    Element x = parse_element(key);
    if (!o.window.contains(x)) throw WindowViolation("oracle point " + key + " is outside its window");
    o.values.insert_or_assign(std::move(x), element_from_json(value));
  }
  if (j.contains("selectors")) {
    if (!j.at("selectors").is_array()) throw InvalidArgument("oracle \"selectors\" must be an array");
    for (const auto& s : j.at("selectors")) {
      if (!s.is_object() || !s.contains("x") || !s.contains("y")) {
        throw InvalidArgument("selector needs \"x\" and \"y\"");
      }
      DerivationDescriptor w;
      if (s.contains("u")) w.u = element_from_json(s.at("u"));
      if (s.contains("alpha")) w.alpha = rational_from_json(s.at("alpha"));
      if (s.contains("beta")) w.beta = rational_from_json(s.at("beta"));
      o.selectors.insert_or_assign(
          std::pair{parse_element(s.at("x").get<std::string>()), parse_element(s.at("y").get<std::string>())},
          std::move(w));
    }
  }
  return o;
}

Json recovery_to_json(const RecoveryReport& r) {
  Json out = Json::object();
  out["t"] = r.t;
  out["base"] = descriptor_to_json(r.base);
  out["lambda"] = to_pq_string(r.lambda);
  out["verdict"] = r.verdict == Verdict::Derivation ? "derivation" : "violation";
  out["residual_max_support"] = r.residual_max_support;
  if (r.witness) {
    Json w = Json::object();
    w["point"] = format_element(*r.witness);
    w["kind"] = r.violation_kind;
    w["residual"] = element_to_json(r.witness_residual);
    out["witness"] = std::move(w);
  }
  return out;
}

}  // namespace mhv
