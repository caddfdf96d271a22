#include "mhv/derivation_solver.hpp"

#include "mhv/algebra.hpp"
#include "mhv/errors.hpp"

#include <cstdlib>

namespace mhv {

using linalg::EchelonBuilder;
using linalg::Index;
using linalg::QMatrix;
using linalg::QVector;

void check_buffer(const Window& w, int delta) {
  const int need = w.interior() + std::abs(delta) + kBufferMargin;
  if (w.outer() < need) {
    throw BufferViolation("outer window " + std::to_string(w.outer()) + " too small for interior " +
                          std::to_string(w.interior()) + " and degree " + std::to_string(delta) +
                          " (need >= " + std::to_string(need) + ")");
  }
}

std::vector<Basis> codomain_component(Codomain codomain, int g) {
  std::vector<Basis> out;
  if (codomain == Codomain::D) out.push_back(Basis::d(g));
  out.push_back(Basis::h(g));
  if (codomain == Codomain::D && g == 0) out.push_back(Basis::c());
  if (g == -1) out.push_back(Basis::l());
  return out;
}

std::vector<Basis> algebra_component(int g) { return codomain_component(Codomain::D, g); }

InteriorCoordinates::InteriorCoordinates(Codomain codomain, int delta, int bound)
    : codomain_(codomain), delta_(delta), window_(bound) {
  for (Basis s : Window::basis_up_to(bound)) {
    for (Basis t : codomain_component(codomain, degree(s) + delta)) {
      index_.emplace(std::pair{s, t}, static_cast<Index>(vars_.size()));
      vars_.emplace_back(s, t);
    }
  }
}

std::optional<Index> InteriorCoordinates::index_of(Basis source, Basis target) const {
  auto it = index_.find({source, target});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

QVector InteriorCoordinates::to_vector(const GradedMap& m) const {
  if (m.delta() != delta_) throw InvalidArgument("map degree does not match the coordinates");
  QVector v = QVector::Zero(size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    v(static_cast<Index>(i)) = m.image(vars_[i].first).coeff(vars_[i].second);
  }
  return v;
}

GradedMap InteriorCoordinates::to_map(const QVector& v) const {
  GradedMap::Images images;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const Rational& c = v(static_cast<Index>(i));
    if (!c.is_zero()) images[vars_[i].first].add_term(vars_[i].second, c);
  }
  return GradedMap(delta_, codomain_, window_, std::move(images));
}

namespace {

using SparseRow = EchelonBuilder<Rational>::SparseRow;
// One linear form (in the unknowns) per output basis vector of an equation.
using Forms = std::map<Basis, SparseRow>;

// Unknown layout over the outer window: source -> [(target, unknown index)].
struct Layout {
  std::map<Basis, std::vector<std::pair<Basis, Index>>> by_source;
  Index count = 0;
};

Layout make_layout(Codomain codomain, int delta, int bound) {
  Layout out;
  for (Basis s : Window::basis_up_to(bound)) {
    auto& slot = out.by_source[s];
    for (Basis t : codomain_component(codomain, degree(s) + delta)) slot.emplace_back(t, out.count++);
  }
  return out;
}

// forms += coef * m(b)
void add_image(Forms& forms, const Layout& layout, Basis b, const Rational& coef) {
  for (const auto& [t, var] : layout.by_source.at(b)) forms[t].emplace_back(var, coef);
}

// forms += coef * [m(x), y]
void add_left(Forms& forms, const Layout& layout, Basis x, Basis y, const Rational& coef) {
  for (const auto& [t, var] : layout.by_source.at(x)) {
    for (const Element br = bracket(t, y); const auto& [e, ce] : br.terms()) forms[e].emplace_back(var, coef * ce);
  }
}

// forms += coef * [x, m(y)]
void add_right(Forms& forms, const Layout& layout, Basis x, Basis y, const Rational& coef) {
  for (const auto& [t, var] : layout.by_source.at(y)) {
    for (const Element br = bracket(x, t); const auto& [e, ce] : br.terms()) forms[e].emplace_back(var, coef * ce);
  }
}

// Canonical (RREF) basis of the solution space restricted to the interior.
std::vector<QVector> solve_restricted(Codomain codomain, int delta, int outer, int interior) {
  const Layout layout = make_layout(codomain, delta, outer);
  EchelonBuilder<Rational> system(layout.count);
  const std::vector<Basis> basis = Window::basis_up_to(outer);
  const Rational minus_one(-1);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      const Basis x = basis[i];
      const Basis y = basis[j];
      const Element z = bracket(x, y);
      bool inside = true;
      for (const auto& [b, c] : z.terms()) inside = inside && Window::within(b, outer);
      if (!inside) continue;
      Forms forms;
      for (const auto& [b, c] : z.terms()) add_image(forms, layout, b, c);
      add_left(forms, layout, x, y, minus_one);
      add_right(forms, layout, x, y, minus_one);
      for (auto& [e, row] : forms) system.add_row(std::move(row));
    }
  }
  const auto kernel = system.kernel();

  const InteriorCoordinates coords(codomain, delta, interior);
  std::vector<Index> proj(static_cast<std::size_t>(coords.size()));
  for (std::size_t k = 0; k < coords.vars().size(); ++k) {
    const auto& [s, t] = coords.vars()[k];
    for (const auto& [target, var] : layout.by_source.at(s)) {
      if (target == t) proj[k] = var;
    }
  }
  EchelonBuilder<Rational> restricted(coords.size());
  for (const auto& v : kernel.vectors) {
    QVector p(coords.size());
    for (std::size_t k = 0; k < proj.size(); ++k) p(static_cast<Index>(k)) = v(proj[k]);
    restricted.add_row(p);
  }
  const auto r = restricted.reduced();
  std::vector<QVector> out;
  for (Index k = 0; k < r.rank; ++k) out.push_back(r.reduced.row(k).transpose());
  return out;
}

std::vector<QVector> vectors_of(const InteriorCoordinates& coords, const std::vector<GradedMap>& maps) {
  std::vector<QVector> out;
  out.reserve(maps.size());
  for (const auto& m : maps) out.push_back(coords.to_vector(m));
  return out;
}

// Residual of v modulo the row space of an RREF (pivots cleared).
QVector reduce_modulo(QVector v, const linalg::RrefResult<Rational>& r) {
  for (std::size_t k = 0; k < r.pivots.size(); ++k) {
    const Rational f = v(r.pivots[k]);
    if (!f.is_zero()) v -= f * r.reduced.row(static_cast<Index>(k)).transpose();
  }
  return v;
}

linalg::RrefResult<Rational> rref_of_rows(const std::vector<QVector>& rows, Index cols) {
  QMatrix m(static_cast<Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Index>(i)) = rows[i].transpose();
  return linalg::rref(m);
}

GradedMap as_codomain(const GradedMap& m, Codomain c) {
  return GradedMap(m.delta(), c, m.window(), m.images());
}

MembershipVerdict membership_of(const QVector& v, const std::vector<QVector>& space,
                                const std::vector<QVector>& inner) {
  MembershipVerdict out;
  out.in_space = linalg::membership(v, space).has_value();
  if (auto coords = linalg::membership(v, inner)) {
    out.in_inner = true;
    for (Index i = 0; i < coords->size(); ++i) out.inner_coordinates.push_back((*coords)(i));
  }
  return out;
}

}  // namespace

std::vector<GradedMap> inner_space(Codomain codomain, int delta, const Window& w) {
  check_buffer(w, delta);
  const Window interior(w.interior());
  std::vector<GradedMap> out;
  for (Basis v : codomain_component(codomain, delta)) {
    GradedMap m = ad(Element(v), interior, codomain);
    if (!m.images().empty()) out.push_back(std::move(m));
  }
  return out;
}

std::optional<std::pair<Basis, Basis>> find_interior_defect(const GradedMap& m) {
  const std::vector<Basis> basis = m.window().basis();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if (!m.window().contains(bracket(basis[i], basis[j]))) continue;
      if (!derivation_defect(m, basis[i], basis[j]).is_zero()) return std::pair{basis[i], basis[j]};
    }
  }
  return std::nullopt;
}

SolveReport solve_graded_derivations(Codomain codomain, int delta, const Window& w) {
  check_buffer(w, delta);
  SolveReport out;
  out.delta = delta;
  out.codomain = codomain;
  out.window = w;

  const InteriorCoordinates coords(codomain, delta, w.interior());
  const std::vector<QVector> space = solve_restricted(codomain, delta, w.outer(), w.interior());
  const std::vector<QVector> inner = vectors_of(coords, inner_space(codomain, delta, w));

  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (!linalg::membership(inner[i], space)) {
      throw ConsistencyError("inner map " + std::to_string(i) + " of degree " + std::to_string(delta) +
                             " does not satisfy the assembled Leibniz system");
    }
  }
  out.space_dim = static_cast<int>(space.size());
  out.inner_dim = static_cast<int>(linalg::rank_of(inner));
  out.outer_dim = out.space_dim - out.inner_dim;

  for (const auto& v : space) {
    GradedMap m = coords.to_map(v);
    if (auto bad = find_interior_defect(m)) {
      throw ConsistencyError("solution violates Leibniz on (" + basis_key(bad->first) + ", " +
                             basis_key(bad->second) + ")");
    }
    out.solutions.push_back(std::move(m));
  }

  // Coset representatives: reduce each solution against the inner span (and
  // the representatives chosen so far), then scale the first nonzero to one.
  std::vector<QVector> span = inner;
  for (const auto& s : space) {
    const auto r = rref_of_rows(span, coords.size());
    QVector residual = span.empty() ? s : reduce_modulo(s, r);
    Index lead = -1;
    for (Index i = 0; i < residual.size() && lead < 0; ++i) {
      if (!residual(i).is_zero()) lead = i;
    }
    if (lead < 0) continue;
    residual /= Rational(residual(lead));
    out.representatives.push_back(coords.to_map(residual));
    span.push_back(std::move(residual));
  }
  if (static_cast<int>(out.representatives.size()) != out.outer_dim) {
    throw ConsistencyError("coset representative count does not match the quotient dimension");
  }

  const auto wider = solve_restricted(codomain, delta, w.outer() + 2, w.interior());
  out.stable = wider == space;
  return out;
}

H1Report h1_component(Codomain codomain, int delta, const Window& w) {
  H1Report out;
  out.report = solve_graded_derivations(codomain, delta, w);
  out.inner = inner_space(codomain, delta, w);
  if (delta == 0) {
    const InteriorCoordinates coords(codomain, delta, w.interior());
    std::vector<QVector> space = vectors_of(coords, out.report.solutions);
    std::vector<QVector> inner = vectors_of(coords, out.inner);
    const Window interior(w.interior());
    out.d1 = membership_of(coords.to_vector(as_codomain(make_D1(interior), codomain)), space, inner);
    out.d2 = membership_of(coords.to_vector(as_codomain(make_D2(interior), codomain)), space, inner);
  }
  return out;
}

namespace {

// Dense system over unknowns (source, target) for maps between finite components.
struct FiniteSystem {
  std::vector<std::pair<Basis, Basis>> unknowns;
  std::map<std::pair<Basis, Basis>, Index> index;
  std::vector<SparseRow> rows;

  FiniteSystem(const std::vector<Basis>& sources, const std::vector<Basis>& targets) {
    for (Basis s : sources) {
      for (Basis t : targets) {
        index.emplace(std::pair{s, t}, static_cast<Index>(unknowns.size()));
        unknowns.emplace_back(s, t);
      }
    }
  }

  Index var(Basis s, Basis t) const { return index.at({s, t}); }

  QMatrix matrix() const {
    QMatrix m = QMatrix::Zero(static_cast<Index>(rows.size()), static_cast<Index>(unknowns.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (const auto& [j, v] : rows[i]) m(static_cast<Index>(i), j) += v;
    }
    return m;
  }

  ComponentMap to_map(const QVector& v) const {
    ComponentMap out;
    for (std::size_t i = 0; i < unknowns.size(); ++i) {
      out[unknowns[i].first].add_term(unknowns[i].second, v(static_cast<Index>(i)));
    }
    return out;
  }
};

const std::vector<Basis>& degree_zero_basis() {
  static const std::vector<Basis> basis = algebra_component(0);  // d_0, h_{1/2}, c
  return basis;
}

}  // namespace

HomResult hom_D0(int m, int n) {
  const std::vector<Basis> sources = algebra_component(m);
  const std::vector<Basis> targets = codomain_component(Codomain::H, n);
  FiniteSystem sys(sources, targets);
  for (Basis x : degree_zero_basis()) {
    for (Basis y : sources) {
      Forms forms;
      // [x, f(y)]
      for (Basis t : targets) {
        for (const Element br = bracket(x, t); const auto& [e, ce] : br.terms()) forms[e].emplace_back(sys.var(y, t), ce);
      }
      // - f([x, y])
      for (const Element br = bracket(x, y); const auto& [b, cb] : br.terms()) {
        for (Basis t : targets) forms[t].emplace_back(sys.var(b, t), -cb);
      }
      for (auto& [e, row] : forms) sys.rows.push_back(std::move(row));
    }
  }
  const auto kernel = linalg::kernel_basis(sys.matrix());
  HomResult out;
  out.dim = static_cast<int>(kernel.vectors.size());
  for (const auto& v : kernel.vectors) out.basis.push_back(sys.to_map(v));
  return out;
}

H1D0Result h1_D0_Hn(int n) {
  const std::vector<Basis>& sources = degree_zero_basis();
  const std::vector<Basis> targets = codomain_component(Codomain::H, n);
  FiniteSystem sys(sources, targets);
  for (std::size_t i = 0; i < sources.size(); ++i) {
    for (std::size_t j = i + 1; j < sources.size(); ++j) {
      const Basis x = sources[i];
      const Basis y = sources[j];
      Forms forms;
      // phi([x, y]) - [x, phi(y)] - [phi(x), y]
      for (const Element br = bracket(x, y); const auto& [b, cb] : br.terms()) {
        for (Basis t : targets) forms[t].emplace_back(sys.var(b, t), cb);
      }
      for (Basis t : targets) {
        for (const Element br = bracket(x, t); const auto& [e, ce] : br.terms()) forms[e].emplace_back(sys.var(y, t), -ce);
        for (const Element br = bracket(t, y); const auto& [e, ce] : br.terms()) forms[e].emplace_back(sys.var(x, t), -ce);
      }
      for (auto& [e, row] : forms) sys.rows.push_back(std::move(row));
    }
  }
  const auto kernel = linalg::kernel_basis(sys.matrix());

  std::vector<QVector> inner;
  for (Basis v : targets) {
    QVector vec = QVector::Zero(static_cast<Index>(sys.unknowns.size()));
    for (Basis x : sources) {
      for (const Element br = bracket(x, v); const auto& [e, ce] : br.terms()) vec(sys.var(x, e)) = ce;
    }
    bool nonzero = false;
    for (Index i = 0; i < vec.size(); ++i) nonzero = nonzero || !vec(i).is_zero();
    if (nonzero) inner.push_back(std::move(vec));
  }

  H1D0Result out;
  out.der_dim = static_cast<int>(kernel.vectors.size());
  out.dim = static_cast<int>(linalg::quotient_dim(kernel.vectors, inner));
  out.inner_dim = static_cast<int>(linalg::rank_of(inner));
  for (const auto& v : kernel.vectors) out.derivations.push_back(sys.to_map(v));

  if (n != 0 && n != -1) {
    const Rational half_index(2 * n + 1, 2);
    for (const auto& phi : out.derivations) {
      InnerWitness w;
      auto it = phi.find(Basis::d(0));
      w.a = it == phi.end() ? Rational(0) : it->second.coeff(Basis::h(n));
      w.e = Element(Basis::h(n), -w.a / half_index);
      w.reproduces = true;
      for (Basis x : sources) {
        auto img = phi.find(x);
        const Element value = img == phi.end() ? Element{} : img->second;
        w.reproduces = w.reproduces && value == bracket(Element(x), w.e);
      }
      out.witnesses.push_back(std::move(w));
    }
  }
  return out;
}

EquivariantSystem equivariant_hom_system(const Window& w) {
  const int bound = w.outer();
  std::vector<Basis> sources;
  for (int m = -bound; m <= bound; ++m) sources.push_back(Basis::h(m));
  std::vector<Basis> targets;
  for (int k = -bound; k <= bound; ++k) targets.push_back(Basis::d(k));
  targets.push_back(Basis::c());

  FiniteSystem sys(sources, targets);
  EquivariantSystem out;
  auto in_target = [bound](Basis e) { return e.kind == Kind::C || (e.kind == Kind::D && std::abs(e.index) <= bound); };
  for (int shift : {0, 1}) {
    const Basis x = Basis::d(shift);
    for (Basis h : sources) {
      // [x, h] = coef * h'; the equation needs f(h') inside the window.
      const Element xh = bracket(x, h);
      const Basis image_source = xh.terms().begin()->first;
      if (!Window::within(image_source, bound)) continue;
      const Rational coef = xh.terms().begin()->second;
      Forms forms;
      for (Basis t : targets) {
        for (const Element br = bracket(x, t); const auto& [e, ce] : br.terms()) {
          if (in_target(e)) forms[e].emplace_back(sys.var(h, t), ce);
        }
        forms[t].emplace_back(sys.var(image_source, t), -coef);
      }
      for (auto& [e, row] : forms) {
        sys.rows.push_back(std::move(row));
        out.row_labels.push_back("d" + std::to_string(shift) + ":" + basis_key(h) + "->" + basis_key(e));
      }
    }
  }
  out.matrix = sys.matrix();
  out.unknowns = sys.unknowns;
  return out;
}

int equivariant_hom_H_to_V(const Window& w) {
  const auto sys = equivariant_hom_system(w);
  return static_cast<int>(linalg::kernel_basis(sys.matrix).vectors.size());
}

}  // namespace mhv
