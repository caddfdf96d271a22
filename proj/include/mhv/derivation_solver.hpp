#ifndef MHV_DERIVATION_SOLVER_HPP
#define MHV_DERIVATION_SOLVER_HPP

#include "mhv/linsolve.hpp"
#include "mhv/maps.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace mhv {

/// Extra outer rows required beyond interior + |delta|; see check_buffer().
inline constexpr int kBufferMargin = 1;

/// Throws BufferViolation unless w.outer() >= w.interior() + |delta| + kBufferMargin.
void check_buffer(const Window& w, int delta);

/// Codomain basis vectors of degree g (H: h_{g+1/2}, plus l at g = -1;
/// D: additionally d_g, and c at g = 0).
std::vector<Basis> codomain_component(Codomain codomain, int g);

/// Degree-g component of the whole algebra.
std::vector<Basis> algebra_component(int g);

/// Coordinates of a degree-delta map on the interior window: one coordinate
/// per (source basis vector, codomain basis vector of degree source + delta).
class InteriorCoordinates {
 public:
  InteriorCoordinates(Codomain codomain, int delta, int bound);

  linalg::Index size() const noexcept { return static_cast<linalg::Index>(vars_.size()); }
  const std::vector<std::pair<Basis, Basis>>& vars() const noexcept { return vars_; }
  std::optional<linalg::Index> index_of(Basis source, Basis target) const;

  linalg::QVector to_vector(const GradedMap& m) const;
  GradedMap to_map(const linalg::QVector& v) const;

  Codomain codomain() const noexcept { return codomain_; }
  int delta() const noexcept { return delta_; }
  const Window& window() const noexcept { return window_; }

 private:
  Codomain codomain_;
  int delta_;
  Window window_;
  std::vector<std::pair<Basis, Basis>> vars_;
  std::map<std::pair<Basis, Basis>, linalg::Index> index_;
};

struct SolveReport {
  int delta = 0;
  Codomain codomain = Codomain::H;
  Window window{1, 1};
  int space_dim = 0;   // dim of derivations restricted to the interior
  int inner_dim = 0;   // dim of inner derivations restricted to the interior
  int outer_dim = 0;   // space_dim - inner_dim
  std::vector<GradedMap> solutions;        // canonical (RREF) basis of the restricted space
  std::vector<GradedMap> representatives;  // coset representatives modulo the inner space
  bool stable = false;                     // dims agree with the (outer + 2) re-solve
};

/// Degree-delta derivations into H or D over the window. Unknowns are the
/// images of every outer basis vector; a Leibniz equation is imposed on every
/// pair whose bracket stays inside the outer window. Dimensions are of the
/// restriction to the interior basis.
SolveReport solve_graded_derivations(Codomain codomain, int delta, const Window& w);

/// x -> [x, v] restricted to the interior, for v over a basis of the
/// codomain's degree-delta component; zero maps dropped.
std::vector<GradedMap> inner_space(Codomain codomain, int delta, const Window& w);

/// Membership of a fixed map in the solved spaces.
struct MembershipVerdict {
  bool in_space = false;
  bool in_inner = false;
  std::vector<Rational> inner_coordinates;  // w.r.t. inner_space(); empty unless in_inner
};

struct H1Report {
  SolveReport report;
  std::vector<GradedMap> inner;              // inner_space() as used for the quotient
  std::optional<MembershipVerdict> d1;       // delta = 0 only
  std::optional<MembershipVerdict> d2;
};

H1Report h1_component(Codomain codomain, int delta, const Window& w);

/// First interior pair (x, y) with [x, y] in the interior on which the map
/// violates Leibniz, or nullopt.
std::optional<std::pair<Basis, Basis>> find_interior_defect(const GradedMap& m);

/// Linear maps between finite components, given by basis images.
using ComponentMap = std::map<Basis, Element>;

struct HomResult {
  int dim = 0;
  std::vector<ComponentMap> basis;
};

/// D_0-equivariant maps f: D_m -> H_n, i.e. [x, f(y)] = f([x, y]) for
/// x in {d_0, h_{1/2}, c}. No truncation is involved.
HomResult hom_D0(int m, int n);

struct InnerWitness {
  Rational a;            // coefficient of h_{n+1/2} in phi(d_0)
  Element e;             // -(a / (n + 1/2)) h_{n+1/2}
  bool reproduces = false;  // phi(x) = [x, e] on d_0, h_{1/2}, c
};

struct H1D0Result {
  int der_dim = 0;
  int inner_dim = 0;
  int dim = 0;  // der_dim - inner_dim
  std::vector<ComponentMap> derivations;
  std::vector<InnerWitness> witnesses;  // only for n not in {0, -1}
};

/// First cohomology of the degree-0 subalgebra span{d_0, h_{1/2}, c} with
/// coefficients in H_n.
H1D0Result h1_D0_Hn(int n);

/// Linear system for maps f from span{h_{m+1/2} : |m| <= N} to
/// span{d_k : |k| <= N} + Cc commuting with the action of d_0 and d_1.
/// Components of [d_1, f(h)] that leave the window are dropped, which can only
/// enlarge the solution set.
struct EquivariantSystem {
  linalg::QMatrix matrix;
  std::vector<std::pair<Basis, Basis>> unknowns;  // (h source, V target)
  std::vector<std::string> row_labels;            // "d0:h[m]->d[k]" style
};

EquivariantSystem equivariant_hom_system(const Window& w);
int equivariant_hom_H_to_V(const Window& w);

}  // namespace mhv

#endif  // MHV_DERIVATION_SOLVER_HPP
