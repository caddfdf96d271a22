#ifndef MHV_TWO_LOCAL_HPP
#define MHV_TWO_LOCAL_HPP

#include "mhv/linsolve.hpp"
#include "mhv/maps.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace mhv {

/// A 2-local map known on finitely many points: its values, and for each
/// recorded pair (x, y) a derivation meant to agree with it at x and y.
struct TwoLocalOracle {
  Window window{1, 1};
  std::map<Element, Element> values;
  std::map<std::pair<Element, Element>, DerivationDescriptor> selectors;

  /// Throws InvalidArgument when x has no recorded value.
  const Element& value(const Element& x) const;
};

struct TwoLocalViolation {
  Element x;
  Element y;
  Element point;   // x or y, whichever disagrees (x if both)
  Element defect;  // apply_descriptor(selector, point) - value(point)
  std::string reason;
};

/// Every selector must reproduce the oracle's values at both of its points.
std::vector<TwoLocalViolation> verify_two_local(const TwoLocalOracle& o);

/// Linear coordinates on descriptors over a window: a_j, b_j (|j| <= N), l1,
/// l2, alpha, beta. A vector v stands for the descriptor with
///   u = -(sum_j a_j d_j + b_j h_{j+1/2} + l1 c + l2 l),
/// so that its action is x -> [v_ad, x] + alpha D1(x) + beta D2(x) with
/// v_ad = sum_j a_j d_j + ... . This is the left-action form in which the
/// stabilizer constraints are usually written.
class DescriptorCoordinates {
 public:
  explicit DescriptorCoordinates(int bound);

  int bound() const noexcept { return bound_; }
  linalg::Index size() const noexcept { return 2 * (2 * bound_ + 1) + 4; }

  linalg::Index a(int j) const;
  linalg::Index b(int j) const;
  linalg::Index l1() const noexcept { return 2 * (2 * bound_ + 1); }
  linalg::Index l2() const noexcept { return l1() + 1; }
  linalg::Index alpha() const noexcept { return l1() + 2; }
  linalg::Index beta() const noexcept { return l1() + 3; }

  /// "a[j]", "b[j]", "l1", "l2", "alpha", "beta".
  std::string name(linalg::Index i) const;

  DerivationDescriptor to_descriptor(const linalg::QVector& v) const;
  linalg::QVector from_descriptor(const DerivationDescriptor& w) const;

  /// For each output basis vector e, the linear form v -> coeff of e in
  /// apply_descriptor(to_descriptor(v), x).
  std::map<Basis, linalg::QVector> action_forms(const Element& x) const;

 private:
  int bound_;
};

struct StabilizerSpace {
  DescriptorCoordinates coords{1};
  linalg::RrefResult<Rational> constraints;  // reduced constraint rows
  std::vector<linalg::QVector> basis;        // kernel of the constraints

  std::vector<DerivationDescriptor> descriptors() const;
};

/// Descriptors over the window annihilating every z in zs (a linear space).
/// Each basis descriptor is re-checked against every z.
StabilizerSpace stabilizer_space(const std::vector<Element>& zs, const Window& w);
inline StabilizerSpace stabilizer_space(const Element& z, const Window& w) {
  return stabilizer_space(std::vector<Element>{z}, w);
}

/// Values at x that stay consistent with a 2-local map vanishing on every
/// anchor: the intersection over anchors z of {s(x) : s in stabilizer(z)}.
/// Returned as a reduced basis.
std::vector<Element> attainable_values(const Element& x, const std::vector<Element>& anchors,
                                       const Window& w);
std::vector<Element> attainable_values(const Element& x, const std::vector<StabilizerSpace>& anchors);

/// sum_t beta_t h_{t+1/2} + 2 k_2 l for x = sum(alpha_t d_t + beta_t h_{t+1/2}) + k_1 c + k_2 l.
Element shape_pattern(const Element& x);

/// Scalar lambda with value = lambda * shape_pattern(x), or nullopt. A zero
/// pattern admits any lambda when value is zero; 0 is returned then.
std::optional<Rational> shape_scalar(const Element& x, const Element& value);

/// shape_scalar on the oracle's value at x. Requires the oracle to vanish on
/// every recorded d_i (InvalidArgument otherwise).
std::optional<Rational> check_pattern_shape(const TwoLocalOracle& o, const Element& x);

enum class Verdict { Derivation, Violation };

struct RecoveryReport {
  int t = 2;
  DerivationDescriptor base;  // fitted on d_0 and d_1
  Rational lambda;            // coefficient of D1
  int residual_max_support = 0;
  Verdict verdict = Verdict::Violation;
  std::optional<Element> witness;  // failing evaluation point
  Element witness_residual;
  std::string violation_kind;  // "residual" or "shape"
};

/// Expresses the oracle as base + lambda D1: base is fitted to the values at
/// d_0 and d_1, lambda is read off the residual at h_{t-1/2}, and the verdict
/// is a derivation iff the final residual vanishes at every recorded point.
/// Throws NotTwoLocal when no descriptor fits d_0 and d_1, InvalidArgument for
/// t in {0, 1} or missing values.
RecoveryReport recover_derivation(const TwoLocalOracle& o, int t = 2);

/// apply_descriptor(base, x) + lambda D1(x).
Element recovered_action(const RecoveryReport& r, const Element& x);

/// d_{2t} + h_{t+1/2}.
Element composite_point(int t);

/// Random descriptor: u supported on indices |i| <= 3 plus c and l, each
/// coefficient p/q with |p|, q <= 9.
DerivationDescriptor random_descriptor(std::mt19937_64& rng);
Rational random_rational(std::mt19937_64& rng, bool nonzero = false);

/// Oracle of a single descriptor on the window basis and composite_point(t),
/// with selectors for the pairs recovery relies on: (d_0, x), (d_1, x) and
/// (h_{t-1/2}, x), all equal to w.
TwoLocalOracle descriptor_oracle(const DerivationDescriptor& w, const Window& window, int t = 2);

/// Replaces each selector by w + s, s random in the joint stabilizer of its pair.
TwoLocalOracle with_stabilizer_noise(TwoLocalOracle o, std::mt19937_64& rng);

/// Adds a random nonzero term to the value at one point other than d_0, d_1
/// and h_{t-1/2}; returns the tampered point.
Element perturb_oracle(TwoLocalOracle& o, std::mt19937_64& rng, int t = 2);

/// {"window", "values": {"<expr>": element}, "selectors": [{"x", "y", "u", "alpha", "beta"}]}.
Json oracle_to_json(const TwoLocalOracle& o);
TwoLocalOracle oracle_from_json(const Json& j);

Json recovery_to_json(const RecoveryReport& r);

}  // namespace mhv

#endif  // MHV_TWO_LOCAL_HPP
