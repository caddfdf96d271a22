#ifndef MHV_MAPS_HPP
#define MHV_MAPS_HPP

#include "mhv/element.hpp"
#include "mhv/element_io.hpp"

#include <map>
#include <optional>
#include <string>

namespace mhv {

/// Target of a derivation: the Heisenberg ideal H (span of h_r and l) as a
/// module under the bracket, or the whole algebra under the adjoint action.
enum class Codomain { H, D };

std::string to_string(Codomain c);
Codomain parse_codomain(std::string_view s);

/// A degree-homogeneous linear map, given by the images of the basis vectors
/// of its window. Basis vectors without a stored image map to zero.
///
/// Invariant (checked on construction): a nonzero image of a degree-g basis
/// vector is homogeneous of degree g + delta and lies in the codomain.
class GradedMap {
 public:
  using Images = std::map<Basis, Element>;

  GradedMap(int delta, Codomain codomain, Window window, Images images);

  int delta() const noexcept { return delta_; }
  Codomain codomain() const noexcept { return codomain_; }
  const Window& window() const noexcept { return window_; }
  const Images& images() const noexcept { return images_; }

  /// Image of a window basis vector; throws WindowViolation outside the window.
  Element image(Basis b) const;

  friend bool operator==(const GradedMap&, const GradedMap&) = default;

 private:
  int delta_;
  Codomain codomain_;
  Window window_;
  Images images_;  // zero images are not stored
};

/// Linear extension of the image table.
Element apply_map(const GradedMap& m, const Element& x);

/// D1: zero on d_n and c, identity on h_r, l -> 2l.
Element apply_D1(const Element& x);
/// D2: d_n -> h_{n+1/2}, h_{n+1/2} -> delta_{n,-1} l, c, l -> 0.
Element apply_D2(const Element& x);

GradedMap make_D1(const Window& w);
GradedMap make_D2(const Window& w);

/// Inner map x -> [x, u] on the window basis; u must be homogeneous (and lie
/// in H when the codomain is H). Its degree is the map's delta.
GradedMap ad(const Element& u, const Window& w, Codomain codomain);

/// m([x,y]) - [m(x), y] - [x, m(y)]; zero iff the Leibniz rule holds on (x, y).
/// x, y and every term of [x, y] must lie in the map's window.
Element derivation_defect(const GradedMap& m, Basis x, Basis y);

/// The general derivation x -> [x, u] + alpha D1(x) + beta D2(x).
struct DerivationDescriptor {
  Element u;
  Rational alpha;
  Rational beta;

  DerivationDescriptor& operator+=(const DerivationDescriptor& o);
  friend DerivationDescriptor operator+(DerivationDescriptor a, const DerivationDescriptor& b) {
    return a += b;
  }
  friend DerivationDescriptor operator*(const Rational& s, DerivationDescriptor a);
  friend bool operator==(const DerivationDescriptor&, const DerivationDescriptor&) = default;
};

Element apply_descriptor(const DerivationDescriptor& w, const Element& x);

/// Same, but requires x and u to lie in `window` (WindowViolation otherwise).
Element apply_descriptor(const DerivationDescriptor& w, const Element& x, const Window& window);

/// {"delta": int, "codomain": "H"|"D", "images": {"<basis-key>": element}}.
/// The window is not part of the format; it is recovered as the smallest
/// window containing the image keys, unless one is given.
Json graded_map_to_json(const GradedMap& m);
GradedMap graded_map_from_json(const Json& j, std::optional<Window> window = std::nullopt);

Json descriptor_to_json(const DerivationDescriptor& w);

}  // namespace mhv

#endif  // MHV_MAPS_HPP
