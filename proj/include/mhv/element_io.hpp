#ifndef MHV_ELEMENT_IO_HPP
#define MHV_ELEMENT_IO_HPP

#include "mhv/element.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

namespace mhv {

using Json = nlohmann::ordered_json;

/// Parses the element grammar
///
///   expr := ['-'] term (('+'|'-') term)*
///   term := [coef '*'] gen | coef
///   coef := int | int '/' posint
///   gen  := 'd[' int ']' | 'h[' int ']' | 'c' | 'l'
///
/// where h[k] is h_{k+1/2}. A bare coefficient term must be zero, since the
/// algebra has no unit. Throws ParseError with the byte offset and the set of
/// tokens that would have been accepted there.
Element parse_element(std::string_view text);

/// Canonical text: terms in (D, H, C, L; index ascending) order, "0" for zero.
std::string format_element(const Element& x);

/// {"d": {"<m>": "p/q"}, "h": {"<k>": "p/q"}, "c": "p/q", "l": "p/q"};
/// zero entries and empty groups omitted.
Json element_to_json(const Element& x);
Element element_from_json(const Json& j);

/// "p/q" string (or a JSON integer).
Rational rational_from_json(const Json& j);

/// {"outer": N, "interior": M}; "interior" defaults to N when absent.
Json window_to_json(const Window& w);
Window window_from_json(const Json& j);

/// Inverse of basis_key(): "d[m]", "h[k]", "c", "l".
Basis parse_basis_key(std::string_view key);

}  // namespace mhv

#endif  // MHV_ELEMENT_IO_HPP
