#ifndef MHV_ALGEBRA_HPP
#define MHV_ALGEBRA_HPP

#include "mhv/element.hpp"

namespace mhv {

/// Structure constants of the mirror Heisenberg-Virasoro algebra:
///
///   [d_m, d_n] = (m - n) d_{m+n} + (m^3 - m)/12 delta_{m+n,0} c
///   [d_m, h_r] = -r h_{m+r}
///   [h_r, h_s] = r delta_{r+s,0} l
///   c and l central.
Element bracket(Basis x, Basis y);

/// Bilinear extension of the basis bracket.
Element bracket(const Element& x, const Element& y);

/// [x,[y,z]] + [y,[z,x]] + [z,[x,y]]; zero for every input.
Element jacobi_defect(const Element& x, const Element& y, const Element& z);

}  // namespace mhv

#endif  // MHV_ALGEBRA_HPP
