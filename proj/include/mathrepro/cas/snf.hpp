#ifndef MATHREPRO_CAS_SNF_HPP
#define MATHREPRO_CAS_SNF_HPP

#include "mathrepro/cas/matrix.hpp"

namespace mathrepro::cas {

/// Smith normal form, integer-specific route: smallest-|pivot| selection,
/// truncated-division elimination, then an explicit gcd/lcm sweep to sort
/// the diagonal into the invariant-factor chain. Returns a same-shape
/// diagonal matrix with d1 | d2 | ... and non-negative entries.
IntMatrix snf_integer(const IntMatrix& m);

/// Smith normal form, generic route: the textbook algorithm over a
/// Euclidean domain abstraction, instantiated at Integer. Kept independent
/// of snf_integer so the two can cross-certify each other.
IntMatrix snf_euclidean(const IntMatrix& m);

}  // namespace mathrepro::cas

#endif
