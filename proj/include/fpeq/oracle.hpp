#ifndef FPEQ_ORACLE_HPP
#define FPEQ_ORACLE_HPP

#include <cstdint>
#include <utility>

#include "fpeq/format.hpp"

namespace fpeq {

/**
 * Exact-rational addition oracle.
 *
 * Computes the mathematically exact sum of two normalized operands with
 * unbounded-precision integers, rounds it to nearest-even at man_bits+1
 * significant bits, then applies the same edge policy the adder documents
 * (saturate on overflow, flush to signed zero on underflow, +0 on exact
 * cancellation). It shares no code with the fixed-width guard/round/sticky
 * pipeline, so agreement between the two is meaningful evidence.
 */
std::pair<FloatTriple, AddFlags> oracle_add(const FloatTriple& f1,
                                            const FloatTriple& f2,
                                            const FloatFormat& fmt);

}  // namespace fpeq

#endif
