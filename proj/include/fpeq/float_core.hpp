#ifndef FPEQ_FLOAT_CORE_HPP
#define FPEQ_FLOAT_CORE_HPP

#include <cstdint>
#include <utility>

#include "fpeq/format.hpp"

namespace fpeq {

/**
 * Reference (golden) adder model.
 *
 * The computation is split into the same two stages the implementation
 * exposes — mantissa alignment and add-round — so stage outputs can be
 * compared signal-for-signal. Significands are handled in an extended
 * register of W = man_bits + 4 bits: [lead | mantissa | G R S]. The S slot
 * carries the OR of the positional bit and every bit shifted past the
 * register, which is exact for round-to-nearest-even addition/subtraction:
 * the big operand's low three bits are always zero, so the S position can
 * neither generate a carry nor fake a tie.
 */

/** Alignment-stage outputs of the reference model. */
struct RefAlign
{
  uint32_t expdiff = 0;
  uint64_t bigman = 0;    // W bits, GRS = 000
  uint64_t smallman = 0;  // W bits, GRS = 000
  uint64_t algman = 0;    // W bits, aligned small with sticky OR'd into S
  uint32_t sticky = 0;    // OR of all bits shifted out of the register
  bool big_is_f1 = false;
  bool eff_sub = false;
  bool sticky_collapse = false;  // expdiff >= man_bits + 3
};

/** Add-round-stage outputs of the reference model. */
struct RefRound
{
  uint64_t addman = 0;  // W+1 bits: [carry | lead | mantissa | G R S]
  int32_t norm_shift = 0;  // left-shift positive; -1 = carry right shift
  bool carry_out = false;
  bool round_inc = false;
  FloatTriple result;
  AddFlags flags;
};

/**
 * Round a (man_bits+1)-bit significand to nearest-even given guard, round and
 * sticky bits. Returns the rounded significand (renormalized on carry) and
 * the carry-out bit.
 */
std::pair<uint64_t, uint32_t> round_rne(uint64_t sig,
                                        uint32_t guard,
                                        uint32_t round,
                                        uint32_t sticky,
                                        const FloatFormat& fmt);

/** Magnitude comparison and alignment. Operands must be normalized. */
RefAlign ref_align(const FloatTriple& f1,
                   const FloatTriple& f2,
                   const FloatFormat& fmt);

/**
 * Add, normalize, round and apply the edge policy.
 * s1/s2 are the operand signs, e_big the biased exponent of the selected
 * larger-magnitude operand.
 */
RefRound ref_round(const RefAlign& a,
                   uint32_t s1,
                   uint32_t s2,
                   uint32_t e_big,
                   const FloatFormat& fmt);

/**
 * Full reference addition.
 *
 * Edge policy: results whose exponent exceeds emax saturate to the largest
 * finite value with overflow set; partial cancellation below e=1 flushes to
 * a zero carrying the larger operand's sign with underflow set; exact
 * cancellation of opposite-sign equal magnitudes yields +0 with exact_zero
 * set.
 */
std::pair<FloatTriple, AddFlags> ref_add(const FloatTriple& f1,
                                         const FloatTriple& f2,
                                         const FloatFormat& fmt);

/**
 * Shift with sticky semantics: left shifts keep the S slot in place; right
 * shifts OR every shifted-out bit into the new S slot.
 */
uint64_t sticky_shift(uint64_t v, int32_t left_amount);

}  // namespace fpeq

#endif
