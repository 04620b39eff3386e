#ifndef FPEQ_IMPL_ADDER_HPP
#define FPEQ_IMPL_ADDER_HPP

#include <array>
#include <cstdint>

#include "fpeq/fault.hpp"
#include "fpeq/format.hpp"
#include "fpeq/trace.hpp"

namespace fpeq {

/**
 * Implementation-side adder model.
 *
 * Mirrors the reference pipeline register-for-register — selection and
 * alignment, extended-register add, normalization, round-to-nearest-even,
 * edge policy — but every stage carries injection hooks from the fault
 * catalog. With an empty FaultConfig the published signal valuation is
 * bit-identical to the reference model on every normalized operand pair.
 */

/** Flat valuation of all published signals for one model namespace. */
using SignalValues = std::array<uint64_t, kSigCount>;

/** Two-bit normalization class: 0 no shift, 1 one left, 2 more left,
 *  3 right (carry). */
uint32_t norm_bucket_of(int32_t norm_shift);

/** 8-bit two's-complement encoding used to publish norm_shift. */
uint64_t encode_norm_shift(int32_t norm_shift);

/** Evaluate the implementation adder under `faults`. */
SignalValues impl_eval(const FloatTriple& f1,
                       const FloatTriple& f2,
                       const FloatFormat& fmt,
                       const FaultConfig& faults);

/** Evaluate the reference adder (never faulted). */
SignalValues spec_eval(const FloatTriple& f1,
                       const FloatTriple& f2,
                       const FloatFormat& fmt);

/** Build a two-namespace trace from independent operand pairs. */
SignalTrace eval_pair(const FloatTriple& f1_impl,
                      const FloatTriple& f2_impl,
                      const FloatTriple& f1_spec,
                      const FloatTriple& f2_spec,
                      const FloatFormat& fmt,
                      const FaultConfig& faults);

/** Build a two-namespace trace with both models on the same operands. */
SignalTrace eval_lockstep(const FloatTriple& f1,
                          const FloatTriple& f2,
                          const FloatFormat& fmt,
                          const FaultConfig& faults);

/** Implementation-only trace (has_spec = false), e.g. for coverage runs. */
SignalTrace eval_impl_only(const FloatTriple& f1,
                           const FloatTriple& f2,
                           const FloatFormat& fmt,
                           const FaultConfig& faults);

}  // namespace fpeq

#endif
