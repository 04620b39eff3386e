#ifndef FPEQ_TRACE_HPP
#define FPEQ_TRACE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "fpeq/format.hpp"

namespace fpeq {

/**
 * Published signal dictionary.
 *
 * Core names cover operand fields, alignment-stage registers, the extended
 * sum and the result. The trailing block are one-bit/two-bit decision taps
 * derived identically by both models; they exist so every two-way decision
 * outcome is expressible as a plain equality in the property grammar.
 */
enum class Sig : uint32_t
{
  s1,
  e1,
  m1,
  s2,
  e2,
  m2,
  expdiff,
  bigman,
  smallman,
  algman,
  sticky,
  addman,
  norm_shift,
  s,
  e,
  m,
  overflow,
  underflow,
  // decision taps
  big_is_f1,
  eff_sub,
  sticky_collapse,
  carry_out,
  norm_bucket,
  round_inc,
  exact_zero,
};

inline constexpr uint32_t kSigCount = 25;

/** Model namespace of a signal reference. */
enum class Ns : uint32_t
{
  impl,
  spec,
};

const char* sig_name(Sig s);
const char* ns_name(Ns ns);
std::optional<Sig> sig_by_name(std::string_view name);

/** Declared width of a signal under a format. */
uint32_t sig_width(Sig s, const FloatFormat& fmt);

/** True for the primary-input signals s1,e1,m1,s2,e2,m2. */
bool sig_is_input(Sig s);

/** True for signals produced by the alignment stage (incl. its taps). */
bool sig_is_alignment(Sig s);

/** True for add-round stage and result signals (incl. their taps). */
bool sig_is_addround(Sig s);

/**
 * One evaluation's complete signal valuation. Values are zero-extended into
 * 64-bit slots; norm_shift is stored as 8-bit two's complement.
 */
struct SignalTrace
{
  std::array<uint64_t, 2 * kSigCount> v{};
  bool has_spec = true;

  uint64_t get(Ns ns, Sig s) const
  {
    return v[uint32_t(ns) * kSigCount + uint32_t(s)];
  }
  void set(Ns ns, Sig s, uint64_t value)
  {
    v[uint32_t(ns) * kSigCount + uint32_t(s)] = value;
  }

  bool operator==(const SignalTrace&) const = default;
};

/** Hex rendering zero-padded to ceil(width/4) digits, e.g. "0x0f". */
std::string hex_value(uint64_t value, uint32_t width);

}  // namespace fpeq

#endif
