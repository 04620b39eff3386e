#include "fpeq/float_core.hpp"

#include <bit>

#include "fpeq/error.hpp"

namespace fpeq {

namespace {

inline uint64_t extend(uint32_t m, const FloatFormat& fmt)
{
  // {1, m, 000}: leading one plus three empty GRS positions.
  return (uint64_t(1) << (fmt.man_bits + 3)) | (uint64_t(m) << 3);
}

}  // namespace

uint64_t sticky_shift(uint64_t v, int32_t left_amount)
{
  if (left_amount == 0) return v;
  if (left_amount > 0)
  {
    // The S slot is an OR accumulator, not a positional bit: it stays put.
    return ((v & ~uint64_t(1)) << left_amount) | (v & 1);
  }
  uint32_t r = uint32_t(-left_amount);
  if (r >= 64) return v ? 1 : 0;
  uint64_t dropped = v & ((uint64_t(1) << r) - 1);
  return (v >> r) | (dropped ? 1 : 0);
}

std::pair<uint64_t, uint32_t> round_rne(uint64_t sig,
                                        uint32_t guard,
                                        uint32_t round,
                                        uint32_t sticky,
                                        const FloatFormat& fmt)
{
  uint64_t inc = guard & (round | sticky | uint32_t(sig & 1));
  uint64_t rounded = sig + inc;
  uint32_t carry = uint32_t(rounded >> (fmt.man_bits + 1));
  if (carry)
  {
    rounded >>= 1;  // 1.00..0 after significand overflow
  }
  return {rounded, carry};
}

RefAlign ref_align(const FloatTriple& f1,
                   const FloatTriple& f2,
                   const FloatFormat& fmt)
{
  if (!is_normalized(f1, fmt) || !is_normalized(f2, fmt))
  {
    throw DomainError("ref_align requires normalized operands");
  }

  RefAlign a;
  // Larger magnitude by (exponent, mantissa); first operand wins ties.
  a.big_is_f1 =
      f1.e > f2.e || (f1.e == f2.e && f1.m >= f2.m);
  const FloatTriple& big = a.big_is_f1 ? f1 : f2;
  const FloatTriple& small = a.big_is_f1 ? f2 : f1;

  a.expdiff = big.e - small.e;
  a.eff_sub = f1.s != f2.s;
  a.bigman = extend(big.m, fmt);
  a.smallman = extend(small.m, fmt);
  a.sticky_collapse = a.expdiff >= fmt.man_bits + 3;

  const uint32_t w = fmt.man_bits + 4;
  // Collapse forces the positional part to zero and sticky to the OR of the
  // entire small significand; realized uniformly as a full-width shift.
  uint32_t shift = a.sticky_collapse ? w : a.expdiff;
  uint64_t raw = shift >= 64 ? 0 : (a.smallman >> shift);
  uint64_t dropped_mask = (uint64_t(1) << shift) - 1;
  a.sticky = (a.smallman & dropped_mask) != 0 ? 1 : 0;
  a.algman = raw | a.sticky;
  return a;
}

RefRound ref_round(const RefAlign& a,
                   uint32_t s1,
                   uint32_t s2,
                   uint32_t e_big,
                   const FloatFormat& fmt)
{
  const uint32_t w = fmt.man_bits + 4;
  const uint64_t reg_mask = (uint64_t(1) << (w + 1)) - 1;

  RefRound r;
  r.addman = a.eff_sub ? (a.bigman - a.algman) & reg_mask
                       : (a.bigman + a.algman) & reg_mask;

  uint32_t s_big = a.big_is_f1 ? s1 : s2;

  if (r.addman == 0)
  {
    // Exact cancellation: +0 regardless of operand signs.
    r.result = FloatTriple{0, 0, 0};
    r.flags.exact_zero = true;
    return r;
  }

  r.carry_out = (r.addman >> w) & 1;
  int32_t lead = int32_t(std::bit_width(r.addman)) - 1;
  r.norm_shift = int32_t(w - 1) - lead;

  uint64_t norm = sticky_shift(r.addman, r.norm_shift) & reg_mask;
  uint64_t sig = (norm >> 3) & ((uint64_t(1) << (fmt.man_bits + 1)) - 1);
  uint32_t g = (norm >> 2) & 1;
  uint32_t rd = (norm >> 1) & 1;
  uint32_t st = norm & 1;

  auto [rounded, rcarry] = round_rne(sig, g, rd, st, fmt);
  r.round_inc = (g & (rd | st | uint32_t(sig & 1))) != 0;

  int64_t e_res = int64_t(e_big) - r.norm_shift + rcarry;
  if (e_res > int64_t(fmt.emax()))
  {
    r.result = FloatTriple{s_big, fmt.emax(), uint32_t(fmt.man_mask())};
    r.flags.overflow = true;
  }
  else if (e_res < 1)
  {
    r.result = FloatTriple{s_big, 0, 0};
    r.flags.underflow = true;
  }
  else
  {
    r.result =
        FloatTriple{s_big, uint32_t(e_res), uint32_t(rounded & fmt.man_mask())};
  }
  return r;
}

std::pair<FloatTriple, AddFlags> ref_add(const FloatTriple& f1,
                                         const FloatTriple& f2,
                                         const FloatFormat& fmt)
{
  RefAlign a = ref_align(f1, f2, fmt);
  uint32_t e_big = a.big_is_f1 ? f1.e : f2.e;
  RefRound r = ref_round(a, f1.s, f2.s, e_big, fmt);
  return {r.result, r.flags};
}

}  // namespace fpeq
