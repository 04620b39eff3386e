#include "fpeq/impl_adder.hpp"

#include <bit>
#include <utility>

#include "fpeq/error.hpp"
#include "fpeq/float_core.hpp"

namespace fpeq {

namespace {

struct AlignOut
{
  uint32_t d_big_is_f1 = 0;
  uint32_t d_eff_sub = 0;
  uint32_t d_sticky_collapse = 0;
  uint32_t d_expdiff = 0;
  uint64_t d_bigman = 0;
  uint64_t d_smallman = 0;
  uint64_t d_algman = 0;
  uint32_t d_sticky = 0;
  // wires into the next stage, not published
  uint32_t d_e_big = 0;
  uint32_t d_s_big = 0;
};

struct RoundOut
{
  uint64_t d_addman = 0;
  int32_t d_norm_shift = 0;  // published shifter control value
  uint32_t d_carry_out = 0;
  uint32_t d_round_inc = 0;
  FloatTriple d_result;
  AddFlags d_flags;
};

AlignOut align_stage(const FloatTriple& f1,
                     const FloatTriple& f2,
                     const FloatFormat& fmt,
                     const FaultConfig& faults)
{
  const uint32_t man = fmt.man_bits;
  const uint32_t w = man + 4;

  AlignOut o;
  // Magnitude comparator feeding the operand-select mux.
  bool sel = f1.e > f2.e || (f1.e == f2.e && f1.m >= f2.m);
  if (faults.has(FaultKind::eq_exp_bug))
  {
    sel = f1.e >= f2.e;  // mantissa compare dropped from the tie break
  }
  if (faults.has(FaultKind::op_select))
  {
    sel = !sel;
  }
  const FloatTriple& big = sel ? f1 : f2;
  const FloatTriple& small = sel ? f2 : f1;

  o.d_big_is_f1 = sel ? 1 : 0;
  o.d_eff_sub = f1.s != f2.s ? 1 : 0;
  o.d_expdiff = big.e >= small.e ? big.e - small.e : small.e - big.e;
  o.d_e_big = big.e;
  o.d_s_big = big.s;

  o.d_bigman = (uint64_t(1) << (man + 3)) | (uint64_t(big.m) << 3);
  o.d_smallman = faults.has(FaultKind::ext_misalign)
                     ? (uint64_t(1) << man) | uint64_t(small.m)
                     : (uint64_t(1) << (man + 3)) | (uint64_t(small.m) << 3);

  o.d_sticky_collapse = o.d_expdiff >= man + 3 ? 1 : 0;
  uint32_t shift = o.d_sticky_collapse ? w : o.d_expdiff;
  uint64_t raw = shift >= 64 ? 0 : (o.d_smallman >> shift);

  uint32_t mask_len = shift;
  if (faults.has(FaultKind::sticky_distort))
  {
    // The OR tree misses the top N shifted-out positions.
    uint32_t delta = faults.param(FaultKind::sticky_distort);
    mask_len = shift > delta ? shift - delta : 0;
  }
  o.d_sticky = (o.d_smallman & ((uint64_t(1) << mask_len) - 1)) != 0 ? 1 : 0;
  o.d_algman = raw | o.d_sticky;

  if (faults.has(FaultKind::inv_swap) && o.d_eff_sub)
  {
    // Subtractor input buses crossed.
    std::swap(o.d_bigman, o.d_algman);
  }
  return o;
}

RoundOut addround_stage(const AlignOut& a,
                        const FloatFormat& fmt,
                        const FaultConfig& faults)
{
  const uint32_t man = fmt.man_bits;
  const uint32_t w = man + 4;
  const uint64_t reg_mask = (uint64_t(1) << (w + 1)) - 1;

  RoundOut o;
  uint64_t sum = a.d_eff_sub ? (a.d_bigman - a.d_algman) & reg_mask
                             : (a.d_bigman + a.d_algman) & reg_mask;
  if (faults.has(FaultKind::carry_manip))
  {
    sum = (sum + faults.param(FaultKind::carry_manip)) & reg_mask;
  }
  o.d_addman = sum;

  if (sum == 0)
  {
    o.d_result = FloatTriple{0, 0, 0};
    o.d_flags.exact_zero = true;
    return o;
  }

  o.d_carry_out = uint32_t((sum >> w) & 1);
  int32_t lead = int32_t(std::bit_width(sum)) - 1;
  int32_t true_shift = int32_t(w - 1) - lead;
  int32_t applied = true_shift;
  if (faults.has(FaultKind::norm_shift_bug))
  {
    // Shifter control off by N; the exponent datapath still subtracts the
    // correct amount, so only the significand moves too far.
    applied = true_shift + int32_t(faults.param(FaultKind::norm_shift_bug));
  }
  o.d_norm_shift = applied;

  uint64_t norm = sticky_shift(sum, applied) & reg_mask;
  if (faults.has(FaultKind::shift_distort))
  {
    norm >>= faults.param(FaultKind::shift_distort);  // sticky lost
  }

  uint64_t sig = (norm >> 3) & ((uint64_t(1) << (man + 1)) - 1);
  uint32_t g = uint32_t((norm >> 2) & 1);
  uint32_t rd = uint32_t((norm >> 1) & 1);
  uint32_t st = uint32_t(norm & 1);

  uint64_t rounded;
  uint32_t rcarry;
  bool tie = g == 1 && rd == 0 && st == 0;
  if (faults.has(FaultKind::round_rule) && tie)
  {
    rounded = sig & ~uint64_t(1);  // tie truncated toward even
    rcarry = 0;
    o.d_round_inc = 0;
  }
  else
  {
    std::tie(rounded, rcarry) = round_rne(sig, g, rd, st, fmt);
    o.d_round_inc = (g & (rd | st | uint32_t(sig & 1))) != 0 ? 1 : 0;
  }

  int64_t e_res = int64_t(a.d_e_big) - true_shift + rcarry;
  if (e_res > int64_t(fmt.emax()))
  {
    o.d_result = FloatTriple{a.d_s_big, fmt.emax(), uint32_t(fmt.man_mask())};
    o.d_flags.overflow = true;
  }
  else if (e_res < 1)
  {
    o.d_result = FloatTriple{a.d_s_big, 0, 0};
    o.d_flags.underflow = true;
  }
  else
  {
    o.d_result = FloatTriple{a.d_s_big, uint32_t(e_res),
                             uint32_t(rounded & fmt.man_mask())};
  }
  return o;
}

void fill_values(SignalValues& v,
                 const FloatTriple& f1,
                 const FloatTriple& f2,
                 const AlignOut& a,
                 const RoundOut& r)
{
  auto put = [&v](Sig s, uint64_t val) { v[uint32_t(s)] = val; };
  put(Sig::s1, f1.s);
  put(Sig::e1, f1.e);
  put(Sig::m1, f1.m);
  put(Sig::s2, f2.s);
  put(Sig::e2, f2.e);
  put(Sig::m2, f2.m);
  put(Sig::expdiff, a.d_expdiff);
  put(Sig::bigman, a.d_bigman);
  put(Sig::smallman, a.d_smallman);
  put(Sig::algman, a.d_algman);
  put(Sig::sticky, a.d_sticky);
  put(Sig::addman, r.d_addman);
  put(Sig::norm_shift, encode_norm_shift(r.d_norm_shift));
  put(Sig::s, r.d_result.s);
  put(Sig::e, r.d_result.e);
  put(Sig::m, r.d_result.m);
  put(Sig::overflow, r.d_flags.overflow ? 1 : 0);
  put(Sig::underflow, r.d_flags.underflow ? 1 : 0);
  put(Sig::big_is_f1, a.d_big_is_f1);
  put(Sig::eff_sub, a.d_eff_sub);
  put(Sig::sticky_collapse, a.d_sticky_collapse);
  put(Sig::carry_out, r.d_carry_out);
  put(Sig::norm_bucket, norm_bucket_of(r.d_norm_shift));
  put(Sig::round_inc, r.d_round_inc);
  put(Sig::exact_zero, r.d_flags.exact_zero ? 1 : 0);
}

}  // namespace

uint32_t norm_bucket_of(int32_t norm_shift)
{
  if (norm_shift < 0) return 3;
  if (norm_shift == 0) return 0;
  if (norm_shift == 1) return 1;
  return 2;
}

uint64_t encode_norm_shift(int32_t norm_shift)
{
  return uint64_t(uint8_t(int8_t(norm_shift)));
}

SignalValues impl_eval(const FloatTriple& f1,
                       const FloatTriple& f2,
                       const FloatFormat& fmt,
                       const FaultConfig& faults)
{
  if (!is_normalized(f1, fmt) || !is_normalized(f2, fmt))
  {
    throw DomainError("impl_eval requires normalized operands");
  }
  AlignOut a = align_stage(f1, f2, fmt, faults);
  RoundOut r = addround_stage(a, fmt, faults);
  SignalValues v{};
  fill_values(v, f1, f2, a, r);
  return v;
}

SignalValues spec_eval(const FloatTriple& f1,
                       const FloatTriple& f2,
                       const FloatFormat& fmt)
{
  RefAlign a = ref_align(f1, f2, fmt);
  uint32_t e_big = a.big_is_f1 ? f1.e : f2.e;
  RefRound r = ref_round(a, f1.s, f2.s, e_big, fmt);

  AlignOut ao;
  ao.d_big_is_f1 = a.big_is_f1 ? 1 : 0;
  ao.d_eff_sub = a.eff_sub ? 1 : 0;
  ao.d_sticky_collapse = a.sticky_collapse ? 1 : 0;
  ao.d_expdiff = a.expdiff;
  ao.d_bigman = a.bigman;
  ao.d_smallman = a.smallman;
  ao.d_algman = a.algman;
  ao.d_sticky = a.sticky;

  RoundOut ro;
  ro.d_addman = r.addman;
  ro.d_norm_shift = r.norm_shift;
  ro.d_carry_out = r.carry_out ? 1 : 0;
  ro.d_round_inc = r.round_inc ? 1 : 0;
  ro.d_result = r.result;
  ro.d_flags = r.flags;

  SignalValues v{};
  fill_values(v, f1, f2, ao, ro);
  return v;
}

SignalTrace eval_pair(const FloatTriple& f1_impl,
                      const FloatTriple& f2_impl,
                      const FloatTriple& f1_spec,
                      const FloatTriple& f2_spec,
                      const FloatFormat& fmt,
                      const FaultConfig& faults)
{
  SignalValues iv = impl_eval(f1_impl, f2_impl, fmt, faults);
  SignalValues sv = spec_eval(f1_spec, f2_spec, fmt);
  SignalTrace t;
  for (uint32_t i = 0; i < kSigCount; ++i)
  {
    t.v[uint32_t(Ns::impl) * kSigCount + i] = iv[i];
    t.v[uint32_t(Ns::spec) * kSigCount + i] = sv[i];
  }
  return t;
}

SignalTrace eval_lockstep(const FloatTriple& f1,
                          const FloatTriple& f2,
                          const FloatFormat& fmt,
                          const FaultConfig& faults)
{
  return eval_pair(f1, f2, f1, f2, fmt, faults);
}

SignalTrace eval_impl_only(const FloatTriple& f1,
                           const FloatTriple& f2,
                           const FloatFormat& fmt,
                           const FaultConfig& faults)
{
  SignalValues iv = impl_eval(f1, f2, fmt, faults);
  SignalTrace t;
  t.has_spec = false;
  for (uint32_t i = 0; i < kSigCount; ++i)
  {
    t.v[uint32_t(Ns::impl) * kSigCount + i] = iv[i];
  }
  return t;
}

}  // namespace fpeq
