#include "fpeq/trace.hpp"

#include <cstdio>

namespace fpeq {

namespace {

struct SigEntry
{
  Sig d_sig;
  const char* d_name;
};

constexpr SigEntry kSigTable[kSigCount] = {
    {Sig::s1, "s1"},
    {Sig::e1, "e1"},
    {Sig::m1, "m1"},
    {Sig::s2, "s2"},
    {Sig::e2, "e2"},
    {Sig::m2, "m2"},
    {Sig::expdiff, "expdiff"},
    {Sig::bigman, "bigman"},
    {Sig::smallman, "smallman"},
    {Sig::algman, "algman"},
    {Sig::sticky, "sticky"},
    {Sig::addman, "addman"},
    {Sig::norm_shift, "norm_shift"},
    {Sig::s, "s"},
    {Sig::e, "e"},
    {Sig::m, "m"},
    {Sig::overflow, "overflow"},
    {Sig::underflow, "underflow"},
    {Sig::big_is_f1, "big_is_f1"},
    {Sig::eff_sub, "eff_sub"},
    {Sig::sticky_collapse, "sticky_collapse"},
    {Sig::carry_out, "carry_out"},
    {Sig::norm_bucket, "norm_bucket"},
    {Sig::round_inc, "round_inc"},
    {Sig::exact_zero, "exact_zero"},
};

}  // namespace

const char* sig_name(Sig s)
{
  return kSigTable[uint32_t(s)].d_name;
}

const char* ns_name(Ns ns)
{
  return ns == Ns::impl ? "impl" : "spec";
}

std::optional<Sig> sig_by_name(std::string_view name)
{
  for (const SigEntry& ent : kSigTable)
  {
    if (name == ent.d_name)
    {
      return ent.d_sig;
    }
  }
  return std::nullopt;
}

uint32_t sig_width(Sig s, const FloatFormat& fmt)
{
  const uint32_t man = fmt.man_bits;
  switch (s)
  {
    case Sig::s1:
    case Sig::s2:
    case Sig::s:
    case Sig::sticky:
    case Sig::overflow:
    case Sig::underflow:
    case Sig::big_is_f1:
    case Sig::eff_sub:
    case Sig::sticky_collapse:
    case Sig::carry_out:
    case Sig::round_inc:
    case Sig::exact_zero: return 1;
    case Sig::e1:
    case Sig::e2:
    case Sig::e:
    case Sig::expdiff: return fmt.exp_bits;
    case Sig::m1:
    case Sig::m2:
    case Sig::m: return man;
    case Sig::bigman:
    case Sig::smallman:
    case Sig::algman: return man + 4;
    case Sig::addman: return man + 5;
    case Sig::norm_shift: return 8;
    case Sig::norm_bucket: return 2;
  }
  return 0;
}

bool sig_is_input(Sig s)
{
  switch (s)
  {
    case Sig::s1:
    case Sig::e1:
    case Sig::m1:
    case Sig::s2:
    case Sig::e2:
    case Sig::m2: return true;
    default: return false;
  }
}

bool sig_is_alignment(Sig s)
{
  switch (s)
  {
    case Sig::expdiff:
    case Sig::bigman:
    case Sig::smallman:
    case Sig::algman:
    case Sig::sticky:
    case Sig::big_is_f1:
    case Sig::eff_sub:
    case Sig::sticky_collapse: return true;
    default: return false;
  }
}

bool sig_is_addround(Sig s)
{
  switch (s)
  {
    case Sig::addman:
    case Sig::norm_shift:
    case Sig::s:
    case Sig::e:
    case Sig::m:
    case Sig::overflow:
    case Sig::underflow:
    case Sig::carry_out:
    case Sig::norm_bucket:
    case Sig::round_inc:
    case Sig::exact_zero: return true;
    default: return false;
  }
}

std::string hex_value(uint64_t value, uint32_t width)
{
  uint32_t digits = (width + 3) / 4;
  if (digits == 0)
  {
    digits = 1;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "0x%0*llx", int(digits),
                static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace fpeq
