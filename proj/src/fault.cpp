#include "fpeq/fault.hpp"

#include <charconv>

#include "fpeq/error.hpp"

namespace fpeq {

namespace {

const std::array<FaultInfo, kFaultCount> kCatalog = {{
    {FaultKind::sticky_distort, FaultStage::alignment, "sticky-distort",
     "sticky OR over shifted-out bits misses the top N of them", true, 1},
    {FaultKind::ext_misalign, FaultStage::alignment, "ext-misalign",
     "smaller operand extended without the 3-bit guard offset", false, 0},
    {FaultKind::op_select, FaultStage::alignment, "op-select",
     "larger/smaller operand selection negated", false, 0},
    {FaultKind::inv_swap, FaultStage::alignment, "inv-swap",
     "subtraction bus operands exchanged when signs differ", false, 0},
    {FaultKind::eq_exp_bug, FaultStage::alignment, "eq-exp-bug",
     "equal-exponent selection ignores the mantissa comparison", false, 0},
    {FaultKind::carry_manip, FaultStage::add_round, "carry-manip",
     "constant N added into the extended significand sum", true, 1},
    {FaultKind::norm_shift_bug, FaultStage::add_round, "norm-shift",
     "normalization shifts N positions beyond the leading one", true, 1},
    {FaultKind::shift_distort, FaultStage::add_round, "shift-distort",
     "normalized sum shifted right N positions without sticky", true, 1},
    {FaultKind::round_rule, FaultStage::add_round, "round-rule",
     "round-to-nearest tie truncated instead of rounded to even", false, 0},
}};

/** Largest meaningful parameter for a fault kind under `fmt`. */
uint32_t param_limit(FaultKind kind, const FloatFormat& fmt)
{
  const uint32_t w = fmt.man_bits + 4;
  switch (kind)
  {
    case FaultKind::sticky_distort: return w;
    case FaultKind::carry_manip: return (1u << (w + 1)) - 1;
    case FaultKind::norm_shift_bug: return w;
    case FaultKind::shift_distort: return w;
    default: return 0;
  }
}

}  // namespace

const std::array<FaultInfo, kFaultCount>& fault_catalog()
{
  return kCatalog;
}

const FaultInfo& fault_info(FaultKind kind)
{
  return kCatalog[uint32_t(kind)];
}

std::optional<FaultKind> fault_by_id(std::string_view id)
{
  for (const FaultInfo& info : kCatalog)
  {
    if (id == info.d_id)
    {
      return info.d_kind;
    }
  }
  return std::nullopt;
}

void FaultConfig::enable(FaultKind kind, uint32_t param, const FloatFormat& fmt)
{
  const FaultInfo& info = fault_info(kind);
  if (!info.d_has_param)
  {
    if (param != 0)
    {
      throw ConfigError(std::string("fault '") + info.d_id
                        + "' does not take a parameter");
    }
  }
  else
  {
    uint32_t limit = param_limit(kind, fmt);
    if (param < 1 || param > limit)
    {
      throw ConfigError(std::string("fault '") + info.d_id + "' parameter "
                        + std::to_string(param) + " out of range [1, "
                        + std::to_string(limit) + "] for format " + fmt.str());
    }
  }
  d_enabled[uint32_t(kind)] = true;
  d_param[uint32_t(kind)] = info.d_has_param ? param : 0;
}

void FaultConfig::enable_from_arg(std::string_view arg, const FloatFormat& fmt)
{
  std::string_view id = arg;
  uint32_t param = 0;
  bool have_param = false;
  if (size_t eq = arg.find('='); eq != std::string_view::npos)
  {
    id = arg.substr(0, eq);
    std::string_view num = arg.substr(eq + 1);
    auto [ptr, ec] =
        std::from_chars(num.data(), num.data() + num.size(), param);
    if (ec != std::errc() || ptr != num.data() + num.size())
    {
      throw ConfigError(std::string("invalid fault parameter '")
                        + std::string(num) + "'");
    }
    have_param = true;
  }
  std::optional<FaultKind> kind = fault_by_id(id);
  if (!kind)
  {
    throw ConfigError(std::string("unknown fault '") + std::string(id) + "'");
  }
  const FaultInfo& info = fault_info(*kind);
  if (have_param && !info.d_has_param)
  {
    throw ConfigError(std::string("fault '") + info.d_id
                      + "' does not take a parameter");
  }
  enable(*kind, have_param ? param : info.d_default_param, fmt);
}

bool FaultConfig::has(FaultKind kind) const
{
  return d_enabled[uint32_t(kind)];
}

uint32_t FaultConfig::param(FaultKind kind) const
{
  return d_param[uint32_t(kind)];
}

bool FaultConfig::empty() const
{
  for (bool b : d_enabled)
  {
    if (b)
    {
      return false;
    }
  }
  return true;
}

std::vector<FaultKind> FaultConfig::active() const
{
  std::vector<FaultKind> out;
  for (const FaultInfo& info : kCatalog)
  {
    if (d_enabled[uint32_t(info.d_kind)])
    {
      out.push_back(info.d_kind);
    }
  }
  return out;
}

std::vector<std::string> FaultConfig::arg_strings() const
{
  std::vector<std::string> out;
  for (FaultKind kind : active())
  {
    const FaultInfo& info = fault_info(kind);
    std::string s = info.d_id;
    if (info.d_has_param)
    {
      s += "=" + std::to_string(d_param[uint32_t(kind)]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace fpeq
