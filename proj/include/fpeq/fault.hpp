#ifndef FPEQ_FAULT_HPP
#define FPEQ_FAULT_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fpeq/format.hpp"

namespace fpeq {

/** Stage a fault is wired into. */
enum class FaultStage : uint32_t
{
  alignment,
  add_round,
};

/** Injectable design defects. */
enum class FaultKind : uint32_t
{
  sticky_distort,   ///< sticky OR mask shortened by N trailing bits
  ext_misalign,     ///< smaller operand enters alignment without guard offset
  op_select,        ///< magnitude comparison for operand selection negated
  inv_swap,         ///< subtraction operands exchanged on the internal bus
  eq_exp_bug,       ///< equal-exponent tie break drops the mantissa compare
  carry_manip,      ///< constant N added into the extended sum
  norm_shift_bug,   ///< normalization shifter moves N positions too far
  shift_distort,    ///< normalized sum dropped by N positions, sticky lost
  round_rule,       ///< round-to-nearest tie resolved by truncation instead
};

inline constexpr uint32_t kFaultCount = 9;

/** Catalog entry for one fault kind. */
struct FaultInfo
{
  FaultKind d_kind;
  FaultStage d_stage;
  const char* d_id;           ///< command-line identifier
  const char* d_summary;      ///< one-line description
  bool d_has_param;           ///< accepts `=N`
  uint32_t d_default_param;   ///< used when `=N` is omitted
};

const std::array<FaultInfo, kFaultCount>& fault_catalog();
const FaultInfo& fault_info(FaultKind kind);
std::optional<FaultKind> fault_by_id(std::string_view id);

/** Active fault set for one checker run. */
class FaultConfig
{
 public:
  FaultConfig() = default;

  /** Enable `kind`; `param` must satisfy the kind's bounds for `fmt`. */
  void enable(FaultKind kind, uint32_t param, const FloatFormat& fmt);

  /** Parse a command-line item `id` or `id=N` and enable it. */
  void enable_from_arg(std::string_view arg, const FloatFormat& fmt);

  bool has(FaultKind kind) const;
  uint32_t param(FaultKind kind) const;
  bool empty() const;

  /** Enabled kinds in catalog order. */
  std::vector<FaultKind> active() const;

  /** Canonical command-line spellings ("sticky-distort=2") in catalog
   *  order. */
  std::vector<std::string> arg_strings() const;

 private:
  std::array<bool, kFaultCount> d_enabled{};
  std::array<uint32_t, kFaultCount> d_param{};
};

}  // namespace fpeq

#endif
