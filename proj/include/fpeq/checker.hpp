#ifndef FPEQ_CHECKER_HPP
#define FPEQ_CHECKER_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fpeq/fault.hpp"
#include "fpeq/format.hpp"
#include "fpeq/property.hpp"
#include "fpeq/trace.hpp"

namespace fpeq {

/**
 * Equivalence-checking driver: enumerates stimuli, evaluates directives,
 * collects and shrinks counterexamples, and localizes failures to pipeline
 * stages. Exhaustive enumeration over the admitted space is a complete
 * decision procedure for these combinational models, so "proven" carries
 * its full meaning whenever the mode is exhaustive.
 */

enum class CheckModeKind : uint32_t
{
  exhaustive,
  random,
};

struct CheckMode
{
  CheckModeKind kind = CheckModeKind::exhaustive;
  uint64_t samples = 0;  ///< random mode only
  uint64_t seed = 0;     ///< random mode only
};

/**
 * lockstep: both models share identical primary inputs.
 * free: independent primary inputs per model, pruned by assume directives.
 */
enum class DriveMode : uint32_t
{
  lockstep,
  free,
};

const char* drive_mode_name(DriveMode m);
const char* check_mode_name(CheckModeKind m);

/** Pipeline stage a failure is attributed to. */
enum class Stage : uint32_t
{
  alignment,
  add_round,
  unattributed,
};

const char* stage_name(Stage s);

enum class VerdictStatus : uint32_t
{
  proven,
  failed,
  vacuous,
};

const char* verdict_status_name(VerdictStatus s);

/** Aggregated outcome of one directive over the admitted stimulus space. */
struct PropertyVerdict
{
  VerdictStatus status = VerdictStatus::vacuous;
  uint64_t pass_count = 0;
  uint64_t fail_count = 0;
  uint64_t vacuous_count = 0;
};

struct DirectiveOutcome
{
  std::string name;  ///< target property name
  DirectiveRole role = DirectiveRole::assert_prop;
  PropertyVerdict verdict;
};

/** A stimulus on which an asserted property fails. */
struct Counterexample
{
  SignalTrace trace;
  std::string failed_property;
  Stage stage = Stage::unattributed;
  uint64_t index = 0;  ///< global enumeration index (merge order)
};

struct CheckConfig
{
  FloatFormat fmt;
  FaultConfig faults;
  CheckMode mode;
  DriveMode drive = DriveMode::lockstep;
  /** Implementation-only run: no reference namespace in traces; properties
   *  and watches may reference impl.* signals only. */
  bool standalone = false;
  uint32_t workers = 1;
  uint32_t cex_cap = 4;
  uint64_t exhaustive_ceiling = uint64_t(1) << 26;
  bool allow_free_without_assume = false;
  /** Optional coverage watches, evaluated on every admitted stimulus;
   *  borrowed, must outlive check(). */
  const std::vector<Expr>* watches = nullptr;

  explicit CheckConfig(const FloatFormat& format) : fmt(format) {}
};

struct VerificationReport
{
  // configuration echo (worker count deliberately excluded: it must never
  // influence results)
  FloatFormat fmt;
  std::vector<std::string> fault_args;
  CheckMode mode;
  DriveMode drive = DriveMode::lockstep;
  bool standalone = false;
  uint32_t cex_cap = 4;

  std::vector<DirectiveOutcome> directives;
  std::vector<Counterexample> cexs;
  std::vector<bool> watch_fired;  ///< parallel to CheckConfig::watches
  uint64_t enumerated = 0;
  uint64_t admitted = 0;
  double elapsed_seconds = 0.0;

  bool all_asserts_proven() const;
  bool any_assert_failed() const;
};

/**
 * Run the checker over `file` under `cfg`.
 *
 * A stimulus is admitted iff no assume directive fails on its trace; every
 * assert/cover directive is evaluated on each admitted stimulus. Per assert,
 * the first `cex_cap` counterexamples in enumeration order are kept. Results
 * are independent of `workers`.
 */
VerificationReport check(const PropertyFile& file, const CheckConfig& cfg);

/**
 * Greedily minimize a counterexample's primary inputs (signs to 0,
 * exponents stepped toward the bias, mantissas toward 0) while it stays
 * admitted and still fails its property. Deterministic.
 */
Counterexample shrink(const Counterexample& cex, const PropertyFile& file,
                      const CheckConfig& cfg);

/** Re-evaluate a counterexample's property on its stored trace. */
EvalResult replay(const Counterexample& cex, const PropertyFile& file);

/**
 * True if the property's consequent names any alignment-stage signal;
 * such properties attribute their failures to the alignment stage.
 */
bool is_alignment_property(const Property& p);

/** Total stimulus count for a drive mode under `file`'s assumes. */
uint64_t stimulus_space_size(const PropertyFile& file, const CheckConfig& cfg);

/**
 * Per-field input tie flags implied by fully tie-shaped assume directives
 * ("1 |-> impl.x == spec.x && ..."), in order s1,e1,m1,s2,e2,m2. Free-mode
 * enumeration collapses tied fields; all other assumes filter at runtime.
 */
std::array<bool, 6> extract_input_ties(const PropertyFile& file);

}  // namespace fpeq

#endif
