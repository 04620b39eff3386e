#ifndef FPEQ_COVERAGE_HPP
#define FPEQ_COVERAGE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fpeq/checker.hpp"

namespace fpeq {

/**
 * Structural cover-item catalog over the implementation adder: one item per
 * outcome of every two-way pipeline decision (plus the three normalization
 * shift buckets), with reachability measured on the checker's enumeration
 * and "checked" approximated by the syntactic signal support of assert
 * directives.
 */

enum class CoverStatus : uint32_t
{
  covered,      ///< watch fired on at least one admitted stimulus
  unreachable,  ///< exhaustive mode: watch fired on none
  unknown,      ///< random mode: not observed, reachability undecided
};

const char* cover_status_name(CoverStatus s);

struct CoverItem
{
  std::string id;
  std::string description;
  Stage stage = Stage::alignment;
  std::string watch;  ///< predicate in the property grammar, impl.* only
};

/** Fixed catalog; ids and order are stable across runs and formats. */
std::vector<CoverItem> coverage_catalog();

struct CoverItemResult
{
  std::string id;
  Stage stage = Stage::alignment;
  CoverStatus status = CoverStatus::unknown;
  bool checked = false;
};

struct CoverageReport
{
  uint64_t total = 0;
  uint64_t covered = 0;
  uint64_t unreachable = 0;
  uint64_t unknown = 0;
  uint64_t checked = 0;
  double formal_pct = 0.0;   ///< 100 * |covered ∩ checked| / total
  double stimuli_pct = 0.0;  ///< 100 * covered / total
  double checker_pct = 0.0;  ///< 100 * checked / total
  std::vector<CoverItemResult> items;
  VerificationReport run;  ///< underlying checker run
};

/** The three ratio formulas (0 when total is 0). */
double coverage_pct(uint64_t hits, uint64_t total);

/**
 * Run the checker with the catalog's watches attached and classify every
 * item. Items are "checked" when their watch's signals intersect the
 * one-step-expanded signal support of some assert directive.
 */
CoverageReport measure(const PropertyFile& file, const CheckConfig& cfg);

/**
 * Result-signal dependency expansion used by the "checked" approximation:
 * s, e and m map to the stage signals that feed them; other signals map to
 * themselves only.
 */
std::vector<Sig> checker_support(const PropertyFile& file);

}  // namespace fpeq

#endif
