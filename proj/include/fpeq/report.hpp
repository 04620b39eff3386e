#ifndef FPEQ_REPORT_HPP
#define FPEQ_REPORT_HPP

#include <string>

#include "json.hpp"

#include "fpeq/checker.hpp"
#include "fpeq/coverage.hpp"

namespace fpeq {

using ordered_json = nlohmann::ordered_json;

/**
 * Serialization of checker and coverage results. JSON field order is fixed
 * so identical configurations produce byte-identical documents (only
 * elapsed_seconds varies between runs).
 */

/** {config, directives, cex, elapsed_seconds} */
ordered_json report_to_json(const VerificationReport& rep);

/** {total, covered, unreachable, unknown, checked, formal_pct,
 *  stimuli_pct, checker_pct, items} */
ordered_json coverage_to_json(const CoverageReport& rep);

/** {property, stage, signals: {"impl.s1": "0x0", ...}} */
ordered_json cex_to_json(const Counterexample& cex, const FloatFormat& fmt);

std::string report_to_text(const VerificationReport& rep);
std::string coverage_to_text(const CoverageReport& rep);

/** dump with 2-space indentation and a trailing newline. */
std::string json_to_string(const ordered_json& j);

}  // namespace fpeq

#endif
