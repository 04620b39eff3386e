#ifndef FPEQ_COMMANDS_HPP
#define FPEQ_COMMANDS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace fpeq {

/**
 * Shared command-line run configuration. String-typed knobs are validated
 * and converted by the command implementations; invalid values raise
 * ConfigError, which the frontend maps to the usage-error exit code.
 *
 * Exit codes: 0 success (all assertions proven / zero mismatches);
 * 1 a checked claim failed; 2 nothing failed but nothing was proven
 * (vacuous); 3 usage or configuration error.
 */
struct RunConfig
{
  uint32_t exp_bits = 4;
  uint32_t man_bits = 3;
  std::vector<std::string> faults;
  std::string corpus;  ///< built-in corpus name
  std::string props;   ///< property file path
  std::string mode = "exhaustive";
  uint64_t samples = 1000000;
  uint64_t seed = 1;
  std::string drive = "lockstep";
  bool standalone = false;
  bool free_override = false;  ///< allow free drive without assumes
  std::string out;             ///< artifact path; stdout when empty
  bool json = false;
  uint32_t workers = 1;
  uint32_t cex_cap = 4;
  bool mutate_reference = false;  ///< oracle-check negative-control hook
};

int cmd_verify(const RunConfig& cfg);
int cmd_faults(const RunConfig& cfg);
int cmd_coverage(const RunConfig& cfg);
int cmd_corpus(const RunConfig& cfg);
int cmd_oracle_check(const RunConfig& cfg);
int cmd_list_faults(const RunConfig& cfg);

}  // namespace fpeq

#endif
