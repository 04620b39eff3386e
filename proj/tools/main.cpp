/**
 * fpeq — equivalence checking for floating-point adder datapaths.
 *
 * Subcommands:
 *   verify        run a property file against the datapath
 *   faults        run the full fault-detection matrix
 *   coverage      measure condition coverage for a property file
 *   corpus        list or print the built-in property corpora
 *   oracle-check  compare the reference model against the exact oracle
 *   list-faults   print the fault catalog
 */
#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fpeq/commands.hpp"
#include "fpeq/error.hpp"

namespace {

/** Parse "E,M" into the format fields of the run configuration. */
void add_format_flag(CLI::App* app, fpeq::RunConfig& cfg)
{
  app->add_option_function<std::string>(
         "--format",
         [&cfg](const std::string& text) {
           unsigned e = 0;
           unsigned m = 0;
           if (std::sscanf(text.c_str(), "%u,%u", &e, &m) != 2)
           {
             throw CLI::ValidationError(
                 "--format", "expected E,M (e.g. 4,3), got '" + text + "'");
           }
           cfg.exp_bits = e;
           cfg.man_bits = m;
         },
         "exponent,mantissa bit widths (default 4,3)")
      ->type_name("E,M");
}

void add_property_flags(CLI::App* app, fpeq::RunConfig& cfg)
{
  app->add_option("--corpus", cfg.corpus, "built-in property corpus name");
  app->add_option("--props", cfg.props, "path to a property file");
}

void add_run_flags(CLI::App* app, fpeq::RunConfig& cfg)
{
  app->add_option("--mode", cfg.mode, "exhaustive or random")
      ->type_name("MODE");
  app->add_option("--samples", cfg.samples,
                  "sample budget for random mode");
  app->add_option("--seed", cfg.seed, "seed for random mode");
  app->add_option("--drive", cfg.drive,
                  "lockstep (shared stimuli) or free (independent stimuli)")
      ->type_name("DRIVE");
  app->add_option("--fault", cfg.faults,
                  "enable a fault, ID or ID=N (repeatable)")
      ->type_name("ID[=N]");
  app->add_option("--workers", cfg.workers, "worker thread count")
      ->check(CLI::Range(1u, 64u));
  app->add_option("--cex-cap", cfg.cex_cap,
                  "max counterexamples kept per assert");
  app->add_flag("--standalone", cfg.standalone,
                "check the datapath alone, without the reference model");
  app->add_flag("--free-without-assume", cfg.free_override,
                "allow free drive with no assume directives");
}

void add_output_flags(CLI::App* app, fpeq::RunConfig& cfg)
{
  app->add_option("--out", cfg.out, "write the artifact to a file");
  app->add_flag("--json", cfg.json, "emit the artifact as JSON");
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"equivalence checking for floating-point adder datapaths"};
  app.require_subcommand(1);

  fpeq::RunConfig cfg;

  CLI::App* verify =
      app.add_subcommand("verify", "run a property file against the datapath");
  add_format_flag(verify, cfg);
  add_property_flags(verify, cfg);
  add_run_flags(verify, cfg);
  add_output_flags(verify, cfg);

  CLI::App* faults =
      app.add_subcommand("faults", "run the full fault-detection matrix");
  add_format_flag(faults, cfg);
  faults->add_option("--mode", cfg.mode, "exhaustive or random");
  faults->add_option("--samples", cfg.samples,
                     "sample budget for random mode");
  faults->add_option("--seed", cfg.seed,
                     "seed for sampled runs (including escalation)");
  faults->add_option("--workers", cfg.workers, "worker thread count")
      ->check(CLI::Range(1u, 64u));
  faults->add_option("--cex-cap", cfg.cex_cap,
                     "max counterexamples kept per assert");
  add_output_flags(faults, cfg);

  CLI::App* coverage = app.add_subcommand(
      "coverage", "measure condition coverage for a property file");
  add_format_flag(coverage, cfg);
  add_property_flags(coverage, cfg);
  add_run_flags(coverage, cfg);
  add_output_flags(coverage, cfg);

  CLI::App* corpus =
      app.add_subcommand("corpus", "list or print the built-in corpora");
  corpus->add_option("--corpus", cfg.corpus,
                     "corpus name to print (omit to list)");
  add_output_flags(corpus, cfg);

  CLI::App* oracle = app.add_subcommand(
      "oracle-check", "compare the reference model against the exact oracle");
  add_format_flag(oracle, cfg);
  oracle->add_option("--mode", cfg.mode,
                     "exhaustive (small formats) or random");
  oracle->add_option("--samples", cfg.samples,
                     "sample budget when not exhaustive");
  oracle->add_option("--seed", cfg.seed, "seed for sampled pairs");
  oracle->add_flag("--mutate-reference", cfg.mutate_reference,
                   "negative control: perturb the reference result");
  add_output_flags(oracle, cfg);

  CLI::App* list_faults =
      app.add_subcommand("list-faults", "print the fault catalog");
  add_output_flags(list_faults, cfg);

  CLI11_PARSE(app, argc, argv);

  try
  {
    if (verify->parsed())
    {
      return fpeq::cmd_verify(cfg);
    }
    if (faults->parsed())
    {
      return fpeq::cmd_faults(cfg);
    }
    if (coverage->parsed())
    {
      return fpeq::cmd_coverage(cfg);
    }
    if (corpus->parsed())
    {
      return fpeq::cmd_corpus(cfg);
    }
    if (oracle->parsed())
    {
      return fpeq::cmd_oracle_check(cfg);
    }
    if (list_faults->parsed())
    {
      return fpeq::cmd_list_faults(cfg);
    }
  }
  catch (const fpeq::Error& err)
  {
    std::cerr << "error: " << err.what() << "\n";
    return 3;
  }
  return 0;
}
