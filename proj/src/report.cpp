#include "fpeq/report.hpp"

#include <cmath>
#include <sstream>

namespace fpeq {

namespace {

double round2(double x)
{
  return std::round(x * 100.0) / 100.0;
}

ordered_json config_json(const VerificationReport& rep)
{
  ordered_json cfg;
  cfg["format"] = {{"exp_bits", rep.fmt.exp_bits},
                   {"man_bits", rep.fmt.man_bits}};
  cfg["faults"] = rep.fault_args;
  cfg["mode"] = check_mode_name(rep.mode.kind);
  if (rep.mode.kind == CheckModeKind::random)
  {
    cfg["samples"] = rep.mode.samples;
    cfg["seed"] = rep.mode.seed;
  }
  cfg["drive"] = drive_mode_name(rep.drive);
  cfg["standalone"] = rep.standalone;
  cfg["cex_cap"] = rep.cex_cap;
  return cfg;
}

std::string format_str(const FloatFormat& fmt)
{
  return fmt.str();
}

void signal_values(ordered_json& out, const SignalTrace& t, Ns ns,
                   const FloatFormat& fmt)
{
  for (uint32_t i = 0; i < kSigCount; ++i)
  {
    Sig sig = Sig(i);
    std::string key = std::string(ns_name(ns)) + "." + sig_name(sig);
    out[key] = hex_value(t.get(ns, sig), sig_width(sig, fmt));
  }
}

std::string trace_triple(const SignalTrace& t, Ns ns, bool second,
                         const FloatFormat& fmt)
{
  FloatTriple f{uint32_t(t.get(ns, second ? Sig::s2 : Sig::s1)),
                uint32_t(t.get(ns, second ? Sig::e2 : Sig::e1)),
                uint32_t(t.get(ns, second ? Sig::m2 : Sig::m1))};
  return triple_str(f, fmt);
}

}  // namespace

ordered_json cex_to_json(const Counterexample& cex, const FloatFormat& fmt)
{
  ordered_json j;
  j["property"] = cex.failed_property;
  j["stage"] = stage_name(cex.stage);
  ordered_json sig;
  signal_values(sig, cex.trace, Ns::impl, fmt);
  if (cex.trace.has_spec)
  {
    signal_values(sig, cex.trace, Ns::spec, fmt);
  }
  j["signals"] = std::move(sig);
  return j;
}

ordered_json report_to_json(const VerificationReport& rep)
{
  ordered_json j;
  j["config"] = config_json(rep);
  ordered_json dirs = ordered_json::array();
  for (const DirectiveOutcome& d : rep.directives)
  {
    ordered_json dj;
    dj["name"] = d.name;
    dj["role"] = directive_role_name(d.role);
    dj["status"] = verdict_status_name(d.verdict.status);
    dj["pass"] = d.verdict.pass_count;
    dj["fail"] = d.verdict.fail_count;
    dj["vacuous"] = d.verdict.vacuous_count;
    dirs.push_back(std::move(dj));
  }
  j["directives"] = std::move(dirs);
  ordered_json cexs = ordered_json::array();
  for (const Counterexample& c : rep.cexs)
  {
    cexs.push_back(cex_to_json(c, rep.fmt));
  }
  j["cex"] = std::move(cexs);
  j["elapsed_seconds"] = rep.elapsed_seconds;
  return j;
}

ordered_json coverage_to_json(const CoverageReport& rep)
{
  ordered_json j;
  j["total"] = rep.total;
  j["covered"] = rep.covered;
  j["unreachable"] = rep.unreachable;
  j["unknown"] = rep.unknown;
  j["checked"] = rep.checked;
  j["formal_pct"] = round2(rep.formal_pct);
  j["stimuli_pct"] = round2(rep.stimuli_pct);
  j["checker_pct"] = round2(rep.checker_pct);
  ordered_json items = ordered_json::array();
  for (const CoverItemResult& item : rep.items)
  {
    ordered_json ij;
    ij["id"] = item.id;
    ij["stage"] = stage_name(item.stage);
    ij["status"] = cover_status_name(item.status);
    items.push_back(std::move(ij));
  }
  j["items"] = std::move(items);
  return j;
}

std::string report_to_text(const VerificationReport& rep)
{
  std::ostringstream os;
  const bool sampled = rep.mode.kind == CheckModeKind::random;
  os << "equivalence check: format " << format_str(rep.fmt) << ", mode "
     << check_mode_name(rep.mode.kind);
  if (sampled)
  {
    os << " (" << rep.mode.samples << " samples, seed " << rep.mode.seed
       << ")";
  }
  os << ", drive " << drive_mode_name(rep.drive);
  if (rep.standalone)
  {
    os << ", standalone";
  }
  os << "\n";
  os << "faults: ";
  if (rep.fault_args.empty())
  {
    os << "none";
  }
  else
  {
    for (size_t i = 0; i < rep.fault_args.size(); ++i)
    {
      os << (i ? ", " : "") << rep.fault_args[i];
    }
  }
  os << "\n";
  os << "stimuli: " << rep.enumerated << " enumerated, " << rep.admitted
     << " admitted\n";
  os << "directives:\n";
  for (const DirectiveOutcome& d : rep.directives)
  {
    os << "  " << directive_role_name(d.role) << " " << d.name << ": "
       << verdict_status_name(d.verdict.status);
    if (sampled && d.verdict.status == VerdictStatus::proven)
    {
      os << " (sampled)";
    }
    os << "  [pass " << d.verdict.pass_count << ", fail "
       << d.verdict.fail_count << ", vacuous " << d.verdict.vacuous_count
       << "]\n";
  }
  if (rep.cexs.empty())
  {
    os << "counterexamples: none\n";
  }
  else
  {
    os << "counterexamples (" << rep.cexs.size() << ", cap " << rep.cex_cap
       << " per assertion):\n";
    for (size_t i = 0; i < rep.cexs.size(); ++i)
    {
      const Counterexample& c = rep.cexs[i];
      os << "  #" << (i + 1) << " " << c.failed_property << " ["
         << stage_name(c.stage) << "]\n";
      os << "     impl inputs: f1=" << trace_triple(c.trace, Ns::impl, false, rep.fmt)
         << " f2=" << trace_triple(c.trace, Ns::impl, true, rep.fmt) << "\n";
      if (c.trace.has_spec)
      {
        os << "     spec inputs: f1="
           << trace_triple(c.trace, Ns::spec, false, rep.fmt)
           << " f2=" << trace_triple(c.trace, Ns::spec, true, rep.fmt)
           << "\n";
        os << "     result: impl (s,e,m)=("
           << hex_value(c.trace.get(Ns::impl, Sig::s), 1) << ","
           << hex_value(c.trace.get(Ns::impl, Sig::e),
                        sig_width(Sig::e, rep.fmt))
           << ","
           << hex_value(c.trace.get(Ns::impl, Sig::m),
                        sig_width(Sig::m, rep.fmt))
           << ")  spec (s,e,m)=("
           << hex_value(c.trace.get(Ns::spec, Sig::s), 1) << ","
           << hex_value(c.trace.get(Ns::spec, Sig::e),
                        sig_width(Sig::e, rep.fmt))
           << ","
           << hex_value(c.trace.get(Ns::spec, Sig::m),
                        sig_width(Sig::m, rep.fmt))
           << ")\n";
      }
    }
  }
  os << "elapsed: " << rep.elapsed_seconds << " s\n";
  return os.str();
}

std::string coverage_to_text(const CoverageReport& rep)
{
  std::ostringstream os;
  os << "coverage: " << rep.covered << "/" << rep.total << " covered, "
     << rep.unreachable << " unreachable, " << rep.unknown << " unknown, "
     << rep.checked << " checked\n";
  char buf[96];
  std::snprintf(buf, sizeof(buf),
                "ratios: formal %.2f%%, stimuli %.2f%%, checker %.2f%%\n",
                rep.formal_pct, rep.stimuli_pct, rep.checker_pct);
  os << buf;
  os << "items:\n";
  for (const CoverItemResult& item : rep.items)
  {
    os << "  " << item.id << " [" << stage_name(item.stage)
       << "]: " << cover_status_name(item.status)
       << (item.checked ? ", checked" : ", unchecked") << "\n";
  }
  os << "stimuli: " << rep.run.enumerated << " enumerated, "
     << rep.run.admitted << " admitted\n";
  os << "elapsed: " << rep.run.elapsed_seconds << " s\n";
  return os.str();
}

std::string json_to_string(const ordered_json& j)
{
  return j.dump(2) + "\n";
}

}  // namespace fpeq
