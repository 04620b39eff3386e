#include "fpeq/coverage.hpp"

#include <algorithm>

namespace fpeq {

namespace {

/** One-step dependency table from result signals to the stage signals that
 *  produce them. */
const std::vector<Sig>& result_deps(Sig s)
{
  static const std::vector<Sig> kSign = {Sig::eff_sub, Sig::big_is_f1,
                                         Sig::exact_zero};
  static const std::vector<Sig> kExp = {Sig::norm_shift, Sig::norm_bucket,
                                        Sig::carry_out,  Sig::overflow,
                                        Sig::underflow,  Sig::exact_zero};
  static const std::vector<Sig> kMan = {
      Sig::addman, Sig::norm_shift, Sig::norm_bucket,     Sig::round_inc,
      Sig::sticky, Sig::exact_zero, Sig::sticky_collapse};
  static const std::vector<Sig> kNone;
  switch (s)
  {
    case Sig::s: return kSign;
    case Sig::e: return kExp;
    case Sig::m: return kMan;
    default: return kNone;
  }
}

void add_sig(std::vector<Sig>& out, Sig s)
{
  if (std::find(out.begin(), out.end(), s) == out.end())
  {
    out.push_back(s);
  }
}

}  // namespace

const char* cover_status_name(CoverStatus s)
{
  switch (s)
  {
    case CoverStatus::covered: return "covered";
    case CoverStatus::unreachable: return "unreachable";
    case CoverStatus::unknown: return "unknown";
  }
  return "?";
}

std::vector<CoverItem> coverage_catalog()
{
  auto align = Stage::alignment;
  auto addr = Stage::add_round;
  return {
      {"big-select-f1", "operand select picks the first operand", align,
       "impl.big_is_f1 == 1"},
      {"big-select-f2", "operand select picks the second operand", align,
       "impl.big_is_f1 == 0"},
      {"eq-exp-pick-f1", "equal exponents, mantissa compare keeps operand 1",
       align, "impl.e1 == impl.e2 && impl.big_is_f1 == 1"},
      {"eq-exp-pick-f2", "equal exponents, mantissa compare picks operand 2",
       align, "impl.e1 == impl.e2 && impl.big_is_f1 == 0"},
      {"eff-sub-on", "operand signs differ: effective subtraction", align,
       "impl.eff_sub == 1"},
      {"eff-sub-off", "operand signs agree: effective addition", align,
       "impl.eff_sub == 0"},
      {"sticky-set", "alignment shifted a nonzero bit past the register",
       align, "impl.sticky == 1"},
      {"sticky-clear", "alignment lost no bits", align, "impl.sticky == 0"},
      {"collapse-on", "exponent gap collapses the small operand to sticky",
       align, "impl.sticky_collapse == 1"},
      {"collapse-off", "small operand keeps positional bits", align,
       "impl.sticky_collapse == 0"},
      {"carry-out-set", "significand sum carried out", addr,
       "impl.carry_out == 1"},
      {"carry-out-clear", "significand sum stayed in the register", addr,
       "impl.carry_out == 0"},
      {"norm-shift-zero", "sum already normalized", addr,
       "impl.norm_bucket == 0"},
      {"norm-shift-one", "normalization shifted left by one", addr,
       "impl.norm_bucket == 1"},
      {"norm-shift-many", "cancellation shifted left by two or more", addr,
       "impl.norm_bucket == 2"},
      {"round-increment-taken", "rounding incremented the significand", addr,
       "impl.round_inc == 1"},
      {"round-increment-skipped", "rounding kept the significand", addr,
       "impl.round_inc == 0"},
      {"overflow-set", "result saturated at the exponent ceiling", addr,
       "impl.overflow == 1"},
      {"overflow-clear", "no overflow", addr, "impl.overflow == 0"},
      {"underflow-set", "cancellation flushed below the exponent floor",
       addr, "impl.underflow == 1"},
      {"underflow-clear", "no underflow", addr, "impl.underflow == 0"},
      {"exact-zero-set", "operands cancelled exactly", addr,
       "impl.exact_zero == 1"},
      {"exact-zero-clear", "nonzero result", addr, "impl.exact_zero == 0"},
  };
}

double coverage_pct(uint64_t hits, uint64_t total)
{
  if (total == 0)
  {
    return 0.0;
  }
  return 100.0 * double(hits) / double(total);
}

std::vector<Sig> checker_support(const PropertyFile& file)
{
  std::vector<Sig> out;
  for (const Directive& d : file.directives)
  {
    if (d.role != DirectiveRole::assert_prop)
    {
      continue;
    }
    const Property& p = file.target_of(d);
    std::vector<std::pair<Ns, Sig>> named;
    expr_support(p.antecedent, named);
    expr_support(p.consequent, named);
    for (const auto& [ns, sig] : named)
    {
      add_sig(out, sig);
      for (Sig dep : result_deps(sig))
      {
        add_sig(out, dep);
      }
    }
  }
  return out;
}

CoverageReport measure(const PropertyFile& file, const CheckConfig& cfg)
{
  std::vector<CoverItem> catalog = coverage_catalog();

  std::vector<Expr> watches;
  watches.reserve(catalog.size());
  for (const CoverItem& item : catalog)
  {
    Expr e = parse_expression(item.watch);
    elaborate_expr(e, cfg.fmt, /* allow_spec */ !cfg.standalone);
    watches.push_back(std::move(e));
  }

  CheckConfig run_cfg = cfg;
  run_cfg.watches = &watches;

  CoverageReport rep;
  rep.run = check(file, run_cfg);
  rep.total = catalog.size();

  std::vector<Sig> support = checker_support(file);
  const bool exhaustive = cfg.mode.kind == CheckModeKind::exhaustive;

  for (size_t i = 0; i < catalog.size(); ++i)
  {
    CoverItemResult item;
    item.id = catalog[i].id;
    item.stage = catalog[i].stage;
    item.status = rep.run.watch_fired[i] ? CoverStatus::covered
                  : exhaustive           ? CoverStatus::unreachable
                                         : CoverStatus::unknown;

    std::vector<std::pair<Ns, Sig>> watch_sigs;
    expr_support(watches[i], watch_sigs);
    for (const auto& [ns, sig] : watch_sigs)
    {
      if (std::find(support.begin(), support.end(), sig) != support.end())
      {
        item.checked = true;
        break;
      }
    }

    switch (item.status)
    {
      case CoverStatus::covered: ++rep.covered; break;
      case CoverStatus::unreachable: ++rep.unreachable; break;
      case CoverStatus::unknown: ++rep.unknown; break;
    }
    if (item.checked)
    {
      ++rep.checked;
    }
    rep.items.push_back(std::move(item));
  }

  uint64_t covered_and_checked = 0;
  for (const CoverItemResult& item : rep.items)
  {
    if (item.status == CoverStatus::covered && item.checked)
    {
      ++covered_and_checked;
    }
  }
  rep.formal_pct = coverage_pct(covered_and_checked, rep.total);
  rep.stimuli_pct = coverage_pct(rep.covered, rep.total);
  rep.checker_pct = coverage_pct(rep.checked, rep.total);
  return rep;
}

}  // namespace fpeq
