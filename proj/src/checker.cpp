#include "fpeq/checker.hpp"

#include <algorithm>
#include <chrono>
#include <thread>

#include "fpeq/error.hpp"
#include "fpeq/impl_adder.hpp"

namespace fpeq {

namespace {

/** splitmix64 stream; the per-index seed offset keeps a stimulus's draws
 *  independent of worker partitioning. */
struct SplitMix
{
  uint64_t d_state;

  explicit SplitMix(uint64_t seed, uint64_t index)
      : d_state(seed + index * 0x9e3779b97f4a7c15ull)
  {
  }

  uint64_t next()
  {
    d_state += 0x9e3779b97f4a7c15ull;
    uint64_t z = d_state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

/** i-th normalized triple in packed-word (s, e, m) lexicographic order. */
FloatTriple triple_at(uint64_t i, const FloatFormat& fmt)
{
  uint64_t per_sign = uint64_t(fmt.emax()) << fmt.man_bits;
  uint64_t s = i / per_sign;
  uint64_t r = i % per_sign;
  return FloatTriple{uint32_t(s), uint32_t(1 + (r >> fmt.man_bits)),
                     uint32_t(r & fmt.man_mask())};
}

FloatTriple random_triple(SplitMix& rng, const FloatFormat& fmt)
{
  uint32_t s = uint32_t(rng.next() & 1);
  uint32_t e = uint32_t(1 + rng.next() % fmt.emax());
  uint32_t m = uint32_t(rng.next() & fmt.man_mask());
  return FloatTriple{s, e, m};
}

// Primary-input fields in enumeration significance order.
constexpr std::array<Sig, 6> kInputFields = {Sig::s1, Sig::e1, Sig::m1,
                                             Sig::s2, Sig::e2, Sig::m2};

uint64_t field_range(uint32_t field, const FloatFormat& fmt)
{
  switch (field % 3)
  {
    case 0: return 2;                      // sign
    case 1: return fmt.emax();             // exponent, values 1..emax
    default: return fmt.man_mask() + 1;    // mantissa
  }
}

void set_field(FloatTriple& f1, FloatTriple& f2, uint32_t field, uint64_t raw)
{
  FloatTriple& t = field < 3 ? f1 : f2;
  switch (field % 3)
  {
    case 0: t.s = uint32_t(raw); break;
    case 1: t.e = uint32_t(1 + raw); break;
    default: t.m = uint32_t(raw); break;
  }
}

uint32_t get_field(const FloatTriple& f1, const FloatTriple& f2,
                   uint32_t field)
{
  const FloatTriple& t = field < 3 ? f1 : f2;
  switch (field % 3)
  {
    case 0: return t.s;
    case 1: return t.e;
    default: return t.m;
  }
}

/** Primary-input stimulus for one evaluation. */
struct Stimulus
{
  FloatTriple f1_impl, f2_impl, f1_spec, f2_spec;
};

/** Stimulus-space geometry plus index decoding. */
struct Space
{
  FloatFormat fmt;
  DriveMode drive;
  bool standalone;
  std::array<bool, 6> tied{};
  uint64_t singles = 0;     // normalized triples per operand
  uint64_t pairs = 0;       // operand pairs per model
  uint64_t inner = 1;       // untied free-mode combinations
  uint64_t total = 0;

  Space(const FloatFormat& format, DriveMode drive_mode, bool impl_only,
        const std::array<bool, 6>& ties)
      : fmt(format), drive(drive_mode), standalone(impl_only), tied(ties)
  {
    singles = fmt.normalized_count() / 1;
    pairs = singles * singles;
    if (drive == DriveMode::free && !standalone)
    {
      for (uint32_t f = 0; f < 6; ++f)
      {
        if (!tied[f])
        {
          inner *= field_range(f, fmt);
        }
      }
      total = pairs * inner;
    }
    else
    {
      total = pairs;
    }
  }

  Stimulus decode(uint64_t idx) const
  {
    Stimulus st;
    if (drive == DriveMode::free && !standalone)
    {
      uint64_t pair_idx = idx / inner;
      uint64_t inner_idx = idx % inner;
      st.f1_spec = triple_at(pair_idx / singles, fmt);
      st.f2_spec = triple_at(pair_idx % singles, fmt);
      st.f1_impl = st.f1_spec;
      st.f2_impl = st.f2_spec;
      for (int f = 5; f >= 0; --f)
      {
        if (tied[uint32_t(f)])
        {
          continue;
        }
        uint64_t range = field_range(uint32_t(f), fmt);
        set_field(st.f1_impl, st.f2_impl, uint32_t(f), inner_idx % range);
        inner_idx /= range;
      }
    }
    else
    {
      st.f1_impl = triple_at(idx / singles, fmt);
      st.f2_impl = triple_at(idx % singles, fmt);
      st.f1_spec = st.f1_impl;
      st.f2_spec = st.f2_impl;
    }
    return st;
  }

  Stimulus sample(uint64_t idx, uint64_t seed) const
  {
    SplitMix rng(seed, idx);
    Stimulus st;
    st.f1_spec = random_triple(rng, fmt);
    st.f2_spec = random_triple(rng, fmt);
    st.f1_impl = st.f1_spec;
    st.f2_impl = st.f2_spec;
    if (drive == DriveMode::free && !standalone)
    {
      for (uint32_t f = 0; f < 6; ++f)
      {
        if (!tied[f])
        {
          uint64_t range = field_range(f, fmt);
          set_field(st.f1_impl, st.f2_impl, f, rng.next() % range);
        }
      }
    }
    return st;
  }
};

struct LocalAccum
{
  std::vector<std::array<uint64_t, 3>> counters;  // pass, fail, vacuous
  std::vector<std::vector<Counterexample>> cexs;  // per directive
  std::vector<char> watch_fired;
  uint64_t admitted = 0;

  LocalAccum(size_t directives, size_t watches)
      : counters(directives, {0, 0, 0}),
        cexs(directives),
        watch_fired(watches, 0)
  {
  }
};

SignalTrace build_trace(const Stimulus& st, const CheckConfig& cfg)
{
  if (cfg.standalone)
  {
    return eval_impl_only(st.f1_impl, st.f2_impl, cfg.fmt, cfg.faults);
  }
  return eval_pair(st.f1_impl, st.f2_impl, st.f1_spec, st.f2_spec, cfg.fmt,
                   cfg.faults);
}

void run_range(const PropertyFile& file, const CheckConfig& cfg,
               const Space& space, uint64_t lo, uint64_t hi,
               LocalAccum& accum)
{
  const bool random = cfg.mode.kind == CheckModeKind::random;
  const size_t n_dir = file.directives.size();
  for (uint64_t idx = lo; idx < hi; ++idx)
  {
    Stimulus st =
        random ? space.sample(idx, cfg.mode.seed) : space.decode(idx);
    SignalTrace trace = build_trace(st, cfg);

    bool admitted = true;
    for (size_t d = 0; d < n_dir; ++d)
    {
      const Directive& dir = file.directives[d];
      if (dir.role != DirectiveRole::assume_prop)
      {
        continue;
      }
      EvalResult r = eval_property(file.target_of(dir), trace);
      ++accum.counters[d][uint32_t(r)];
      if (r == EvalResult::fail)
      {
        admitted = false;
      }
    }
    if (!admitted)
    {
      continue;
    }
    ++accum.admitted;

    for (size_t d = 0; d < n_dir; ++d)
    {
      const Directive& dir = file.directives[d];
      if (dir.role == DirectiveRole::assume_prop)
      {
        continue;
      }
      EvalResult r = eval_property(file.target_of(dir), trace);
      ++accum.counters[d][uint32_t(r)];
      if (r == EvalResult::fail && dir.role == DirectiveRole::assert_prop
          && accum.cexs[d].size() < cfg.cex_cap)
      {
        Counterexample cex;
        cex.trace = trace;
        cex.failed_property = dir.target;
        cex.index = idx;
        accum.cexs[d].push_back(std::move(cex));
      }
    }
    if (cfg.watches != nullptr)
    {
      for (size_t w = 0; w < cfg.watches->size(); ++w)
      {
        if (!accum.watch_fired[w] && eval_expr((*cfg.watches)[w], trace))
        {
          accum.watch_fired[w] = 1;
        }
      }
    }
  }
}

bool expr_is_const_true(const Expr& e)
{
  for (const Term& t : e.terms)
  {
    switch (t.kind)
    {
      case TermKind::const_true: break;
      case TermKind::group:
        if (!expr_is_const_true(*t.group))
        {
          return false;
        }
        break;
      case TermKind::equality: return false;
    }
  }
  return true;
}

/** Collect equality terms through grouping; false if anything else found. */
bool flatten_equalities(const Expr& e, std::vector<const Term*>& out)
{
  for (const Term& t : e.terms)
  {
    switch (t.kind)
    {
      case TermKind::const_true: break;
      case TermKind::group:
        if (!flatten_equalities(*t.group, out))
        {
          return false;
        }
        break;
      case TermKind::equality: out.push_back(&t); break;
    }
  }
  return true;
}

std::optional<uint32_t> input_field_index(Sig s)
{
  for (uint32_t f = 0; f < kInputFields.size(); ++f)
  {
    if (kInputFields[f] == s)
    {
      return f;
    }
  }
  return std::nullopt;
}

}  // namespace

const char* drive_mode_name(DriveMode m)
{
  return m == DriveMode::lockstep ? "lockstep" : "free";
}

const char* check_mode_name(CheckModeKind m)
{
  return m == CheckModeKind::exhaustive ? "exhaustive" : "random";
}

const char* stage_name(Stage s)
{
  switch (s)
  {
    case Stage::alignment: return "alignment";
    case Stage::add_round: return "add-round";
    case Stage::unattributed: return "unattributed";
  }
  return "?";
}

const char* verdict_status_name(VerdictStatus s)
{
  switch (s)
  {
    case VerdictStatus::proven: return "proven";
    case VerdictStatus::failed: return "failed";
    case VerdictStatus::vacuous: return "vacuous";
  }
  return "?";
}

bool VerificationReport::all_asserts_proven() const
{
  bool any = false;
  for (const DirectiveOutcome& d : directives)
  {
    if (d.role != DirectiveRole::assert_prop)
    {
      continue;
    }
    any = true;
    if (d.verdict.status != VerdictStatus::proven)
    {
      return false;
    }
  }
  return any;
}

bool VerificationReport::any_assert_failed() const
{
  for (const DirectiveOutcome& d : directives)
  {
    if (d.role == DirectiveRole::assert_prop
        && d.verdict.status == VerdictStatus::failed)
    {
      return true;
    }
  }
  return false;
}

bool is_alignment_property(const Property& p)
{
  std::vector<std::pair<Ns, Sig>> support;
  expr_support(p.consequent, support);
  for (const auto& [ns, sig] : support)
  {
    if (sig_is_alignment(sig))
    {
      return true;
    }
  }
  return false;
}

std::array<bool, 6> extract_input_ties(const PropertyFile& file)
{
  std::array<bool, 6> tied{};
  for (const Directive& dir : file.directives)
  {
    if (dir.role != DirectiveRole::assume_prop)
    {
      continue;
    }
    const Property& p = file.target_of(dir);
    if (!expr_is_const_true(p.antecedent))
    {
      continue;
    }
    std::vector<const Term*> eqs;
    if (!flatten_equalities(p.consequent, eqs))
    {
      continue;
    }
    std::array<bool, 6> local{};
    bool shaped = true;
    for (const Term* t : eqs)
    {
      const Atom& a = t->lhs;
      const Atom& b = t->rhs;
      if (a.kind != AtomKind::signal_ref || b.kind != AtomKind::signal_ref
          || a.sig != b.sig || a.ns == b.ns)
      {
        shaped = false;
        break;
      }
      std::optional<uint32_t> f = input_field_index(a.sig);
      if (!f)
      {
        shaped = false;
        break;
      }
      local[*f] = true;
    }
    if (!shaped)
    {
      continue;  // not a pure input tie: stays a runtime filter
    }
    for (uint32_t f = 0; f < 6; ++f)
    {
      tied[f] = tied[f] || local[f];
    }
  }
  return tied;
}

uint64_t stimulus_space_size(const PropertyFile& file, const CheckConfig& cfg)
{
  Space space(cfg.fmt, cfg.drive, cfg.standalone, extract_input_ties(file));
  return space.total;
}

VerificationReport check(const PropertyFile& file, const CheckConfig& cfg)
{
  if (cfg.standalone && cfg.drive == DriveMode::free)
  {
    throw ConfigError("standalone runs use lockstep drive");
  }
  elaborate(file, cfg.fmt, !cfg.standalone);

  size_t assume_count = 0;
  for (const Directive& d : file.directives)
  {
    if (d.role == DirectiveRole::assume_prop)
    {
      ++assume_count;
    }
  }
  if (cfg.drive == DriveMode::free && assume_count == 0
      && !cfg.allow_free_without_assume)
  {
    throw ConfigError(
        "free drive mode requires at least one assume directive "
        "(or the explicit unconstrained-inputs override)");
  }

  Space space(cfg.fmt, cfg.drive, cfg.standalone, extract_input_ties(file));

  uint64_t total;
  if (cfg.mode.kind == CheckModeKind::exhaustive)
  {
    if (space.total > cfg.exhaustive_ceiling)
    {
      throw ConfigError(
          "stimulus space of " + std::to_string(space.total)
          + " exceeds the exhaustive ceiling of "
          + std::to_string(cfg.exhaustive_ceiling)
          + "; use random mode with a sample budget for this format");
    }
    total = space.total;
  }
  else
  {
    if (cfg.mode.samples == 0)
    {
      throw ConfigError("random mode requires a nonzero sample count");
    }
    total = cfg.mode.samples;
  }

  auto t0 = std::chrono::steady_clock::now();

  const size_t n_dir = file.directives.size();
  const size_t n_watch = cfg.watches != nullptr ? cfg.watches->size() : 0;
  uint32_t workers = std::max(1u, cfg.workers);

  std::vector<LocalAccum> accums;
  accums.reserve(workers);
  for (uint32_t w = 0; w < workers; ++w)
  {
    accums.emplace_back(n_dir, n_watch);
  }

  uint64_t chunk = workers == 0 ? total : (total + workers - 1) / workers;
  if (workers == 1)
  {
    run_range(file, cfg, space, 0, total, accums[0]);
  }
  else
  {
    std::vector<std::thread> threads;
    for (uint32_t w = 0; w < workers; ++w)
    {
      uint64_t lo = std::min(total, uint64_t(w) * chunk);
      uint64_t hi = std::min(total, lo + chunk);
      threads.emplace_back([&, w, lo, hi]() {
        run_range(file, cfg, space, lo, hi, accums[w]);
      });
    }
    for (std::thread& t : threads)
    {
      t.join();
    }
  }

  VerificationReport rep;
  rep.fmt = cfg.fmt;
  rep.fault_args = cfg.faults.arg_strings();
  rep.mode = cfg.mode;
  rep.drive = cfg.drive;
  rep.standalone = cfg.standalone;
  rep.cex_cap = cfg.cex_cap;
  rep.enumerated = total;
  rep.watch_fired.assign(n_watch, false);

  std::vector<std::array<uint64_t, 3>> counters(n_dir, {0, 0, 0});
  for (const LocalAccum& a : accums)
  {
    rep.admitted += a.admitted;
    for (size_t d = 0; d < n_dir; ++d)
    {
      for (int k = 0; k < 3; ++k)
      {
        counters[d][size_t(k)] += a.counters[d][size_t(k)];
      }
    }
    for (size_t w = 0; w < n_watch; ++w)
    {
      if (a.watch_fired[w])
      {
        rep.watch_fired[w] = true;
      }
    }
  }

  for (size_t d = 0; d < n_dir; ++d)
  {
    const Directive& dir = file.directives[d];
    DirectiveOutcome out;
    out.name = dir.target;
    out.role = dir.role;
    out.verdict.pass_count = counters[d][uint32_t(EvalResult::pass)];
    out.verdict.fail_count = counters[d][uint32_t(EvalResult::fail)];
    out.verdict.vacuous_count = counters[d][uint32_t(EvalResult::vacuous)];
    out.verdict.status = out.verdict.fail_count > 0 ? VerdictStatus::failed
                         : out.verdict.pass_count > 0
                             ? VerdictStatus::proven
                             : VerdictStatus::vacuous;
    rep.directives.push_back(std::move(out));
  }

  // Stage attribution: an alignment-stage property owns its failures; a
  // result-stage property inherits "alignment" when some alignment-stage
  // assertion failed too (the upstream defect explains the downstream
  // mismatch), and is unattributed when no alignment-stage assertion was
  // present to decide.
  bool align_present = false;
  bool align_failed = false;
  for (size_t d = 0; d < n_dir; ++d)
  {
    const Directive& dir = file.directives[d];
    if (dir.role != DirectiveRole::assert_prop)
    {
      continue;
    }
    if (is_alignment_property(file.target_of(dir)))
    {
      align_present = true;
      if (rep.directives[d].verdict.status == VerdictStatus::failed)
      {
        align_failed = true;
      }
    }
  }

  // Merge per-directive counterexamples by global enumeration index;
  // worker chunks are contiguous, so concatenation in worker order is
  // already sorted.
  for (size_t d = 0; d < n_dir; ++d)
  {
    const Directive& dir = file.directives[d];
    if (dir.role != DirectiveRole::assert_prop)
    {
      continue;
    }
    Stage stage = is_alignment_property(file.target_of(dir))
                      ? Stage::alignment
                  : !align_present ? Stage::unattributed
                  : align_failed   ? Stage::alignment
                                   : Stage::add_round;
    std::vector<Counterexample> merged;
    for (LocalAccum& a : accums)
    {
      for (Counterexample& c : a.cexs[d])
      {
        if (merged.size() >= cfg.cex_cap)
        {
          break;
        }
        c.stage = stage;
        merged.push_back(std::move(c));
      }
    }
    for (Counterexample& c : merged)
    {
      rep.cexs.push_back(std::move(c));
    }
  }

  auto t1 = std::chrono::steady_clock::now();
  rep.elapsed_seconds = std::chrono::duration<double>(t1 - t0).count();
  return rep;
}

namespace {

const Property& property_by_name(const PropertyFile& file,
                                 const std::string& name)
{
  for (const Property& p : file.properties)
  {
    if (p.name == name)
    {
      return p;
    }
  }
  throw Error("counterexample references unknown property '" + name + "'");
}

struct ShrinkContext
{
  const PropertyFile& file;
  const CheckConfig& cfg;
  const Property& prop;

  /** Rebuild the trace; nullopt unless the stimulus is still admitted and
   *  still fails the property. */
  std::optional<SignalTrace> failing_trace(const Stimulus& st) const
  {
    SignalTrace trace = build_trace(st, cfg);
    for (const Directive& d : file.directives)
    {
      if (d.role == DirectiveRole::assume_prop
          && eval_property(file.target_of(d), trace) == EvalResult::fail)
      {
        return std::nullopt;
      }
    }
    if (eval_property(prop, trace) != EvalResult::fail)
    {
      return std::nullopt;
    }
    return trace;
  }
};

/** Apply one knob move to the chosen models; ns_mask bit0 = impl,
 *  bit1 = spec. */
Stimulus with_field(const Stimulus& st, uint32_t field, uint64_t raw,
                    uint32_t ns_mask)
{
  Stimulus out = st;
  if (ns_mask & 1)
  {
    set_field(out.f1_impl, out.f2_impl, field, raw);
  }
  if (ns_mask & 2)
  {
    set_field(out.f1_spec, out.f2_spec, field, raw);
  }
  return out;
}

/** Greedy minimization of one (field, model-set) knob; true if changed. */
bool shrink_knob(Stimulus& st, uint32_t field, uint32_t ns_mask,
                 const ShrinkContext& ctx, SignalTrace& best)
{
  const FloatFormat& fmt = ctx.cfg.fmt;
  uint32_t cur = ns_mask & 1 ? get_field(st.f1_impl, st.f2_impl, field)
                             : get_field(st.f1_spec, st.f2_spec, field);
  bool changed = false;
  auto try_value = [&](uint32_t value) -> bool {
    // raw encoding: exponents are stored off-by-one in the mixed radix
    uint64_t raw = field % 3 == 1 ? uint64_t(value) - 1 : uint64_t(value);
    Stimulus cand = with_field(st, field, raw, ns_mask);
    std::optional<SignalTrace> t = ctx.failing_trace(cand);
    if (!t)
    {
      return false;
    }
    st = cand;
    best = *t;
    cur = value;
    changed = true;
    return true;
  };

  switch (field % 3)
  {
    case 0:  // sign: prefer positive
      if (cur != 0)
      {
        try_value(0);
      }
      break;
    case 1:  // exponent: walk toward the bias
    {
      uint32_t bias = fmt.bias();
      while (cur != bias)
      {
        uint32_t next = cur < bias ? cur + 1 : cur - 1;
        if (!try_value(next))
        {
          break;
        }
      }
      break;
    }
    default:  // mantissa: zero, else clear bits high to low
      if (cur != 0 && !try_value(0))
      {
        for (int bit = int(fmt.man_bits) - 1; bit >= 0; --bit)
        {
          if (cur & (1u << bit))
          {
            try_value(cur & ~(1u << bit));
          }
        }
      }
      break;
  }
  return changed;
}

}  // namespace

Counterexample shrink(const Counterexample& cex, const PropertyFile& file,
                      const CheckConfig& cfg)
{
  const Property& prop = property_by_name(file, cex.failed_property);
  ShrinkContext ctx{file, cfg, prop};

  Stimulus st;
  st.f1_impl = FloatTriple{uint32_t(cex.trace.get(Ns::impl, Sig::s1)),
                           uint32_t(cex.trace.get(Ns::impl, Sig::e1)),
                           uint32_t(cex.trace.get(Ns::impl, Sig::m1))};
  st.f2_impl = FloatTriple{uint32_t(cex.trace.get(Ns::impl, Sig::s2)),
                           uint32_t(cex.trace.get(Ns::impl, Sig::e2)),
                           uint32_t(cex.trace.get(Ns::impl, Sig::m2))};
  if (cex.trace.has_spec)
  {
    st.f1_spec = FloatTriple{uint32_t(cex.trace.get(Ns::spec, Sig::s1)),
                             uint32_t(cex.trace.get(Ns::spec, Sig::e1)),
                             uint32_t(cex.trace.get(Ns::spec, Sig::m1))};
    st.f2_spec = FloatTriple{uint32_t(cex.trace.get(Ns::spec, Sig::s2)),
                             uint32_t(cex.trace.get(Ns::spec, Sig::e2)),
                             uint32_t(cex.trace.get(Ns::spec, Sig::m2))};
  }
  else
  {
    st.f1_spec = st.f1_impl;
    st.f2_spec = st.f2_impl;
  }

  std::optional<SignalTrace> initial = ctx.failing_trace(st);
  if (!initial)
  {
    throw Error("shrink precondition violated: counterexample for '"
                + cex.failed_property + "' does not fail under this config");
  }
  SignalTrace best = *initial;

  // Tied fields move in both models at once; in free mode, untied fields
  // get an impl-only and then a spec-only knob.
  std::array<bool, 6> tied;
  if (cfg.drive == DriveMode::lockstep || cfg.standalone)
  {
    tied.fill(true);
  }
  else
  {
    tied = extract_input_ties(file);
  }

  // Knob order: signs, then exponents, then mantissas, operand 1 before
  // operand 2; repeated to a fixed point.
  constexpr std::array<uint32_t, 6> kKnobOrder = {0, 3, 1, 4, 2, 5};
  bool changed = true;
  while (changed)
  {
    changed = false;
    for (uint32_t field : kKnobOrder)
    {
      if (tied[field])
      {
        changed |= shrink_knob(st, field, 3, ctx, best);
      }
      else
      {
        changed |= shrink_knob(st, field, 1, ctx, best);
        changed |= shrink_knob(st, field, 2, ctx, best);
      }
    }
  }

  Counterexample out = cex;
  out.trace = best;
  return out;
}

EvalResult replay(const Counterexample& cex, const PropertyFile& file)
{
  return eval_property(property_by_name(file, cex.failed_property),
                       cex.trace);
}

}  // namespace fpeq
