#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fpeq/error.hpp"
#include "fpeq/impl_adder.hpp"

using namespace fpeq;

namespace {

const FloatFormat kF43 = FloatFormat::make(4, 3);
const FaultConfig kNoFaults;

std::vector<FloatTriple> all_normals(const FloatFormat& fmt)
{
  std::vector<FloatTriple> out;
  for (uint32_t s = 0; s <= 1; ++s)
  {
    for (uint32_t e = 1; e <= fmt.emax(); ++e)
    {
      for (uint32_t m = 0; m <= fmt.man_mask(); ++m)
      {
        out.push_back(FloatTriple{s, e, m});
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("signal dictionary names and widths")
{
  CHECK(sig_by_name("algman") == Sig::algman);
  CHECK(sig_by_name("norm_bucket") == Sig::norm_bucket);
  CHECK_FALSE(sig_by_name("bogus").has_value());
  CHECK(std::string(sig_name(Sig::sticky_collapse)) == "sticky_collapse");

  CHECK(sig_width(Sig::s1, kF43) == 1);
  CHECK(sig_width(Sig::e1, kF43) == 4);
  CHECK(sig_width(Sig::m1, kF43) == 3);
  CHECK(sig_width(Sig::expdiff, kF43) == 4);
  CHECK(sig_width(Sig::bigman, kF43) == 7);
  CHECK(sig_width(Sig::algman, kF43) == 7);
  CHECK(sig_width(Sig::addman, kF43) == 8);
  CHECK(sig_width(Sig::norm_shift, kF43) == 8);
  CHECK(sig_width(Sig::norm_bucket, kF43) == 2);
  CHECK(sig_width(Sig::round_inc, kF43) == 1);

  CHECK(sig_is_input(Sig::m2));
  CHECK_FALSE(sig_is_input(Sig::algman));
  CHECK(sig_is_alignment(Sig::algman));
  CHECK(sig_is_alignment(Sig::big_is_f1));
  CHECK_FALSE(sig_is_alignment(Sig::addman));
  CHECK(sig_is_addround(Sig::round_inc));
  CHECK(sig_is_addround(Sig::m));
  CHECK_FALSE(sig_is_addround(Sig::sticky));
}

TEST_CASE("hex rendering pads to the declared width")
{
  CHECK(hex_value(0, 1) == "0x0");
  CHECK(hex_value(5, 4) == "0x5");
  CHECK(hex_value(0x4, 7) == "0x04");
  CHECK(hex_value(0xff, 8) == "0xff");
  CHECK(hex_value(0x1a, 13) == "0x001a");
}

TEST_CASE("normalization bucket and shift encoding")
{
  CHECK(norm_bucket_of(0) == 0);
  CHECK(norm_bucket_of(1) == 1);
  CHECK(norm_bucket_of(2) == 2);
  CHECK(norm_bucket_of(6) == 2);
  CHECK(norm_bucket_of(-1) == 3);
  CHECK(encode_norm_shift(0) == 0x00);
  CHECK(encode_norm_shift(3) == 0x03);
  CHECK(encode_norm_shift(-1) == 0xff);
}

TEST_CASE("fault-free datapath matches the reference on every signal")
{
  auto normals = all_normals(kF43);
  for (const FloatTriple& a : normals)
  {
    for (const FloatTriple& b : normals)
    {
      REQUIRE(impl_eval(a, b, kF43, kNoFaults) == spec_eval(a, b, kF43));
    }
  }
}

TEST_CASE("frozen signal valuation for a plain addition")
{
  SignalTrace t =
      eval_lockstep(FloatTriple{0, 7, 0}, FloatTriple{0, 3, 0}, kF43,
                    kNoFaults);
  CHECK(t.has_spec);
  auto v = [&](Sig s) { return t.get(Ns::impl, s); };
  CHECK(v(Sig::expdiff) == 4);
  CHECK(v(Sig::bigman) == 0x40);
  CHECK(v(Sig::smallman) == 0x40);
  CHECK(v(Sig::algman) == 0x04);
  CHECK(v(Sig::sticky) == 0);
  CHECK(v(Sig::addman) == 0x44);
  CHECK(v(Sig::norm_shift) == 0);
  CHECK(v(Sig::norm_bucket) == 0);
  CHECK(v(Sig::big_is_f1) == 1);
  CHECK(v(Sig::eff_sub) == 0);
  CHECK(v(Sig::sticky_collapse) == 0);
  CHECK(v(Sig::carry_out) == 0);
  CHECK(v(Sig::round_inc) == 0);
  CHECK(v(Sig::exact_zero) == 0);
  CHECK(v(Sig::s) == 0);
  CHECK(v(Sig::e) == 7);
  CHECK(v(Sig::m) == 0);
  CHECK(v(Sig::overflow) == 0);
  CHECK(v(Sig::underflow) == 0);
  for (uint32_t i = 0; i < kSigCount; ++i)
  {
    REQUIRE(t.get(Ns::impl, Sig(i)) == t.get(Ns::spec, Sig(i)));
  }
}

TEST_CASE("frozen signal valuation for exact cancellation")
{
  SignalTrace t =
      eval_lockstep(FloatTriple{0, 7, 0}, FloatTriple{1, 7, 0}, kF43,
                    kNoFaults);
  auto v = [&](Sig s) { return t.get(Ns::impl, s); };
  CHECK(v(Sig::eff_sub) == 1);
  CHECK(v(Sig::big_is_f1) == 1);
  CHECK(v(Sig::addman) == 0);
  CHECK(v(Sig::norm_shift) == 0);
  CHECK(v(Sig::carry_out) == 0);
  CHECK(v(Sig::round_inc) == 0);
  CHECK(v(Sig::exact_zero) == 1);
  CHECK(v(Sig::s) == 0);
  CHECK(v(Sig::e) == 0);
  CHECK(v(Sig::m) == 0);
  CHECK(v(Sig::underflow) == 0);
}

TEST_CASE("frozen signal valuation for sticky collapse")
{
  SignalTrace t =
      eval_lockstep(FloatTriple{0, 9, 0}, FloatTriple{0, 3, 0}, kF43,
                    kNoFaults);
  auto v = [&](Sig s) { return t.get(Ns::impl, s); };
  CHECK(v(Sig::expdiff) == 6);
  CHECK(v(Sig::sticky_collapse) == 1);
  CHECK(v(Sig::sticky) == 1);
  CHECK(v(Sig::algman) == 0x01);
  CHECK(v(Sig::addman) == 0x41);
  CHECK(v(Sig::round_inc) == 0);
  CHECK(v(Sig::e) == 9);
  CHECK(v(Sig::m) == 0);
}

TEST_CASE("carry propagation renormalizes to the right")
{
  // 1.111*2^0 + 1.111*2^0 = 11.110 -> carry, e bumps, sticky rounding.
  SignalTrace t =
      eval_lockstep(FloatTriple{0, 7, 7}, FloatTriple{0, 7, 7}, kF43,
                    kNoFaults);
  auto v = [&](Sig s) { return t.get(Ns::impl, s); };
  CHECK(v(Sig::carry_out) == 1);
  CHECK(v(Sig::norm_bucket) == 3);
  CHECK(v(Sig::norm_shift) == 0xff);  // -1 in two's complement
  CHECK(v(Sig::e) == 8);
  CHECK(v(Sig::m) == 7);
}

TEST_CASE("independent operand pairs fill the two namespaces")
{
  SignalTrace t = eval_pair(FloatTriple{0, 7, 0}, FloatTriple{0, 3, 0},
                            FloatTriple{0, 9, 0}, FloatTriple{0, 3, 0}, kF43,
                            kNoFaults);
  CHECK(t.get(Ns::impl, Sig::e1) == 7);
  CHECK(t.get(Ns::spec, Sig::e1) == 9);
  CHECK(t.get(Ns::impl, Sig::expdiff) == 4);
  CHECK(t.get(Ns::spec, Sig::expdiff) == 6);
}

TEST_CASE("implementation-only traces advertise no reference namespace")
{
  SignalTrace t = eval_impl_only(FloatTriple{0, 7, 0}, FloatTriple{0, 3, 0},
                                 kF43, kNoFaults);
  CHECK_FALSE(t.has_spec);
  CHECK(t.get(Ns::impl, Sig::e) == 7);
}

TEST_CASE("non-normalized operands are rejected")
{
  CHECK_THROWS_AS(
      impl_eval(FloatTriple{0, 0, 0}, FloatTriple{0, 7, 0}, kF43, kNoFaults),
      DomainError);
  CHECK_THROWS_AS(
      impl_eval(FloatTriple{0, 7, 0}, FloatTriple{0, 15, 0}, kF43, kNoFaults),
      DomainError);
  CHECK_THROWS_AS(spec_eval(FloatTriple{0, 7, 8}, FloatTriple{0, 7, 0}, kF43),
                  DomainError);
}
