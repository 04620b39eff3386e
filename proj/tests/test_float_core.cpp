#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fpeq/error.hpp"
#include "fpeq/float_core.hpp"
#include "fpeq/oracle.hpp"

using namespace fpeq;

namespace {

const FloatFormat kF43 = FloatFormat::make(4, 3);

/** All normalized triples of a format in packed lexicographic order. */
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

TEST_CASE("format factory validates widths")
{
  CHECK(FloatFormat::make(4, 3).bias() == 7);
  CHECK(FloatFormat::make(5, 10).bias() == 15);
  CHECK(FloatFormat::make(8, 23).bias() == 127);
  CHECK(kF43.emax() == 14);
  CHECK(kF43.width() == 8);
  CHECK(kF43.man_mask() == 7);
  CHECK(kF43.normalized_count() == 224);
  CHECK(kF43.str() == "(4,3)");
  CHECK_THROWS_AS(FloatFormat::make(1, 3), ConfigError);
  CHECK_THROWS_AS(FloatFormat::make(13, 3), ConfigError);
  CHECK_THROWS_AS(FloatFormat::make(4, 0), ConfigError);
  CHECK_THROWS_AS(FloatFormat::make(4, 27), ConfigError);
}

TEST_CASE("pack and unpack round-trip")
{
  CHECK(pack(FloatTriple{1, 14, 7}, kF43) == 0xf7);
  CHECK(unpack(0xf7, kF43) == FloatTriple{1, 14, 7});
  CHECK(pack(FloatTriple{0, 7, 0}, kF43) == 0x38);
  for (uint64_t w = 0; w < 256; ++w)
  {
    CHECK(pack(unpack(w, kF43), kF43) == w);
  }
}

TEST_CASE("normalization predicate")
{
  CHECK(is_normalized(FloatTriple{0, 1, 0}, kF43));
  CHECK(is_normalized(FloatTriple{1, 14, 7}, kF43));
  CHECK_FALSE(is_normalized(FloatTriple{0, 0, 0}, kF43));
  CHECK_FALSE(is_normalized(FloatTriple{0, 15, 0}, kF43));
  CHECK_FALSE(is_normalized(FloatTriple{2, 7, 0}, kF43));
  CHECK_FALSE(is_normalized(FloatTriple{0, 7, 8}, kF43));
}

TEST_CASE("exact values of encodings")
{
  CHECK(value_of(FloatTriple{0, 7, 0}, kF43).value == mpq_class(1));
  CHECK(value_of(FloatTriple{1, 8, 4}, kF43).value == mpq_class(-3));
  CHECK(value_of(FloatTriple{0, 1, 0}, kF43).value == mpq_class(1, 64));
  // largest finite: 1.111 * 2^7 = 240
  CHECK(value_of(FloatTriple{0, 14, 7}, kF43).value == mpq_class(240));
  CHECK_THROWS_AS(value_of(FloatTriple{0, 0, 0}, kF43), DomainError);
}

TEST_CASE("sticky shift keeps the sticky slot in place")
{
  // Right shifts OR the dropped bits into the new bottom slot.
  CHECK(sticky_shift(0b1011, -2) == 0b11);
  CHECK(sticky_shift(0b1000, -3) == 0b1);
  CHECK(sticky_shift(0b1000, -1) == 0b100);
  // Left shifts move everything except the bottom slot.
  CHECK(sticky_shift(0b1011, 2) == 0b101001);
  CHECK(sticky_shift(0b1, 3) == 0b1);
  CHECK(sticky_shift(0b10, 1) == 0b100);
}

TEST_CASE("round to nearest-even")
{
  // Tie with even significand: stay.
  CHECK(round_rne(0b1000, 1, 0, 0, kF43) == std::pair<uint64_t, uint32_t>{0b1000, 0});
  // Tie with odd significand: bump to even.
  CHECK(round_rne(0b1001, 1, 0, 0, kF43) == std::pair<uint64_t, uint32_t>{0b1010, 0});
  // Above the halfway point: bump.
  CHECK(round_rne(0b1000, 1, 0, 1, kF43) == std::pair<uint64_t, uint32_t>{0b1001, 0});
  CHECK(round_rne(0b1000, 1, 1, 0, kF43) == std::pair<uint64_t, uint32_t>{0b1001, 0});
  // Below the halfway point: truncate.
  CHECK(round_rne(0b1001, 0, 1, 1, kF43) == std::pair<uint64_t, uint32_t>{0b1001, 0});
  // Increment overflowing the significand renormalizes with carry.
  CHECK(round_rne(0b1111, 1, 1, 0, kF43) == std::pair<uint64_t, uint32_t>{0b1000, 1});
}

TEST_CASE("alignment stage on frozen operands")
{
  // 1.000*2^0 and 1.000*2^-4: shift by 4, no sticky.
  RefAlign a = ref_align(FloatTriple{0, 7, 0}, FloatTriple{0, 3, 0}, kF43);
  CHECK(a.expdiff == 4);
  CHECK(a.big_is_f1);
  CHECK_FALSE(a.eff_sub);
  CHECK_FALSE(a.sticky_collapse);
  CHECK(a.bigman == 0x40);
  CHECK(a.smallman == 0x40);
  CHECK(a.algman == 0x04);
  CHECK(a.sticky == 0);

  // Far-apart exponents collapse the small operand into the sticky slot.
  RefAlign c = ref_align(FloatTriple{0, 9, 0}, FloatTriple{0, 3, 0}, kF43);
  CHECK(c.expdiff == 6);
  CHECK(c.sticky_collapse);
  CHECK(c.sticky == 1);
  CHECK(c.algman == 0x01);

  // Equal exponents: the mantissa comparison picks the larger operand.
  RefAlign t = ref_align(FloatTriple{0, 7, 2}, FloatTriple{1, 7, 5}, kF43);
  CHECK_FALSE(t.big_is_f1);
  CHECK(t.eff_sub);
  CHECK(t.expdiff == 0);
}

TEST_CASE("reference addition on frozen operands")
{
  auto add = [&](FloatTriple a, FloatTriple b) { return ref_add(a, b, kF43); };

  // 1 + 1 = 2
  CHECK(add({0, 7, 0}, {0, 7, 0})
        == std::pair{FloatTriple{0, 8, 0}, AddFlags{}});
  // Tie rounds to even: 1 + 2^-4 stays 1.
  CHECK(add({0, 7, 0}, {0, 3, 0})
        == std::pair{FloatTriple{0, 7, 0}, AddFlags{}});
  // Odd significand bumps on the tie: 1.001 + 2^-4 -> 1.010.
  CHECK(add({0, 7, 1}, {0, 3, 0})
        == std::pair{FloatTriple{0, 7, 2}, AddFlags{}});
  // Saturation on overflow.
  CHECK(add({0, 14, 7}, {0, 14, 7})
        == std::pair{FloatTriple{0, 14, 7}, AddFlags{true, false, false}});
  // Exact cancellation is +0 regardless of operand order.
  CHECK(add({0, 7, 0}, {1, 7, 0})
        == std::pair{FloatTriple{0, 0, 0}, AddFlags{false, false, true}});
  CHECK(add({1, 7, 0}, {0, 7, 0})
        == std::pair{FloatTriple{0, 0, 0}, AddFlags{false, false, true}});
  // Partial cancellation below the normalized range flushes to a signed
  // zero: 1.000*2^-6 - 1.001*2^-6 = -2^-9.
  CHECK(add({0, 1, 0}, {1, 1, 1})
        == std::pair{FloatTriple{1, 0, 0}, AddFlags{false, true, false}});
}

TEST_CASE("reference addition is commutative")
{
  auto normals = all_normals(kF43);
  for (const FloatTriple& a : normals)
  {
    for (const FloatTriple& b : normals)
    {
      REQUIRE(ref_add(a, b, kF43) == ref_add(b, a, kF43));
    }
  }
}

TEST_CASE("negating both operands negates the sum")
{
  auto normals = all_normals(kF43);
  for (const FloatTriple& a : normals)
  {
    for (const FloatTriple& b : normals)
    {
      auto [r, flags] = ref_add(a, b, kF43);
      FloatTriple na{a.s ^ 1, a.e, a.m};
      FloatTriple nb{b.s ^ 1, b.e, b.m};
      auto [nr, nflags] = ref_add(na, nb, kF43);
      REQUIRE(nflags == flags);
      if (flags.exact_zero)
      {
        // Exact cancellation is +0 in both orientations.
        REQUIRE(nr == r);
      }
      else
      {
        REQUIRE(nr == FloatTriple{r.s ^ 1, r.e, r.m});
      }
    }
  }
}

TEST_CASE("oracle agrees with the reference model exhaustively")
{
  auto normals = all_normals(kF43);
  REQUIRE(normals.size() == 224);
  uint64_t pairs = 0;
  uint64_t mismatches = 0;
  for (const FloatTriple& a : normals)
  {
    for (const FloatTriple& b : normals)
    {
      ++pairs;
      if (ref_add(a, b, kF43) != oracle_add(a, b, kF43))
      {
        ++mismatches;
      }
    }
  }
  CHECK(pairs == 50176);
  CHECK(mismatches == 0);
}

TEST_CASE("oracle agrees with the reference model on sampled wide formats")
{
  const FloatFormat wide = FloatFormat::make(5, 10);
  uint64_t state = 7;
  auto next = [&state]() {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  for (int i = 0; i < 20000; ++i)
  {
    FloatTriple a{uint32_t(next() & 1), uint32_t(1 + next() % wide.emax()),
                  uint32_t(next() & wide.man_mask())};
    FloatTriple b{uint32_t(next() & 1), uint32_t(1 + next() % wide.emax()),
                  uint32_t(next() & wide.man_mask())};
    REQUIRE(ref_add(a, b, wide) == oracle_add(a, b, wide));
  }
}
