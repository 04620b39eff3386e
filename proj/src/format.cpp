#include "fpeq/format.hpp"

#include "fpeq/error.hpp"

namespace fpeq {

FloatFormat FloatFormat::make(uint32_t exp_bits, uint32_t man_bits)
{
  // man_bits bound keeps the widest intermediate (extended sum shifted left
  // during normalization, up to 2*(man_bits+4) bits) inside uint64_t.
  if (exp_bits < 2 || exp_bits > 12)
  {
    throw ConfigError("exp_bits must be in [2,12], got "
                      + std::to_string(exp_bits));
  }
  if (man_bits < 1 || man_bits > 26)
  {
    throw ConfigError("man_bits must be in [1,26], got "
                      + std::to_string(man_bits));
  }
  return FloatFormat{exp_bits, man_bits};
}

std::string FloatFormat::str() const
{
  return "(" + std::to_string(exp_bits) + "," + std::to_string(man_bits) + ")";
}

uint64_t pack(const FloatTriple& t, const FloatFormat& fmt)
{
  if (t.s > 1 || t.e >= (1u << fmt.exp_bits) || t.m > fmt.man_mask())
  {
    throw DomainError("field out of range for format " + fmt.str());
  }
  return (uint64_t(t.s) << (fmt.exp_bits + fmt.man_bits))
         | (uint64_t(t.e) << fmt.man_bits) | t.m;
}

FloatTriple unpack(uint64_t word, const FloatFormat& fmt)
{
  if (word >> fmt.width())
  {
    throw DomainError("word wider than format " + fmt.str());
  }
  FloatTriple t;
  t.m = uint32_t(word & fmt.man_mask());
  t.e = uint32_t((word >> fmt.man_bits) & ((1u << fmt.exp_bits) - 1));
  t.s = uint32_t(word >> (fmt.exp_bits + fmt.man_bits)) & 1;
  return t;
}

bool is_normalized(const FloatTriple& t, const FloatFormat& fmt)
{
  return t.s <= 1 && t.m <= fmt.man_mask() && t.e >= 1 && t.e <= fmt.emax();
}

ExactValue value_of(const FloatTriple& t, const FloatFormat& fmt)
{
  if (!is_normalized(t, fmt))
  {
    throw DomainError("value_of requires a normalized operand");
  }
  // (1 + m/2^man) * 2^(e - bias) = (2^man + m) * 2^(e - bias - man)
  mpz_class num = (mpz_class(1) << fmt.man_bits) + t.m;
  int64_t p = int64_t(t.e) - fmt.bias() - fmt.man_bits;
  mpq_class q;
  if (p >= 0)
  {
    q = mpq_class(num << p);
  }
  else
  {
    q = mpq_class(num, mpz_class(1) << uint64_t(-p));
    q.canonicalize();
  }
  if (t.s) q = -q;
  return ExactValue{q, false};
}

namespace {
std::string bits(uint64_t v, uint32_t n)
{
  std::string s;
  for (uint32_t i = n; i-- > 0;) s += char('0' + ((v >> i) & 1));
  return s;
}
}  // namespace

std::string triple_str(const FloatTriple& t, const FloatFormat& fmt)
{
  return "(" + std::to_string(t.s) + "," + bits(t.e, fmt.exp_bits) + ","
         + bits(t.m, fmt.man_bits) + ")";
}

}  // namespace fpeq
