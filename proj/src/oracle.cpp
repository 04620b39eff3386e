#include "fpeq/oracle.hpp"

#include <gmpxx.h>

#include "fpeq/error.hpp"

namespace fpeq {

std::pair<FloatTriple, AddFlags> oracle_add(const FloatTriple& f1,
                                            const FloatTriple& f2,
                                            const FloatFormat& fmt)
{
  if (!is_normalized(f1, fmt) || !is_normalized(f2, fmt))
  {
    throw DomainError("oracle_add requires normalized operands");
  }

  // Write both operands over the common scale 2^(emin - bias - man_bits) so
  // the sum is a plain integer: v_i = M_i * 2^(e_i - emin) at that scale.
  const uint32_t emin = f1.e < f2.e ? f1.e : f2.e;
  const int64_t scale_pow = int64_t(emin) - fmt.bias() - fmt.man_bits;

  mpz_class m1 = (mpz_class(1) << fmt.man_bits) + f1.m;
  mpz_class m2 = (mpz_class(1) << fmt.man_bits) + f2.m;
  m1 <<= (f1.e - emin);
  m2 <<= (f2.e - emin);
  if (f1.s) m1 = -m1;
  if (f2.s) m2 = -m2;

  mpz_class sum = m1 + m2;
  AddFlags flags;

  if (sum == 0)
  {
    flags.exact_zero = true;
    return {FloatTriple{0, 0, 0}, flags};
  }

  const uint32_t sign = sum < 0 ? 1 : 0;
  mpz_class mag = abs(sum);

  // Round |sum| to p = man_bits+1 significant bits, half to even.
  const uint32_t p = fmt.man_bits + 1;
  const size_t nbits = mpz_sizeinbase(mag.get_mpz_t(), 2);
  int64_t e_unb = int64_t(nbits) - 1 + scale_pow;

  mpz_class sig;
  if (nbits <= p)
  {
    sig = mag << (p - nbits);
  }
  else
  {
    const uint64_t sh = nbits - p;
    sig = mag >> sh;
    mpz_class rem = mag - (sig << sh);
    mpz_class half = mpz_class(1) << (sh - 1);
    if (rem > half || (rem == half && mpz_odd_p(sig.get_mpz_t())))
    {
      sig += 1;
      if (sig == mpz_class(1) << p)
      {
        sig >>= 1;
        e_unb += 1;
      }
    }
  }

  const int64_t e_biased = e_unb + fmt.bias();
  if (e_biased > int64_t(fmt.emax()))
  {
    flags.overflow = true;
    return {FloatTriple{sign, fmt.emax(), uint32_t(fmt.man_mask())}, flags};
  }
  if (e_biased < 1)
  {
    // Partial cancellation below the normalized range: flush, keeping the
    // exact sum's sign (= the sign of the larger-magnitude operand).
    flags.underflow = true;
    return {FloatTriple{sign, 0, 0}, flags};
  }

  uint32_t m = uint32_t(mpz_class(sig & mpz_class(fmt.man_mask())).get_ui());
  return {FloatTriple{sign, uint32_t(e_biased), m}, flags};
}

}  // namespace fpeq
