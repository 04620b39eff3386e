#ifndef FPEQ_FORMAT_HPP
#define FPEQ_FORMAT_HPP

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace fpeq {

/**
 * Binary floating-point format parameterized by exponent and mantissa widths.
 *
 * A value is (-1)^s * 2^(e - bias) * (1.m) with bias = 2^(exp_bits-1) - 1.
 * Only normalized encodings (1 <= e <= 2^exp_bits - 2) are valid operands;
 * results may additionally use the all-zero exponent to encode +/-0 under the
 * flush policy.
 */
struct FloatFormat
{
  uint32_t exp_bits;
  uint32_t man_bits;

  /** Validating factory. exp_bits in [2,12], man_bits in [1,26]. */
  static FloatFormat make(uint32_t exp_bits, uint32_t man_bits);

  uint32_t bias() const { return (1u << (exp_bits - 1)) - 1; }
  /** Largest biased exponent of a normalized value: 2^exp_bits - 2. */
  uint32_t emax() const { return (1u << exp_bits) - 2; }
  /** Total encoding width: sign + exponent + mantissa. */
  uint32_t width() const { return 1 + exp_bits + man_bits; }
  uint64_t man_mask() const { return (uint64_t(1) << man_bits) - 1; }
  /** Count of distinct normalized encodings. */
  uint64_t normalized_count() const
  {
    return 2ull * emax() * (uint64_t(1) << man_bits);
  }

  bool operator==(const FloatFormat&) const = default;

  std::string str() const;  // "(4,3)"
};

/** Unpacked sign/exponent/mantissa fields. Exponent is biased. */
struct FloatTriple
{
  uint32_t s = 0;
  uint32_t e = 0;
  uint32_t m = 0;

  bool operator==(const FloatTriple&) const = default;
};

/** Result side flags. overflow and underflow are mutually exclusive. */
struct AddFlags
{
  bool overflow = false;
  bool underflow = false;
  bool exact_zero = false;

  bool operator==(const AddFlags&) const = default;
};

/**
 * Exact rational value of an encoding. `value` is unbounded; when it is zero,
 * `zero_is_negative` distinguishes -0 from +0.
 */
struct ExactValue
{
  mpq_class value;
  bool zero_is_negative = false;

  bool is_zero() const { return sgn(value) == 0; }
};

/** Pack fields into a word: [s | e | m], sign at the top. */
uint64_t pack(const FloatTriple& t, const FloatFormat& fmt);

/** Unpack a word. Word must fit in fmt.width() bits. */
FloatTriple unpack(uint64_t word, const FloatFormat& fmt);

/** True iff fields are in range and 1 <= e <= emax. */
bool is_normalized(const FloatTriple& t, const FloatFormat& fmt);

/** Exact value of a normalized encoding. Throws DomainError otherwise. */
ExactValue value_of(const FloatTriple& t, const FloatFormat& fmt);

/** Render a triple as "(s,eee,mmm)" with binary fields, for diagnostics. */
std::string triple_str(const FloatTriple& t, const FloatFormat& fmt);

}  // namespace fpeq

#endif
