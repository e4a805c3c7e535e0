#include "dapprox/alpha.hpp"

#include <mpfr.h>

#include <random>
#include <sstream>

#include "dapprox/errors.hpp"

namespace dapprox {

AlphaValue AlphaValue::user_supplied(const Rational& value) {
  AlphaValue a;
  a.value_ = value;
  a.value_.canonicalize();
  a.provenance_ = AlphaProvenance::kUserSupplied;
  return a;
}

AlphaValue AlphaValue::dyadic_random(std::uint64_t seed, unsigned bits, std::uint64_t index) {
  if (bits == 0) throw PreconditionError("dyadic alpha needs at least one bit");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 gen(seq);
  Integer num = 0;
  for (unsigned filled = 0; filled < bits; filled += 64) {
    num <<= 64;
    num += to_integer(static_cast<std::uint64_t>(gen()));
  }
  const unsigned extra = ((bits + 63) / 64) * 64 - bits;
  num >>= extra;
  mpz_setbit(num.get_mpz_t(), 0);
  Integer den = 0;
  mpz_setbit(den.get_mpz_t(), bits);

  AlphaValue a;
  a.value_ = Rational(num, den);
  a.value_.canonicalize();
  a.provenance_ = AlphaProvenance::kDyadicRandom;
  a.seed_ = seed;
  a.index_ = index;
  a.bits_ = bits;
  return a;
}

AlphaValue AlphaValue::named_constant(const std::string& name, unsigned bits) {
  mpfr_t c, tmp;
  mpfr_init2(c, bits + 64);
  mpfr_init2(tmp, bits + 64);
  if (name == "pi") {
    mpfr_const_pi(c, MPFR_RNDD);
  } else if (name == "e") {
    mpfr_set_ui(tmp, 1, MPFR_RNDN);
    mpfr_exp(c, tmp, MPFR_RNDD);
  } else if (name == "sqrt2") {
    mpfr_sqrt_ui(c, 2, MPFR_RNDD);
  } else if (name == "sqrt3") {
    mpfr_sqrt_ui(c, 3, MPFR_RNDD);
  } else if (name == "golden") {
    mpfr_sqrt_ui(c, 5, MPFR_RNDD);
    mpfr_add_ui(c, c, 1, MPFR_RNDD);
    mpfr_div_2ui(c, c, 1, MPFR_RNDD);
  } else if (name == "ln2") {
    mpfr_const_log2(c, MPFR_RNDD);
  } else {
    mpfr_clears(c, tmp, static_cast<mpfr_ptr>(nullptr));
    throw PreconditionError("unknown named constant '" + name + "'");
  }
  // floor(c * 2^bits), then drop the integer part.
  mpfr_mul_2ui(c, c, bits, MPFR_RNDD);
  Integer scaled;
  mpfr_get_z(scaled.get_mpz_t(), c, MPFR_RNDD);
  mpfr_clears(c, tmp, static_cast<mpfr_ptr>(nullptr));
  Integer den = 0;
  mpz_setbit(den.get_mpz_t(), bits);
  Integer frac;
  mpz_fdiv_r(frac.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());

  AlphaValue a;
  a.value_ = Rational(frac, den);
  a.value_.canonicalize();
  a.provenance_ = AlphaProvenance::kNamedConstant;
  a.bits_ = bits;
  a.name_ = name;
  return a;
}

std::string AlphaValue::describe() const {
  std::ostringstream out;
  switch (provenance_) {
    case AlphaProvenance::kUserSupplied:
      out << "user(" << value_.get_str() << ")";
      break;
    case AlphaProvenance::kDyadicRandom:
      out << "dyadic(seed=" << seed_ << ",bits=" << bits_ << ",index=" << index_ << ")";
      break;
    case AlphaProvenance::kNamedConstant:
      out << "constant(" << name_ << ",bits=" << bits_ << ")";
      break;
  }
  return out.str();
}

std::vector<AlphaValue> sample_dyadic_alphas(std::uint64_t seed, unsigned bits, std::size_t count) {
  std::vector<AlphaValue> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(AlphaValue::dyadic_random(seed, bits, i));
  return out;
}

unsigned required_alpha_bits(unsigned degree, const Rational& tau, std::uint64_t qmax) {
  // ceil(log2 qmax) bounded above by the bit length, which keeps this exact.
  unsigned log2_ceil = 0;
  while (log2_ceil < 64 && (std::uint64_t{1} << log2_ceil) < qmax) ++log2_ceil;
  const Rational needed = (Rational(degree) + tau) * log2_ceil;
  Integer ceil_needed;
  mpz_cdiv_q(ceil_needed.get_mpz_t(), needed.get_num_mpz_t(), needed.get_den_mpz_t());
  return static_cast<unsigned>(ceil_needed.get_ui()) + 16;
}

}  // namespace dapprox
