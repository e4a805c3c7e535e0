#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dapprox/exact.hpp"

namespace dapprox {

enum class AlphaProvenance { kUserSupplied, kDyadicRandom, kNamedConstant };

/// The translation alpha, always held as an exact rational together with how
/// it was obtained.
class AlphaValue {
 public:
  static AlphaValue user_supplied(const Rational& value);

  /// Uniform dyadic alpha in (0, 1) whose reduced denominator is exactly
  /// 2^bits (the lowest numerator bit is forced to one). `index` selects the
  /// independent draw within the seeded stream.
  static AlphaValue dyadic_random(std::uint64_t seed, unsigned bits, std::uint64_t index);

  /// Fractional part of a named constant truncated (rounded down) to `bits`
  /// binary digits. Known names: pi, e, sqrt2, sqrt3, golden, ln2.
  static AlphaValue named_constant(const std::string& name, unsigned bits);

  const Rational& value() const { return value_; }
  AlphaProvenance provenance() const { return provenance_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t index() const { return index_; }
  unsigned bits() const { return bits_; }
  const std::string& name() const { return name_; }

  /// One-token description for report headers, e.g. "dyadic(seed=7,bits=128,index=3)".
  std::string describe() const;

 private:
  AlphaValue() = default;

  Rational value_;
  AlphaProvenance provenance_ = AlphaProvenance::kUserSupplied;
  std::uint64_t seed_ = 0;
  std::uint64_t index_ = 0;
  unsigned bits_ = 0;
  std::string name_;
};

std::vector<AlphaValue> sample_dyadic_alphas(std::uint64_t seed, unsigned bits, std::size_t count);

/// Smallest bit count that decides every hit predicate up to qmax exactly:
/// ceil((d + tau) * log2(qmax)) + 16.
unsigned required_alpha_bits(unsigned degree, const Rational& tau, std::uint64_t qmax);

}  // namespace dapprox
