#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dapprox/exact.hpp"

namespace dapprox {

/// Integer polynomial P(X) of degree d >= 2, stored constant term first. The
/// leading coefficient is written -a_d, so P(X) = -X^2 has a_d = 1.
class IntPolynomial {
 public:
  /// Throws PreconditionError unless the top coefficient is nonzero and the
  /// degree is at least 2.
  explicit IntPolynomial(std::vector<Integer> coefficients);

  /// Parses the shared text form: comma-separated integers, constant first,
  /// e.g. "0,0,-1" for -X^2.
  static IntPolynomial parse(std::string_view text);

  /// -a_d X^d.
  static IntPolynomial monomial(unsigned degree, std::int64_t a_d);

  unsigned degree() const { return static_cast<unsigned>(coefficients_.size() - 1); }
  std::span<const Integer> coefficients() const { return coefficients_; }
  Integer leading_negated() const { return -coefficients_.back(); }
  /// a_d as a machine integer; throws if it does not fit.
  std::int64_t a_d() const;

  Rational evaluate(const Rational& x) const;
  Rational derivative_at(const Rational& x) const;

  /// The integer q^d * P(p/q) = sum_k c_k p^k q^(d-k).
  Integer eval_scaled(const Integer& p, const Integer& q) const;
  /// d/dp of eval_scaled at fixed q.
  Integer eval_scaled_derivative(const Integer& p, const Integer& q) const;

  std::string to_string() const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

 private:
  std::vector<Integer> coefficients_;
};

}  // namespace dapprox
