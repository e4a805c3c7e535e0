#include "dapprox/polynomial.hpp"

#include <sstream>

#include "dapprox/errors.hpp"

namespace dapprox {

IntPolynomial::IntPolynomial(std::vector<Integer> coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.size() < 3) {
    throw PreconditionError("polynomial must have degree at least 2");
  }
  if (coefficients_.back() == 0) {
    throw PreconditionError("polynomial leading coefficient must be nonzero");
  }
}

IntPolynomial IntPolynomial::parse(std::string_view text) {
  std::vector<Integer> coeffs;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view token =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    const Rational value = parse_rational(token);
    if (value.get_den() != 1) {
      throw PreconditionError("polynomial coefficient '" + std::string(token) +
                              "' is not an integer");
    }
    coeffs.push_back(value.get_num());
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return IntPolynomial(std::move(coeffs));
}

IntPolynomial IntPolynomial::monomial(unsigned degree, std::int64_t a_d) {
  if (a_d == 0) throw PreconditionError("a_d must be nonzero");
  std::vector<Integer> coeffs(degree + 1, Integer(0));
  coeffs[degree] = -to_integer(a_d);
  return IntPolynomial(std::move(coeffs));
}

std::int64_t IntPolynomial::a_d() const {
  const Integer a = leading_negated();
  if (!mpz_fits_slong_p(a.get_mpz_t())) throw PreconditionError("a_d does not fit in 64 bits");
  return a.get_si();
}

Rational IntPolynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    acc = acc * x + Rational(*it);
  }
  return acc;
}

Rational IntPolynomial::derivative_at(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t k = coefficients_.size() - 1; k >= 1; --k) {
    acc = acc * x + Rational(coefficients_[k] * static_cast<unsigned long>(k));
  }
  return acc;
}

Integer IntPolynomial::eval_scaled(const Integer& p, const Integer& q) const {
  // Homogeneous Horner: S = c_d, then S <- S p + c_k q^(d-k).
  const unsigned d = degree();
  Integer acc = coefficients_[d];
  Integer qpow = 1;
  for (unsigned k = d; k-- > 0;) {
    qpow *= q;
    acc = acc * p + coefficients_[k] * qpow;
  }
  return acc;
}

Integer IntPolynomial::eval_scaled_derivative(const Integer& p, const Integer& q) const {
  const unsigned d = degree();
  Integer acc = coefficients_[d] * static_cast<unsigned long>(d);
  Integer qpow = 1;
  for (unsigned k = d - 1; k >= 1; --k) {
    qpow *= q;
    acc = acc * p + coefficients_[k] * static_cast<unsigned long>(k) * qpow;
  }
  return acc;
}

std::string IntPolynomial::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (i) out << ',';
    out << coefficients_[i].get_str();
  }
  return out.str();
}

}  // namespace dapprox
