#include "dapprox/arithmetic.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <numeric>

#include "dapprox/errors.hpp"
#include "dapprox/modular.hpp"

namespace dapprox {

Factorization Factorization::from_factors(std::vector<PrimePower> factors) {
  std::uint64_t value = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& [p, e] = factors[i];
    if (e == 0) throw PreconditionError("factorization: zero exponent");
    if (i > 0 && factors[i - 1].prime >= p) {
      throw PreconditionError("factorization: primes must be strictly increasing");
    }
    if (!is_prime_u64(p)) throw PreconditionError("factorization: non-prime factor");
    auto pe = checked_pow(p, e);
    if (!pe || (value > std::numeric_limits<std::uint64_t>::max() / *pe)) {
      throw PreconditionError("factorization: value overflows 64 bits");
    }
    value *= *pe;
  }
  return Factorization(value, std::move(factors));
}

unsigned Factorization::valuation(std::uint64_t prime) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), prime,
                             [](const PrimePower& pp, std::uint64_t p) { return pp.prime < p; });
  return (it != factors_.end() && it->prime == prime) ? it->exponent : 0;
}

Factorization Factorization::operator*(const Factorization& other) const {
  std::vector<PrimePower> merged;
  merged.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->prime < b->prime)) {
      merged.push_back(*a++);
    } else if (a == factors_.end() || b->prime < a->prime) {
      merged.push_back(*b++);
    } else {
      merged.push_back({a->prime, a->exponent + b->exponent});
      ++a;
      ++b;
    }
  }
  const Integer product = to_integer(value_) * to_integer(other.value_);
  return Factorization(to_u64(product), std::move(merged));
}

Integer Factorization::recompose() const {
  Integer out = 1;
  for (const auto& [p, e] : factors_) out *= ipow(to_integer(p), e);
  return out;
}

Factorizer::Factorizer(std::uint64_t sieve_bound) : bound_(std::max<std::uint64_t>(sieve_bound, 16)) {
  if (bound_ > (std::uint64_t{1} << 32)) {
    throw PreconditionError("Factorizer: sieve bound above 2^32 is not supported");
  }
  spf_.assign(bound_ + 1, 0);
  for (std::uint64_t i = 2; i * i <= bound_; ++i) {
    if (spf_[i] != 0) continue;
    for (std::uint64_t j = i * i; j <= bound_; j += i) {
      if (spf_[j] == 0) spf_[j] = static_cast<std::uint16_t>(i);
    }
  }
  for (std::uint64_t i = 2; i <= bound_; ++i) {
    if (spf_[i] == 0) primes_.push_back(static_cast<std::uint32_t>(i));
  }
}

namespace {

std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    auto f = [&](std::uint64_t v) { return (mul_mod(v, v, n) + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

}  // namespace

void Factorizer::split_large(std::uint64_t n, std::vector<std::uint64_t>& out) const {
  if (n == 1) return;
  if (n <= bound_) {
    while (n > 1) {
      const std::uint64_t p = spf_[n] == 0 ? n : spf_[n];
      out.push_back(p);
      n /= p;
    }
    return;
  }
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_brent(n);
  split_large(d, out);
  split_large(n / d, out);
}

Factorization Factorizer::factorize(std::uint64_t n) const {
  if (n == 0) throw PreconditionError("factorize: n must be positive");
  std::vector<std::uint64_t> primes;
  std::uint64_t m = n;
  if (m > bound_) {
    for (std::uint32_t p : primes_) {
      const std::uint64_t pp = p;
      if (pp * pp > m || m <= bound_) break;
      while (m % pp == 0) {
        primes.push_back(pp);
        m /= pp;
      }
    }
  }
  split_large(m, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<PrimePower> factors;
  for (std::uint64_t p : primes) {
    if (!factors.empty() && factors.back().prime == p) {
      ++factors.back().exponent;
    } else {
      factors.push_back({p, 1});
    }
  }
  return Factorization(n, std::move(factors));
}

const Factorizer& default_factorizer() {
  static const Factorizer instance;
  return instance;
}

std::uint64_t euler_phi(const Factorization& f) {
  std::uint64_t phi = 1;
  for (const auto& [p, e] : f.factors()) {
    phi *= (p - 1) * *checked_pow(p, e - 1);
  }
  return phi;
}

std::uint64_t divisor_count(const Factorization& f) {
  std::uint64_t tau = 1;
  for (const auto& pp : f.factors()) tau *= pp.exponent + 1;
  return tau;
}

unsigned distinct_prime_count(const Factorization& f) {
  return static_cast<unsigned>(f.size());
}

std::vector<std::uint64_t> divisors(const Factorization& f) {
  std::vector<std::uint64_t> out{1};
  for (const auto& [p, e] : f.factors()) {
    const std::size_t existing = out.size();
    std::uint64_t pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < existing; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

RangeBound RangeBound::rational(const Rational& value) {
  return RangeBound(Kind::kRational, value, 0);
}

RangeBound RangeBound::power(std::uint64_t base, const Rational& exponent) {
  if (base == 0) throw PreconditionError("RangeBound::power: base must be positive");
  return RangeBound(Kind::kPower, exponent, base);
}

bool RangeBound::at_most(std::uint64_t a) const {
  if (kind_ == Kind::kRational) return value_ <= Rational(to_integer(a));
  // base^e <= a  <=>  not (a < base^e)
  return compare_to_power(Rational(to_integer(a)), to_integer(base_), value_) >= 0;
}

std::vector<std::uint64_t> divisors_in_range(const Factorization& f, const RangeBound& lo,
                                             const RangeBound& hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t a : divisors(f)) {
    if (lo.at_most(a) && hi.exceeds(a)) out.push_back(a);
  }
  return out;
}

}  // namespace dapprox
