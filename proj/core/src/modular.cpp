#include "dapprox/modular.hpp"

#include <array>
#include <limits>

namespace dapprox {

u64 pow_mod(u64 base, u64 exponent, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exponent > 0) {
    if (exponent & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exponent >>= 1;
  }
  return result;
}

std::optional<u64> inverse_mod(u64 a, u64 m) {
  if (m == 1) return 0;
  // Extended Euclid on signed 128-bit to avoid overflow.
  __int128 old_r = static_cast<__int128>(a % m), r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    const __int128 q = old_r / r;
    const __int128 tmp_r = old_r - q * r;
    old_r = r;
    r = tmp_r;
    const __int128 tmp_s = old_s - q * s;
    old_s = s;
    s = tmp_s;
  }
  if (old_r != 1) return std::nullopt;
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<u64>(inv);
}

u64 reduce_signed(std::int64_t a, u64 m) {
  const __int128 r = static_cast<__int128>(a) % static_cast<__int128>(m);
  return static_cast<u64>(r < 0 ? r + m : r);
}

u64 crt_pair(u64 r1, u64 m1, u64 r2, u64 m2) {
  // x = r1 + m1 * t with t = (r2 - r1) * m1^-1 mod m2
  const u64 inv = *inverse_mod(m1 % m2, m2);
  const u64 diff = (r2 % m2 + m2 - r1 % m2) % m2;
  const u64 t = mul_mod(diff, inv, m2);
  return static_cast<u64>((static_cast<u128>(t) * m1 + r1) % (static_cast<u128>(m1) * m2));
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kBases) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kBases) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::optional<u64> checked_pow(u64 base, unsigned exponent) {
  u64 result = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (base != 0 && result > std::numeric_limits<u64>::max() / base) return std::nullopt;
    result *= base;
  }
  return result;
}

}  // namespace dapprox
