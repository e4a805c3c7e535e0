#pragma once

#include <cstdint>
#include <optional>

namespace dapprox {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exponent, u64 m);

/// Inverse of a modulo m, or nullopt when gcd(a, m) != 1.
std::optional<u64> inverse_mod(u64 a, u64 m);

/// Reduces a signed value into [0, m).
u64 reduce_signed(std::int64_t a, u64 m);

/// Combines x = r1 (mod m1), x = r2 (mod m2) for coprime m1, m2 into the
/// unique residue modulo m1*m2. The product must fit in 64 bits.
u64 crt_pair(u64 r1, u64 m1, u64 r2, u64 m2);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(u64 n);

/// Integer power with overflow detection; nullopt when the result does not
/// fit in 64 bits.
std::optional<u64> checked_pow(u64 base, unsigned exponent);

}  // namespace dapprox
