#pragma once

#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tk1 {

using u8 = std::uint8_t;
using u16 = std::uint16_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

/* Error taxonomy mirrored by the C API. */
enum class Err { invalid_arg, parse, math, capacity, io };

struct Error : std::runtime_error {
  Err kind;
  Error(Err k, const std::string& what) : std::runtime_error(what), kind(k) {}
};

[[noreturn]] inline void fail(Err k, const std::string& what) { throw Error(k, what); }

inline u64 mulmod(u64 a, u64 b, u64 mod) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % mod);
}

inline u64 addmod(u64 a, u64 b, u64 mod) {
  u64 s = a + b;
  return s >= mod ? s - mod : s;
}

inline u64 submod(u64 a, u64 b, u64 mod) { return a >= b ? a - b : a + mod - b; }

inline u64 powmod(u64 a, u64 e, u64 mod) {
  u64 r = 1 % mod;
  a %= mod;
  while (e) {
    if (e & 1) r = mulmod(r, a, mod);
    a = mulmod(a, a, mod);
    e >>= 1;
  }
  return r;
}

inline u64 ipow(u64 b, unsigned e) {
  u64 r = 1;
  while (e--) r *= b;
  return r;
}

/* Inverse of a unit mod p^k (p prime, gcd(a,p)=1), by lifting the mod-p inverse. */
inline u64 unit_inv_mod(u64 a, u64 p, u64 mod) {
  u64 x = powmod(a % p, p - 2, p);
  if (x == 0) fail(Err::math, "not a unit");
  while (true) {
    u64 ax = mulmod(a, x, mod);
    if (ax == 1) return x;
    /* x <- x(2 - ax) */
    x = mulmod(x, submod(2 % mod, ax, mod), mod);
  }
}

inline unsigned p_valuation(u64 x, u64 p, unsigned cap = 64) {
  unsigned v = 0;
  while (v < cap && x != 0 && x % p == 0) { x /= p; ++v; }
  return x == 0 ? cap : v;
}

struct RingParams {
  unsigned p = 5;   /* prime, >= 5 */
  unsigned n = 0;   /* Gamma truncation level; t^(p^n) = 1 */
  unsigned m = 2;   /* coefficient precision mod p^m */

  u64 pn() const { return ipow(p, n); }
  u64 pm() const { return ipow(p, m); }

  void validate() const {
    if (p < 5) fail(Err::invalid_arg, "p must be a prime >= 5");
    for (unsigned d = 2; d * d <= p; ++d)
      if (p % d == 0) fail(Err::invalid_arg, "p must be prime");
    if (m < 1) fail(Err::invalid_arg, "m must be >= 1");
    /* keep p^(m+headroom) comfortably inside 64 bits (headroom 3 plus log work margin) */
    if (ipow(p, m + 6) > (u64(1) << 62) / p) fail(Err::capacity, "precision too large");
    if (n > 6) fail(Err::capacity, "gamma level too large");
  }

  RingParams with_m(unsigned mm) const { return RingParams{p, n, mm}; }
  bool operator==(const RingParams&) const = default;
};

/* Deterministic per-(seed, label, trial) stream.  splitmix64 core; no libc++
   distribution objects so output is identical everywhere. */
struct Rng {
  u64 state;

  static u64 mix(u64 z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  static u64 hash_str(const std::string& s) {
    u64 h = 1469598103934665603ull;
    for (unsigned char c : s) { h ^= c; h *= 1099511628211ull; }
    return h;
  }

  Rng(u64 seed, const std::string& label, u64 trial)
      : state(mix(seed ^ mix(hash_str(label)) ^ mix(trial * 0x9e3779b97f4a7c15ull))) {}

  u64 next() {
    state += 0x9e3779b97f4a7c15ull;
    return mix(state);
  }

  /* uniform in [0, k); k > 0 */
  u64 below(u64 k) { return next() % k; }
};

}  // namespace tk1
