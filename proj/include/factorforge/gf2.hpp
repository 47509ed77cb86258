#pragma once

// Binary extension fields GF(2^k). Gf2_64 is the fast path (carryless
// multiply, hardware PCLMUL when the CPU has it); Gf2k handles any k up to
// 255 with plain shift-and-add arithmetic and a searched irreducible modulus.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define FACTORFORGE_HAVE_X86 1
#endif

namespace factorforge {

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("inverse of zero in GF(2^k)") {}
};

/// Polynomials over GF(2) of degree < 320, bit i = coefficient of x^i.
using Gf2Poly = std::array<std::uint64_t, 5>;

namespace detail {

inline int poly_degree(const Gf2Poly& p) {
  for (int w = 4; w >= 0; --w)
    if (p[w]) return 64 * w + 63 - std::countl_zero(p[w]);
  return -1;
}

inline bool poly_bit(const Gf2Poly& p, int i) { return (p[i / 64] >> (i % 64)) & 1U; }

inline void poly_xor_shifted(Gf2Poly& acc, const Gf2Poly& p, int s) {
  const int ws = s / 64, bs = s % 64;
  for (int w = 4; w >= ws; --w) {
    std::uint64_t v = p[w - ws] << bs;
    if (bs && w - ws - 1 >= 0) v |= p[w - ws - 1] >> (64 - bs);
    acc[w] ^= v;
  }
}

inline bool poly_is_zero(const Gf2Poly& p) {
  for (auto w : p)
    if (w) return false;
  return true;
}

inline Gf2Poly poly_mod(Gf2Poly a, const Gf2Poly& m) {
  const int dm = poly_degree(m);
  for (int da = poly_degree(a); da >= dm; da = poly_degree(a)) poly_xor_shifted(a, m, da - dm);
  return a;
}

inline Gf2Poly poly_gcd(Gf2Poly a, Gf2Poly b) {
  while (!poly_is_zero(b)) {
    a = poly_mod(a, b);
    std::swap(a, b);
  }
  return a;
}

// a * b mod m, with deg a, deg b < deg m.
inline Gf2Poly poly_mulmod(const Gf2Poly& a, const Gf2Poly& b, const Gf2Poly& m) {
  const int k = poly_degree(m);
  Gf2Poly r{};
  for (int i = poly_degree(b); i >= 0; --i) {
    // r *= x
    Gf2Poly shifted{};
    poly_xor_shifted(shifted, r, 1);
    r = shifted;
    if (poly_bit(r, k)) {
      for (int w = 0; w < 5; ++w) r[w] ^= m[w];
    }
    if (poly_bit(b, i))
      for (int w = 0; w < 5; ++w) r[w] ^= a[w];
  }
  return r;
}

// Inverse of a modulo m by the extended Euclidean algorithm.
inline Gf2Poly poly_invmod(const Gf2Poly& a, const Gf2Poly& m) {
  if (poly_is_zero(a)) throw DivisionByZero();
  Gf2Poly r0 = m, r1 = a, s0{}, s1{};
  s1[0] = 1;
  while (poly_degree(r1) > 0) {
    while (poly_degree(r0) >= poly_degree(r1)) {
      const int shift = poly_degree(r0) - poly_degree(r1);
      poly_xor_shifted(r0, r1, shift);
      poly_xor_shifted(s0, s1, shift);
    }
    std::swap(r0, r1);
    std::swap(s0, s1);
  }
  if (poly_degree(r1) != 0) throw std::domain_error("element not invertible: modulus is reducible");
  return poly_mod(s1, m);
}

// Rabin's test: m of degree k is irreducible iff x^(2^k) = x mod m and
// gcd(x^(2^(k/p)) - x, m) = 1 for every prime p dividing k.
inline bool poly_irreducible(const Gf2Poly& m) {
  const int k = poly_degree(m);
  if (k < 1) return false;
  Gf2Poly x{};
  x[0] = 2;
  if (k == 1) return true;
  auto frobenius = [&](int times) {
    Gf2Poly y = x;
    for (int i = 0; i < times; ++i) y = poly_mulmod(y, y, m);
    return y;
  };
  int rest = k;
  for (int p = 2; p <= rest; ++p) {
    if (rest % p) continue;
    while (rest % p == 0) rest /= p;
    Gf2Poly y = frobenius(k / p);
    y[0] ^= 2;
    if (poly_degree(poly_gcd(m, y)) != 0) return false;
  }
  Gf2Poly y = frobenius(k);
  return y == x;
}

}  // namespace detail

/// Irreducible trinomial x^k + x^a + 1 with smallest a, otherwise the
/// lexicographically smallest pentanomial x^k + x^c + x^b + x^a + 1.
inline Gf2Poly find_irreducible(int k) {
  if (k < 2 || k > 255) throw std::invalid_argument("field degree must be in [2, 255], got " + std::to_string(k));
  auto make = [k](std::initializer_list<int> terms) {
    Gf2Poly p{};
    p[k / 64] |= std::uint64_t{1} << (k % 64);
    p[0] |= 1;
    for (int t : terms) p[t / 64] |= std::uint64_t{1} << (t % 64);
    return p;
  };
  for (int a = 1; a < k; ++a)
    if (auto p = make({a}); detail::poly_irreducible(p)) return p;
  for (int c = 3; c < k; ++c)
    for (int b = 2; b < c; ++b)
      for (int a = 1; a < b; ++a)
        if (auto p = make({a, b, c}); detail::poly_irreducible(p)) return p;
  throw std::logic_error("no irreducible pentanomial found");
}

namespace detail {

struct U128 {
  std::uint64_t lo;
  std::uint64_t hi;
};

// Carryless 64x64 product, 4-bit windows.
inline U128 clmul_soft(std::uint64_t a, std::uint64_t b) {
  std::uint64_t tlo[16], thi[16];
  tlo[0] = thi[0] = 0;
  for (int i = 1; i < 16; ++i) {
    // table[i] = a * i as a 67-bit polynomial
    const int low = i & -i;
    const int shift = std::countr_zero(static_cast<unsigned>(low));
    const std::uint64_t slo = a << shift, shi = shift ? a >> (64 - shift) : 0;
    tlo[i] = tlo[i ^ low] ^ slo;
    thi[i] = thi[i ^ low] ^ shi;
  }
  std::uint64_t lo = 0, hi = 0;
  for (int nib = 15; nib >= 0; --nib) {
    hi = (hi << 4) | (lo >> 60);
    lo <<= 4;
    const unsigned d = (b >> (4 * nib)) & 0xF;
    lo ^= tlo[d];
    hi ^= thi[d];
  }
  return {lo, hi};
}

#ifdef FACTORFORGE_HAVE_X86
__attribute__((target("pclmul,sse2"))) inline U128 clmul_hw(std::uint64_t a, std::uint64_t b) {
  const __m128i p = _mm_clmulepi64_si128(_mm_cvtsi64_si128(static_cast<long long>(a)),
                                         _mm_cvtsi64_si128(static_cast<long long>(b)), 0x00);
  return {static_cast<std::uint64_t>(_mm_cvtsi128_si64(p)),
          static_cast<std::uint64_t>(_mm_cvtsi128_si64(_mm_unpackhi_epi64(p, p)))};
}

inline bool cpu_has_pclmul() {
  static const bool has = __builtin_cpu_supports("pclmul");
  return has;
}
#else
inline bool cpu_has_pclmul() { return false; }
#endif

}  // namespace detail

/// GF(2^64) modulo x^64 + x^4 + x^3 + x + 1.
class Gf2_64 {
 public:
  using Element = std::uint64_t;
  static constexpr std::uint64_t kReduction = 0x1B;

  explicit Gf2_64(bool allow_hardware = true) : hw_(allow_hardware && detail::cpu_has_pclmul()) {}

  unsigned bits() const { return 64; }
  bool hardware() const { return hw_; }
  Element zero() const { return 0; }
  Element one() const { return 1; }
  bool is_zero(Element a) const { return a == 0; }
  Element add(Element a, Element b) const { return a ^ b; }

  Element mul(Element a, Element b) const {
#ifdef FACTORFORGE_HAVE_X86
    const detail::U128 p = hw_ ? detail::clmul_hw(a, b) : detail::clmul_soft(a, b);
#else
    const detail::U128 p = detail::clmul_soft(a, b);
#endif
    return reduce(p);
  }

  Element inv(Element a) const {
    if (a == 0) throw DivisionByZero();
    Gf2Poly m{}, x{};
    m[0] = kReduction | 1;
    m[1] = 1;
    x[0] = a;
    return detail::poly_invmod(x, m)[0];
  }

  template <class Rng>
  Element random(Rng& rng) const {
    return std::uniform_int_distribution<std::uint64_t>()(rng);
  }

 private:
  // hi * x^64 + lo with x^64 = x^4 + x^3 + x + 1.
  static Element reduce(detail::U128 p) {
    const std::uint64_t h = p.hi;
    const std::uint64_t over = (h >> 60) ^ (h >> 61) ^ (h >> 63);
    std::uint64_t r = p.lo ^ h ^ (h << 1) ^ (h << 3) ^ (h << 4);
    r ^= over ^ (over << 1) ^ (over << 3) ^ (over << 4);
    return r;
  }

  bool hw_;
};

/// GF(2^k) for 2 <= k <= 255 with elements stored in four words.
class Gf2k {
 public:
  using Element = std::array<std::uint64_t, 4>;

  explicit Gf2k(int k) : Gf2k(k, find_irreducible(k)) {}

  Gf2k(int k, const Gf2Poly& modulus) : k_(k), modulus_(modulus) {
    if (k < 2 || k > 255 || detail::poly_degree(modulus) != k) throw std::invalid_argument("bad field modulus");
  }

  unsigned bits() const { return static_cast<unsigned>(k_); }
  const Gf2Poly& modulus() const { return modulus_; }
  Element zero() const { return {}; }
  Element one() const { return {1, 0, 0, 0}; }
  bool is_zero(const Element& a) const { return a == Element{}; }

  Element add(const Element& a, const Element& b) const {
    return {a[0] ^ b[0], a[1] ^ b[1], a[2] ^ b[2], a[3] ^ b[3]};
  }

  Element mul(const Element& a, const Element& b) const {
    return shrink(detail::poly_mulmod(widen(a), widen(b), modulus_));
  }

  Element inv(const Element& a) const { return shrink(detail::poly_invmod(widen(a), modulus_)); }

  template <class Rng>
  Element random(Rng& rng) const {
    std::uniform_int_distribution<std::uint64_t> d;
    Element e{};
    for (int w = 0; w < 4; ++w) {
      const int lo = 64 * w;
      if (lo >= k_) break;
      e[w] = d(rng);
      if (k_ - lo < 64) e[w] &= (std::uint64_t{1} << (k_ - lo)) - 1;
    }
    return e;
  }

  Element from_uint(std::uint64_t v) const {
    Element e{v, 0, 0, 0};
    return shrink(detail::poly_mod(widen(e), modulus_));
  }

 private:
  static Gf2Poly widen(const Element& a) { return {a[0], a[1], a[2], a[3], 0}; }
  static Element shrink(const Gf2Poly& p) { return {p[0], p[1], p[2], p[3]}; }

  int k_;
  Gf2Poly modulus_;
};

/// k = max(64, 8 * ceil((6 log2 n + 8) / 8)), so that 2^k >= n^6 with room.
inline unsigned field_bits_for(std::size_t n) {
  const double lg = n <= 1 ? 0.0 : std::log2(static_cast<double>(n));
  const unsigned k = 8U * static_cast<unsigned>(std::ceil((6.0 * lg + 8.0) / 8.0));
  return std::max(64U, k);
}

/// Runs fn with the field of the requested size: Gf2_64 for 64 bits, the
/// generic field otherwise.
template <class Fn>
decltype(auto) with_field(unsigned bits, Fn&& fn) {
  if (bits == 64) return fn(Gf2_64{});
  return fn(Gf2k(static_cast<int>(bits)));
}

}  // namespace factorforge
