#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace pilab {

using Rational = mpq_class;

Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& q);

/// Exact arithmetic over Q. Slow, used as the reference path.
struct RationalField {
  using Element = Rational;

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_rational(const Rational& q) const { return q; }
  Element from_int(std::int64_t v) const { return Element(static_cast<long>(v)); }
  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const {
    if (is_zero(a)) throw std::domain_error("inverse of zero");
    return 1 / a;
  }
  // a += b * c
  void fma(Element& a, const Element& b, const Element& c) const { a += b * c; }
  // v += f * r
  void axpy(std::span<Element> v, const Element& f, std::span<const Element> r) const {
    for (std::size_t j = 0; j < v.size(); ++j)
      if (sgn(r[j]) != 0) v[j] += f * r[j];
  }
  std::string describe() const { return "Q"; }
};

/// Z with overflow detection; used where all data is integral and small.
struct CheckedIntRing {
  using Element = std::int64_t;

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_rational(const Rational& q) const {
    if (q.get_den() != 1 || !q.get_num().fits_slong_p()) throw std::overflow_error("non-integral constant");
    return q.get_num().get_si();
  }
  Element from_int(std::int64_t v) const { return v; }
  bool is_zero(Element a) const { return a == 0; }
  Element add(Element a, Element b) const {
    Element r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 overflow");
    return r;
  }
  Element sub(Element a, Element b) const {
    Element r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("int64 overflow");
    return r;
  }
  Element mul(Element a, Element b) const {
    Element r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 overflow");
    return r;
  }
  Element neg(Element a) const { return sub(0, a); }
  void fma(Element& a, Element b, Element c) const { a = add(a, mul(b, c)); }
  std::string describe() const { return "Z"; }
};

/// Arithmetic modulo a prime p < 2^31.
class PrimeField {
 public:
  using Element = std::uint32_t;

  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }
  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_rational(const Rational& q) const;
  Element from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Element>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
  }
  bool is_zero(Element a) const { return a == 0; }
  Element add(Element a, Element b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - static_cast<std::uint32_t>(p_) : s;
  }
  Element sub(Element a, Element b) const {
    return a >= b ? a - b : static_cast<Element>(a + p_ - b);
  }
  Element neg(Element a) const { return a == 0 ? 0 : static_cast<Element>(p_ - a); }
  Element mul(Element a, Element b) const { return reduce(static_cast<std::uint64_t>(a) * b); }
  Element inv(Element a) const;
  Element pow(Element a, std::uint64_t e) const;
  void fma(Element& a, Element b, Element c) const { a = reduce(a + static_cast<std::uint64_t>(b) * c); }

  /// v += f * r, using a per-call Shoup constant for f.
  void axpy(std::span<Element> v, Element f, std::span<const Element> r) const {
    const std::uint64_t fs = (static_cast<std::uint64_t>(f) << 32) / p_;
    const std::uint64_t p = p_;
    Element* __restrict out = v.data();
    const Element* __restrict in = r.data();
    const std::size_t n = v.size();
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t x = in[j];
      std::uint64_t q = (x * fs) >> 32;
      std::uint64_t t = x * f - q * p;
      t -= (t >= p) ? p : 0;
      t += out[j];
      t -= (t >= p) ? p : 0;
      out[j] = static_cast<Element>(t);
    }
  }

  /// Reduces x < 2^63 modulo p.
  Element reduce(std::uint64_t x) const {
    auto q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * barrett_) >> 64);
    std::uint64_t r = x - q * p_;
    return static_cast<Element>(r >= p_ ? r - p_ : r);
  }

  std::string describe() const { return "GF(" + std::to_string(p_) + ")"; }

 private:
  std::uint64_t p_;
  std::uint64_t barrett_;
};

bool is_prime_u64(std::uint64_t n);

/// Draws `count` distinct primes from (2^30, 2^31).
std::vector<std::uint64_t> random_primes(std::size_t count, std::mt19937_64& rng);

}  // namespace pilab
