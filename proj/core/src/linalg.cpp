#include "pilab/linalg.hpp"

#include <cmath>
#include <numeric>
#include <tuple>

namespace pilab {

bool is_zero_vector(std::span<const Rational> v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

Subspace Subspace::span(std::size_t width, const std::vector<Vector>& vectors) {
  Subspace s(width);
  for (const auto& v : vectors) s.add(v);
  return s;
}

Subspace Subspace::sum(const Subspace& other) const {
  Subspace s = *this;
  for (const auto& v : other.basis()) s.add(v);
  return s;
}

Subspace Subspace::intersect(const Subspace& other) const {
  // Solve sum a_i u_i = sum b_j w_j; the a-part gives the intersection.
  const auto& U = basis();
  const auto& W = other.basis();
  const std::size_t n = width();
  const std::size_t unknowns = U.size() + W.size();
  std::vector<Vector> eqs(n, Vector(unknowns));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < U.size(); ++i) eqs[r][i] = U[i][r];
    for (std::size_t j = 0; j < W.size(); ++j) eqs[r][U.size() + j] = -W[j][r];
  }
  Subspace out(n);
  for (const auto& sol : rational_nullspace(eqs, unknowns)) {
    Vector v(n);
    for (std::size_t i = 0; i < U.size(); ++i)
      if (sgn(sol[i]) != 0)
        for (std::size_t r = 0; r < n; ++r) v[r] += sol[i] * U[i][r];
    out.add(v);
  }
  return out;
}

std::optional<Vector> Subspace::coordinates(const Vector& v) const {
  Vector w = v;
  const auto& rows = echelon_.rows();
  const auto& piv = echelon_.pivots();
  Vector coeff(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Rational c = w[piv[i]];
    if (sgn(c) == 0) continue;
    coeff[i] = c;
    for (std::size_t j = 0; j < w.size(); ++j)
      if (sgn(rows[i][j]) != 0) w[j] -= c * rows[i][j];
  }
  if (!is_zero_vector(w)) return std::nullopt;
  return coeff;
}

std::vector<Vector> rational_nullspace(const std::vector<Vector>& rows, std::size_t width) {
  RationalEchelon e(RationalField{}, width);
  for (const auto& r : rows) e.insert(r);
  return e.nullspace();
}

std::optional<Rational> rational_reconstruct(std::uint64_t residue, std::uint64_t p) {
  // Extended Euclid on (p, residue), stopped once the remainder drops below the bound.
  const auto bound = static_cast<std::int64_t>(std::sqrt(static_cast<double>(p) / 2.0));
  std::int64_t r0 = static_cast<std::int64_t>(p), r1 = static_cast<std::int64_t>(residue % p);
  std::int64_t t0 = 0, t1 = 1;
  while (r1 > bound) {
    std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  if (t1 == 0 || std::abs(t1) > bound) return std::nullopt;
  if (std::gcd(r1, std::abs(t1)) != 1) return std::nullopt;
  Rational q(static_cast<long>(r1), static_cast<unsigned long>(std::abs(t1)));
  if (t1 < 0) q = -q;
  q.canonicalize();
  return q;
}

std::optional<std::vector<Vector>> lift_nullspace(const ModularEchelon& e) {
  const std::uint64_t p = e.field().modulus();
  std::vector<Vector> out;
  for (const auto& row : e.nullspace()) {
    Vector v(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] == 0) continue;
      auto q = rational_reconstruct(row[i], p);
      if (!q) return std::nullopt;
      v[i] = *q;
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<mpz_class> primitive_integer(const Vector& v) {
  mpz_class den = 1, num = 0;
  for (const auto& x : v) den = lcm(den, mpz_class(x.get_den()));
  std::vector<mpz_class> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i].get_num() * (den / v[i].get_den());
    num = gcd(num, out[i]);
  }
  if (num > 1)
    for (auto& x : out) x /= num;
  return out;
}

IntegerDual::IntegerDual(const std::vector<Vector>& vectors) {
  const mpz_class limit = mpz_class(1) << 40;
  for (const auto& v : vectors) {
    big_.push_back(primitive_integer(v));
    const auto& z = big_.back();
    std::vector<std::int64_t> s(z.size());
    bool fits = true;
    for (std::size_t i = 0; i < z.size() && fits; ++i) {
      if (abs(z[i]) >= limit) fits = false;
      else s[i] = z[i].get_si();
    }
    is_small_.push_back(fits);
    small_.push_back(fits ? std::move(s) : std::vector<std::int64_t>{});
  }
}

bool IntegerDual::annihilates(std::span<const std::int64_t> row) const {
  constexpr std::int64_t lim = std::int64_t{1} << 40;
  bool small_row = true;
  for (auto x : row)
    if (x >= lim || x <= -lim) {
      small_row = false;
      break;
    }
  for (std::size_t k = 0; k < big_.size(); ++k) {
    if (small_row && is_small_[k]) {
      // |terms| < 2^80 and at most 2^20 of them: no overflow in 128 bits.
      __int128 acc = 0;
      const auto& z = small_[k];
      for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i]) acc += static_cast<__int128>(z[i]) * row[i];
      if (acc != 0) return false;
    } else {
      mpz_class acc = 0;
      const auto& z = big_[k];
      for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i]) acc += z[i] * static_cast<long>(row[i]);
      if (acc != 0) return false;
    }
  }
  return true;
}

}  // namespace pilab
