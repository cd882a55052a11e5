#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pilab/field.hpp"

namespace pilab {

/// Incrementally maintained row-echelon basis of a subspace of F^width.
///
/// Rows are normalized (pivot entry 1) and each row is reduced against all
/// rows inserted before it, so reducing a vector by the rows in insertion
/// order yields its canonical remainder.
template <class Field>
class Echelon {
 public:
  using Element = typename Field::Element;
  using Row = std::vector<Element>;

  Echelon(Field field, std::size_t width) : field_(std::move(field)), width_(width) {}

  const Field& field() const { return field_; }
  std::size_t width() const { return width_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool full() const { return rows_.size() == width_; }

  /// Reduces v in place; returns the pivot column of the remainder or nullopt if it vanished.
  std::optional<std::size_t> reduce(Row& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Element& c = v[pivots_[i]];
      if (field_.is_zero(c)) continue;
      Element factor = field_.neg(c);
      field_.axpy(std::span<Element>(v), factor, std::span<const Element>(rows_[i]));
    }
    for (std::size_t j = 0; j < width_; ++j)
      if (!field_.is_zero(v[j])) return j;
    return std::nullopt;
  }

  bool contains(Row v) const { return !reduce(v).has_value(); }

  /// Inserts v; returns true iff the rank grew.
  bool insert(Row v) {
    if (full()) return false;
    auto pivot = reduce(v);
    if (!pivot) return false;
    Element scale = field_.inv(v[*pivot]);
    for (auto& x : v) x = field_.mul(x, scale);
    rows_.push_back(std::move(v));
    pivots_.push_back(*pivot);
    return true;
  }

  /// Every row of `other` lies in this span.
  bool contains_all(const Echelon& other) const {
    for (const auto& r : other.rows())
      if (!contains(r)) return false;
    return true;
  }

  bool same_span(const Echelon& other) const {
    return rank() == other.rank() && contains_all(other);
  }

  /// Fully reduced rows (each pivot column is a unit vector), ordered by pivot.
  std::vector<Row> reduced_rows() const {
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return pivots_[a] < pivots_[b]; });
    std::vector<Row> rr;
    rr.reserve(rows_.size());
    for (auto i : order) rr.push_back(rows_[i]);
    std::vector<std::size_t> piv;
    for (auto i : order) piv.push_back(pivots_[i]);
    for (std::size_t i = rr.size(); i-- > 0;) {
      for (std::size_t k = 0; k < rr.size(); ++k) {
        if (k == i) continue;
        const Element c = rr[k][piv[i]];
        if (field_.is_zero(c)) continue;
        Element factor = field_.neg(c);
        field_.axpy(std::span<Element>(rr[k]), factor, std::span<const Element>(rr[i]));
      }
    }
    return rr;
  }

  /// Basis of {x : r . x = 0 for every row r}.
  std::vector<Row> nullspace() const {
    auto rr = reduced_rows();
    std::vector<bool> is_pivot(width_, false);
    std::vector<std::size_t> piv;
    for (const auto& r : rr) {
      for (std::size_t j = 0; j < width_; ++j)
        if (!field_.is_zero(r[j])) {
          piv.push_back(j);
          is_pivot[j] = true;
          break;
        }
    }
    std::vector<Row> basis;
    for (std::size_t free = 0; free < width_; ++free) {
      if (is_pivot[free]) continue;
      Row x(width_, field_.zero());
      x[free] = field_.one();
      for (std::size_t i = 0; i < rr.size(); ++i) x[piv[i]] = field_.neg(rr[i][free]);
      basis.push_back(std::move(x));
    }
    return basis;
  }

 private:
  Field field_;
  std::size_t width_;
  std::vector<Row> rows_;
  std::vector<std::size_t> pivots_;
};

using RationalEchelon = Echelon<RationalField>;
using ModularEchelon = Echelon<PrimeField>;

using Vector = std::vector<Rational>;

bool is_zero_vector(std::span<const Rational> v);

/// Small exact subspace of Q^width; thin wrapper used for algebra-level computations.
class Subspace {
 public:
  explicit Subspace(std::size_t width) : echelon_(RationalField{}, width) {}
  static Subspace span(std::size_t width, const std::vector<Vector>& vectors);

  std::size_t width() const { return echelon_.width(); }
  std::size_t dim() const { return echelon_.rank(); }
  bool empty() const { return dim() == 0; }
  bool add(const Vector& v) { return echelon_.insert(v); }
  bool contains(const Vector& v) const { return echelon_.contains(v); }
  bool contains(const Subspace& other) const { return echelon_.contains_all(other.echelon_); }
  bool operator==(const Subspace& other) const { return echelon_.same_span(other.echelon_); }
  const std::vector<Vector>& basis() const { return echelon_.rows(); }
  std::vector<Vector> reduced_basis() const { return echelon_.reduced_rows(); }
  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

  /// Coefficients c with v = sum c_i basis()[i]; nullopt when v is outside the span.
  std::optional<Vector> coordinates(const Vector& v) const;

 private:
  RationalEchelon echelon_;
};

/// Nullspace over Q of the matrix with the given rows.
std::vector<Vector> rational_nullspace(const std::vector<Vector>& rows, std::size_t width);

/// Smallest fraction a/b with a = b * residue mod p and |a|, b below sqrt(p/2); nullopt if none.
std::optional<Rational> rational_reconstruct(std::uint64_t residue, std::uint64_t p);

/// Reduced nullspace of a modular echelon lifted to Q entry by entry; nullopt when reconstruction fails.
std::optional<std::vector<Vector>> lift_nullspace(const ModularEchelon& e);

/// Integer multiple of v with coprime entries.
std::vector<mpz_class> primitive_integer(const Vector& v);

/// Fixed family of rational vectors, tested exactly against integer rows.
class IntegerDual {
 public:
  IntegerDual() = default;
  explicit IntegerDual(const std::vector<Vector>& vectors);

  std::size_t size() const { return big_.size(); }
  /// True iff row . z = 0 for every vector z of the family.
  bool annihilates(std::span<const std::int64_t> row) const;

 private:
  std::vector<std::vector<mpz_class>> big_;
  std::vector<std::vector<std::int64_t>> small_;
  std::vector<bool> is_small_;
};

}  // namespace pilab
