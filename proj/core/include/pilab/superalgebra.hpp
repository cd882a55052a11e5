#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pilab/linalg.hpp"

namespace pilab {

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Term {
  std::size_t index;
  Rational coeff;
};

/// Sparse linear combination of ambient matrix positions (row * size + col).
using MatrixEntries = std::vector<std::pair<std::size_t, Rational>>;

struct Ambient {
  std::size_t size = 0;
  std::vector<int> grading;                // h_i per row/column
  std::vector<MatrixEntries> embedding;    // one per basis element
};

enum class BlockKind { F, FplusCF, Mkl, MkPlusCMk };

std::string to_string(BlockKind kind);
BlockKind parse_block_kind(const std::string& text);

struct SimpleBlock {
  BlockKind kind = BlockKind::F;
  int k = 1;
  int l = 0;
  std::vector<Vector> basis;  // ordered like the reference model

  std::size_t dim() const;
  std::string describe() const;
};

struct WedderburnData {
  std::vector<SimpleBlock> blocks;
  std::vector<Vector> radical;
};

/// Finite-dimensional associative superalgebra given by structure constants.
class SuperAlgebra {
 public:
  SuperAlgebra(std::string name, std::vector<std::string> labels, std::vector<int> parity,
               std::vector<std::vector<Term>> table);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  int parity(std::size_t i) const { return parity_[i]; }
  const std::vector<int>& parities() const { return parity_; }
  const std::vector<Term>& product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  bool is_graded() const;
  bool integral() const { return integral_; }

  /// Throws AlgebraError on non-associativity or a non-multiplicative grading.
  void validate() const;

  Vector zero() const { return Vector(dim()); }
  Vector basis_vector(std::size_t i) const;
  Vector multiply(const Vector& u, const Vector& v) const;
  Vector add(const Vector& u, const Vector& v) const;
  Vector scale(const Rational& c, const Vector& v) const;

  /// Parity of a nonzero homogeneous vector; nullopt for mixed or zero vectors.
  std::optional<int> homogeneous_parity(const Vector& v) const;
  Vector component(const Vector& v, int q) const;

  const std::optional<Vector>& unit() const { return unit_; }

  /// Ordinary center, returned as homogeneous basis vectors (even first).
  std::vector<Vector> center() const;
  /// {v in B^(q) : v b = (-1)^{q|b|} b v for all basis b}.
  std::vector<Vector> supercenter(int q) const;

  /// Closure of products of the given subspaces: span{u v}.
  Subspace product(const Subspace& a, const Subspace& b) const;
  /// Subalgebra generated by the given vectors.
  Subspace generated_subalgebra(const std::vector<Vector>& generators) const;
  Subspace even_part() const;
  Subspace odd_part() const;
  Subspace whole() const;

  const std::optional<Ambient>& ambient() const { return ambient_; }
  void set_ambient(Ambient a) { ambient_ = std::move(a); }
  /// Coordinates of an ambient matrix (sparse entries) inside this algebra.
  Vector coordinates_of(const MatrixEntries& matrix) const;
  MatrixEntries to_matrix(const Vector& v) const;

  const std::optional<WedderburnData>& wedderburn() const { return wedderburn_; }
  void set_wedderburn(WedderburnData w) { wedderburn_ = std::move(w); }

  std::string format(const Vector& v) const;

 private:
  void find_unit();

  std::string name_;
  std::vector<std::string> labels_;
  std::vector<int> parity_;
  std::vector<std::vector<Term>> table_;
  std::optional<Vector> unit_;
  std::optional<Ambient> ambient_;
  std::optional<WedderburnData> wedderburn_;
  bool integral_ = true;
};

/// Structure-constant model of a simple block kind, basis ordered as SimpleBlock expects.
SuperAlgebra reference_block(BlockKind kind, int k, int l);

/// Unit of a block, as a combination of its basis.
Vector block_unit(const SuperAlgebra& A, const SimpleBlock& block);

struct WedderburnReport {
  bool ok = true;
  std::string failure;  // first violated property
};

WedderburnReport verify_wedderburn(const SuperAlgebra& A, const WedderburnData& data);

/// Solves sum_i x_i cols[i] = rhs; nullopt if inconsistent.
std::optional<Vector> solve_combination(const std::vector<Vector>& cols, const Vector& rhs);

}  // namespace pilab
