#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pilab/field.hpp"

namespace pilab {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Variables are 0-based internally and printed as x1, x2, ...
using Word = std::vector<int>;
using Permutation = std::vector<int>;

std::uint64_t factorial(int n);
/// Rank of a permutation of {0..n-1} in lexicographic order.
std::uint64_t permutation_rank(const Permutation& p);
Permutation permutation_unrank(std::uint64_t rank, int n);
/// All permutations of {0..n-1} in lexicographic (= rank) order.
std::vector<Permutation> all_permutations(int n);

/// Element of the free associative algebra F<X>.
class GeneralPoly {
 public:
  GeneralPoly() = default;
  static GeneralPoly variable(int v);
  static GeneralPoly constant(const Rational& c);

  const std::map<Word, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const Word& w, const Rational& c);

  GeneralPoly operator+(const GeneralPoly& o) const;
  GeneralPoly operator-(const GeneralPoly& o) const;
  GeneralPoly operator*(const GeneralPoly& o) const;
  GeneralPoly scaled(const Rational& c) const;
  bool operator==(const GeneralPoly& o) const { return terms_ == o.terms_; }

  /// Largest variable index used plus one.
  int variable_bound() const;
  /// Degree-n multilinear in exactly the variables 0..n-1.
  bool is_multilinear(int n) const;
  std::string str() const;

 private:
  std::map<Word, Rational> terms_;
};

GeneralPoly commutator(const GeneralPoly& a, const GeneralPoly& b);
GeneralPoly standard_polynomial(int k);

/// Element of P_n: coefficients indexed by lexicographic permutation rank.
class MultilinearPoly {
 public:
  explicit MultilinearPoly(int n = 0) : n_(n) {}
  static MultilinearPoly from_general(const GeneralPoly& f, int n);

  int degree() const { return n_; }
  const std::map<std::uint64_t, Rational>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  void add(std::uint64_t rank, const Rational& c);
  GeneralPoly to_general() const;
  std::vector<Rational> dense() const;
  /// Renames x_i to x_{pi(i)}.
  MultilinearPoly relabeled(const Permutation& pi) const;
  bool operator==(const MultilinearPoly& o) const { return n_ == o.n_ && coeffs_ == o.coeffs_; }
  std::string str() const { return to_general().str(); }

 private:
  int n_;
  std::map<std::uint64_t, Rational> coeffs_;
};

/// Parsed polynomial expression.
struct Expr {
  enum class Kind { Var, Const, Sum, Product, Commutator, Power, Standard };
  Kind kind = Kind::Const;
  int var = 0;          // Var
  Rational value;       // Const
  int exponent = 1;     // Power
  int order = 0;        // Standard
  std::vector<Rational> signs;  // Sum: coefficient per argument
  std::vector<std::shared_ptr<const Expr>> args;
};

using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr parse_expr(const std::string& text);
GeneralPoly expand(const Expr& e);
/// parse_expr followed by expand.
GeneralPoly parse_poly(const std::string& text);

/// Product/commutator tree with every variable used once.
struct Tree {
  enum class Kind { Leaf, Mul, Comm };
  Kind kind = Kind::Leaf;
  int var = 0;
  std::shared_ptr<const Tree> left, right;
};

using TreePtr = std::shared_ptr<const Tree>;

struct TreeForm {
  Rational scale;
  TreePtr root;
  int degree = 0;
};

/// Tree form of an expression, when it has one (no sums, powers, or repeated variables).
std::optional<TreeForm> tree_form(const Expr& e);
std::string tree_str(const Tree& t);

/// Full multilinearizations of the multihomogeneous components, variables renumbered.
std::vector<MultilinearPoly> multilinearize(const GeneralPoly& f);

/// Substitutes monomials for the variables of a multilinear polynomial.
GeneralPoly substitute_words(const MultilinearPoly& g, const std::vector<Word>& words);

}  // namespace pilab
