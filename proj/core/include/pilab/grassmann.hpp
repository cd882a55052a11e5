#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pilab/poly.hpp"
#include "pilab/superalgebra.hpp"

namespace pilab {

/// Exterior algebra on k generators; basis e_S indexed by bitmask S.
class GrassmannTruncated {
 public:
  explicit GrassmannTruncated(int k);
  int generators() const { return k_; }
  std::size_t dim() const { return std::size_t{1} << k_; }
  static int parity(std::uint32_t s) { return __builtin_popcount(s) & 1; }
  /// e_S e_T = sign * e_{S|T}; sign 0 when S and T share a generator.
  static int product_sign(std::uint32_t s, std::uint32_t t);
  /// As a superalgebra with basis ordered by mask value.
  SuperAlgebra algebra() const;

 private:
  int k_;
};

GrassmannTruncated build_truncated_grassmann(int k);

/// Truncated model of G(B): basis e_S (x) b with |S| = parity(b) mod 2.
struct EnvelopeModel {
  SuperAlgebra algebra;  // trivially graded
  int truncation = 0;
  std::vector<std::pair<std::uint32_t, std::size_t>> factors;  // (S, base index) per basis element
  std::vector<std::int64_t> lookup;                               // S * dim(B) + b -> model index or -1
  std::size_t base_dim = 0;

  std::int64_t index_of(std::uint32_t s, std::size_t b) const { return lookup[s * base_dim + b]; }
};

EnvelopeModel build_envelope_model(const SuperAlgebra& B, int k);

/// Computation inside G(B) for a base superalgebra B.
struct EnvelopeContext {
  enum class Mode { SignRule, TruncatedModel };
  const SuperAlgebra* base = nullptr;
  int truncation = 0;
  Mode mode = Mode::SignRule;

  /// Throws unless truncation >= n.
  void require_degree(int n) const;
};

/// (-1)^{inversions among odd-parity variables} for the monomial word.
int odd_inversion_sign(std::span<const int> word, std::span<const int> parities);

/// Sum over monomials of c_sigma * sign * b_sigma(1) ... b_sigma(n).
Vector sign_rule_evaluate(const EnvelopeContext& ctx, const MultilinearPoly& f, const std::vector<int>& parities,
                          const std::vector<Vector>& elements);

/// Same value computed in the truncated model: odd x_i -> e_i (x) b_i, even x_i -> 1 (x) b_i.
Vector model_evaluate(const SuperAlgebra& B, const EnvelopeModel& model, const MultilinearPoly& f,
                      const std::vector<int>& parities, const std::vector<Vector>& elements);

/// Whether g (x) value is central in G(B) for g of parity value_parity.
bool envelope_center_test(const EnvelopeContext& ctx, int value_parity, const Vector& value);

}  // namespace pilab
