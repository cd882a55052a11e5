#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pilab/codim.hpp"
#include "pilab/superalgebra.hpp"

namespace pilab {

struct DeltaWitness {
  std::string poly;
  std::vector<std::size_t> blocks;  // blocks touched by the evaluation
  std::vector<Element> tuple;
  Vector value;
};

struct AdmissibleResult {
  int exp = 0;
  std::vector<std::size_t> best_subset;  // ordered block indices
  std::vector<Vector> path;              // b_1 j_1 b_2 ... b_k, block and radical factors interleaved
  std::vector<Vector> radical_path;      // the j factors only
  Vector path_product;
  int delta_lower = 0;
  int delta_upper = 0;
  std::optional<DeltaWitness> delta_witness;

  bool delta_certified() const { return delta_lower == delta_upper; }
};

/// Whether B_{i1} J B_{i2} J ... J B_{ik} is nonzero; single blocks always qualify.
bool is_admissible(const SuperAlgebra& B, const std::vector<std::size_t>& tuple);

/// Maximal dimension of an admissible subalgebra, with a realizing path.
AdmissibleResult pi_exponent(const SuperAlgebra& B);

/// Products of long commutators of lengths 2 and 3, and such products bracketed with one more variable.
std::vector<std::string> witness_library(int degree_cap);

struct DeltaOptions {
  int degree_cap = 8;
  std::vector<std::string> extra_witnesses;
  bool use_library = true;
  CheckOptions check;
};

/// pi_exponent plus the certified interval for the proper central exponent of G(B) (or of B when plain).
AdmissibleResult delta_exponent_bounds(const SuperAlgebra& B, bool envelope, const DeltaOptions& opt = {});

}  // namespace pilab
