#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pilab/superalgebra.hpp"

namespace pilab {

struct BlockSpec {
  BlockKind kind = BlockKind::F;
  int k = 1;
  int l = 0;
  std::vector<std::string> basis;
};

struct EvaluationSpec {
  std::string poly;
  std::vector<std::string> tuple;
  std::string value;
};

/// Values the catalog claims; each one is re-derived by the test suite.
struct ExpectedValues {
  std::optional<std::size_t> dim;
  std::optional<std::size_t> dim_even;
  std::optional<int> exp;
  std::optional<int> exp_delta;
  std::optional<std::vector<std::string>> center;            // plain algebras
  std::optional<std::vector<std::string>> supercenter_even;  // envelopes
  std::optional<std::vector<std::string>> supercenter_odd;
  std::vector<std::string> proper_central;
  std::vector<EvaluationSpec> evaluations;
};

/// Parsed AlgebraDefinition document.
struct AlgebraDefinition {
  std::string name;
  std::string description;
  bool envelope = false;
  std::string ambient_type;  // "ut_blocks" or "structure_constants"
  std::vector<int> sizes;
  std::vector<int> grading;
  std::vector<std::string> constraints;
  std::vector<std::string> labels;
  std::vector<int> parity;
  std::vector<std::array<std::string, 3>> products;
  std::optional<std::vector<BlockSpec>> blocks;
  std::vector<std::string> radical;
  ExpectedValues expected;
  std::string source;  // original document text
};

AlgebraDefinition parse_definition(const std::string& text);
AlgebraDefinition load_definition_file(const std::string& path);

/// UT(d_1,...,d_m) with parity(e_ij) = h_i + h_j.
SuperAlgebra build_ut_block_algebra(const std::vector<int>& sizes, const std::vector<int>& grading,
                                    const std::string& name = "UT");

/// Builds, validates and attaches (unverified) Wedderburn data.
SuperAlgebra build_structured_algebra(const AlgebraDefinition& def);

/// Parses "e11+e44", "-e12", "1/2*e13" or label combinations into coordinates.
Vector parse_element(const SuperAlgebra& A, const std::string& text);

}  // namespace pilab
