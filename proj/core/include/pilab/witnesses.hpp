#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pilab/catalog.hpp"
#include "pilab/codim.hpp"
#include "pilab/exponents.hpp"
#include "pilab/superalgebra.hpp"

namespace pilab {

/// The six idempotent/radical path shapes.
enum class Lemma { L41, L42, L43, L44, L45, L46 };

std::string to_string(Lemma l);
Lemma parse_lemma(const std::string& text);
/// Path whose product must be nonzero, in the letters e1 e2 e3 c j1..j4.
std::string lemma_path(Lemma l);
/// Base target of a lemma: A_3 ... A_8 (L4.6 may also land on A_9).
std::string lemma_target(Lemma l);

struct PatternMatch {
  Lemma lemma = Lemma::L41;
  std::vector<std::size_t> blocks;  // block index of e1, e2, e3 (as many as the lemma uses)
  std::vector<Vector> idempotents;
  std::optional<Vector> odd_unit;   // c, the odd basis element of e2's block (L4.3 to L4.6)
  std::vector<Element> radical;     // j1, j2, ... homogeneous
  std::string target;               // A_3 ... A_9
  std::string variant;              // grading variant predicted from the parities (e.g. "A_6^2")
  Vector nonzero_product;
};

/// A block of matrix type short-circuits the search.
struct ShortCircuit {
  std::size_t block = 0;
  std::string target;  // A_1 or A_2
  std::string reason;
};

struct Detection {
  std::vector<PatternMatch> matches;
  std::optional<ShortCircuit> short_circuit;
};

/// Scans every lemma shape over ordered choices of block idempotents.
Detection detect_patterns(const SuperAlgebra& B);

/// Re-checks idempotents, radical membership, homogeneity and the nonzero product; empty string when sound.
std::string validate_match(const SuperAlgebra& B, const PatternMatch& m);

struct RealizeOptions {
  int max_degree = 4;                 // Id-space comparison runs for n = 1..max_degree
  bool check_identities = true;
  bool check_central = true;
  std::optional<std::pair<int, int>> alpha;  // L4.3 only: 0 for 1, 1 for c; both parities tried when unset
  const Catalog* catalog = nullptr;   // defaults to the builtin catalog
  CodimOptions codim;
};

struct AlphaCase {
  int alpha1 = 0, alpha2 = 0;
  bool graded = false;
  bool well_defined = false;
  bool image_matches = false;
};

struct Realization {
  PatternMatch match;
  std::shared_ptr<const SuperAlgebra> subalgebra;  // B bar
  std::shared_ptr<const SuperAlgebra> quotient;    // B bar / I, on the coset basis
  std::vector<std::string> generators;
  std::vector<std::string> coset_basis;
  std::vector<int> ambient_grading;  // h of the target matrix algebra
  std::size_t kernel_dim = 0;
  std::optional<bool> kernel_matches;  // kernel equals the ideal of the listed generators
  bool graded = false;
  bool well_defined = false;
  bool basis_ok = false;
  std::string dependency;      // dependent combination of the coset basis, when basis_ok fails
  std::string image_member;    // catalog algebra isomorphic to the image (empty if none)
  std::vector<bool> identities_equal;      // per n = 1..max_degree, against the target
  std::vector<bool> identities_contained;  // Id(G(quotient)) inside Id(target), per n
  std::vector<std::pair<std::string, Centrality>> central_checks;  // witness -> verdict on G(quotient)
  std::vector<AlphaCase> alpha_cases;  // L4.3
  std::string failure;

  bool conclusion_holds() const;  // Id(G(B bar)) inside Id(target) at every checked degree
  bool checks_passed() const;     // everything above, including equality and a proper central witness
};

Realization realize_pattern(const SuperAlgebra& B, const PatternMatch& m, const RealizeOptions& opt = {});

struct CertifyReport {
  std::string algebra;
  bool certified = false;  // exp^delta(G(B)) > 2
  std::optional<ShortCircuit> short_circuit;
  std::optional<Realization> realization;
  std::size_t matches = 0;
  int delta_lower = 0, delta_upper = 0;  // filled when nothing fires
  std::string verdict() const;
};

CertifyReport certify_delta_gt_two(const SuperAlgebra& B, bool envelope, const RealizeOptions& opt = {},
                                   const DeltaOptions& delta = {});

/// Subalgebra spanned by a subspace, on its reduced basis; labels come from the parent.
SuperAlgebra subspace_algebra(const SuperAlgebra& B, const Subspace& S, const std::string& name);

}  // namespace pilab
