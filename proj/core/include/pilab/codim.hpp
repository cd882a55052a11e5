#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pilab/grassmann.hpp"
#include "pilab/linalg.hpp"
#include "pilab/poly.hpp"
#include "pilab/superalgebra.hpp"

namespace pilab {

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An algebra A, or the envelope G(B) of a superalgebra B.
struct Target {
  const SuperAlgebra* algebra = nullptr;
  bool envelope = false;

  std::size_t dim() const { return algebra->dim(); }
  /// Parity used by the sign rule; always 0 for plain targets.
  int parity(std::size_t i) const { return envelope ? algebra->parity(i) : 0; }
  std::string describe() const { return envelope ? "G(" + algebra->name() + ")" : algebra->name(); }
};

/// Basis of the central values of parity q: SZ^(q)(B) in envelope mode, Z(A) for plain targets (q = 0).
std::vector<Vector> central_subspace(const Target& t, int q);

struct CodimOptions {
  enum class Mode { Auto, Exact, Modular };
  Mode mode = Mode::Auto;
  int primes = 2;
  int window = 3;
  std::size_t batch_factor = 4;        // functionals per batch = batch_factor * n!
  std::uint64_t seed = 0x5eed;
  std::uint64_t exact_budget = 60'000'000;  // cap on dim^n * n! for exhaustive evaluation
  int max_degree = 8;
  bool central = true;
  std::vector<std::uint64_t> fixed_primes;  // overrides random prime selection
};

struct CodimResult {
  int n = 0;
  std::uint64_t c_n = 0;
  std::uint64_t c_n_z = 0;
  std::uint64_t c_n_delta = 0;
  std::string method;  // "exact" or "modular"
  std::vector<std::uint64_t> primes;
  std::uint64_t samples = 0;  // tuples evaluated
  bool certified = false;
  bool central_computed = true;
};

/// Row space of the evaluation map P_n -> (values), per prime, plus the exact nullspace when available.
struct EvaluationSpace {
  int n = 0;
  CodimResult result;
  std::vector<ModularEchelon> rows;          // one per prime in result.primes
  std::vector<ModularEchelon> central_rows;  // projected modulo central values
  std::optional<std::vector<Vector>> identities;          // exact basis of P_n cap Id
  std::optional<std::vector<Vector>> central_identities;  // exact basis of P_n cap Id^z
};

EvaluationSpace evaluation_space(const Target& t, int n, const CodimOptions& opt = {});
CodimResult codimensions(const Target& t, int n, const CodimOptions& opt = {});

/// Basis of P_n cap Id reduced modulo p (from either representation).
std::vector<ModularEchelon::Row> identity_basis_mod(const EvaluationSpace& s, std::size_t prime_index);

/// Id-spaces agree modulo every shared prime; spaces must use the same primes.
bool same_identities(const EvaluationSpace& a, const EvaluationSpace& b);
/// Id(a) contained in Id(b) modulo every shared prime.
bool identities_contained(const EvaluationSpace& a, const EvaluationSpace& b);

// ---------------------------------------------------------------- polynomial tests

/// Homogeneous element together with the parity it carries in the envelope.
struct Element {
  Vector coords;
  int parity = 0;
};

struct GradedSpace {
  Subspace even, odd;
  explicit GradedSpace(std::size_t d) : even(d), odd(d) {}
  bool empty() const { return even.empty() && odd.empty(); }
  const Subspace& part(int q) const { return q ? odd : even; }
};

/// Span of all values of a tree polynomial; leaves may be restricted to given graded spaces.
GradedSpace tree_values(const Target& t, const Tree& tree, const std::vector<std::optional<GradedSpace>>& leaves = {});

/// Leaf space of a homogeneous element set: span of the even and odd parts.
GradedSpace graded_span(const Target& t, const std::vector<Vector>& vectors);

/// Evaluation of a multilinear polynomial with the sign rule (plain evaluation for plain targets).
Vector evaluate(const Target& t, const MultilinearPoly& f, const std::vector<Element>& args);

enum class Centrality { Identity, ProperCentral, NonCentral };
std::string to_string(Centrality c);

struct PolyVerdict {
  Centrality kind = Centrality::Identity;
  bool certified = true;               // false only for sampled checks
  std::string method;                  // "value-space", "exhaustive", "sampled"
  std::vector<Element> witness;        // nonzero (or non-central) evaluation, for the multilinear form
  Vector value;
  std::optional<MultilinearPoly> component;  // the multilinearization the witness refers to
};

struct CheckOptions {
  std::uint64_t exhaustive_budget = 40'000'000;  // cap on tuples * monomials
  int samples = 400;
  std::uint64_t seed = 0xc0ffee;
};

PolyVerdict classify(const Target& t, const std::string& poly, const CheckOptions& opt = {});
PolyVerdict classify(const Target& t, const GeneralPoly& f, const ExprPtr& expr, const CheckOptions& opt = {});
bool is_identity(const Target& t, const std::string& poly, const CheckOptions& opt = {});

/// Exhaustive search for an argument choice with nonzero value (first found), one candidate list per variable.
std::optional<std::vector<Element>> find_nonzero(const Target& t, const MultilinearPoly& f,
                                                 const std::vector<std::vector<Element>>& choices);

/// Nonzero evaluation of a tree polynomial with leaf v drawn from choices[v]; leaves are fixed one at a time.
std::optional<std::vector<Element>> tree_nonzero(const Target& t, const Tree& tree,
                                                 const std::vector<std::vector<Element>>& choices);

/// Homogeneous basis elements of the target (basis vectors with their parities).
std::vector<Element> basis_elements(const Target& t);
/// Homogeneous parts of the given vectors, deduplicated by span.
std::vector<Element> homogeneous_elements(const Target& t, const std::vector<Vector>& vectors);

}  // namespace pilab
