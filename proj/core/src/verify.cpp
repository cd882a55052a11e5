#include "pilab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "pilab/catalog.hpp"
#include "pilab/codim.hpp"
#include "pilab/definition.hpp"
#include "pilab/exponents.hpp"
#include "pilab/grassmann.hpp"
#include "pilab/report.hpp"
#include "pilab/tideal.hpp"
#include "pilab/witnesses.hpp"

namespace pilab {

std::string to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::Pass: return "PASS";
    case ClaimStatus::Fail: return "FAIL";
    case ClaimStatus::Skipped: return "SKIPPED";
  }
  return "?";
}

namespace {

const std::vector<std::uint64_t> kPrimes = {2147483647, 2147483629};

struct Ctx {
  std::vector<std::string> details;
  bool ok = true;
  std::uint64_t seed = 0;

  void check(bool cond, const std::string& what) {
    details.push_back((cond ? "ok    " : "FAIL  ") + what);
    ok = ok && cond;
  }
  void note(const std::string& what) { details.push_back("      " + what); }
};

struct Claim {
  ClaimInfo info;
  std::function<void(Ctx&)> run;
};

const Catalog& cat() { return Catalog::builtin(); }

std::string join(const std::vector<std::string>& parts, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

template <class T>
std::string str(const T& v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

Element element(const SuperAlgebra& A, const std::string& text) {
  Vector v = parse_element(A, text);
  auto q = A.homogeneous_parity(v);
  if (!q) throw std::invalid_argument("element " + text + " is not homogeneous");
  return {v, *q};
}

CodimOptions fixed(CodimOptions::Mode mode, bool central) {
  CodimOptions o;
  o.mode = mode;
  o.central = central;
  o.fixed_primes = kPrimes;
  return o;
}

/// P_n cap Id modulo p, from whichever representation the space carries.
ModularEchelon identities_mod(const EvaluationSpace& s, std::uint64_t p) {
  PrimeField F(p);
  ModularEchelon e(F, factorial(s.n));
  if (s.identities) {
    for (const auto& v : *s.identities) {
      auto z = primitive_integer(v);
      ModularEchelon::Row r(z.size());
      for (std::size_t i = 0; i < z.size(); ++i) r[i] = F.from_rational(Rational(z[i]));
      e.insert(std::move(r));
    }
    return e;
  }
  auto it = std::find(s.result.primes.begin(), s.result.primes.end(), p);
  if (it == s.result.primes.end()) throw std::invalid_argument("prime " + str(p) + " not used by the space");
  for (auto& r : identity_basis_mod(s, static_cast<std::size_t>(it - s.result.primes.begin()))) e.insert(std::move(r));
  return e;
}

// ---------------------------------------------------------------- 1: exponents

void exponent_claim(Ctx& c, const std::string& name, int exp, std::optional<int> delta) {
  auto B = cat().algebra(name);
  const auto& entry = cat().entry(name);
  DeltaOptions opt;
  opt.extra_witnesses = entry.definition.expected.proper_central;
  auto r = delta_exponent_bounds(*B, entry.envelope, opt);
  c.check(r.exp == exp, "exp(" + name + ") = " + str(r.exp) + ", expected " + str(exp));
  if (!r.radical_path.empty()) c.note("path product " + B->format(r.path_product));
  if (!delta) return;
  c.check(r.delta_lower == *delta && r.delta_upper == *delta,
          "exp^delta(" + name + ") in " + format_interval(r.delta_lower, r.delta_upper) + ", expected " + str(*delta));
  if (r.delta_witness)
    c.note("witness " + r.delta_witness->poly + " = " + B->format(r.delta_witness->value) + " at " +
           format_tuple(*B, r.delta_witness->tuple));
}

// ---------------------------------------------------------------- 2: centers

void center_claim(Ctx& c, const std::string& name, const std::vector<std::string>& even,
                  const std::vector<std::string>& odd) {
  auto B = cat().algebra(name);
  Target t = cat().target(name);
  for (int q = 0; q < 2; ++q) {
    const auto& stated = q ? odd : even;
    std::vector<Vector> vs;
    for (const auto& s : stated) vs.push_back(parse_element(*B, s));
    Subspace want = Subspace::span(B->dim(), vs);
    auto got_basis = central_subspace(t, q);
    Subspace got = Subspace::span(B->dim(), got_basis);
    std::vector<std::string> shown;
    for (const auto& v : got_basis) shown.push_back(B->format(v));
    std::string label = t.envelope ? (q ? "SZ^(1)" : "SZ^(0)") : (q ? "Z, odd part" : "Z");
    c.check(got == want, label + "(" + name + ") = span{" + join(shown) + "}, stated span{" + join(stated) + "}");
    if (t.envelope) {
      EnvelopeContext ctx{B.get(), 2, EnvelopeContext::Mode::SignRule};
      bool all = true;
      for (const auto& v : vs) all = all && envelope_center_test(ctx, q, v);
      c.check(all, "stated parity-" + str(q) + " vectors are central in G(" + name + ")");
    }
  }
}

// ---------------------------------------------------------------- 3: witnesses

void witness_claim(Ctx& c, const std::vector<std::string>& names, const std::string& poly) {
  for (const auto& name : names) {
    Target t = cat().target(name);
    auto v = classify(t, poly);
    std::string msg = poly + " on " + name + ": " + to_string(v.kind) + " (" + v.method + ")";
    if (!v.witness.empty()) msg += ", value " + t.algebra->format(v.value) + " at " + format_tuple(*t.algebra, v.witness);
    c.check(v.kind == Centrality::ProperCentral, msg);
  }
}

void evaluation_claim(Ctx& c, const std::string& name, const std::string& poly,
                      const std::vector<std::string>& tuple, const std::string& value) {
  Target t = cat().target(name);
  const auto& B = *t.algebra;
  auto f = MultilinearPoly::from_general(parse_poly(poly), static_cast<int>(tuple.size()));
  std::vector<Element> args;
  for (const auto& s : tuple) args.push_back(element(B, s));
  Vector got = evaluate(t, f, args);
  c.check(got == parse_element(B, value),
          poly + " at (" + join(tuple) + ") = " + B.format(got) + ", expected " + value);
  auto z = central_subspace(t, 0);
  c.check(Subspace::span(B.dim(), z).contains(got), "the value is central in " + name);
}

// ---------------------------------------------------------------- 4: proper central codimensions

void additivity(Ctx& c, const std::string& label, const EvaluationSpace& s) {
  const auto& r = s.result;
  c.check(r.c_n == r.c_n_z + r.c_n_delta, label + " n=" + str(r.n) + ": c=" + str(r.c_n) + " = c^z " + str(r.c_n_z) +
                                              " + c^delta " + str(r.c_n_delta) + " (" + r.method + ")");
  const std::uint64_t N = factorial(s.n);
  if (s.identities && s.central_identities) {
    bool sizes = s.identities->size() == N - r.c_n && s.central_identities->size() == N - r.c_n_z;
    Subspace id = Subspace::span(N, *s.identities), idz = Subspace::span(N, *s.central_identities);
    c.check(sizes && idz.contains(id), label + " n=" + str(r.n) + ": dim Id = " + str(s.identities->size()) +
                                           ", dim Id^z = " + str(s.central_identities->size()) + ", Id inside Id^z");
    return;
  }
  bool inside = true;
  for (std::size_t i = 0; i < r.primes.size() && i < s.central_rows.size(); ++i) {
    ModularEchelon idz(PrimeField(r.primes[i]), N);
    for (auto& row : s.central_rows[i].nullspace()) idz.insert(std::move(row));
    inside = inside && idz.contains_all(identities_mod(s, r.primes[i])) && idz.rank() == N - r.c_n_z;
  }
  c.check(inside, label + " n=" + str(r.n) + ": Id inside Id^z modulo every prime");
}

void ut2_claim(Ctx& c) {
  Target t = cat().target("UT_2");
  for (int n = 1; n <= 6; ++n) {
    auto s = evaluation_space(t, n, fixed(n <= 5 ? CodimOptions::Mode::Exact : CodimOptions::Mode::Auto, true));
    c.check(s.result.c_n_delta == 0, "c^delta_" + str(n) + "(UT_2) = " + str(s.result.c_n_delta));
    additivity(c, "UT_2", s);
  }
  CodimOptions m = fixed(CodimOptions::Mode::Modular, true);
  auto s6 = evaluation_space(t, 6, m);
  c.check(s6.result.c_n_delta == 0, "c^delta_6(UT_2) = " + str(s6.result.c_n_delta) + " (modular, " +
                                        str(s6.result.primes.size()) + " primes)");
  additivity(c, "UT_2", s6);
}

void additivity_claim(Ctx& c, const std::vector<std::string>& names, int max_n) {
  for (const auto& name : names) {
    Target t = cat().target(name);
    for (int n = 1; n <= max_n; ++n) additivity(c, name, evaluation_space(t, n, fixed(CodimOptions::Mode::Auto, true)));
  }
}

// ---------------------------------------------------------------- 5, 6: T-ideal generators

void generator_claim(Ctx& c, const std::string& name, const std::string& gen, int n, CodimOptions::Mode mode) {
  Target t = cat().target(name);
  CodimOptions co = fixed(mode, false);
  auto s = evaluation_space(t, n, co);
  TSpanOptions to;
  to.fixed_primes = kPrimes;
  auto span = tideal_multilinear_span(std::vector<std::string>{gen}, n, to);
  const std::uint64_t N = factorial(n);
  c.check(span.dim == N - s.result.c_n, "n=" + str(n) + ": dim P_n cap <" + gen + ">_T = " + str(span.dim) + ", " +
                                           str(N) + " - c_n(" + name + ") = " + str(N - s.result.c_n) + " (" +
                                           s.result.method + ", " + span.method + ")");
  bool same = true;
  for (std::size_t i = 0; i < span.primes.size(); ++i) same = same && identities_mod(s, span.primes[i]).same_span(span.rows[i]);
  c.check(same, "n=" + str(n) + ": the two subspaces of P_n coincide modulo " + str(span.primes.size()) + " primes");
}

// ---------------------------------------------------------------- 7: grading variants

void variants_claim(Ctx& c, const std::string& base, const std::vector<std::string>& variants, int max_n) {
  for (int n = 1; n <= max_n; ++n) {
    auto b = evaluation_space(cat().target(base), n, fixed(CodimOptions::Mode::Auto, false));
    for (const auto& v : variants) {
      auto s = evaluation_space(cat().target(v), n, fixed(CodimOptions::Mode::Auto, false));
      bool eq = s.result.c_n == b.result.c_n && same_identities(s, b);
      c.check(eq, "n=" + str(n) + ": P_n cap Id(" + v + ") = P_n cap Id(" + base + "), c_n = " + str(s.result.c_n) +
                      " (" + s.result.method + ")");
    }
  }
}

// ---------------------------------------------------------------- 8: membership table

void membership_claim(Ctx& c, const MembershipRow& row) {
  for (const auto& m : row.members) {
    auto v = classify(cat().target(m), row.poly);
    c.check(v.kind == Centrality::Identity && v.certified,
            row.poly + " in Id(" + m + "): " + to_string(v.kind) + " (" + v.method + ")");
  }
  for (const auto& m : row.nonmembers) {
    Target t = cat().target(m);
    auto v = classify(t, row.poly);
    std::string msg = row.poly + " not in Id(" + m + "): " + to_string(v.kind) + " (" + v.method + ")";
    if (!v.witness.empty()) msg += ", value " + t.algebra->format(v.value);
    c.check(v.kind != Centrality::Identity, msg);
  }
}

// ---------------------------------------------------------------- 9: certifier

std::string describe(const Realization& z) {
  std::string s = "graded " + str(z.graded) + ", well defined " + str(z.well_defined) + ", kernel dim " +
                  str(z.kernel_dim) + ", coset basis " + (z.basis_ok ? "independent" : "dependent: " + z.dependency);
  if (z.kernel_matches) s += ", kernel ideal " + std::string(*z.kernel_matches ? "matches" : "differs");
  s += ", image " + (z.image_member.empty() ? std::string("unmatched") : z.image_member);
  return s;
}

void realization_checks(Ctx& c, const SuperAlgebra& B, const Realization& z, const std::string& member) {
  const auto& m = z.match;
  std::vector<std::string> rad;
  for (const auto& e : m.radical) rad.push_back(B.format(e.coords));
  c.note(to_string(m.lemma) + " on " + B.name() + ": j = (" + join(rad) + "), product " + B.format(m.nonzero_product));
  for (const auto& a : z.alpha_cases)
    c.note("alpha = (" + std::string(a.alpha1 ? "c" : "1") + ", " + (a.alpha2 ? "c" : "1") + "): graded " +
           str(a.graded) + ", well defined " + str(a.well_defined) + ", image " + (a.image_matches ? "matches" : "differs"));
  c.check(z.failure.empty() || z.checks_passed(), describe(z) + (z.failure.empty() ? "" : " [" + z.failure + "]"));
  c.check(z.basis_ok, "coset basis of " + str(z.coset_basis.size()) + " words is a basis of the quotient");
  if (z.kernel_matches) c.check(*z.kernel_matches, "kernel equals the ideal of the listed generators");
  c.check(z.image_member == member, "image isomorphic to " + member + " (found '" + z.image_member + "')");
  std::string eq, in;
  for (bool b : z.identities_equal) eq += b ? '1' : '0';
  for (bool b : z.identities_contained) in += b ? '1' : '0';
  c.check(!z.identities_equal.empty() && z.conclusion_holds() &&
              std::all_of(z.identities_equal.begin(), z.identities_equal.end(), [](bool b) { return b; }),
          "P_n cap Id of the quotient envelope equals that of " + m.target + " for n = 1.." +
              str(z.identities_equal.size()) + " (equal " + eq + ", contained " + in + ")");
  std::string central;
  bool any = false;
  for (const auto& [p, v] : z.central_checks) {
    central += (central.empty() ? "" : "; ") + p + " " + to_string(v);
    any = any || v == Centrality::ProperCentral;
  }
  c.check(any, "a proper central polynomial of " + m.target + " is proper central on the quotient (" + central + ")");
  c.check(z.checks_passed(), "all construction checks passed");
}

void lemma_claim(Ctx& c, const std::string& name, Lemma lemma) {
  auto B = cat().algebra(name);
  Detection d = detect_patterns(*B);
  c.check(!d.short_circuit, "no matrix block in " + name);
  auto it = std::find_if(d.matches.begin(), d.matches.end(), [&](const PatternMatch& m) { return m.lemma == lemma; });
  c.check(it != d.matches.end(), to_string(lemma) + " pattern detected in " + name + " (" + str(d.matches.size()) +
                                     " matches in total)");
  if (it == d.matches.end()) return;
  c.check(validate_match(*B, *it).empty(), "match revalidated");
  realization_checks(c, *B, realize_pattern(*B, *it), name);
}

const char* kKernelExample = R"(
name: UT_7'
description: upper triangular 7x7 with a11 = a44 = a77, a22 = a55, a33 = a66
ambient: {type: ut_blocks, sizes: [1,1,1,1,1,1,1], grading: [0,0,0,0,0,0,0]}
constraints: ["a11=a44", "a44=a77", "a22=a55", "a33=a66"]
wedderburn:
  blocks:
    - {kind: F, basis: ["e11+e44+e77"]}
    - {kind: F, basis: ["e22+e55"]}
    - {kind: F, basis: ["e33+e66"]}
  radical: [e12,e13,e14,e15,e16,e17,e23,e24,e25,e26,e27,e34,e35,e36,e37,e45,e46,e47,e56,e57,e67]
)";

const char* kSemisimple = R"(
name: F+F+(F+cF)
envelope: true
ambient: {type: ut_blocks, sizes: [1,1,2], grading: [0,0,0,1]}
constraints: ["a12=0","a13=0","a14=0","a23=0","a24=0","a33=a44","a34=a43"]
wedderburn:
  blocks:
    - {kind: F, basis: [e11]}
    - {kind: F, basis: [e22]}
    - {kind: F_plus_cF, basis: ["e33+e44", "e34+e43"]}
  radical: []
)";

void kernel_claim(Ctx& c) {
  auto K = build_structured_algebra(parse_definition(kKernelExample));
  PatternMatch m;
  m.lemma = Lemma::L41;
  m.blocks = {0, 1, 2};
  for (const auto& b : K.wedderburn()->blocks) m.idempotents.push_back(block_unit(K, b));
  m.radical = {element(K, "e12+e45"), element(K, "e23"), element(K, "e34")};
  m.target = m.variant = "A_3";
  m.nonzero_product = parse_element(K, "e14");
  c.check(validate_match(K, m).empty(), "idempotents and radical elements of " + K.name() + " are sound");
  auto z = realize_pattern(K, m);
  c.check(z.kernel_dim > 0, "nonzero kernel, dim " + str(z.kernel_dim));
  realization_checks(c, K, z, "A_3");
}

void alpha_claim(Ctx& c) {
  auto B = cat().algebra("A_5");
  auto base = detect_patterns(*B).matches.at(0);
  struct Case {
    std::string j1, j2;
    std::pair<int, int> alpha;
  };
  for (const auto& k : {Case{"", "e14+e23", {0, 1}}, Case{"e36+e45", "e14+e23", {1, 1}}}) {
    auto m = base;
    if (!k.j1.empty()) m.radical[0] = element(*B, k.j1);
    m.radical[1] = element(*B, k.j2);
    c.check(validate_match(*B, m).empty(), "A_5 with j = (" + B->format(m.radical[0].coords) + ", " +
                                                B->format(m.radical[1].coords) + ")");
    auto z = realize_pattern(*B, m);
    int valid = 0;
    bool expected = false;
    for (const auto& a : z.alpha_cases) {
      bool v = a.graded && a.well_defined && a.image_matches;
      valid += v;
      if (v) expected = a.alpha1 == k.alpha.first && a.alpha2 == k.alpha.second;
    }
    c.check(valid == 1 && expected, "exactly one alpha choice validates, the one matching the parities of j");
    realization_checks(c, *B, z, "A_5");
  }
}

void no_witness_claim(Ctx& c) {
  auto check = [&](const SuperAlgebra& B, bool envelope) {
    auto r = certify_delta_gt_two(B, envelope);
    c.check(!r.certified && !r.short_circuit, B.name() + ": " + r.verdict() + ", " + str(r.matches) +
                                                  " patterns, exp^delta in " + format_interval(r.delta_lower, r.delta_upper));
  };
  for (const char* n : {"D", "D_0", "F", "G", "UT_2"}) check(*cat().algebra(n), cat().entry(n).envelope);
  check(build_structured_algebra(parse_definition(kSemisimple)), true);
}

void short_circuit_claim(Ctx& c) {
  for (const char* n : {"A_1", "A_2"}) {
    auto r = certify_delta_gt_two(*cat().algebra(n), cat().entry(n).envelope);
    c.check(r.certified && r.short_circuit && r.short_circuit->target == n, std::string(n) + ": " + r.verdict());
  }
}

// ---------------------------------------------------------------- 10: oracle equivalences

void sign_rule_claim(Ctx& c, const std::string& name, int trials) {
  auto B = cat().algebra(name);
  std::mt19937_64 rng(c.seed ^ std::hash<std::string>{}(name));
  std::vector<std::vector<std::size_t>> by_parity(2);
  for (std::size_t i = 0; i < B->dim(); ++i) by_parity[B->parity(i)].push_back(i);
  std::vector<EnvelopeModel> models;
  for (int n = 1; n <= 5; ++n) models.push_back(build_envelope_model(*B, n));
  int agree = 0, nonzero = 0;
  for (int t = 0; t < trials; ++t) {
    int n = 1 + static_cast<int>(rng() % 5);
    MultilinearPoly f(n);
    const std::uint64_t N = factorial(n);
    for (int k = 0, terms = 1 + static_cast<int>(rng() % 4); k < terms; ++k)
      f.add(rng() % N, Rational(static_cast<long>(rng() % 7) - 3));
    std::vector<Vector> elems;
    std::vector<int> par;
    for (int i = 0; i < n; ++i) {
      int q = by_parity[1].empty() ? 0 : static_cast<int>(rng() % 2);
      Vector v = B->zero();
      for (auto idx : by_parity[q]) v[idx] = Rational(static_cast<long>(rng() % 5) - 2);
      elems.push_back(std::move(v));
      par.push_back(q);
    }
    EnvelopeContext ctx{B.get(), n, EnvelopeContext::Mode::SignRule};
    Vector a = sign_rule_evaluate(ctx, f, par, elems);
    Vector b = model_evaluate(*B, models[n - 1], f, par, elems);
    agree += a == b;
    nonzero += !is_zero_vector(a);
  }
  c.check(agree == trials, name + ": " + str(agree) + "/" + str(trials) + " trials agree (" + str(nonzero) +
                               " with nonzero value)");
}

void rank_claim(Ctx& c, const std::string& name) {
  Target t = cat().target(name);
  for (int n = 1; n <= 4; ++n) {
    auto e = codimensions(t, n, fixed(CodimOptions::Mode::Exact, true));
    auto m = codimensions(t, n, fixed(CodimOptions::Mode::Modular, true));
    c.check(e.c_n == m.c_n && e.c_n_z == m.c_n_z,
            name + " n=" + str(n) + ": exact (" + str(e.c_n) + ", " + str(e.c_n_z) + "), modular (" + str(m.c_n) + ", " +
                str(m.c_n_z) + ")");
  }
}

void enumeration_claim(Ctx& c, const std::string& gen) {
  for (int n = 4; n <= 5; ++n) {
    TSpanOptions r, f;
    r.fixed_primes = f.fixed_primes = kPrimes;
    r.lift = f.lift = false;
    f.enumeration = TSpanOptions::Enumeration::Full;
    auto a = tideal_multilinear_span(std::vector<std::string>{gen}, n, r);
    auto b = tideal_multilinear_span(std::vector<std::string>{gen}, n, f);
    bool same = a.dim == b.dim;
    for (std::size_t i = 0; i < a.rows.size() && i < b.rows.size(); ++i) same = same && a.rows[i].same_span(b.rows[i]);
    c.check(same, gen + " n=" + str(n) + ": reduced dim " + str(a.dim) + " (" + str(a.generated) + " instances), full dim " +
                      str(b.dim) + " (" + str(b.generated) + " instances)");
  }
}

// ---------------------------------------------------------------- registry

std::vector<Claim> build_registry() {
  std::vector<Claim> v;
  auto add = [&](int crit, std::string id, std::string title, std::vector<std::string> algebras,
                 std::function<void(Ctx&)> run, bool deg7 = false) {
    v.push_back({{crit, std::move(id), std::move(title), std::move(algebras), deg7}, std::move(run)});
  };

  for (const char* n : {"A_3", "A_4", "A_5", "A_6", "A_7", "A_8", "A_9"})
    add(1, std::string("exp/") + n, std::string("exp = exp^delta = 3 for ") + n, {n},
        [n](Ctx& c) { exponent_claim(c, n, 3, 3); });
  for (const char* n : {"A_1", "A_2"})
    add(1, std::string("exp/") + n, std::string("exp = exp^delta = 4 for ") + n, {n},
        [n](Ctx& c) { exponent_claim(c, n, 4, 4); });
  for (const char* n : {"UT_2", "G"})
    add(1, std::string("exp/") + n, std::string("exp = 2 for ") + n, {n},
        [n](Ctx& c) { exponent_claim(c, n, 2, std::nullopt); });

  add(2, "center/A_3", "center of A_3", {"A_3"}, [](Ctx& c) { center_claim(c, "A_3", {"e11+e22+e33+e44", "e14"}, {}); });
  add(2, "center/A_4", "center of A_4", {"A_4"}, [](Ctx& c) { center_claim(c, "A_4", {"e15"}, {}); });
  add(2, "center/A_5", "center of A_5", {"A_5"},
      [](Ctx& c) { center_claim(c, "A_5", {"e11+e22+e33+e44+e55+e66", "e15+e26"}, {}); });
  add(2, "center/A_8", "center of A_8", {"A_8"}, [](Ctx& c) { center_claim(c, "A_8", {"e11+e22+e33+e44", "e14"}, {}); });
  add(2, "center/A_9", "center of A_9", {"A_9"}, [](Ctx& c) { center_claim(c, "A_9", {"e11+e22+e33+e44"}, {"e14"}); });
  add(2, "center/A_6", "center of A_6", {"A_6"}, [](Ctx& c) { center_claim(c, "A_6", {"e15"}, {}); });
  add(2, "center/A_7", "center of A_7", {"A_7"}, [](Ctx& c) { center_claim(c, "A_7", {"e15"}, {}); });

  add(3, "witness/A_3", "[x1,x2][x3,x4][x5,x6] proper central on A_3", {"A_3"},
      [](Ctx& c) { witness_claim(c, {"A_3"}, "[x1,x2][x3,x4][x5,x6]"); });
  add(3, "witness/A_4", "[x1,x2][x3,x4][x5,x6][x7,x8] proper central on A_4", {"A_4"},
      [](Ctx& c) { witness_claim(c, {"A_4"}, "[x1,x2][x3,x4][x5,x6][x7,x8]"); });
  add(3, "witness/A_5", "[[x1,x2,x3][x4,x5,x6],x7] proper central on A_5", {"A_5"},
      [](Ctx& c) { witness_claim(c, {"A_5"}, "[[x1,x2,x3][x4,x5,x6],x7]"); });
  add(3, "witness/A_6", "[x1,x2][x3,x4][x5,x6,x7] proper central on A_6", {"A_6"},
      [](Ctx& c) { witness_claim(c, {"A_6"}, "[x1,x2][x3,x4][x5,x6,x7]"); });
  add(3, "witness/A_7", "[x1,x2,x3][x4,x5][x6,x7] proper central on A_7", {"A_7"},
      [](Ctx& c) { witness_claim(c, {"A_7"}, "[x1,x2,x3][x4,x5][x6,x7]"); });
  add(3, "witness/A_8,A_9", "[x1,x2,x3][x4,x5,x6] proper central on A_8 and A_9", {"A_8", "A_9"},
      [](Ctx& c) { witness_claim(c, {"A_8", "A_9"}, "[x1,x2,x3][x4,x5,x6]"); });
  add(3, "value/A_3", "evaluation with value e14 on A_3", {"A_3"}, [](Ctx& c) {
    evaluation_claim(c, "A_3", "[x1,x2][x3,x4][x5,x6]", {"e11+e44", "e12", "e22", "e23", "e33", "e34"}, "e14");
  });
  add(3, "value/A_4", "evaluation with value e15 on A_4", {"A_4"}, [](Ctx& c) {
    evaluation_claim(c, "A_4", "[x1,x2][x3,x4][x5,x6][x7,x8]",
                     {"e12", "e22", "e23", "e33", "e33", "e34", "e44", "e45"}, "e15");
  });

  add(4, "codim/UT_2", "c^delta_n(UT_2) = 0 for n = 1..6", {"UT_2"}, ut2_claim);
  add(4, "codim/additivity", "c_n = c^z_n + c^delta_n on further algebras, n <= 4", {"A_3", "A_8", "D", "G"},
      [](Ctx& c) { additivity_claim(c, {"A_3", "A_8", "D", "G"}, 4); });

  for (auto [name, gen] : {std::pair{"C_1", "[x1,x2,x3]x4"}, std::pair{"C_2", "x1[x2,x3,x4]"}})
    for (int n = 4; n <= 6; ++n) {
      std::string nm = name, g = gen;
      add(5, "tideal/" + nm + "/" + str(n), "P_" + str(n) + " cap Id(" + nm + ") = P_" + str(n) + " cap <" + g + ">_T",
          {nm}, [nm, g, n](Ctx& c) { generator_claim(c, nm, g, n, CodimOptions::Mode::Auto); });
    }

  add(6, "tideal/A_6/7", "P_7 cap Id(A_6) = P_7 cap <x1[x2,x3][x4,x5,x6]x7>_T", {"A_6"},
      [](Ctx& c) { generator_claim(c, "A_6", "x1[x2,x3][x4,x5,x6]x7", 7, CodimOptions::Mode::Modular); }, true);
  add(6, "tideal/A_7/7", "P_7 cap Id(A_7) = P_7 cap <x1[x2,x3,x4][x5,x6]x7>_T", {"A_7"},
      [](Ctx& c) { generator_claim(c, "A_7", "x1[x2,x3,x4][x5,x6]x7", 7, CodimOptions::Mode::Modular); }, true);

  add(7, "variants/A_6", "A_6 grading variants share P_n cap Id for n <= 6", {"A_6", "A_6^1", "A_6^2", "A_6^3"},
      [](Ctx& c) { variants_claim(c, "A_6", {"A_6^1", "A_6^2", "A_6^3"}, 6); });
  add(7, "variants/A_7", "A_7 grading variants share P_n cap Id for n <= 6", {"A_7", "A_7^1", "A_7^2", "A_7^3"},
      [](Ctx& c) { variants_claim(c, "A_7", {"A_7^1", "A_7^2", "A_7^3"}, 6); });

  for (const auto& row : cat().distinguishing()) {
    std::vector<std::string> alg = row.members;
    alg.insert(alg.end(), row.nonmembers.begin(), row.nonmembers.end());
    add(8, "member/" + row.poly, "membership row " + row.poly, alg, [row](Ctx& c) { membership_claim(c, row); });
  }

  const std::vector<std::pair<std::string, Lemma>> lemma_cases = {
      {"A_3", Lemma::L41},   {"A_4", Lemma::L42},   {"A_5", Lemma::L43},   {"A_6", Lemma::L44},
      {"A_6^1", Lemma::L44}, {"A_6^2", Lemma::L44}, {"A_6^3", Lemma::L44}, {"A_7", Lemma::L45},
      {"A_7^1", Lemma::L45}, {"A_7^2", Lemma::L45}, {"A_7^3", Lemma::L45}, {"A_8", Lemma::L46},
      {"A_9", Lemma::L46}};
  for (const auto& [name, lemma] : lemma_cases)
    add(9, "certify/" + name, to_string(lemma) + " construction on " + name, {name},
        [name, lemma](Ctx& c) { lemma_claim(c, name, lemma); });
  add(9, "certify/kernel", "L4.1 construction with a nonzero kernel", {"A_3"}, kernel_claim);
  add(9, "certify/alpha", "L4.3 construction with odd radical elements", {"A_5"}, alpha_claim);
  add(9, "certify/none", "no witness on D, D_0 and semisimple inputs", {"D", "D_0", "F", "G", "UT_2"}, no_witness_claim);
  add(9, "certify/matrix", "matrix blocks short-circuit", {"A_1", "A_2"}, short_circuit_claim);

  for (const auto& e : cat().entries())
    if (e.envelope)
      add(10, "oracle/sign/" + e.name, "sign rule against truncated model on " + e.name, {e.name},
          [name = e.name](Ctx& c) { sign_rule_claim(c, name, 200); });
  for (const auto& e : cat().entries())
    add(10, "oracle/rank/" + e.name, "exact against modular ranks on " + e.name + ", n <= 4", {e.name},
        [name = e.name](Ctx& c) { rank_claim(c, name); });
  for (const char* g : {"[x1,x2,x3]x4", "x1[x2,x3,x4]", "[x1,x2][x3,x4]", "[[x1,x2],[x3,x4],x5]"})
    add(10, std::string("oracle/tspan/") + g, std::string("reduced against full enumeration for ") + g, {},
        [gen = std::string(g)](Ctx& c) { enumeration_claim(c, gen); });
  return v;
}

const std::vector<Claim>& registry() {
  static const std::vector<Claim> claims = build_registry();
  return claims;
}

bool selected(const ClaimInfo& info, const VerifyOptions& opt) {
  if (!opt.criteria.empty() && std::find(opt.criteria.begin(), opt.criteria.end(), info.criterion) == opt.criteria.end())
    return false;
  if (opt.only.empty()) return true;
  for (const auto& want : opt.only) {
    std::string name = cat().contains(want) ? cat().entry(want).name : want;
    if (std::find(info.algebras.begin(), info.algebras.end(), name) != info.algebras.end()) return true;
  }
  return false;
}

ClaimResult run_claim(const Claim& claim, const VerifyOptions& opt) {
  ClaimResult r{claim.info.criterion, claim.info.id, claim.info.title, ClaimStatus::Pass, 0, {}};
  if (claim.info.degree7 && !opt.with_degree7) {
    r.status = ClaimStatus::Skipped;
    r.details.push_back("degree-7 check, enable with --with-degree7");
    return r;
  }
  Ctx c;
  c.seed = opt.seed;
  auto t0 = std::chrono::steady_clock::now();
  try {
    claim.run(c);
  } catch (const std::exception& e) {
    c.check(false, std::string("error: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.status = c.ok ? ClaimStatus::Pass : ClaimStatus::Fail;
  r.details = std::move(c.details);
  return r;
}

}  // namespace

std::vector<ClaimInfo> list_claims() {
  std::vector<ClaimInfo> out;
  for (const auto& c : registry()) out.push_back(c.info);
  return out;
}

std::vector<ClaimResult> verify_claims(const VerifyOptions& opt) {
  std::vector<const Claim*> todo;
  for (const auto& c : registry())
    if (selected(c.info, opt)) todo.push_back(&c);
  std::vector<ClaimResult> results(todo.size());
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < todo.size();) {
      results[i] = run_claim(*todo[i], opt);
      if (opt.on_result) {
        std::lock_guard lock(mu);
        opt.on_result(results[i]);
      }
    }
  };
  unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(todo.size())));
  std::vector<std::jthread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  pool.clear();
  return results;
}

ClaimResult verify_claim(const std::string& id, const VerifyOptions& opt) {
  for (const auto& c : registry())
    if (c.info.id == id) return run_claim(c, opt);
  throw std::invalid_argument("unknown claim " + id);
}

ClaimStatus criterion_status(const std::vector<ClaimResult>& results, int criterion) {
  bool any = false, all_skipped = true;
  for (const auto& r : results) {
    if (r.criterion != criterion) continue;
    any = true;
    if (r.status == ClaimStatus::Fail) return ClaimStatus::Fail;
    if (r.status != ClaimStatus::Skipped) all_skipped = false;
  }
  return !any || all_skipped ? ClaimStatus::Skipped : ClaimStatus::Pass;
}

}  // namespace pilab
