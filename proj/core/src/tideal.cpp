#include "pilab/tideal.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>

namespace pilab {

namespace {

struct IntComponent {
  int degree = 0;
  std::vector<std::pair<Permutation, std::int64_t>> terms;
};

IntComponent integerize(const MultilinearPoly& g) {
  mpz_class den = 1;
  for (const auto& [r, c] : g.coefficients()) den = lcm(den, mpz_class(c.get_den()));
  IntComponent out;
  out.degree = g.degree();
  for (const auto& [r, c] : g.coefficients()) {
    mpz_class v = c.get_num() * (den / c.get_den());
    if (!v.fits_slong_p()) throw std::overflow_error("generator coefficient too large");
    out.terms.push_back({permutation_unrank(r, g.degree()), v.get_si()});
  }
  return out;
}

/// Calls emit(word, cuts) for every substitution shape: the word is cut as w0 | m_1 | ... | m_d | w1.
void enumerate_shapes(int n, int d, bool reduced,
                      const std::function<void(const std::vector<int>&, const std::vector<int>&)>& emit) {
  std::vector<int> cuts(d + 1);
  // Splits word[a, b) into d nonempty segments; cuts[i] is the start of m_{i+1}, cuts[d] = b.
  auto compositions = [&](const std::vector<int>& word, int a, int b) {
    const int len = b - a;
    if (len < d) return;
    std::vector<int> inner(d - 1);
    std::function<void(int, int)> rec = [&](int i, int start) {
      if (i == d - 1) {
        cuts[0] = a;
        for (int k = 0; k < d - 1; ++k) cuts[k + 1] = inner[k];
        cuts[d] = b;
        emit(word, cuts);
        return;
      }
      for (int c = start; c <= b - (d - 1 - i); ++c) {
        inner[i] = c;
        rec(i + 1, c + 1);
      }
    };
    rec(0, a + 1);
  };

  if (!reduced) {
    std::vector<int> word(n);
    std::iota(word.begin(), word.end(), 0);
    do {
      for (int a = 0; a <= n - d; ++a)
        for (int b = a + d; b <= n; ++b) compositions(word, a, b);
    } while (std::next_permutation(word.begin(), word.end()));
    return;
  }

  // Border words sorted: assign each letter to w0, the middle, or w1.
  std::vector<int> where(n, 0);
  std::function<void(int)> assign = [&](int i) {
    if (i == n) {
      std::vector<int> w0, mid, w1;
      for (int v = 0; v < n; ++v) (where[v] == 0 ? w0 : where[v] == 1 ? mid : w1).push_back(v);
      if (static_cast<int>(mid.size()) < d) return;
      std::sort(mid.begin(), mid.end());
      do {
        std::vector<int> word = w0;
        word.insert(word.end(), mid.begin(), mid.end());
        word.insert(word.end(), w1.begin(), w1.end());
        compositions(word, static_cast<int>(w0.size()), static_cast<int>(w0.size() + mid.size()));
      } while (std::next_permutation(mid.begin(), mid.end()));
      return;
    }
    for (int k = 0; k < 3; ++k) {
      where[i] = k;
      assign(i + 1);
    }
  };
  assign(0);
}

/// w0 g(m_1, ..., m_d) w1 as a dense integer row.
void substitution_row(const IntComponent& g, const std::vector<int>& word, const std::vector<int>& cuts,
                      std::vector<std::int64_t>& row, std::vector<int>& scratch) {
  const int d = g.degree;
  std::fill(row.begin(), row.end(), 0);
  for (const auto& [pi, c] : g.terms) {
    scratch.assign(word.begin(), word.begin() + cuts[0]);
    for (int k = 0; k < d; ++k) scratch.insert(scratch.end(), word.begin() + cuts[pi[k]], word.begin() + cuts[pi[k] + 1]);
    scratch.insert(scratch.end(), word.begin() + cuts[d], word.end());
    row[permutation_rank(scratch)] += c;
  }
}

/// Index map of the variable renaming x_i -> x_{tau(i)} on monomial ranks.
std::vector<std::uint64_t> renaming_map(const Permutation& tau, int n) {
  const std::uint64_t N = factorial(n);
  std::vector<std::uint64_t> map(N);
  std::uint64_t r = 0;
  for (const auto& sigma : all_permutations(n)) {
    Permutation w(n);
    for (int i = 0; i < n; ++i) w[i] = tau[sigma[i]];
    map[r++] = permutation_rank(w);
  }
  return map;
}

}  // namespace

std::vector<MultilinearPoly> variable_orbit(const MultilinearPoly& g) {
  std::vector<MultilinearPoly> out;
  for (const auto& tau : all_permutations(g.degree())) out.push_back(g.relabeled(tau));
  return out;
}

TSpan tideal_multilinear_span(const std::vector<GeneralPoly>& generators, int n, const TSpanOptions& opt) {
  if (n < 1 || n > 9) throw std::invalid_argument("degree out of range");
  const std::uint64_t N = factorial(n);
  const bool reduced = opt.enumeration == TSpanOptions::Enumeration::Reduced;

  std::vector<IntComponent> comps;
  for (const auto& g : generators)
    for (const auto& c : multilinearize(g))
      if (c.degree() <= n && !c.is_zero()) comps.push_back(integerize(c));

  TSpan span;
  span.n = n;
  span.method = reduced ? "reduced" : "full";
  std::mt19937_64 rng(opt.seed ^ static_cast<std::uint64_t>(n));
  span.primes = opt.fixed_primes;
  const int wanted = std::max(1, opt.primes);
  while (static_cast<int>(span.primes.size()) < wanted) {
    auto p = random_primes(1, rng)[0];
    if (std::find(span.primes.begin(), span.primes.end(), p) == span.primes.end()) span.primes.push_back(p);
  }
  span.primes.resize(static_cast<std::size_t>(wanted));
  for (auto p : span.primes) span.rows.emplace_back(PrimeField(p), N);

  std::vector<std::int64_t> row(N);
  std::vector<int> scratch;
  ModularEchelon::Row mrow(N);
  bool needs_closure = false;
  for (const auto& g : comps) {
    if (reduced && g.degree < n) needs_closure = true;
    enumerate_shapes(n, g.degree, reduced, [&](const std::vector<int>& word, const std::vector<int>& cuts) {
      ++span.generated;
      substitution_row(g, word, cuts, row, scratch);
      for (auto& e : span.rows) {
        if (e.full()) continue;
        const PrimeField& F = e.field();
        for (std::size_t i = 0; i < N; ++i) mrow[i] = F.from_int(row[i]);
        e.insert(mrow);
      }
    });
  }

  // Reduced shapes cover one border ordering per variable set; renamings restore the rest.
  if (needs_closure && n >= 2) {
    Permutation swap(n), cycle(n);
    std::iota(swap.begin(), swap.end(), 0);
    std::swap(swap[0], swap[1]);
    for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
    const auto m1 = renaming_map(swap, n), m2 = renaming_map(cycle, n);
    for (auto& e : span.rows) {
      for (std::size_t i = 0; i < e.rank() && !e.full(); ++i) {
        for (const auto* m : {&m1, &m2}) {
          const auto& src = e.rows()[i];
          ModularEchelon::Row img(N, 0);
          for (std::size_t k = 0; k < N; ++k) img[(*m)[k]] = src[k];
          e.insert(std::move(img));
        }
      }
    }
  }

  span.dim = span.rows.front().rank();
  bool agree = true;
  for (const auto& e : span.rows) agree &= e.rank() == span.dim;
  if (!agree) {
    for (const auto& e : span.rows) span.dim = std::max<std::uint64_t>(span.dim, e.rank());
    return span;
  }

  // Certification: lift the complement to Q and check it against every full substitution.
  if (opt.lift && N <= 720) {
    auto lifted = lift_nullspace(span.rows.front());
    if (lifted) {
      IntegerDual dual(*lifted);
      bool ok = true;
      for (const auto& g : comps) {
        if (!ok) break;
        enumerate_shapes(n, g.degree, false, [&](const std::vector<int>& word, const std::vector<int>& cuts) {
          if (!ok) return;
          substitution_row(g, word, cuts, row, scratch);
          ok = dual.annihilates(row);
        });
      }
      if (ok) {
        span.certified = true;
        span.annihilator = std::move(*lifted);
      }
    }
  }
  return span;
}

TSpan tideal_multilinear_span(const std::vector<std::string>& generators, int n, const TSpanOptions& opt) {
  std::vector<GeneralPoly> gens;
  for (const auto& g : generators) gens.push_back(parse_poly(g));
  return tideal_multilinear_span(gens, n, opt);
}

bool tspan_contains(const TSpan& span, const MultilinearPoly& f) {
  if (f.degree() != span.n) throw std::invalid_argument("degree differs from span degree");
  if (span.annihilator) {
    auto dense = f.dense();
    for (const auto& z : *span.annihilator) {
      Rational acc = 0;
      for (std::size_t i = 0; i < dense.size(); ++i)
        if (sgn(dense[i]) != 0 && sgn(z[i]) != 0) acc += dense[i] * z[i];
      if (sgn(acc) != 0) return false;
    }
    return true;
  }
  auto dense = f.dense();
  for (const auto& e : span.rows) {
    ModularEchelon::Row r(dense.size());
    for (std::size_t i = 0; i < dense.size(); ++i) r[i] = e.field().from_rational(dense[i]);
    if (!e.contains(std::move(r))) return false;
  }
  return true;
}

RewriteReport rewrite_check(int n, const TSpanOptions& opt) {
  if (n != 4 && n != 5) throw std::invalid_argument("rewrite check runs at degree 4 or 5");
  TSpan span = tideal_multilinear_span(std::vector<std::string>{"[x1,x2,x3]x4"}, n, opt);
  RewriteReport report;
  report.n = n;
  auto check = [&](const std::string& label, const std::string& poly, std::optional<bool> claimed) {
    GeneralPoly g = parse_poly(poly);
    RewriteItem item{label, poly, n, tspan_contains(span, MultilinearPoly::from_general(g, n)), claimed};
    if (claimed && *claimed != item.member) report.ok = false;
    report.items.push_back(std::move(item));
  };
  if (n == 4) {
    check("commutator moves past a variable", "[x1,x2]x3x4 - x3[x1,x2]x4", true);
    check("commutator moves past a product", "[x1,x2]x3x4 - x3x4[x1,x2]", std::nullopt);
  } else {
    check("commutator moves past a variable, times x5", "[x1,x2]x3x4x5 - x3[x1,x2]x4x5", true);
    check("two commutators, exchanged middle", "[x1,x2][x3,x4]x5 + [x1,x3][x2,x4]x5", true);
  }
  return report;
}

}  // namespace pilab
