#include "pilab/codim.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <unordered_set>

namespace pilab {

std::vector<Vector> central_subspace(const Target& t, int q) {
  if (t.envelope) return t.algebra->supercenter(q);
  if (q != 0) return {};
  return t.algebra->center();
}

namespace {

// ------------------------------------------------------------ shared helpers

std::uint64_t checked_power(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (__builtin_mul_overflow(r, base, &r)) return UINT64_MAX;
  }
  return r;
}

/// Integer matrix whose kernel is exactly span(C): one row per non-pivot coordinate.
std::vector<std::vector<std::int64_t>> quotient_matrix(const std::vector<Vector>& central, std::size_t d) {
  Subspace s = Subspace::span(d, central);
  auto rr = s.reduced_basis();
  std::vector<std::size_t> piv;
  std::vector<bool> is_piv(d, false);
  for (const auto& r : rr)
    for (std::size_t j = 0; j < d; ++j)
      if (sgn(r[j]) != 0) {
        piv.push_back(j);
        is_piv[j] = true;
        break;
      }
  std::vector<std::vector<std::int64_t>> Q;
  for (std::size_t j = 0; j < d; ++j) {
    if (is_piv[j]) continue;
    Vector row(d);
    row[j] = 1;
    for (std::size_t i = 0; i < rr.size(); ++i) row[piv[i]] = -rr[i][j];
    mpz_class den = 1;
    for (const auto& x : row) den = lcm(den, mpz_class(x.get_den()));
    std::vector<std::int64_t> out(d);
    for (std::size_t k = 0; k < d; ++k) {
      mpz_class v = row[k].get_num() * (den / row[k].get_den());
      if (!v.fits_slong_p()) throw ResourceError("central projection does not fit in 64 bits");
      out[k] = v.get_si();
    }
    Q.push_back(std::move(out));
  }
  return Q;
}

struct ExactTable {
  std::size_t d;
  std::vector<int> parity;
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> cells;

  explicit ExactTable(const Target& t) : d(t.dim()), parity(d), cells(d * d) {
    const SuperAlgebra& A = *t.algebra;
    for (std::size_t i = 0; i < d; ++i) parity[i] = t.parity(i);
    CheckedIntRing Z;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (const auto& term : A.product(i, j))
          cells[i * d + j].push_back({static_cast<std::uint32_t>(term.index), Z.from_rational(term.coeff)});
  }
};

using SparseInt = std::vector<std::pair<std::uint32_t, std::int64_t>>;

struct LeafValue {
  std::uint32_t rank;
  int sign;
  SparseInt value;
};

/// Enumerates all basis tuples, handing the nonzero monomial values of each to `emit`.
class ExactEnumerator {
 public:
  ExactEnumerator(const ExactTable& table, int n) : T_(table), n_(n), fact_(n + 1, 1) {
    for (int i = 1; i <= n; ++i) fact_[i] = fact_[i - 1] * static_cast<std::uint64_t>(i);
    dense_.assign(T_.d, 0);
    stamp_.assign(T_.d, 0);
  }

  template <class Emit>
  std::uint64_t run(Emit&& emit) {
    std::vector<std::uint32_t> tuple(n_, 0);
    std::uint64_t count = 0;
    while (true) {
      leaves_.clear();
      int q = 0;
      for (int i = 0; i < n_; ++i) q ^= T_.parity[tuple[i]];
      tuple_ = &tuple;
      SparseInt start;
      dfs(0, 0u, 0, 0, start, true);
      ++count;
      if (!leaves_.empty()) emit(tuple, q, leaves_);
      int pos = n_ - 1;
      while (pos >= 0 && ++tuple[pos] == T_.d) tuple[pos--] = 0;
      if (pos < 0) break;
    }
    return count;
  }

 private:
  void multiply(const SparseInt& v, std::uint32_t b, SparseInt& out) {
    out.clear();
    ++epoch_;
    CheckedIntRing Z;
    for (const auto& [i, c] : v)
      for (const auto& [k, t] : T_.cells[i * T_.d + b]) {
        if (stamp_[k] != epoch_) {
          stamp_[k] = epoch_;
          dense_[k] = 0;
          touched_.push_back(k);
        }
        dense_[k] = Z.add(dense_[k], Z.mul(c, t));
      }
    for (auto k : touched_)
      if (dense_[k] != 0) out.push_back({k, dense_[k]});
    touched_.clear();
    std::sort(out.begin(), out.end());
  }

  void dfs(int depth, std::uint32_t used, std::uint64_t rank, int inv, const SparseInt& prefix, bool empty) {
    if (depth == n_) {
      leaves_.push_back({static_cast<std::uint32_t>(rank), (inv & 1) ? -1 : 1, prefix});
      return;
    }
    const auto& tuple = *tuple_;
    int smaller = 0;
    for (int v = 0; v < n_; ++v) {
      if (used >> v & 1) continue;
      std::uint32_t b = tuple[v];
      int add = 0;
      if (T_.parity[b])
        for (int w = v + 1; w < n_; ++w)
          if ((used >> w & 1) && T_.parity[tuple[w]]) ++add;
      SparseInt next;
      if (empty) {
        next.push_back({b, 1});
      } else {
        multiply(prefix, b, next);
      }
      if (!next.empty())
        dfs(depth + 1, used | (1u << v), rank + static_cast<std::uint64_t>(smaller) * fact_[n_ - 1 - depth],
            inv + add, next, false);
      ++smaller;
    }
  }

  const ExactTable& T_;
  int n_;
  std::vector<std::uint64_t> fact_;
  std::vector<std::int64_t> dense_;
  std::vector<std::uint64_t> stamp_;
  std::vector<std::uint32_t> touched_;
  std::uint64_t epoch_ = 0;
  const std::vector<std::uint32_t>* tuple_ = nullptr;
  std::vector<LeafValue> leaves_;
};

struct RowHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : v) {
      h ^= static_cast<std::uint64_t>(x);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

void normalize_row(std::vector<std::int64_t>& row) {
  std::int64_t g = 0;
  for (auto x : row) g = std::gcd(g, x < 0 ? -x : x);
  if (g == 0) return;
  std::int64_t s = 0;
  for (auto x : row)
    if (x) {
      s = x < 0 ? -1 : 1;
      break;
    }
  for (auto& x : row) x = x / g * s;
}

/// Builds the value rows (and projected rows) of one tuple.
void tuple_rows(std::size_t d, std::uint64_t width, const std::vector<LeafValue>& leaves,
                const std::vector<std::vector<std::int64_t>>* Q, std::vector<std::vector<std::int64_t>>& out) {
  out.clear();
  CheckedIntRing Z;
  if (!Q) {
    std::vector<int> slot(d, -1);
    for (const auto& leaf : leaves)
      for (const auto& [k, c] : leaf.value) {
        if (slot[k] < 0) {
          slot[k] = static_cast<int>(out.size());
          out.emplace_back(width, 0);
        }
        out[slot[k]][leaf.rank] = leaf.sign > 0 ? c : Z.neg(c);
      }
    return;
  }
  for (const auto& qrow : *Q) {
    std::vector<std::int64_t> row(width, 0);
    bool any = false;
    for (const auto& leaf : leaves) {
      std::int64_t acc = 0;
      for (const auto& [k, c] : leaf.value)
        if (qrow[k]) acc = Z.add(acc, Z.mul(qrow[k], c));
      if (acc) {
        row[leaf.rank] = leaf.sign > 0 ? acc : Z.neg(acc);
        any = true;
      }
    }
    if (any) out.push_back(std::move(row));
  }
}

ModularEchelon::Row to_mod(const PrimeField& F, const std::vector<std::int64_t>& row) {
  ModularEchelon::Row r(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) r[i] = F.from_int(row[i]);
  return r;
}

/// Exact rank of an integer row family: modular pivot selection, rational nullspace, exact re-verification.
struct ExactSpace {
  std::uint64_t rank = 0;
  std::vector<Vector> nullspace;
  ModularEchelon echelon;
  std::vector<std::vector<std::int64_t>> selected;
  std::unordered_set<std::vector<std::int64_t>, RowHash> seen;
  IntegerDual dual;

  ExactSpace(PrimeField F, std::size_t width) : echelon(F, width) {}

  void offer(std::vector<std::int64_t> row) {
    if (echelon.full()) return;
    normalize_row(row);
    if (seen.size() > 2'000'000) seen.clear();
    if (!seen.insert(row).second) return;
    if (echelon.insert(to_mod(echelon.field(), row))) selected.push_back(std::move(row));
  }

  void solve() {
    std::vector<Vector> rows;
    for (const auto& r : selected) {
      Vector v(r.size());
      for (std::size_t i = 0; i < r.size(); ++i) v[i] = static_cast<long>(r[i]);
      rows.push_back(std::move(v));
    }
    nullspace = rational_nullspace(rows, echelon.width());
    rank = echelon.width() - nullspace.size();
    dual = IntegerDual(nullspace);
    seen.clear();
  }

  /// True if row is orthogonal to the nullspace; otherwise the row is adopted and false returned.
  bool verify(const std::vector<std::int64_t>& row) {
    if (dual.annihilates(row)) return true;
    selected.push_back(row);
    return false;
  }
};

EvaluationSpace exact_space(const Target& t, int n, const CodimOptions& opt, std::uint64_t prime) {
  const std::size_t d = t.dim();
  const std::uint64_t N = factorial(n);
  ExactTable table(t);
  PrimeField F(prime);
  std::array<std::vector<std::vector<std::int64_t>>, 2> Q;
  if (opt.central)
    for (int q = 0; q < 2; ++q) Q[q] = quotient_matrix(central_subspace(t, q), d);
  if (!t.envelope && opt.central) Q[1] = Q[0];

  ExactSpace id(F, N), cz(F, N);
  std::vector<std::vector<std::int64_t>> rows;
  ExactEnumerator en(table, n);
  auto selection_pass = [&] {
    return en.run([&](const auto&, int q, const std::vector<LeafValue>& leaves) {
      if (!id.echelon.full()) {
        tuple_rows(d, N, leaves, nullptr, rows);
        for (auto& r : rows) id.offer(std::move(r));
      }
      if (opt.central && !cz.echelon.full()) {
        tuple_rows(d, N, leaves, &Q[q], rows);
        for (auto& r : rows) cz.offer(std::move(r));
      }
    });
  };
  std::uint64_t samples = selection_pass();
  // Verification: every row must annihilate the rational nullspace; adopted rows force a re-solve.
  for (int round = 0; round < 8; ++round) {
    id.solve();
    if (opt.central) cz.solve();
    bool ok = true;
    if (!id.nullspace.empty() || (opt.central && !cz.nullspace.empty())) {
      en.run([&](const auto&, int q, const std::vector<LeafValue>& leaves) {
        if (!id.nullspace.empty()) {
          tuple_rows(d, N, leaves, nullptr, rows);
          for (const auto& r : rows) ok = id.verify(r) && ok;
        }
        if (opt.central && !cz.nullspace.empty()) {
          tuple_rows(d, N, leaves, &Q[q], rows);
          for (const auto& r : rows) ok = cz.verify(r) && ok;
        }
      });
    }
    if (ok) break;
    if (round == 7) throw ResourceError("exact rank verification did not converge");
  }

  EvaluationSpace s;
  s.n = n;
  s.result.n = n;
  s.result.c_n = id.rank;
  s.result.central_computed = opt.central;
  s.result.c_n_z = opt.central ? cz.rank : 0;
  s.result.c_n_delta = opt.central ? id.rank - cz.rank : 0;
  s.result.method = "exact";
  s.result.primes = {prime};
  s.result.samples = samples;
  s.result.certified = true;
  s.identities = id.nullspace;
  if (opt.central) s.central_identities = cz.nullspace;
  return s;
}

// ------------------------------------------------------------ modular engine

struct ModularRun {
  std::uint64_t rank = 0, central_rank = 0, samples = 0;
  ModularEchelon rows, central_rows;
};

ModularRun modular_space(const Target& t, int n, const CodimOptions& opt, std::uint64_t prime, std::uint64_t seed) {
  const std::size_t d = t.dim();
  const std::uint64_t N = factorial(n);
  const SuperAlgebra& A = *t.algebra;
  PrimeField F(prime);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> coef(1, static_cast<std::uint32_t>(prime - 1));

  // Sparse structure constants mod p.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> cells(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& term : A.product(i, j)) cells[i * d + j].push_back({static_cast<std::uint32_t>(term.index), F.from_rational(term.coeff)});

  std::array<std::vector<std::vector<std::uint32_t>>, 2> Q;
  if (opt.central)
    for (int q = 0; q < 2; ++q) {
      auto Qi = quotient_matrix(central_subspace(t, q), d);
      for (const auto& r : Qi) Q[q].push_back(to_mod(F, r));
    }
  if (!t.envelope && opt.central) Q[1] = Q[0];

  std::vector<std::size_t> by_parity[2];
  for (std::size_t i = 0; i < d; ++i) by_parity[t.parity(i)].push_back(i);

  std::vector<std::uint64_t> fact(n + 1, 1);
  for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * static_cast<std::uint64_t>(i);

  ModularRun run{0, 0, 0, ModularEchelon(F, N), ModularEchelon(F, N)};
  std::vector<std::vector<std::uint32_t>> R(n, std::vector<std::uint32_t>(d * d));
  std::vector<std::vector<std::uint32_t>> first(n, std::vector<std::uint32_t>(d));
  std::vector<int> par(n);
  std::vector<std::vector<std::uint32_t>> stack(n + 1, std::vector<std::uint32_t>(d));
  std::vector<ModularEchelon::Row> vals(d, ModularEchelon::Row(N));
  std::vector<ModularEchelon::Row> out_rows;

  auto draw_tuple = [&] {
    for (int v = 0; v < n; ++v) {
      int q = t.envelope ? static_cast<int>(rng() & 1) : 0;
      if (by_parity[q].empty()) q ^= 1;
      par[v] = q;
      std::vector<std::uint32_t> x(d, 0);
      for (auto i : by_parity[q]) x[i] = coef(rng);
      first[v] = x;
      auto& Rv = R[v];
      std::fill(Rv.begin(), Rv.end(), 0);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          if (!x[j]) continue;
          for (const auto& [k, c] : cells[i * d + j]) Rv[i * d + k] = F.add(Rv[i * d + k], F.mul(x[j], c));
        }
    }
  };

  // Values of all monomials of the current tuple, by coordinate.
  std::function<void(int, std::uint32_t, std::uint64_t, int)> dfs = [&](int depth, std::uint32_t used,
                                                                       std::uint64_t rank, int inv) {
    if (depth == n) {
      const auto& v = stack[depth];
      for (std::size_t k = 0; k < d; ++k) vals[k][rank] = (inv & 1) ? F.neg(v[k]) : v[k];
      return;
    }
    int smaller = 0;
    for (int u = 0; u < n; ++u) {
      if (used >> u & 1) continue;
      int add = 0;
      if (par[u])
        for (int w = u + 1; w < n; ++w)
          if ((used >> w & 1) && par[w]) ++add;
      auto& next = stack[depth + 1];
      bool nonzero = false;
      if (depth == 0) {
        next = first[u];
        nonzero = true;
      } else {
        const auto& prev = stack[depth];
        const auto& Ru = R[u];
        for (std::size_t k = 0; k < d; ++k) {
          std::uint64_t acc = 0;
          for (std::size_t i = 0; i < d; ++i)
            if (prev[i]) acc = F.reduce(acc + static_cast<std::uint64_t>(prev[i]) * Ru[i * d + k]);
          next[k] = static_cast<std::uint32_t>(acc);
          nonzero |= acc != 0;
        }
      }
      std::uint64_t child_rank = rank + static_cast<std::uint64_t>(smaller) * fact[n - 1 - depth];
      if (nonzero) {
        dfs(depth + 1, used | (1u << u), child_rank, inv + add);
      } else {
        // Every completion of this prefix vanishes.
        std::uint64_t span = fact[n - 1 - depth];
        for (std::size_t k = 0; k < d; ++k) std::fill(vals[k].begin() + child_rank, vals[k].begin() + child_rank + span, 0);
      }
      ++smaller;
    }
  };

  auto tuple_functionals = [&](std::vector<ModularEchelon::Row>& plain, std::vector<ModularEchelon::Row>& cent) {
    draw_tuple();
    ++run.samples;
    dfs(0, 0u, 0, 0);
    plain.clear();
    cent.clear();
    for (std::size_t k = 0; k < d; ++k) plain.push_back(vals[k]);
    if (opt.central) {
      int q = 0;
      for (int v = 0; v < n; ++v) q ^= par[v];
      for (const auto& qrow : Q[q]) {
        ModularEchelon::Row r(N, 0);
        for (std::size_t k = 0; k < d; ++k)
          if (qrow[k]) F.axpy(std::span<std::uint32_t>(r), qrow[k], std::span<const std::uint32_t>(vals[k]));
        cent.push_back(std::move(r));
      }
    }
  };

  std::vector<ModularEchelon::Row> plain, cent;
  const std::size_t fail_limit = 8 * d + 16;
  auto done = [&] { return run.rows.full() && (!opt.central || run.central_rows.full()); };
  auto growth = [&] {
    std::size_t fails = 0;
    while (fails < fail_limit && !done()) {
      tuple_functionals(plain, cent);
      bool grew = false;
      for (auto& r : plain)
        if (run.rows.insert(std::move(r))) grew = true;
      for (auto& r : cent)
        if (run.central_rows.insert(std::move(r))) grew = true;
      fails = grew ? 0 : fails + 1;
    }
  };

  growth();
  const std::size_t combos = 4;
  const std::uint64_t batch = opt.batch_factor * N;
  int quiet = 0;
  while (quiet < opt.window && !done()) {
    std::vector<ModularEchelon::Row> cp(combos, ModularEchelon::Row(N, 0)), cc(combos, ModularEchelon::Row(N, 0));
    std::uint64_t functionals = 0;
    while (functionals < batch) {
      tuple_functionals(plain, cent);
      functionals += plain.size();
      for (const auto& r : plain)
        for (auto& c : cp) F.axpy(std::span<std::uint32_t>(c), coef(rng), std::span<const std::uint32_t>(r));
      for (const auto& r : cent)
        for (auto& c : cc) F.axpy(std::span<std::uint32_t>(c), coef(rng), std::span<const std::uint32_t>(r));
    }
    bool grew = false;
    for (auto& c : cp) grew = run.rows.insert(std::move(c)) || grew;
    if (opt.central)
      for (auto& c : cc) grew = run.central_rows.insert(std::move(c)) || grew;
    if (grew) {
      quiet = 0;
      growth();
    } else {
      ++quiet;
    }
  }
  run.rank = run.rows.rank();
  run.central_rank = run.central_rows.rank();
  return run;
}

}  // namespace

EvaluationSpace evaluation_space(const Target& t, int n, const CodimOptions& opt) {
  if (n < 1) throw std::invalid_argument("degree must be positive");
  if (n > opt.max_degree) throw ResourceError("degree " + std::to_string(n) + " exceeds the configured cap");
  if (n > 12) throw ResourceError("degree above 12 is not supported");
  const std::size_t d = t.dim();
  const std::uint64_t N = factorial(n);
  std::mt19937_64 rng(opt.seed ^ (static_cast<std::uint64_t>(n) << 40) ^ d);
  std::vector<std::uint64_t> primes = opt.fixed_primes;
  const int wanted = std::max(1, opt.primes);
  if (static_cast<int>(primes.size()) < wanted) {
    auto extra = random_primes(static_cast<std::size_t>(wanted + 1), rng);
    for (auto p : extra)
      if (static_cast<int>(primes.size()) < wanted && std::find(primes.begin(), primes.end(), p) == primes.end())
        primes.push_back(p);
  }
  primes.resize(static_cast<std::size_t>(wanted));

  std::uint64_t cost = checked_power(d, n);
  if (cost != UINT64_MAX && __builtin_mul_overflow(cost, N, &cost)) cost = UINT64_MAX;
  bool exact = opt.mode == CodimOptions::Mode::Exact ||
               (opt.mode == CodimOptions::Mode::Auto && t.algebra->integral() && cost <= opt.exact_budget);
  if (exact && !t.algebra->integral()) throw ResourceError("exact mode needs integral structure constants");

  if (exact) {
    EvaluationSpace s = exact_space(t, n, opt, primes.front());
    s.result.primes = primes;
    return s;
  }

  EvaluationSpace s;
  s.n = n;
  std::vector<ModularRun> runs;
  for (auto p : primes) runs.push_back(modular_space(t, n, opt, p, rng()));
  bool agree = true;
  for (const auto& r : runs) agree &= r.rank == runs[0].rank && (!opt.central || r.central_rank == runs[0].central_rank);
  if (!agree && n <= 5 && t.algebra->integral()) {
    EvaluationSpace e = exact_space(t, n, opt, primes.front());
    e.result.primes = primes;
    return e;
  }
  bool certified_modular = false;
  if (!agree) {
    std::vector<std::uint64_t> more;
    do {
      more = random_primes(1, rng);
    } while (std::find(primes.begin(), primes.end(), more[0]) != primes.end());
    primes.push_back(more[0]);
    runs.push_back(modular_space(t, n, opt, more[0], rng()));
  }
  // Report the largest observed ranks: each is a lower bound for the true value.
  std::uint64_t c = 0, cz = 0, samples = 0;
  for (const auto& r : runs) {
    c = std::max(c, r.rank);
    cz = std::max(cz, r.central_rank);
    samples += r.samples;
  }
  s.result.n = n;
  s.result.c_n = c;
  s.result.central_computed = opt.central;
  s.result.c_n_z = opt.central ? cz : 0;
  s.result.c_n_delta = opt.central ? c - std::min(c, cz) : 0;
  s.result.method = "modular";
  s.result.primes = primes;
  s.result.samples = samples;
  s.result.certified = certified_modular;
  for (auto& r : runs) {
    s.rows.push_back(std::move(r.rows));
    s.central_rows.push_back(std::move(r.central_rows));
  }
  if (!agree) s.result.method = "modular-disagreement";
  return s;
}

CodimResult codimensions(const Target& t, int n, const CodimOptions& opt) { return evaluation_space(t, n, opt).result; }

std::vector<ModularEchelon::Row> identity_basis_mod(const EvaluationSpace& s, std::size_t prime_index) {
  const std::uint64_t p = s.result.primes.at(prime_index);
  PrimeField F(p);
  if (s.identities) {
    std::vector<ModularEchelon::Row> out;
    for (const auto& v : *s.identities) {
      auto z = primitive_integer(v);
      ModularEchelon::Row r(z.size());
      for (std::size_t i = 0; i < z.size(); ++i) r[i] = F.from_rational(Rational(z[i]));
      out.push_back(std::move(r));
    }
    return out;
  }
  return s.rows.at(prime_index).nullspace();
}

namespace {

bool compare_identities(const EvaluationSpace& a, const EvaluationSpace& b, bool equal) {
  if (a.n != b.n) return false;
  if (a.identities && b.identities) {
    const std::size_t N = factorial(a.n);
    Subspace sa = Subspace::span(N, *a.identities), sb = Subspace::span(N, *b.identities);
    return equal ? sa == sb : sb.contains(sa);
  }
  bool compared = false;
  for (std::size_t i = 0; i < a.result.primes.size(); ++i) {
    auto it = std::find(b.result.primes.begin(), b.result.primes.end(), a.result.primes[i]);
    if (it == b.result.primes.end()) continue;
    std::size_t j = static_cast<std::size_t>(it - b.result.primes.begin());
    PrimeField F(a.result.primes[i]);
    const std::size_t N = factorial(a.n);
    ModularEchelon ea(F, N), eb(F, N);
    for (auto& r : identity_basis_mod(a, i)) ea.insert(std::move(r));
    for (auto& r : identity_basis_mod(b, j)) eb.insert(std::move(r));
    if (equal ? !ea.same_span(eb) : !eb.contains_all(ea)) return false;
    compared = true;
  }
  if (!compared) throw std::invalid_argument("evaluation spaces share no prime");
  return true;
}

}  // namespace

bool same_identities(const EvaluationSpace& a, const EvaluationSpace& b) { return compare_identities(a, b, true); }
bool identities_contained(const EvaluationSpace& a, const EvaluationSpace& b) {
  return compare_identities(a, b, false);
}

// ------------------------------------------------------------ polynomial tests

std::string to_string(Centrality c) {
  switch (c) {
    case Centrality::Identity: return "identity";
    case Centrality::ProperCentral: return "proper_central";
    case Centrality::NonCentral: return "non_central";
  }
  return "?";
}

std::vector<Element> basis_elements(const Target& t) {
  std::vector<Element> out;
  for (std::size_t i = 0; i < t.dim(); ++i) out.push_back({t.algebra->basis_vector(i), t.parity(i)});
  return out;
}

std::vector<Element> homogeneous_elements(const Target& t, const std::vector<Vector>& vectors) {
  std::vector<Element> out;
  for (const auto& v : vectors) {
    if (!t.envelope) {
      if (!is_zero_vector(v)) out.push_back({v, 0});
      continue;
    }
    for (int q = 0; q < 2; ++q) {
      Vector c = t.algebra->component(v, q);
      if (!is_zero_vector(c)) out.push_back({c, q});
    }
  }
  return out;
}

GradedSpace graded_span(const Target& t, const std::vector<Vector>& vectors) {
  GradedSpace g(t.dim());
  for (const auto& e : homogeneous_elements(t, vectors)) (e.parity ? g.odd : g.even).add(e.coords);
  return g;
}

namespace {

GradedSpace default_leaf(const Target& t) {
  GradedSpace g(t.dim());
  for (std::size_t i = 0; i < t.dim(); ++i) (t.parity(i) ? g.odd : g.even).add(t.algebra->basis_vector(i));
  return g;
}

GradedSpace combine(const Target& t, const GradedSpace& a, const GradedSpace& b, bool comm) {
  const SuperAlgebra& A = *t.algebra;
  GradedSpace out(t.dim());
  for (int qa = 0; qa < 2; ++qa)
    for (int qb = 0; qb < 2; ++qb) {
      Subspace& target = (qa ^ qb) ? out.odd : out.even;
      for (const auto& u : a.part(qa).basis())
        for (const auto& v : b.part(qb).basis()) {
          if (target.dim() == t.dim()) break;
          Vector w = A.multiply(u, v);
          if (comm) {
            Vector r = A.multiply(v, u);
            const bool plus = t.envelope && (qa & qb);
            for (std::size_t k = 0; k < w.size(); ++k) w[k] = plus ? Rational(w[k] + r[k]) : Rational(w[k] - r[k]);
          }
          target.add(w);
        }
    }
  return out;
}

GradedSpace tree_rec(const Target& t, const Tree& node, const std::vector<std::optional<GradedSpace>>& leaves) {
  if (node.kind == Tree::Kind::Leaf) {
    if (node.var < static_cast<int>(leaves.size()) && leaves[node.var]) return *leaves[node.var];
    return default_leaf(t);
  }
  GradedSpace l = tree_rec(t, *node.left, leaves);
  if (l.empty()) return l;
  GradedSpace r = tree_rec(t, *node.right, leaves);
  if (r.empty()) return r;
  return combine(t, l, r, node.kind == Tree::Kind::Comm);
}

bool space_central(const Target& t, const GradedSpace& W) {
  for (int q = 0; q < 2; ++q) {
    const Subspace& part = W.part(q);
    if (part.empty()) continue;
    Subspace Z = Subspace::span(t.dim(), central_subspace(t, q));
    if (!Z.contains(part)) return false;
  }
  return true;
}

bool value_central(const Target& t, int q, const Vector& v) {
  if (is_zero_vector(v)) return true;
  if (t.envelope) {
    EnvelopeContext ctx{t.algebra, 64, EnvelopeContext::Mode::SignRule};
    return envelope_center_test(ctx, q, v);
  }
  Subspace Z = Subspace::span(t.dim(), t.algebra->center());
  return Z.contains(v);
}

TreePtr renumber(const TreePtr& node, const std::vector<int>& map) {
  auto out = std::make_shared<Tree>(*node);
  if (node->kind == Tree::Kind::Leaf) {
    out->var = map[node->var];
  } else {
    out->left = renumber(node->left, map);
    out->right = renumber(node->right, map);
  }
  return out;
}

void leaf_vars(const Tree& node, std::vector<int>& out) {
  if (node.kind == Tree::Kind::Leaf) {
    out.push_back(node.var);
    return;
  }
  leaf_vars(*node.left, out);
  leaf_vars(*node.right, out);
}

/// Fixes leaves one at a time to basis elements while `keep` holds for the value space.
std::optional<std::vector<Element>> tree_witness(const Target& t, const Tree& tree, int n,
                                                 const std::function<bool(const GradedSpace&)>& keep) {
  auto basis = basis_elements(t);
  std::vector<std::optional<GradedSpace>> leaves(n);
  std::vector<Element> chosen(n);
  std::function<bool(int)> rec = [&](int v) -> bool {
    if (v == n) return true;
    for (const auto& e : basis) {
      GradedSpace g(t.dim());
      (e.parity ? g.odd : g.even).add(e.coords);
      leaves[v] = g;
      if (!keep(tree_rec(t, tree, leaves))) continue;
      chosen[v] = e;
      if (rec(v + 1)) return true;
    }
    leaves[v].reset();
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return chosen;
}

struct Odometer {
  std::vector<std::size_t> sizes, pos;
  explicit Odometer(std::vector<std::size_t> s) : sizes(std::move(s)), pos(sizes.size(), 0) {}
  bool next() {
    for (std::size_t i = sizes.size(); i-- > 0;) {
      if (++pos[i] < sizes[i]) return true;
      pos[i] = 0;
    }
    return false;
  }
};

}  // namespace

GradedSpace tree_values(const Target& t, const Tree& tree, const std::vector<std::optional<GradedSpace>>& leaves) {
  return tree_rec(t, tree, leaves);
}

std::optional<std::vector<Element>> tree_nonzero(const Target& t, const Tree& tree,
                                                 const std::vector<std::vector<Element>>& choices) {
  const std::size_t n = choices.size();
  std::vector<std::optional<GradedSpace>> leaves(n);
  for (std::size_t v = 0; v < n; ++v) {
    GradedSpace g(t.dim());
    for (const auto& e : choices[v]) (e.parity ? g.odd : g.even).add(e.coords);
    leaves[v] = g;
  }
  if (tree_rec(t, tree, leaves).empty()) return std::nullopt;
  std::vector<Element> chosen(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto saved = leaves[v];
    bool found = false;
    for (const auto& e : choices[v]) {
      GradedSpace g(t.dim());
      (e.parity ? g.odd : g.even).add(e.coords);
      leaves[v] = g;
      if (!tree_rec(t, tree, leaves).empty()) {
        chosen[v] = e;
        found = true;
        break;
      }
    }
    // By linearity some candidate keeps the value space nonzero.
    if (!found) throw std::logic_error("witness search lost a nonzero value space");
  }
  return chosen;
}

Vector evaluate(const Target& t, const MultilinearPoly& f, const std::vector<Element>& args) {
  const SuperAlgebra& A = *t.algebra;
  const int n = f.degree();
  if (static_cast<int>(args.size()) != n) throw std::invalid_argument("argument count differs from degree");
  std::vector<int> par(n);
  for (int i = 0; i < n; ++i) par[i] = t.envelope ? args[i].parity : 0;
  Vector out = A.zero();
  for (const auto& [rank, c] : f.coefficients()) {
    Permutation p = permutation_unrank(rank, n);
    Vector v = args[p[0]].coords;
    for (int i = 1; i < n && !is_zero_vector(v); ++i) v = A.multiply(v, args[p[i]].coords);
    if (is_zero_vector(v)) continue;
    Rational coeff = c * odd_inversion_sign(p, par);
    for (std::size_t k = 0; k < v.size(); ++k) out[k] += coeff * v[k];
  }
  return out;
}

std::optional<std::vector<Element>> find_nonzero(const Target& t, const MultilinearPoly& f,
                                                 const std::vector<std::vector<Element>>& choices) {
  const int n = f.degree();
  std::vector<std::size_t> sizes;
  for (const auto& c : choices) {
    if (c.empty()) return std::nullopt;
    sizes.push_back(c.size());
  }
  if (static_cast<int>(sizes.size()) != n) throw std::invalid_argument("choice lists differ from degree");
  Odometer od(sizes);
  std::vector<Element> args(n);
  do {
    for (int i = 0; i < n; ++i) args[i] = choices[i][od.pos[i]];
    if (!is_zero_vector(evaluate(t, f, args))) return args;
  } while (od.next());
  return std::nullopt;
}

PolyVerdict classify(const Target& t, const GeneralPoly& f, const ExprPtr& expr, const CheckOptions& opt) {
  PolyVerdict verdict;
  auto comps = multilinearize(f);
  if (comps.empty()) {
    verdict.method = "trivial";
    return verdict;
  }
  std::optional<TreeForm> tf;
  if (expr) tf = tree_form(*expr);
  if (tf && comps.size() == 1 && sgn(tf->scale) != 0) {
    std::vector<int> vars;
    leaf_vars(*tf->root, vars);
    std::vector<int> sorted = vars;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> map(sorted.empty() ? 0 : sorted.back() + 1, -1);
    for (std::size_t i = 0; i < sorted.size(); ++i) map[sorted[i]] = static_cast<int>(i);
    TreePtr root = renumber(tf->root, map);
    const int n = static_cast<int>(vars.size());
    verdict.method = "value-space";
    verdict.component = comps[0];
    GradedSpace W = tree_values(t, *root);
    if (W.empty()) {
      verdict.kind = Centrality::Identity;
      return verdict;
    }
    const bool central = space_central(t, W);
    verdict.kind = central ? Centrality::ProperCentral : Centrality::NonCentral;
    auto keep = central ? std::function<bool(const GradedSpace&)>([](const GradedSpace& g) { return !g.empty(); })
                        : std::function<bool(const GradedSpace&)>([&](const GradedSpace& g) { return !space_central(t, g); });
    if (auto w = tree_witness(t, *root, n, keep)) {
      verdict.witness = *w;
      verdict.value = evaluate(t, comps[0], *w);
    }
    return verdict;
  }

  // Exhaustive over basis tuples, or sampled when too large.
  auto basis = basis_elements(t);
  bool any_nonzero = false, all_central = true;
  for (const auto& g : comps) {
    const int n = g.degree();
    std::uint64_t cost = checked_power(t.dim(), n);
    if (cost != UINT64_MAX && __builtin_mul_overflow(cost, static_cast<std::uint64_t>(g.coefficients().size()), &cost))
      cost = UINT64_MAX;
    auto record = [&](const std::vector<Element>& args, const Vector& v) {
      if (is_zero_vector(v)) return false;
      int q = 0;
      for (const auto& a : args) q ^= a.parity;
      const bool c = value_central(t, q, v);
      if (!any_nonzero || (!c && all_central)) {
        verdict.witness = args;
        verdict.value = v;
        verdict.component = g;
      }
      any_nonzero = true;
      if (!c) all_central = false;
      return !c;  // a non-central value settles the classification
    };
    if (cost <= opt.exhaustive_budget) {
      verdict.method = "exhaustive";
      Odometer od(std::vector<std::size_t>(n, basis.size()));
      std::vector<Element> args(n);
      do {
        for (int i = 0; i < n; ++i) args[i] = basis[od.pos[i]];
        if (record(args, evaluate(t, g, args))) break;
      } while (od.next());
    } else {
      verdict.method = "sampled";
      verdict.certified = false;
      std::mt19937_64 rng(opt.seed);
      std::uniform_int_distribution<int> small(-3, 3);
      std::vector<Element> args(n);
      for (int s = 0; s < opt.samples; ++s) {
        for (int i = 0; i < n; ++i) {
          int q = t.envelope ? static_cast<int>(rng() & 1) : 0;
          Vector x = t.algebra->zero();
          for (std::size_t k = 0; k < t.dim(); ++k)
            if (t.parity(k) == q) x[k] = small(rng);
          args[i] = {x, q};
        }
        if (record(args, evaluate(t, g, args))) break;
      }
    }
    if (!all_central) break;
  }
  if (!all_central) {
    verdict.kind = Centrality::NonCentral;
    verdict.certified = true;  // a concrete non-central value is exact
  } else if (any_nonzero) {
    verdict.kind = Centrality::ProperCentral;
  } else {
    verdict.kind = Centrality::Identity;
  }
  return verdict;
}

PolyVerdict classify(const Target& t, const std::string& poly, const CheckOptions& opt) {
  ExprPtr e = parse_expr(poly);
  return classify(t, expand(*e), e, opt);
}

bool is_identity(const Target& t, const std::string& poly, const CheckOptions& opt) {
  return classify(t, poly, opt).kind == Centrality::Identity;
}

}  // namespace pilab
