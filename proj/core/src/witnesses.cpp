#include "pilab/witnesses.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace pilab {

namespace {

// ------------------------------------------------------------------ lemma tables

struct Generator {
  std::string word;
  std::string image;  // matrix units of the target ambient, e.g. "e11+e44"
};

struct LemmaData {
  std::string path;
  int idempotents = 0;
  int radicals = 0;
  bool odd_unit = false;
  std::size_t size = 0;  // target ambient is M_size
  std::optional<std::vector<int>> grading;
  std::vector<Generator> generators;
  std::vector<std::string> kernel;
  std::vector<std::string> basis;
  std::vector<std::string> family;
};

const LemmaData& lemma_data(Lemma l) {
  static const std::map<Lemma, LemmaData> table = [] {
    std::map<Lemma, LemmaData> t;
    t[Lemma::L41] = {"e1j1e2j2e3j3e1", 3, 3, false, 4, std::nullopt,
                     {{"e1", "e11+e44"}, {"e2", "e22"}, {"e3", "e33"},
                      {"e1j1e2", "e12"}, {"e2j2e3", "e23"}, {"e3j3e1", "e34"}},
                     {"e3j3e1j1e2"},
                     {"e1", "e2", "e3", "e1j1e2", "e2j2e3", "e3j3e1", "e1j1e2j2e3", "e2j2e3j3e1", "e1j1e2j2e3j3e1"},
                     {"A_3"}};
    t[Lemma::L42] = {"j1e1j2e2j3e3j4", 3, 4, false, 5, std::nullopt,
                     {{"e1", "e22"}, {"e2", "e33"}, {"e3", "e44"}, {"j1e1", "e12"},
                      {"e1j2e2", "e23"}, {"e2j3e3", "e34"}, {"e3j4", "e45"}},
                     {"e3j4e1", "e3j4e2", "e3j4e3", "e3j4j1e1", "e3j1e1", "e2j1e1", "e1j1e1"},
                     {"e1", "e2", "e3", "j1e1", "e1j2e2", "e2j3e3", "e3j4", "j1e1j2e2", "e1j2e2j3e3", "e2j3e3j4",
                      "j1e1j2e2j3e3", "e1j2e2j3e3j4", "j1e1j2e2j3e3j4"},
                     {"A_4"}};
    // images of e1j1e2 and e2j2e1 are filled per alpha
    t[Lemma::L43] = {"e2j2e1j1e2", 2, 2, true, 6, std::vector<int>{0, 1, 0, 1, 0, 1},
                     {{"e1", "e33+e44"}, {"e2", "e11+e22+e55+e66"}, {"ce2", "e12+e21+e56+e65"},
                      {"e1j1e2", ""}, {"e2j2e1", ""}},
                     {"e1j1e2j2e1", "e1j1ce2j2e1"},
                     {"e1", "e2", "ce2", "e1j1e2", "e2j2e1", "e1j1ce2", "ce2j2e1", "e2j2e1j1e2", "ce2j2e1j1e2"},
                     {"A_5"}};
    t[Lemma::L44] = {"j1e1j2e2j3", 2, 3, true, 5, std::nullopt,
                     {{"e1", "e22"}, {"e2", "e33+e44"}, {"ce2", "e34+e43"},
                      {"j1e1", "e12"}, {"e1j2e2", "e23"}, {"e2j3", "e35"}},
                     {},
                     {"e1", "e2", "ce2", "j1e1", "e1j2e2", "e2j3", "j1e1j2e2", "j1e1j2ce2", "j1e1j2e2j3", "e1j2ce2",
                      "e1j2e2j3", "ce2j3"},
                     {"A_6", "A_6^1", "A_6^2", "A_6^3"}};
    t[Lemma::L45] = {"j1e2j2e1j3", 2, 3, true, 5, std::nullopt,
                     {{"e1", "e44"}, {"e2", "e22+e33"}, {"ce2", "e23+e32"},
                      {"j1e2", "e12"}, {"e2j2e1", "e24"}, {"e1j3", "e45"}},
                     {},
                     {"e1", "e2", "ce2", "j1e2", "j1ce2", "e2j2e1", "ce2j2e1", "e1j3", "j1e2j2e1", "e2j2e1j3",
                      "ce2j2e1j3", "j1e2j2e1j3"},
                     {"A_7", "A_7^1", "A_7^2", "A_7^3"}};
    t[Lemma::L46] = {"e1j1e2j2e1", 2, 2, true, 4, std::nullopt,
                     {{"e1", "e11+e44"}, {"e2", "e22+e33"}, {"ce2", "e23+e32"},
                      {"e1j1e2", "e12"}, {"e2j2e1", "e24"}},
                     {"e2j2e1j1e2", "e1j1ce2j2e1"},
                     {"e1", "e2", "ce2", "e1j1e2", "e2j2e1", "e1j1ce2", "ce2j2e1", "e1j1e2j2e1"},
                     {"A_8", "A_9"}};
    return t;
  }();
  return table.at(l);
}

constexpr Lemma all_lemmas[] = {Lemma::L41, Lemma::L42, Lemma::L43, Lemma::L44, Lemma::L45, Lemma::L46};

// ------------------------------------------------------------------ words

struct Letter {
  char kind;  // 'e', 'c' or 'j'
  int index;  // 0-based
};

std::vector<Letter> parse_word(const std::string& w) {
  std::vector<Letter> out;
  for (std::size_t i = 0; i < w.size();) {
    const char k = w[i];
    if (k == 'c') {
      out.push_back({'c', 0});
      ++i;
      continue;
    }
    if ((k != 'e' && k != 'j') || i + 1 >= w.size() || w[i + 1] < '1' || w[i + 1] > '9')
      throw std::invalid_argument("bad word '" + w + "'");
    out.push_back({k, w[i + 1] - '1'});
    i += 2;
  }
  if (out.empty()) throw std::invalid_argument("empty word");
  return out;
}

struct Letters {
  std::vector<Vector> e;
  std::optional<Vector> c;
  std::vector<Vector> j;

  const Vector& at(const Letter& x) const {
    if (x.kind == 'c') {
      if (!c) throw std::invalid_argument("word uses c but e2 has no odd part");
      return *c;
    }
    const auto& v = x.kind == 'e' ? e : j;
    if (x.index >= static_cast<int>(v.size())) throw std::invalid_argument("word letter out of range");
    return v[static_cast<std::size_t>(x.index)];
  }
};

Vector word_value(const SuperAlgebra& B, const Letters& L, const std::string& w) {
  auto letters = parse_word(w);
  Vector v = L.at(letters.front());
  for (std::size_t i = 1; i < letters.size(); ++i) v = B.multiply(v, L.at(letters[i]));
  return v;
}

Letters letters_of(const PatternMatch& m) {
  Letters L;
  L.e = m.idempotents;
  L.c = m.odd_unit;
  for (const auto& j : m.radical) L.j.push_back(j.coords);
  return L;
}

// ------------------------------------------------------------------ matrices

using Matrix = Vector;  // dense size*size, row-major

Matrix parse_matrix(std::size_t N, const std::string& text) {
  Matrix m(N * N);
  std::size_t i = 0;
  while (i < text.size()) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') sign = text[i++] == '-' ? -1 : 1;
    if (i + 3 > text.size() || text[i] != 'e') throw std::invalid_argument("bad matrix " + text);
    const std::size_t r = static_cast<std::size_t>(text[i + 1] - '1'), s = static_cast<std::size_t>(text[i + 2] - '1');
    if (r >= N || s >= N) throw std::invalid_argument("matrix unit outside ambient: " + text);
    m[r * N + s] += sign;
    i += 3;
  }
  return m;
}

Matrix mat_mul(std::size_t N, const Matrix& a, const Matrix& b) {
  Matrix out(N * N);
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t k = 0; k < N; ++k) {
      const Rational& x = a[r * N + k];
      if (sgn(x) == 0) continue;
      for (std::size_t s = 0; s < N; ++s)
        if (sgn(b[k * N + s]) != 0) out[r * N + s] += x * b[k * N + s];
    }
  return out;
}

/// Z2 labels h with h_r + h_s = parity on every nonzero entry; nullopt when inconsistent.
std::optional<std::vector<int>> solve_grading(std::size_t N, const std::vector<std::pair<Matrix, int>>& constraints) {
  std::vector<std::size_t> parent(N);
  std::vector<int> rel(N, 0);  // parity relative to the parent
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::pair<std::size_t, int>(std::size_t)> find = [&](std::size_t x) -> std::pair<std::size_t, int> {
    if (parent[x] == x) return {x, 0};
    auto [root, p] = find(parent[x]);
    parent[x] = root;
    rel[x] ^= p;
    return {root, rel[x]};
  };
  for (const auto& [m, q] : constraints)
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t s = 0; s < N; ++s) {
        if (sgn(m[r * N + s]) == 0) continue;
        auto [ra, pa] = find(r);
        auto [rb, pb] = find(s);
        if (ra == rb) {
          if ((pa ^ pb) != q) return std::nullopt;
        } else {
          parent[ra] = rb;
          rel[ra] = pa ^ pb ^ q;
        }
      }
  std::vector<int> h(N);
  for (std::size_t x = 0; x < N; ++x) h[x] = find(x).second;
  return h;
}

bool matrix_has_parity(std::size_t N, const Matrix& m, const std::vector<int>& h, int q) {
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t s = 0; s < N; ++s)
      if (sgn(m[r * N + s]) != 0 && ((h[r] + h[s]) & 1) != q) return false;
  return true;
}

Matrix matrix_part(std::size_t N, const Matrix& m, const std::vector<int>& h, int q) {
  Matrix out(N * N);
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t s = 0; s < N; ++s)
      if (((h[r] + h[s]) & 1) == q) out[r * N + s] = m[r * N + s];
  return out;
}

// ------------------------------------------------------------------ helpers

Subspace ideal_in(const SuperAlgebra& B, const Subspace& algebra, const std::vector<Vector>& gens) {
  Subspace I = Subspace::span(B.dim(), gens);
  for (;;) {
    const std::size_t before = I.dim();
    auto basis = I.basis();
    for (const auto& x : basis)
      for (const auto& u : algebra.basis()) {
        I.add(B.multiply(u, x));
        I.add(B.multiply(x, u));
      }
    if (I.dim() == before) return I;
  }
}

std::string format_combination(const std::vector<std::string>& names, const Vector& coeffs) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (sgn(coeffs[i]) == 0) continue;
    std::string c = abs(coeffs[i]) == 1 ? "" : Rational(abs(coeffs[i])).get_str() + "*";
    if (out.empty()) out = (sgn(coeffs[i]) < 0 ? "-" : "") + c + names[i];
    else out += (sgn(coeffs[i]) < 0 ? " - " : " + ") + c + names[i];
  }
  return out;
}

bool same_parity(int a, int b) { return (a & 1) == (b & 1); }

std::string predicted_variant(Lemma l, const std::vector<Element>& j) {
  switch (l) {
    case Lemma::L44:
      if (j[0].parity == 0) return same_parity(j[1].parity, j[2].parity) ? "A_6" : "A_6^1";
      return same_parity(j[1].parity, j[2].parity) ? "A_6^2" : "A_6^3";
    case Lemma::L45:
      if (j[2].parity == 0) return same_parity(j[0].parity, j[1].parity) ? "A_7" : "A_7^1";
      return same_parity(j[0].parity, j[1].parity) ? "A_7^2" : "A_7^3";
    case Lemma::L46: return same_parity(j[0].parity, j[1].parity) ? "A_8" : "A_9";
    default: return lemma_target(l);
  }
}

Subspace radical_space(const SuperAlgebra& B) { return Subspace::span(B.dim(), B.wedderburn()->radical); }

bool is_small_block(const SimpleBlock& b) {
  switch (b.kind) {
    case BlockKind::F:
    case BlockKind::FplusCF: return true;
    case BlockKind::Mkl: return b.k + b.l == 1;
    case BlockKind::MkPlusCMk: return b.k == 1;
  }
  return false;
}

bool has_odd_unit(const SimpleBlock& b) {
  return b.kind == BlockKind::FplusCF || (b.kind == BlockKind::MkPlusCMk && b.k == 1);
}

std::optional<Vector> odd_unit_of(const SuperAlgebra& B, const SimpleBlock& b) {
  if (!has_odd_unit(b)) return std::nullopt;
  for (const auto& v : b.basis)
    if (B.homogeneous_parity(v) == 1) return v;
  return std::nullopt;
}

}  // namespace

// ------------------------------------------------------------------ public

std::string to_string(Lemma l) {
  switch (l) {
    case Lemma::L41: return "L4.1";
    case Lemma::L42: return "L4.2";
    case Lemma::L43: return "L4.3";
    case Lemma::L44: return "L4.4";
    case Lemma::L45: return "L4.5";
    case Lemma::L46: return "L4.6";
  }
  return "?";
}

Lemma parse_lemma(const std::string& text) {
  for (auto l : all_lemmas)
    if (to_string(l) == text) return l;
  throw std::invalid_argument("unknown lemma '" + text + "'");
}

std::string lemma_path(Lemma l) { return lemma_data(l).path; }

std::string lemma_target(Lemma l) { return lemma_data(l).family.front(); }

SuperAlgebra subspace_algebra(const SuperAlgebra& B, const Subspace& S, const std::string& name) {
  Subspace even = S.intersect(B.even_part()), odd = S.intersect(B.odd_part());
  if (even.dim() + odd.dim() != S.dim()) throw AlgebraError(name + ": subspace is not graded");
  std::vector<Vector> basis = even.reduced_basis();
  for (auto& v : odd.reduced_basis()) basis.push_back(v);
  std::vector<std::string> labels;
  std::vector<int> parity;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    labels.push_back(B.format(basis[i]));
    parity.push_back(i < even.dim() ? 0 : 1);
  }
  const std::size_t d = basis.size();
  std::vector<std::vector<Term>> table(d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      auto x = solve_combination(basis, B.multiply(basis[a], basis[b]));
      if (!x) throw AlgebraError(name + ": subspace is not closed under multiplication");
      for (std::size_t m = 0; m < d; ++m)
        if (sgn((*x)[m]) != 0) table[a * d + b].push_back({m, (*x)[m]});
    }
  return SuperAlgebra(name, labels, parity, table);
}

std::string validate_match(const SuperAlgebra& B, const PatternMatch& m) {
  const auto& data = lemma_data(m.lemma);
  if (static_cast<int>(m.idempotents.size()) != data.idempotents) return "wrong number of idempotents";
  if (static_cast<int>(m.radical.size()) != data.radicals) return "wrong number of radical elements";
  if (data.odd_unit && !m.odd_unit) return "e2 must lie in an F+cF block";
  for (std::size_t a = 0; a < m.idempotents.size(); ++a) {
    const auto& e = m.idempotents[a];
    if (B.homogeneous_parity(e) != 0) return "idempotent e" + std::to_string(a + 1) + " is not even";
    if (B.multiply(e, e) != e) return "e" + std::to_string(a + 1) + " is not idempotent";
    for (std::size_t b = 0; b < m.idempotents.size(); ++b)
      if (a != b && !is_zero_vector(B.multiply(e, m.idempotents[b])))
        return "e" + std::to_string(a + 1) + " and e" + std::to_string(b + 1) + " are not orthogonal";
  }
  if (m.odd_unit) {
    const auto& c = *m.odd_unit;
    const auto& e2 = m.idempotents.at(1);
    if (B.homogeneous_parity(c) != 1) return "c is not odd";
    if (B.multiply(c, c) != e2 || B.multiply(e2, c) != c || B.multiply(c, e2) != c) return "c is not a square root of e2";
  }
  if (B.wedderburn()) {
    Subspace J = radical_space(B);
    for (std::size_t a = 0; a < m.radical.size(); ++a) {
      const auto& j = m.radical[a];
      if (!J.contains(j.coords)) return "j" + std::to_string(a + 1) + " is not in the radical";
      if (B.homogeneous_parity(j.coords) != j.parity) return "j" + std::to_string(a + 1) + " has the wrong parity";
    }
  }
  if (is_zero_vector(word_value(B, letters_of(m), data.path))) return data.path + " vanishes";
  return {};
}

Detection detect_patterns(const SuperAlgebra& B) {
  if (!B.wedderburn()) throw AlgebraError(B.name() + ": no Wedderburn data");
  if (auto r = verify_wedderburn(B, *B.wedderburn()); !r.ok)
    throw AlgebraError(B.name() + ": invalid Wedderburn data: " + r.failure);
  const auto& w = *B.wedderburn();
  Detection out;

  for (std::size_t i = 0; i < w.blocks.size(); ++i) {
    const auto& b = w.blocks[i];
    if (is_small_block(b)) continue;
    if (b.kind == BlockKind::Mkl && b.k > 0 && b.l > 0)
      out.short_circuit = ShortCircuit{i, "A_2", "block " + b.describe() + " contains M_{1,1}"};
    else
      out.short_circuit = ShortCircuit{i, "A_1", "block " + b.describe() + " contains M_2(F) in its even part"};
    return out;
  }

  const Subspace J = radical_space(B);
  if (J.empty()) return out;
  const Target t{&B, true};
  const std::vector<Element> pool = homogeneous_elements(t, w.radical);

  std::vector<Vector> units;
  for (const auto& b : w.blocks) units.push_back(block_unit(B, b));

  for (auto lemma : all_lemmas) {
    const auto& data = lemma_data(lemma);
    const auto path = parse_word(data.path);

    std::vector<std::vector<std::size_t>> choices;
    const std::size_t m = w.blocks.size();
    if (data.idempotents == 3) {
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
          for (std::size_t c = 0; c < m; ++c)
            if (a != b && b != c && a != c) choices.push_back({a, b, c});
    } else {
      for (std::size_t e2 = 0; e2 < m; ++e2) {
        if (!has_odd_unit(w.blocks[e2])) continue;
        for (std::size_t e1 = 0; e1 < m; ++e1)
          if (e1 != e2) choices.push_back({e1, e2});
      }
    }

    for (const auto& ch : choices) {
      Letters L;
      for (auto k : ch) L.e.push_back(units[k]);
      if (data.odd_unit) L.c = odd_unit_of(B, w.blocks[ch[1]]);

      // decision: product of subspaces along the path
      Subspace S(B.dim());
      bool first = true;
      for (const auto& x : path) {
        Subspace f = x.kind == 'j' ? J : Subspace::span(B.dim(), {L.at(x)});
        S = first ? f : B.product(S, f);
        first = false;
        if (S.empty()) break;
      }
      if (S.empty()) continue;

      // extraction: first tuple of homogeneous radical elements with nonzero product
      L.j.assign(static_cast<std::size_t>(data.radicals), Vector{});
      std::vector<std::size_t> pick(static_cast<std::size_t>(data.radicals));
      std::optional<Vector> found;
      std::function<void(std::size_t, const std::optional<Vector>&)> rec = [&](std::size_t pos,
                                                                              const std::optional<Vector>& acc) {
        if (found) return;
        if (pos == path.size()) {
          found = *acc;
          return;
        }
        const auto& x = path[pos];
        if (x.kind != 'j') {
          Vector next = acc ? B.multiply(*acc, L.at(x)) : L.at(x);
          if (!is_zero_vector(next)) rec(pos + 1, next);
          return;
        }
        for (std::size_t q = 0; q < pool.size() && !found; ++q) {
          pick[static_cast<std::size_t>(x.index)] = q;
          Vector next = acc ? B.multiply(*acc, pool[q].coords) : pool[q].coords;
          if (!is_zero_vector(next)) rec(pos + 1, next);
        }
      };
      rec(0, std::nullopt);
      if (!found) throw std::logic_error("nonzero subspace product without a homogeneous witness");

      PatternMatch match;
      match.lemma = lemma;
      match.blocks = ch;
      match.idempotents = L.e;
      match.odd_unit = L.c;
      for (auto q : pick) match.radical.push_back(pool[q]);
      match.nonzero_product = *found;
      match.variant = predicted_variant(lemma, match.radical);
      match.target = lemma == Lemma::L46 ? match.variant : lemma_target(lemma);
      out.matches.push_back(std::move(match));
    }
  }
  return out;
}

namespace {

struct Graph {
  std::size_t dB = 0, N = 0;
  std::vector<Vector> left, right;  // projections of a basis of the graph
  Subspace bbar{0}, image{0}, kernel{0};
  bool well_defined = false;

  std::optional<Matrix> phi(const Vector& b) const {
    auto x = solve_combination(left, b);
    if (!x) return std::nullopt;
    Matrix m(N * N);
    for (std::size_t i = 0; i < left.size(); ++i)
      if (sgn((*x)[i]) != 0)
        for (std::size_t k = 0; k < m.size(); ++k) m[k] += (*x)[i] * right[i][k];
    return m;
  }
};

Graph build_graph(const SuperAlgebra& B, std::size_t N, const std::vector<std::pair<Vector, Matrix>>& gens) {
  Graph g;
  g.dB = B.dim();
  g.N = N;
  const std::size_t W = g.dB + N * N;
  auto join = [&](const Vector& b, const Matrix& m) {
    Vector v(W);
    std::copy(b.begin(), b.end(), v.begin());
    std::copy(m.begin(), m.end(), v.begin() + static_cast<std::ptrdiff_t>(g.dB));
    return v;
  };
  auto split = [&](const Vector& v) {
    return std::pair{Vector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(g.dB)),
                     Matrix(v.begin() + static_cast<std::ptrdiff_t>(g.dB), v.end())};
  };
  Subspace L(W);
  for (const auto& [b, m] : gens) L.add(join(b, m));
  for (;;) {
    const std::size_t before = L.dim();
    auto basis = L.basis();
    for (const auto& u : basis)
      for (const auto& v : basis) {
        auto [bu, mu] = split(u);
        auto [bv, mv] = split(v);
        L.add(join(B.multiply(bu, bv), mat_mul(N, mu, mv)));
      }
    if (L.dim() == before) break;
  }
  for (const auto& v : L.basis()) {
    auto [b, m] = split(v);
    g.left.push_back(std::move(b));
    g.right.push_back(std::move(m));
  }
  g.bbar = Subspace::span(g.dB, g.left);
  g.image = Subspace::span(N * N, g.right);
  g.well_defined = g.bbar.dim() == L.dim();
  // kernel: combinations whose image vanishes
  std::vector<Vector> rows(N * N, Vector(g.left.size()));
  for (std::size_t i = 0; i < g.left.size(); ++i)
    for (std::size_t k = 0; k < N * N; ++k) rows[k][i] = g.right[i][k];
  g.kernel = Subspace(g.dB);
  for (const auto& x : rational_nullspace(rows, g.left.size())) {
    Vector k(g.dB);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (sgn(x[i]) != 0)
        for (std::size_t t = 0; t < g.dB; ++t) k[t] += x[i] * g.left[i][t];
    g.kernel.add(k);
  }
  return g;
}

/// Parts of a matrix subspace of the given parity.
Subspace graded_part(std::size_t N, const Subspace& S, const std::vector<int>& h, int q) {
  Subspace out(N * N);
  for (const auto& v : S.basis()) out.add(matrix_part(N, v, h, q));
  return out;
}

/// Graded (or plain, when graded is false) isomorphism image -> member by conjugation with a permutation matrix.
bool conjugate_to(std::size_t N, const Subspace& image, const std::vector<int>& h, const SuperAlgebra& member,
                  bool graded) {
  const auto& amb = member.ambient();
  if (!amb || amb->size != N || member.dim() != image.dim()) return false;
  Subspace target_even(N * N), target_odd(N * N), target_all(N * N);
  for (std::size_t i = 0; i < member.dim(); ++i) {
    Matrix m(N * N);
    for (const auto& [pos, c] : amb->embedding[i]) m[pos] += c;
    target_all.add(m);
    (member.parity(i) ? target_odd : target_even).add(m);
  }
  const Subspace even = graded_part(N, image, h, 0), odd = graded_part(N, image, h, 1);
  if (graded && (even.dim() != target_even.dim() || odd.dim() != target_odd.dim())) return false;
  std::vector<std::size_t> perm(N);
  std::iota(perm.begin(), perm.end(), 0);
  auto conj = [&](const Subspace& S) {
    Subspace out(N * N);
    for (const auto& v : S.basis()) {
      Matrix m(N * N);
      for (std::size_t r = 0; r < N; ++r)
        for (std::size_t s = 0; s < N; ++s) m[perm[r] * N + perm[s]] = v[r * N + s];
      out.add(m);
    }
    return out;
  };
  do {
    if (graded) {
      if (conj(even) == target_even && conj(odd) == target_odd) return true;
    } else if (conj(image) == target_all) {
      return true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::string target_delta_witness(const Catalog& catalog, const std::string& name) {
  static std::mutex mu;
  static std::map<std::pair<const Catalog*, std::string>, std::string> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find({&catalog, name}); it != cache.end()) return it->second;
  }
  const auto& entry = catalog.entry(name);
  auto result = delta_exponent_bounds(*catalog.algebra(name), entry.envelope);
  std::string poly = result.delta_witness ? result.delta_witness->poly : std::string{};
  std::lock_guard lock(mu);
  cache[{&catalog, name}] = poly;
  return poly;
}

struct Attempt {
  std::vector<int> h;
  bool graded = false;
  std::optional<Graph> graph;
  std::vector<std::pair<Vector, Matrix>> gens;
};

Attempt attempt(const SuperAlgebra& B, const LemmaData& data, const Letters& L, const std::vector<std::string>& images) {
  Attempt a;
  const std::size_t N = data.size;
  std::vector<std::pair<Matrix, int>> constraints;
  for (std::size_t i = 0; i < data.generators.size(); ++i) {
    Vector b = word_value(B, L, data.generators[i].word);
    Matrix m = parse_matrix(N, images[i]);
    auto q = B.homogeneous_parity(b);
    constraints.push_back({m, q.value_or(0)});
    a.gens.push_back({std::move(b), std::move(m)});
  }
  if (data.grading) {
    a.h = *data.grading;
    a.graded = true;
    for (const auto& [m, q] : constraints) a.graded &= matrix_has_parity(N, m, a.h, q);
  } else if (auto h = solve_grading(N, constraints)) {
    a.h = *h;
    a.graded = true;
  } else {
    a.h.assign(N, 0);
  }
  for (const auto& [b, m] : a.gens)
    if (!B.homogeneous_parity(b)) a.graded = false;  // a generator vanished or is mixed
  a.graph = build_graph(B, N, a.gens);
  return a;
}

}  // namespace

bool Realization::conclusion_holds() const {
  if (!graded || !well_defined || identities_contained.empty()) return false;
  return std::all_of(identities_contained.begin(), identities_contained.end(), [](bool b) { return b; });
}

bool Realization::checks_passed() const {
  if (!conclusion_holds() || !basis_ok || kernel_matches == false || image_member.empty()) return false;
  if (!std::all_of(identities_equal.begin(), identities_equal.end(), [](bool b) { return b; })) return false;
  if (central_checks.empty()) return true;
  return std::any_of(central_checks.begin(), central_checks.end(),
                     [](const auto& c) { return c.second == Centrality::ProperCentral; });
}

Realization realize_pattern(const SuperAlgebra& B, const PatternMatch& m, const RealizeOptions& opt) {
  const Catalog& catalog = opt.catalog ? *opt.catalog : Catalog::builtin();
  const auto& data = lemma_data(m.lemma);
  Realization out;
  out.match = m;
  for (const auto& g : data.generators) out.generators.push_back(g.word);
  out.coset_basis = data.basis;
  if (auto why = validate_match(B, m); !why.empty()) {
    out.failure = "invalid match: " + why;
    return out;
  }
  const Letters L = letters_of(m);
  const std::size_t N = data.size;

  std::vector<std::string> images;
  for (const auto& g : data.generators) images.push_back(g.image);

  auto member_of = [&](const Subspace& image, const std::vector<int>& h) -> std::string {
    std::vector<std::string> order{m.variant};
    for (const auto& f : data.family)
      if (f != m.variant) order.push_back(f);
    for (const auto& name : order)
      if (catalog.contains(name) && conjugate_to(N, image, h, *catalog.algebra(name), true)) return name;
    return {};
  };

  Attempt chosen;
  if (m.lemma == Lemma::L43) {
    // alpha in {1, c} for the two radical generators; every combination is tried and recorded
    static const std::string e23[2] = {"e35+e46", "e36+e45"}, e12[2] = {"e13+e24", "e14+e23"};
    std::vector<std::pair<int, int>> cases;
    if (opt.alpha) cases.push_back(*opt.alpha);
    else cases = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    std::vector<Attempt> tried;
    for (auto [a1, a2] : cases) {
      images[3] = e23[a1];
      images[4] = e12[a2];
      Attempt a = attempt(B, data, L, images);
      AlphaCase ac{a1, a2, a.graded, a.graph->well_defined, false};
      if (ac.graded && ac.well_defined) ac.image_matches = !member_of(a.graph->image, a.h).empty();
      out.alpha_cases.push_back(ac);
      tried.push_back(std::move(a));
    }
    auto pick = [&](auto pred) -> std::optional<std::size_t> {
      for (std::size_t i = 0; i < tried.size(); ++i)
        if (pred(out.alpha_cases[i])) return i;
      return std::nullopt;
    };
    auto i = pick([](const AlphaCase& c) { return c.graded && c.well_defined && c.image_matches; });
    if (!i) i = pick([](const AlphaCase& c) { return c.graded && c.well_defined; });
    chosen = std::move(tried[i.value_or(0)]);
  } else {
    chosen = attempt(B, data, L, images);
  }

  const Graph& g = *chosen.graph;
  out.graded = chosen.graded;
  out.well_defined = g.well_defined;
  out.ambient_grading = chosen.h;
  out.kernel_dim = g.kernel.dim();
  out.subalgebra = std::make_shared<SuperAlgebra>(subspace_algebra(B, g.bbar, B.name() + " subalgebra"));
  if (!out.graded) {
    out.failure = "generator parities do not fit any grading of the target";
    return out;
  }
  if (!out.well_defined) {
    out.failure = "generator assignment does not extend to a homomorphism";
    return out;
  }

  if (!data.kernel.empty()) {
    std::vector<Vector> gens;
    for (const auto& w : data.kernel) gens.push_back(word_value(B, L, w));
    out.kernel_matches = ideal_in(B, g.bbar, gens) == g.kernel;
  }

  // coset basis
  std::vector<Vector> words;
  for (const auto& w : data.basis) words.push_back(word_value(B, L, w));
  {
    std::vector<Vector> cols = words;
    for (const auto& k : g.kernel.basis()) cols.push_back(k);
    Subspace all = Subspace::span(B.dim(), cols);
    const bool inside = std::all_of(words.begin(), words.end(), [&](const Vector& v) { return g.bbar.contains(v); });
    std::vector<Vector> rows(B.dim(), Vector(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i)
      for (std::size_t t = 0; t < B.dim(); ++t) rows[t][i] = cols[i][t];
    for (const auto& x : rational_nullspace(rows, cols.size())) {
      Vector head(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(words.size()));
      if (!is_zero_vector(head)) {
        out.dependency = format_combination(data.basis, head) + " lies in I";
        break;
      }
    }
    out.basis_ok = inside && out.dependency.empty() && all.dim() == g.bbar.dim();
    if (!out.basis_ok) {
      if (out.dependency.empty())
        out.dependency = "coset basis spans " + std::to_string(all.dim() - g.kernel.dim()) + " of " +
                         std::to_string(g.bbar.dim() - g.kernel.dim()) + " dimensions";
      out.failure = "coset basis check failed: " + out.dependency;
      return out;
    }
  }

  // quotient on the coset basis
  {
    std::vector<Vector> cols = words;
    for (const auto& k : g.kernel.basis()) cols.push_back(k);
    const std::size_t d = words.size();
    std::vector<int> parity;
    for (const auto& w : words) parity.push_back(B.homogeneous_parity(w).value_or(0));
    std::vector<std::vector<Term>> table(d * d);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        auto x = solve_combination(cols, B.multiply(words[a], words[b]));
        if (!x) throw std::logic_error("quotient product outside the subalgebra");
        for (std::size_t k = 0; k < d; ++k)
          if (sgn((*x)[k]) != 0) table[a * d + b].push_back({k, (*x)[k]});
      }
    auto q = std::make_shared<SuperAlgebra>(B.name() + "/I (" + to_string(m.lemma) + ")", data.basis, parity, table);
    q->validate();
    out.quotient = q;
  }

  out.image_member = member_of(g.image, chosen.h);

  if (opt.check_identities && catalog.contains(m.target)) {
    CodimOptions co = opt.codim;
    if (co.fixed_primes.empty()) co.fixed_primes = {2147483647ULL, 2147483629ULL};
    const Target tq{out.quotient.get(), true};
    const Target tt = catalog.target(m.target);
    for (int n = 1; n <= opt.max_degree; ++n) {
      auto sq = evaluation_space(tq, n, co);
      auto st = evaluation_space(tt, n, co);
      out.identities_equal.push_back(same_identities(sq, st));
      out.identities_contained.push_back(identities_contained(sq, st));
    }
  }

  if (opt.check_central && catalog.contains(m.target)) {
    const Target tq{out.quotient.get(), true};
    std::vector<std::string> polys = catalog.entry(m.target).definition.expected.proper_central;
    if (auto p = target_delta_witness(catalog, m.target); !p.empty() && std::find(polys.begin(), polys.end(), p) == polys.end())
      polys.push_back(p);
    for (const auto& p : polys) out.central_checks.push_back({p, classify(tq, p).kind});
  }
  return out;
}

std::string CertifyReport::verdict() const {
  if (short_circuit) return "exp^delta(G(B)) > 2, certified via " + short_circuit->target + " in var(G(B))";
  if (certified && realization)
    return "exp^delta(G(B)) > 2, certified via " + realization->match.target + " in var(G(B))";
  return "no witness found";
}

CertifyReport certify_delta_gt_two(const SuperAlgebra& B, bool envelope, const RealizeOptions& opt,
                                   const DeltaOptions& delta) {
  CertifyReport r;
  r.algebra = B.name();
  Detection d = detect_patterns(B);
  r.matches = d.matches.size();
  if (d.short_circuit) {
    r.short_circuit = d.short_circuit;
    r.certified = true;
    return r;
  }
  for (const auto& m : d.matches) {
    Realization z = realize_pattern(B, m, opt);
    if (z.conclusion_holds()) {
      r.certified = true;
      r.realization = std::move(z);
      return r;
    }
    if (!r.realization) r.realization = std::move(z);
  }
  auto bounds = delta_exponent_bounds(B, envelope, delta);
  r.delta_lower = bounds.delta_lower;
  r.delta_upper = bounds.delta_upper;
  return r;
}

}  // namespace pilab
