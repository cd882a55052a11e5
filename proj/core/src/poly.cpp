#include "pilab/poly.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace pilab {

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint64_t permutation_rank(const Permutation& p) {
  const int n = static_cast<int>(p.size());
  std::uint64_t rank = 0;
  std::uint32_t used = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = __builtin_popcount(~used & ((1u << p[i]) - 1u));
    rank += static_cast<std::uint64_t>(smaller) * factorial(n - 1 - i);
    used |= 1u << p[i];
  }
  return rank;
}

Permutation permutation_unrank(std::uint64_t rank, int n) {
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  Permutation p;
  p.reserve(n);
  for (int i = n - 1; i >= 0; --i) {
    std::uint64_t f = factorial(i);
    auto idx = static_cast<std::size_t>(rank / f);
    rank %= f;
    p.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return p;
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<Permutation> out;
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// ---------------------------------------------------------------- GeneralPoly

GeneralPoly GeneralPoly::variable(int v) {
  GeneralPoly p;
  p.terms_[{v}] = 1;
  return p;
}

GeneralPoly GeneralPoly::constant(const Rational& c) {
  GeneralPoly p;
  if (sgn(c) != 0) p.terms_[{}] = c;
  return p;
}

void GeneralPoly::add_term(const Word& w, const Rational& c) {
  if (sgn(c) == 0) return;
  auto& slot = terms_[w];
  slot += c;
  if (sgn(slot) == 0) terms_.erase(w);
}

GeneralPoly GeneralPoly::operator+(const GeneralPoly& o) const {
  GeneralPoly r = *this;
  for (const auto& [w, c] : o.terms_) r.add_term(w, c);
  return r;
}

GeneralPoly GeneralPoly::operator-(const GeneralPoly& o) const {
  GeneralPoly r = *this;
  for (const auto& [w, c] : o.terms_) r.add_term(w, -c);
  return r;
}

GeneralPoly GeneralPoly::operator*(const GeneralPoly& o) const {
  GeneralPoly r;
  for (const auto& [u, a] : terms_)
    for (const auto& [v, b] : o.terms_) {
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      r.add_term(w, a * b);
    }
  return r;
}

GeneralPoly GeneralPoly::scaled(const Rational& c) const {
  GeneralPoly r;
  for (const auto& [w, a] : terms_) r.add_term(w, a * c);
  return r;
}

int GeneralPoly::variable_bound() const {
  int m = 0;
  for (const auto& [w, c] : terms_)
    for (int v : w) m = std::max(m, v + 1);
  return m;
}

bool GeneralPoly::is_multilinear(int n) const {
  for (const auto& [w, c] : terms_) {
    if (static_cast<int>(w.size()) != n) return false;
    std::vector<bool> seen(n, false);
    for (int v : w) {
      if (v < 0 || v >= n || seen[v]) return false;
      seen[v] = true;
    }
  }
  return true;
}

std::string GeneralPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (sgn(c) < 0)
      os << (first ? "-" : " - ");
    else if (!first)
      os << " + ";
    Rational a = abs(c);
    if (a != 1 || w.empty()) os << a.get_str();
    for (int v : w) os << "x" << v + 1;
    first = false;
  }
  return os.str();
}

GeneralPoly commutator(const GeneralPoly& a, const GeneralPoly& b) { return a * b - b * a; }

GeneralPoly standard_polynomial(int k) {
  GeneralPoly r;
  for (const auto& p : all_permutations(k)) {
    int inv = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if (p[i] > p[j]) ++inv;
    r.add_term(p, inv % 2 ? -1 : 1);
  }
  return r;
}

// ------------------------------------------------------------ MultilinearPoly

MultilinearPoly MultilinearPoly::from_general(const GeneralPoly& f, int n) {
  if (!f.is_multilinear(n)) throw std::invalid_argument("polynomial is not multilinear of degree " + std::to_string(n));
  MultilinearPoly m(n);
  for (const auto& [w, c] : f.terms()) m.add(permutation_rank(w), c);
  return m;
}

void MultilinearPoly::add(std::uint64_t rank, const Rational& c) {
  if (sgn(c) == 0) return;
  auto& slot = coeffs_[rank];
  slot += c;
  if (sgn(slot) == 0) coeffs_.erase(rank);
}

GeneralPoly MultilinearPoly::to_general() const {
  GeneralPoly g;
  for (const auto& [r, c] : coeffs_) g.add_term(permutation_unrank(r, n_), c);
  return g;
}

std::vector<Rational> MultilinearPoly::dense() const {
  std::vector<Rational> v(factorial(n_));
  for (const auto& [r, c] : coeffs_) v[r] = c;
  return v;
}

MultilinearPoly MultilinearPoly::relabeled(const Permutation& pi) const {
  MultilinearPoly out(n_);
  for (const auto& [r, c] : coeffs_) {
    Permutation p = permutation_unrank(r, n_);
    for (auto& x : p) x = pi[x];
    out.add(permutation_rank(p), c);
  }
  return out;
}

// -------------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  ExprPtr parse() {
    auto e = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool starts_primary() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'x' || c == 'S' || c == '[' || c == '(';
  }
  int integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected an integer", pos_);
    if (pos_ - start > 9) throw ParseError("integer too large", start);
    return std::stoi(s_.substr(start, pos_ - start));
  }

  ExprPtr expr() {
    auto sum = std::make_shared<Expr>();
    sum->kind = Expr::Kind::Sum;
    Rational sign = 1;
    if (peek('+')) {
      ++pos_;
    } else if (peek('-')) {
      ++pos_;
      sign = -1;
    }
    sum->signs.push_back(sign);
    sum->args.push_back(term());
    for (;;) {
      if (peek('+')) {
        ++pos_;
        sum->signs.push_back(1);
      } else if (peek('-')) {
        ++pos_;
        sum->signs.push_back(-1);
      } else {
        break;
      }
      sum->args.push_back(term());
    }
    if (sum->args.size() == 1 && sum->signs[0] == 1) return sum->args[0];
    return sum;
  }

  ExprPtr term() {
    auto prod = std::make_shared<Expr>();
    prod->kind = Expr::Kind::Product;
    prod->args.push_back(factor());
    for (;;) {
      if (peek('*')) {
        ++pos_;
        prod->args.push_back(factor());
      } else if (starts_primary()) {
        prod->args.push_back(factor());
      } else {
        break;
      }
    }
    if (prod->args.size() == 1) return prod->args[0];
    return prod;
  }

  ExprPtr factor() {
    auto base = primary();
    if (peek('^')) {
      ++pos_;
      auto p = std::make_shared<Expr>();
      p->kind = Expr::Kind::Power;
      p->exponent = integer();
      p->args.push_back(base);
      return p;
    }
    return base;
  }

  ExprPtr primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
    auto e = std::make_shared<Expr>();
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      e->kind = Expr::Kind::Const;
      e->value = integer();
      return e;
    }
    if (c == 'x') {
      ++pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw ParseError("expected variable index", pos_);
      int v = integer();
      if (v < 1) throw ParseError("variables start at x1", pos_);
      e->kind = Expr::Kind::Var;
      e->var = v - 1;
      return e;
    }
    if (c == 'S') {
      if (s_.compare(pos_, 2, "St") != 0) throw ParseError("expected St<k>", pos_);
      pos_ += 2;
      int k = integer();
      if (k < 1 || k > 10) throw ParseError("St<k> needs 1 <= k <= 10", pos_);
      e->kind = Expr::Kind::Standard;
      e->order = k;
      return e;
    }
    if (c == '[') {
      ++pos_;
      e->kind = Expr::Kind::Commutator;
      e->args.push_back(expr());
      while (peek(',')) {
        ++pos_;
        e->args.push_back(expr());
      }
      if (!peek(']')) throw ParseError("expected ']'", pos_);
      ++pos_;
      if (e->args.size() < 2) throw ParseError("commutator needs at least two entries", pos_);
      return e;
    }
    if (c == '(') {
      ++pos_;
      auto inner = expr();
      if (!peek(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expr(const std::string& text) { return Parser(text).parse(); }

GeneralPoly expand(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Var: return GeneralPoly::variable(e.var);
    case Expr::Kind::Const: return GeneralPoly::constant(e.value);
    case Expr::Kind::Sum: {
      GeneralPoly r;
      for (std::size_t i = 0; i < e.args.size(); ++i) r = r + expand(*e.args[i]).scaled(e.signs[i]);
      return r;
    }
    case Expr::Kind::Product: {
      GeneralPoly r = GeneralPoly::constant(1);
      for (const auto& a : e.args) r = r * expand(*a);
      return r;
    }
    case Expr::Kind::Commutator: {
      GeneralPoly r = expand(*e.args[0]);
      for (std::size_t i = 1; i < e.args.size(); ++i) r = commutator(r, expand(*e.args[i]));
      return r;
    }
    case Expr::Kind::Power: {
      GeneralPoly base = expand(*e.args[0]);
      GeneralPoly r = GeneralPoly::constant(1);
      for (int i = 0; i < e.exponent; ++i) r = r * base;
      return r;
    }
    case Expr::Kind::Standard: return standard_polynomial(e.order);
  }
  return {};
}

GeneralPoly parse_poly(const std::string& text) { return expand(*parse_expr(text)); }

// ----------------------------------------------------------------- tree form

namespace {

std::optional<TreeForm> tree_rec(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Var: {
      auto t = std::make_shared<Tree>();
      t->var = e.var;
      return TreeForm{1, t, 1};
    }
    case Expr::Kind::Const: return std::nullopt;
    case Expr::Kind::Sum:
      if (e.args.size() != 1) return std::nullopt;
      if (auto t = tree_rec(*e.args[0])) {
        t->scale *= e.signs[0];
        return t;
      }
      return std::nullopt;
    case Expr::Kind::Power:
      if (e.exponent != 1) return std::nullopt;
      return tree_rec(*e.args[0]);
    case Expr::Kind::Standard: {
      if (e.order != 1) return std::nullopt;
      auto t = std::make_shared<Tree>();
      t->var = 0;
      return TreeForm{1, t, 1};
    }
    case Expr::Kind::Product:
    case Expr::Kind::Commutator: {
      Rational scale = 1;
      TreePtr acc;
      int degree = 0;
      for (const auto& a : e.args) {
        if (a->kind == Expr::Kind::Const && e.kind == Expr::Kind::Product) {
          scale *= a->value;
          continue;
        }
        auto sub = tree_rec(*a);
        if (!sub) return std::nullopt;
        scale *= sub->scale;
        degree += sub->degree;
        if (!acc) {
          acc = sub->root;
        } else {
          auto node = std::make_shared<Tree>();
          node->kind = e.kind == Expr::Kind::Product ? Tree::Kind::Mul : Tree::Kind::Comm;
          node->left = acc;
          node->right = sub->root;
          acc = node;
        }
      }
      if (!acc) return std::nullopt;
      return TreeForm{scale, acc, degree};
    }
  }
  return std::nullopt;
}

void collect_vars(const Tree& t, std::vector<int>& out) {
  if (t.kind == Tree::Kind::Leaf) {
    out.push_back(t.var);
    return;
  }
  collect_vars(*t.left, out);
  collect_vars(*t.right, out);
}

}  // namespace

std::optional<TreeForm> tree_form(const Expr& e) {
  auto t = tree_rec(e);
  if (!t) return std::nullopt;
  std::vector<int> vars;
  collect_vars(*t->root, vars);
  std::set<int> distinct(vars.begin(), vars.end());
  if (distinct.size() != vars.size()) return std::nullopt;
  return t;
}

std::string tree_str(const Tree& t) {
  switch (t.kind) {
    case Tree::Kind::Leaf: return "x" + std::to_string(t.var + 1);
    case Tree::Kind::Mul: return "(" + tree_str(*t.left) + tree_str(*t.right) + ")";
    case Tree::Kind::Comm: return "[" + tree_str(*t.left) + "," + tree_str(*t.right) + "]";
  }
  return "";
}

// --------------------------------------------------------- multilinearization

std::vector<MultilinearPoly> multilinearize(const GeneralPoly& f) {
  const int nv = f.variable_bound();
  std::map<std::vector<int>, GeneralPoly> components;
  for (const auto& [w, c] : f.terms()) {
    std::vector<int> deg(nv, 0);
    for (int v : w) ++deg[v];
    components[deg].add_term(w, c);
  }
  std::vector<MultilinearPoly> out;
  for (const auto& [deg, comp] : components) {
    std::vector<int> offset(nv, -1);
    int total = 0;
    for (int v = 0; v < nv; ++v)
      if (deg[v] > 0) {
        offset[v] = total;
        total += deg[v];
      }
    GeneralPoly result;
    for (const auto& [w, c] : comp.terms()) {
      std::vector<std::vector<std::size_t>> positions(nv);
      for (std::size_t i = 0; i < w.size(); ++i) positions[w[i]].push_back(i);
      Word target(w.size());
      std::function<void(int)> assign = [&](int v) {
        if (v == nv) {
          result.add_term(target, c);
          return;
        }
        if (positions[v].empty()) {
          assign(v + 1);
          return;
        }
        std::vector<int> fresh(positions[v].size());
        std::iota(fresh.begin(), fresh.end(), offset[v]);
        do {
          for (std::size_t i = 0; i < fresh.size(); ++i) target[positions[v][i]] = fresh[i];
          assign(v + 1);
        } while (std::next_permutation(fresh.begin(), fresh.end()));
      };
      assign(0);
    }
    if (!result.is_zero()) out.push_back(MultilinearPoly::from_general(result, total));
  }
  return out;
}

GeneralPoly substitute_words(const MultilinearPoly& g, const std::vector<Word>& words) {
  if (static_cast<int>(words.size()) != g.degree()) throw std::invalid_argument("substitution arity mismatch");
  GeneralPoly r;
  for (const auto& [rank, c] : g.coefficients()) {
    Word w;
    for (int v : permutation_unrank(rank, g.degree())) w.insert(w.end(), words[v].begin(), words[v].end());
    r.add_term(w, c);
  }
  return r;
}

}  // namespace pilab
