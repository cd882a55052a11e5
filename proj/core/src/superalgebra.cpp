#include "pilab/superalgebra.hpp"

#include <map>
#include <sstream>

namespace pilab {

std::string to_string(BlockKind kind) {
  switch (kind) {
    case BlockKind::F: return "F";
    case BlockKind::FplusCF: return "F_plus_cF";
    case BlockKind::Mkl: return "M_kl";
    case BlockKind::MkPlusCMk: return "M_k_plus_cM_k";
  }
  return "?";
}

BlockKind parse_block_kind(const std::string& text) {
  if (text == "F") return BlockKind::F;
  if (text == "F_plus_cF") return BlockKind::FplusCF;
  if (text == "M_kl") return BlockKind::Mkl;
  if (text == "M_k_plus_cM_k") return BlockKind::MkPlusCMk;
  throw AlgebraError("unknown block kind '" + text + "'");
}

std::size_t SimpleBlock::dim() const {
  switch (kind) {
    case BlockKind::F: return 1;
    case BlockKind::FplusCF: return 2;
    case BlockKind::Mkl: return static_cast<std::size_t>((k + l) * (k + l));
    case BlockKind::MkPlusCMk: return static_cast<std::size_t>(2 * k * k);
  }
  return 0;
}

std::string SimpleBlock::describe() const {
  switch (kind) {
    case BlockKind::F: return "F";
    case BlockKind::FplusCF: return "F+cF";
    case BlockKind::Mkl: return "M_{" + std::to_string(k) + "," + std::to_string(l) + "}";
    case BlockKind::MkPlusCMk: return "M_" + std::to_string(k) + "+cM_" + std::to_string(k);
  }
  return "?";
}

SuperAlgebra::SuperAlgebra(std::string name, std::vector<std::string> labels, std::vector<int> parity,
                           std::vector<std::vector<Term>> table)
    : name_(std::move(name)), labels_(std::move(labels)), parity_(std::move(parity)), table_(std::move(table)) {
  const std::size_t d = labels_.size();
  if (d == 0) throw AlgebraError("algebra '" + name_ + "' is empty");
  if (parity_.size() != d) throw AlgebraError("parity vector length differs from dimension");
  if (table_.size() != d * d) throw AlgebraError("structure constant table has wrong size");
  for (int p : parity_)
    if (p != 0 && p != 1) throw AlgebraError("parity entries must be 0 or 1");
  for (auto& cell : table_) {
    std::map<std::size_t, Rational> merged;
    for (auto& t : cell) {
      if (t.index >= d) throw AlgebraError("structure constant index out of range");
      merged[t.index] += t.coeff;
    }
    cell.clear();
    for (auto& [k, c] : merged) {
      if (sgn(c) == 0) continue;
      if (c.get_den() != 1) integral_ = false;
      cell.push_back({k, c});
    }
  }
  if (d <= 40) find_unit();
}

bool SuperAlgebra::is_graded() const {
  for (int p : parity_)
    if (p) return true;
  return false;
}

Vector SuperAlgebra::basis_vector(std::size_t i) const {
  Vector v(dim());
  v.at(i) = 1;
  return v;
}

Vector SuperAlgebra::multiply(const Vector& u, const Vector& v) const {
  const std::size_t d = dim();
  if (u.size() != d || v.size() != d) throw AlgebraError("dimension mismatch in multiply");
  Vector out(d);
  std::vector<std::size_t> nu, nv;
  for (std::size_t i = 0; i < d; ++i) {
    if (sgn(u[i]) != 0) nu.push_back(i);
    if (sgn(v[i]) != 0) nv.push_back(i);
  }
  for (std::size_t i : nu)
    for (std::size_t j : nv) {
      const auto& cell = table_[i * d + j];
      if (cell.empty()) continue;
      Rational c = u[i] * v[j];
      for (const auto& t : cell) out[t.index] += c * t.coeff;
    }
  return out;
}

Vector SuperAlgebra::add(const Vector& u, const Vector& v) const {
  Vector out(u);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += v[i];
  return out;
}

Vector SuperAlgebra::scale(const Rational& c, const Vector& v) const {
  Vector out(v);
  for (auto& x : out) x *= c;
  return out;
}

std::optional<int> SuperAlgebra::homogeneous_parity(const Vector& v) const {
  std::optional<int> q;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    if (q && *q != parity_[i]) return std::nullopt;
    q = parity_[i];
  }
  return q;
}

Vector SuperAlgebra::component(const Vector& v, int q) const {
  Vector out(v);
  for (std::size_t i = 0; i < out.size(); ++i)
    if (parity_[i] != q) out[i] = 0;
  return out;
}

void SuperAlgebra::validate() const {
  const std::size_t d = dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& t : product(i, j))
        if (parity_[t.index] != ((parity_[i] + parity_[j]) & 1))
          throw AlgebraError("grading is not multiplicative: " + labels_[i] + " * " + labels_[j]);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Vector ij(d);
      for (const auto& t : product(i, j)) ij[t.index] += t.coeff;
      for (std::size_t k = 0; k < d; ++k) {
        Vector left(d), right(d);
        for (std::size_t m = 0; m < d; ++m) {
          if (sgn(ij[m]) == 0) continue;
          for (const auto& t : product(m, k)) left[t.index] += ij[m] * t.coeff;
        }
        for (const auto& s : product(j, k))
          for (const auto& t : product(i, s.index)) right[t.index] += s.coeff * t.coeff;
        if (left != right)
          throw AlgebraError("structure constants are not associative on (" + labels_[i] + ", " + labels_[j] +
                             ", " + labels_[k] + ")");
      }
    }
  }
}

void SuperAlgebra::find_unit() {
  const std::size_t d = dim();
  std::vector<Vector> cols(d, Vector(2 * d * d));
  Vector rhs(2 * d * d);
  for (std::size_t j = 0; j < d; ++j) {
    rhs[j * d + j] = 1;
    rhs[d * d + j * d + j] = 1;
    for (std::size_t i = 0; i < d; ++i) {
      for (const auto& t : product(i, j)) cols[i][j * d + t.index] += t.coeff;
      for (const auto& t : product(j, i)) cols[i][d * d + j * d + t.index] += t.coeff;
    }
  }
  unit_ = solve_combination(cols, rhs);
}

std::vector<Vector> SuperAlgebra::supercenter(int q) const {
  const std::size_t d = dim();
  std::vector<std::size_t> unknowns;
  for (std::size_t i = 0; i < d; ++i)
    if (parity_[i] == q) unknowns.push_back(i);
  if (unknowns.empty()) return {};
  std::vector<Vector> rows;
  for (std::size_t j = 0; j < d; ++j) {
    const int sign = (q * parity_[j]) & 1 ? -1 : 1;
    std::vector<Vector> block(d, Vector(unknowns.size()));
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      const std::size_t i = unknowns[u];
      for (const auto& t : product(i, j)) block[t.index][u] += t.coeff;
      for (const auto& t : product(j, i)) block[t.index][u] -= sign * t.coeff;
    }
    for (auto& r : block)
      if (!is_zero_vector(r)) rows.push_back(std::move(r));
  }
  std::vector<Vector> out;
  auto null = rational_nullspace(rows, unknowns.size());
  Subspace s(d);
  for (const auto& x : null) {
    Vector v(d);
    for (std::size_t u = 0; u < unknowns.size(); ++u) v[unknowns[u]] = x[u];
    s.add(v);
  }
  return s.reduced_basis();
}

std::vector<Vector> SuperAlgebra::center() const {
  const std::size_t d = dim();
  std::vector<Vector> out;
  for (int q = 0; q < 2; ++q) {
    std::vector<std::size_t> unknowns;
    for (std::size_t i = 0; i < d; ++i)
      if (parity_[i] == q) unknowns.push_back(i);
    if (unknowns.empty()) continue;
    std::vector<Vector> rows;
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<Vector> block(d, Vector(unknowns.size()));
      for (std::size_t u = 0; u < unknowns.size(); ++u) {
        const std::size_t i = unknowns[u];
        for (const auto& t : product(i, j)) block[t.index][u] += t.coeff;
        for (const auto& t : product(j, i)) block[t.index][u] -= t.coeff;
      }
      for (auto& r : block)
        if (!is_zero_vector(r)) rows.push_back(std::move(r));
    }
    Subspace s(d);
    for (const auto& x : rational_nullspace(rows, unknowns.size())) {
      Vector v(d);
      for (std::size_t u = 0; u < unknowns.size(); ++u) v[unknowns[u]] = x[u];
      s.add(v);
    }
    for (auto& v : s.reduced_basis()) out.push_back(std::move(v));
  }
  return out;
}

Subspace SuperAlgebra::product(const Subspace& a, const Subspace& b) const {
  Subspace out(dim());
  for (const auto& u : a.basis())
    for (const auto& v : b.basis()) {
      if (out.dim() == dim()) return out;
      out.add(multiply(u, v));
    }
  return out;
}

Subspace SuperAlgebra::generated_subalgebra(const std::vector<Vector>& generators) const {
  Subspace s = Subspace::span(dim(), generators);
  for (;;) {
    std::size_t before = s.dim();
    std::vector<Vector> basis = s.basis();
    for (const auto& u : basis)
      for (const auto& v : basis) s.add(multiply(u, v));
    if (s.dim() == before) return s;
  }
}

Subspace SuperAlgebra::even_part() const {
  Subspace s(dim());
  for (std::size_t i = 0; i < dim(); ++i)
    if (parity_[i] == 0) s.add(basis_vector(i));
  return s;
}

Subspace SuperAlgebra::odd_part() const {
  Subspace s(dim());
  for (std::size_t i = 0; i < dim(); ++i)
    if (parity_[i] == 1) s.add(basis_vector(i));
  return s;
}

Subspace SuperAlgebra::whole() const {
  Subspace s(dim());
  for (std::size_t i = 0; i < dim(); ++i) s.add(basis_vector(i));
  return s;
}

Vector SuperAlgebra::coordinates_of(const MatrixEntries& matrix) const {
  if (!ambient_) throw AlgebraError("algebra '" + name_ + "' has no matrix embedding");
  std::map<std::size_t, Rational> target;
  for (const auto& [pos, c] : matrix) target[pos] += c;
  std::erase_if(target, [](const auto& kv) { return sgn(kv.second) == 0; });
  const auto& emb = ambient_->embedding;
  Vector v(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    const auto& [pos, c] = emb[i].front();
    auto it = target.find(pos);
    if (it != target.end()) v[i] = it->second / c;
  }
  if (to_matrix(v) == MatrixEntries(target.begin(), target.end())) return v;
  // Supports overlap: fall back to a linear solve.
  std::vector<Vector> cols(dim(), Vector(ambient_->size * ambient_->size));
  for (std::size_t i = 0; i < dim(); ++i)
    for (const auto& [pos, c] : emb[i]) cols[i][pos] += c;
  Vector rhs(ambient_->size * ambient_->size);
  for (const auto& [pos, c] : target) rhs[pos] = c;
  auto sol = solve_combination(cols, rhs);
  if (!sol) throw AlgebraError("matrix does not lie in algebra '" + name_ + "'");
  return *sol;
}

MatrixEntries SuperAlgebra::to_matrix(const Vector& v) const {
  if (!ambient_) throw AlgebraError("algebra '" + name_ + "' has no matrix embedding");
  std::map<std::size_t, Rational> m;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (sgn(v[i]) == 0) continue;
    for (const auto& [pos, c] : ambient_->embedding[i]) m[pos] += v[i] * c;
  }
  std::erase_if(m, [](const auto& kv) { return sgn(kv.second) == 0; });
  return {m.begin(), m.end()};
}

namespace {

void append_term(std::ostringstream& os, const Rational& c, const std::string& name, bool first) {
  if (sgn(c) < 0)
    os << "-";
  else if (!first)
    os << "+";
  Rational a = abs(c);
  if (a != 1) os << a.get_str() << "*";
  os << name;
}

}  // namespace

std::string SuperAlgebra::format(const Vector& v) const {
  std::ostringstream os;
  bool first = true;
  if (ambient_) {
    const std::size_t n = ambient_->size;
    for (const auto& [pos, c] : to_matrix(v)) {
      std::size_t r = pos / n + 1, col = pos % n + 1;
      std::string name = n < 10 ? "e" + std::to_string(r) + std::to_string(col)
                                : "e" + std::to_string(r) + "_" + std::to_string(col);
      append_term(os, c, name, first);
      first = false;
    }
  } else {
    for (std::size_t i = 0; i < dim(); ++i) {
      if (sgn(v[i]) == 0) continue;
      append_term(os, v[i], labels_[i], first);
      first = false;
    }
  }
  return first ? "0" : os.str();
}

SuperAlgebra reference_block(BlockKind kind, int k, int l) {
  std::vector<std::string> labels;
  std::vector<int> parity;
  std::vector<std::vector<Term>> table;
  switch (kind) {
    case BlockKind::F:
      return SuperAlgebra("F", {"1"}, {0}, {{{0, 1}}});
    case BlockKind::FplusCF:
      return SuperAlgebra("F+cF", {"1", "c"}, {0, 1}, {{{0, 1}}, {{1, 1}}, {{1, 1}}, {{0, 1}}});
    case BlockKind::Mkl: {
      const int m = k + l;
      if (k < 1 || l < 0) throw AlgebraError("M_kl needs k >= 1, l >= 0");
      auto h = [&](int i) { return i < k ? 0 : 1; };
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          labels.push_back("e" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
          parity.push_back((h(i) + h(j)) & 1);
        }
      const std::size_t d = labels.size();
      table.assign(d * d, {});
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          for (int t = 0; t < m; ++t) table[(i * m + j) * d + (j * m + t)].push_back({std::size_t(i * m + t), 1});
      return SuperAlgebra("M_kl", labels, parity, table);
    }
    case BlockKind::MkPlusCMk: {
      if (k < 1) throw AlgebraError("M_k+cM_k needs k >= 1");
      for (int s = 0; s < 2; ++s)
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) {
            labels.push_back(std::string(s ? "c" : "") + "e" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
            parity.push_back(s);
          }
      const std::size_t d = labels.size();
      const std::size_t kk = static_cast<std::size_t>(k * k);
      table.assign(d * d, {});
      for (int s = 0; s < 2; ++s)
        for (int u = 0; u < 2; ++u)
          for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
              for (int t = 0; t < k; ++t) {
                std::size_t a = s * kk + i * k + j, b = u * kk + j * k + t;
                table[a * d + b].push_back({((s + u) & 1) * kk + i * k + t, 1});
              }
      return SuperAlgebra("M_k+cM_k", labels, parity, table);
    }
  }
  throw AlgebraError("unknown block kind");
}

Vector block_unit(const SuperAlgebra& A, const SimpleBlock& block) {
  Vector u = A.zero();
  auto addv = [&](const Vector& v) { u = A.add(u, v); };
  switch (block.kind) {
    case BlockKind::F:
    case BlockKind::FplusCF: addv(block.basis.at(0)); break;
    case BlockKind::Mkl: {
      const int m = block.k + block.l;
      for (int i = 0; i < m; ++i) addv(block.basis.at(i * m + i));
      break;
    }
    case BlockKind::MkPlusCMk:
      for (int i = 0; i < block.k; ++i) addv(block.basis.at(i * block.k + i));
      break;
  }
  return u;
}

WedderburnReport verify_wedderburn(const SuperAlgebra& A, const WedderburnData& data) {
  auto fail = [](std::string why) { return WedderburnReport{false, std::move(why)}; };
  const std::size_t d = A.dim();
  std::vector<Vector> units;
  for (std::size_t bi = 0; bi < data.blocks.size(); ++bi) {
    const auto& block = data.blocks[bi];
    const std::string tag = "block " + std::to_string(bi) + " (" + block.describe() + ")";
    SuperAlgebra ref = reference_block(block.kind, block.k, block.l);
    if (block.basis.size() != ref.dim()) return fail(tag + ": basis size differs from reference model");
    for (std::size_t a = 0; a < ref.dim(); ++a) {
      if (block.basis[a].size() != d) return fail(tag + ": vector length mismatch");
      auto q = A.homogeneous_parity(block.basis[a]);
      if (!q || *q != ref.parity(a)) return fail(tag + ": basis element " + std::to_string(a) + " has wrong parity");
    }
    for (std::size_t a = 0; a < ref.dim(); ++a)
      for (std::size_t b = 0; b < ref.dim(); ++b) {
        Vector expect = A.zero();
        for (const auto& t : ref.product(a, b)) expect = A.add(expect, A.scale(t.coeff, block.basis[t.index]));
        if (A.multiply(block.basis[a], block.basis[b]) != expect)
          return fail(tag + ": structure constants differ from reference at (" + std::to_string(a) + "," +
                      std::to_string(b) + ")");
      }
    units.push_back(block_unit(A, block));
  }
  for (std::size_t i = 0; i < units.size(); ++i) {
    auto q = A.homogeneous_parity(units[i]);
    if (!q || *q != 0) return fail("idempotent of block " + std::to_string(i) + " is not even");
    for (std::size_t j = 0; j < units.size(); ++j)
      if (i != j && !is_zero_vector(A.multiply(units[i], units[j])))
        return fail("idempotents of blocks " + std::to_string(i) + " and " + std::to_string(j) +
                    " are not orthogonal");
  }
  Subspace J = Subspace::span(d, data.radical);
  if (J.dim() != data.radical.size()) return fail("radical basis is linearly dependent");
  for (const auto& r : data.radical)
    for (int q = 0; q < 2; ++q)
      if (!J.contains(A.component(r, q))) return fail("radical is not a graded subspace");
  for (const auto& r : data.radical)
    for (std::size_t i = 0; i < d; ++i) {
      auto b = A.basis_vector(i);
      if (!J.contains(A.multiply(b, r)) || !J.contains(A.multiply(r, b)))
        return fail("radical is not a two-sided ideal");
    }
  if (!J.empty()) {
    Subspace power = J;
    std::size_t k = 1;
    while (!power.empty() && k <= d) {
      power = A.product(power, J);
      ++k;
    }
    if (!power.empty()) return fail("radical is not nilpotent");
  }
  Subspace all = J;
  std::size_t total = J.dim();
  for (const auto& block : data.blocks) {
    total += block.dim();
    for (const auto& v : block.basis) all.add(v);
  }
  if (all.dim() != d) return fail("blocks and radical do not span the algebra");
  if (total != d) return fail("sum of blocks and radical is not direct");
  return {};
}

std::optional<Vector> solve_combination(const std::vector<Vector>& cols, const Vector& rhs) {
  const std::size_t m = cols.size();
  const std::size_t n = rhs.size();
  RationalEchelon e(RationalField{}, m + 1);
  for (std::size_t r = 0; r < n; ++r) {
    Vector row(m + 1);
    bool any = sgn(rhs[r]) != 0;
    for (std::size_t i = 0; i < m; ++i) {
      row[i] = cols[i][r];
      any = any || sgn(row[i]) != 0;
    }
    row[m] = -rhs[r];
    if (any) e.insert(std::move(row));
  }
  for (const auto& x : e.nullspace())
    if (sgn(x[m]) != 0) {
      Vector sol(m);
      for (std::size_t i = 0; i < m; ++i) sol[i] = x[i] / x[m];
      return sol;
    }
  return std::nullopt;
}

}  // namespace pilab
