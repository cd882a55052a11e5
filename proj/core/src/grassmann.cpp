#include "pilab/grassmann.hpp"

#include <stdexcept>

namespace pilab {

GrassmannTruncated::GrassmannTruncated(int k) : k_(k) {
  if (k < 1 || k > 20) throw std::invalid_argument("Grassmann truncation must be in [1, 20]");
}

int GrassmannTruncated::product_sign(std::uint32_t s, std::uint32_t t) {
  if (s & t) return 0;
  // Count pairs (a in S, b in T) with a > b.
  int swaps = 0;
  for (std::uint32_t rest = t; rest; rest &= rest - 1) {
    std::uint32_t b = rest & (~rest + 1);
    swaps += __builtin_popcount(s & ~((b << 1) - 1));
  }
  return swaps & 1 ? -1 : 1;
}

SuperAlgebra GrassmannTruncated::algebra() const {
  const std::size_t d = dim();
  std::vector<std::string> labels;
  std::vector<int> par;
  for (std::uint32_t s = 0; s < d; ++s) {
    std::string name = s ? "" : "1";
    for (int i = 0; i < k_; ++i)
      if (s >> i & 1) name += "e" + std::to_string(i + 1);
    labels.push_back(name);
    par.push_back(parity(s));
  }
  std::vector<std::vector<Term>> table(d * d);
  for (std::uint32_t s = 0; s < d; ++s)
    for (std::uint32_t t = 0; t < d; ++t)
      if (int sign = product_sign(s, t)) table[s * d + t].push_back({s | t, sign});
  return SuperAlgebra("G_" + std::to_string(k_), labels, par, table);
}

GrassmannTruncated build_truncated_grassmann(int k) { return GrassmannTruncated(k); }

EnvelopeModel build_envelope_model(const SuperAlgebra& B, int k) {
  if (k < 1 || k > 16) throw std::invalid_argument("envelope truncation must be in [1, 16]");
  const std::size_t d = B.dim();
  const std::uint32_t masks = 1u << k;
  EnvelopeModel m{SuperAlgebra("tmp", {"x"}, {0}, {{}}), k, {}, std::vector<std::int64_t>(masks * d, -1), d};
  std::vector<std::string> labels;
  for (std::uint32_t s = 0; s < masks; ++s)
    for (std::size_t b = 0; b < d; ++b) {
      if (GrassmannTruncated::parity(s) != B.parity(b)) continue;
      m.lookup[s * d + b] = static_cast<std::int64_t>(m.factors.size());
      m.factors.emplace_back(s, b);
      std::string g = s ? "" : "1";
      for (int i = 0; i < k; ++i)
        if (s >> i & 1) g += "e" + std::to_string(i + 1);
      labels.push_back(g + "*" + B.labels()[b]);
    }
  const std::size_t n = m.factors.size();
  std::vector<std::vector<Term>> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      auto [s, a] = m.factors[x];
      auto [t, b] = m.factors[y];
      int sign = GrassmannTruncated::product_sign(s, t);
      if (!sign) continue;
      for (const auto& term : B.product(a, b)) {
        auto idx = m.index_of(s | t, term.index);
        if (idx < 0) throw AlgebraError("base algebra grading is not multiplicative");
        table[x * n + y].push_back({static_cast<std::size_t>(idx), sign * term.coeff});
      }
    }
  m.algebra = SuperAlgebra("G_" + std::to_string(k) + "(" + B.name() + ")", labels, std::vector<int>(n, 0), table);
  return m;
}

void EnvelopeContext::require_degree(int n) const {
  if (truncation < n)
    throw std::invalid_argument("envelope truncation " + std::to_string(truncation) + " is below degree " +
                                std::to_string(n));
}

int odd_inversion_sign(std::span<const int> word, std::span<const int> parities) {
  int inv = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!parities[word[i]]) continue;
    for (std::size_t j = i + 1; j < word.size(); ++j)
      if (parities[word[j]] && word[i] > word[j]) ++inv;
  }
  return inv & 1 ? -1 : 1;
}

namespace {

void check_inputs(const SuperAlgebra& B, const MultilinearPoly& f, const std::vector<int>& parities,
                  const std::vector<Vector>& elements) {
  const auto n = static_cast<std::size_t>(f.degree());
  if (parities.size() != n || elements.size() != n) throw std::invalid_argument("degree mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    auto q = B.homogeneous_parity(elements[i]);
    if (q && *q != parities[i]) throw std::invalid_argument("parity mismatch for x" + std::to_string(i + 1));
  }
}

}  // namespace

Vector sign_rule_evaluate(const EnvelopeContext& ctx, const MultilinearPoly& f, const std::vector<int>& parities,
                          const std::vector<Vector>& elements) {
  const SuperAlgebra& B = *ctx.base;
  ctx.require_degree(f.degree());
  check_inputs(B, f, parities, elements);
  Vector out = B.zero();
  for (const auto& [rank, c] : f.coefficients()) {
    Permutation p = permutation_unrank(rank, f.degree());
    Vector v = elements[p[0]];
    for (std::size_t i = 1; i < p.size(); ++i) v = B.multiply(v, elements[p[i]]);
    Rational coeff = c * odd_inversion_sign(p, parities);
    for (std::size_t k = 0; k < v.size(); ++k) out[k] += coeff * v[k];
  }
  return out;
}

Vector model_evaluate(const SuperAlgebra& B, const EnvelopeModel& model, const MultilinearPoly& f,
                      const std::vector<int>& parities, const std::vector<Vector>& elements) {
  const int n = f.degree();
  if (model.truncation < n) throw std::invalid_argument("model truncation below degree");
  check_inputs(B, f, parities, elements);
  const SuperAlgebra& M = model.algebra;
  std::vector<Vector> lifted;
  std::uint32_t odd_mask = 0;
  for (int i = 0; i < n; ++i) {
    std::uint32_t s = parities[i] ? (1u << i) : 0u;
    odd_mask |= s;
    Vector v = M.zero();
    for (std::size_t b = 0; b < B.dim(); ++b) {
      if (sgn(elements[i][b]) == 0) continue;
      auto idx = model.index_of(s, b);
      if (idx < 0) throw std::invalid_argument("element not homogeneous of the declared parity");
      v[static_cast<std::size_t>(idx)] = elements[i][b];
    }
    lifted.push_back(std::move(v));
  }
  Vector total = M.zero();
  for (const auto& [rank, c] : f.coefficients()) {
    Permutation p = permutation_unrank(rank, n);
    Vector v = lifted[p[0]];
    for (int i = 1; i < n; ++i) v = M.multiply(v, lifted[p[i]]);
    for (std::size_t k = 0; k < v.size(); ++k) total[k] += c * v[k];
  }
  Vector out = B.zero();
  for (std::size_t x = 0; x < total.size(); ++x) {
    if (sgn(total[x]) == 0) continue;
    auto [s, b] = model.factors[x];
    if (s != odd_mask) throw std::logic_error("model value outside the expected Grassmann component");
    out[b] = total[x];
  }
  return out;
}

bool envelope_center_test(const EnvelopeContext& ctx, int value_parity, const Vector& value) {
  const SuperAlgebra& B = *ctx.base;
  if (is_zero_vector(value)) return true;
  auto q = B.homogeneous_parity(value);
  if (!q) throw std::invalid_argument("value is not homogeneous");
  // g (x) value lies in G(B) only when the parities agree.
  if (*q != value_parity) return false;
  for (std::size_t i = 0; i < B.dim(); ++i) {
    Vector b = B.basis_vector(i);
    Vector left = B.multiply(value, b);
    Vector right = B.multiply(b, value);
    if ((value_parity * B.parity(i)) & 1)
      for (auto& x : right) x = -x;
    if (left != right) return false;
  }
  return true;
}

}  // namespace pilab
