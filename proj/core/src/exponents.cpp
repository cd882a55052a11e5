#include "pilab/exponents.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace pilab {

namespace {

const WedderburnData& checked_wedderburn(const SuperAlgebra& B) {
  if (!B.wedderburn()) throw AlgebraError(B.name() + ": no Wedderburn data");
  auto report = verify_wedderburn(B, *B.wedderburn());
  if (!report.ok) throw AlgebraError(B.name() + ": invalid Wedderburn data: " + report.failure);
  return *B.wedderburn();
}

std::vector<Subspace> factor_spaces(const SuperAlgebra& B, const std::vector<std::size_t>& tuple) {
  const auto& w = *B.wedderburn();
  Subspace J = Subspace::span(B.dim(), w.radical);
  std::vector<Subspace> f;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) f.push_back(J);
    f.push_back(Subspace::span(B.dim(), w.blocks.at(tuple[i]).basis));
  }
  return f;
}

/// suffix[i] = product of factors i..end, as a subspace.
std::vector<Subspace> suffix_products(const SuperAlgebra& B, const std::vector<Subspace>& f) {
  std::vector<Subspace> suf(f.size() + 1, Subspace(B.dim()));
  for (std::size_t i = f.size(); i-- > 0;) suf[i] = i + 1 == f.size() ? f[i] : B.product(f[i], suf[i + 1]);
  return suf;
}

int subset_dim(const WedderburnData& w, const std::vector<std::size_t>& s) {
  int d = 0;
  for (auto i : s) d += static_cast<int>(w.blocks[i].dim());
  return d;
}

void for_each_subset(std::size_t m, const std::function<void(const std::vector<std::size_t>&)>& f) {
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) s.push_back(i);
    f(s);
  }
}

}  // namespace

bool is_admissible(const SuperAlgebra& B, const std::vector<std::size_t>& tuple) {
  if (tuple.empty()) return false;
  if (tuple.size() == 1) return true;
  return !suffix_products(B, factor_spaces(B, tuple)).front().empty();
}

AdmissibleResult pi_exponent(const SuperAlgebra& B) {
  const auto& w = checked_wedderburn(B);
  AdmissibleResult r;
  for_each_subset(w.blocks.size(), [&](const std::vector<std::size_t>& s) {
    const int d = subset_dim(w, s);
    if (d <= r.exp) return;
    std::vector<std::size_t> order = s;
    do {
      if (is_admissible(B, order)) {
        r.exp = d;
        r.best_subset = order;
        return;
      }
    } while (std::next_permutation(order.begin(), order.end()));
  });

  // Greedy extraction of concrete factors, guided by the suffix products.
  auto f = factor_spaces(B, r.best_subset);
  auto suf = suffix_products(B, f);
  Vector prefix;
  for (std::size_t i = 0; i < f.size(); ++i) {
    bool placed = false;
    for (const auto& e : f[i].basis()) {
      Vector p = prefix.empty() ? e : B.multiply(prefix, e);
      if (is_zero_vector(p)) continue;
      if (i + 1 < f.size()) {
        bool alive = false;
        for (const auto& s : suf[i + 1].basis())
          if (!is_zero_vector(B.multiply(p, s))) {
            alive = true;
            break;
          }
        if (!alive) continue;
      }
      prefix = p;
      r.path.push_back(e);
      if (i % 2 == 1) r.radical_path.push_back(e);
      placed = true;
      break;
    }
    if (!placed) throw std::logic_error("admissible path extraction failed");
  }
  r.path_product = prefix;
  r.delta_upper = r.exp;
  return r;
}

std::vector<std::string> witness_library(int degree_cap) {
  std::vector<std::string> out{"x1"};
  auto commutator = [](int first, int len) {
    std::string s = "[";
    for (int i = 0; i < len; ++i) s += (i ? ",x" : "x") + std::to_string(first + i);
    return s + "]";
  };
  std::function<void(std::string, int)> rec = [&](std::string prod, int deg) {
    if (deg > 0) {
      out.push_back(prod);
      if (deg + 1 <= degree_cap) out.push_back("[" + prod + ",x" + std::to_string(deg + 1) + "]");
    }
    for (int len : {2, 3})
      if (deg + len <= degree_cap) rec(prod + commutator(deg + 1, len), deg + len);
  };
  rec("", 0);
  std::stable_sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) { return a.size() < b.size(); });
  return out;
}

AdmissibleResult delta_exponent_bounds(const SuperAlgebra& B, bool envelope, const DeltaOptions& opt) {
  AdmissibleResult r = pi_exponent(B);
  const auto& w = *B.wedderburn();
  const Target t{&B, envelope};

  std::vector<std::string> polys = opt.use_library ? witness_library(opt.degree_cap) : std::vector<std::string>{};
  polys.insert(polys.end(), opt.extra_witnesses.begin(), opt.extra_witnesses.end());

  // Candidate subsets, largest first; only those that could beat the current lower bound matter.
  std::vector<std::vector<std::size_t>> subsets;
  for_each_subset(w.blocks.size(), [&](const std::vector<std::size_t>& s) { subsets.push_back(s); });
  std::stable_sort(subsets.begin(), subsets.end(),
                   [&](const auto& a, const auto& b) { return subset_dim(w, a) > subset_dim(w, b); });

  auto basis = basis_elements(t);
  std::vector<std::vector<Element>> block_elems;
  for (const auto& b : w.blocks) block_elems.push_back(homogeneous_elements(t, b.basis));

  for (const auto& poly : polys) {
    if (r.delta_lower == r.delta_upper) break;
    ExprPtr expr = parse_expr(poly);
    GeneralPoly g = expand(*expr);
    PolyVerdict v = classify(t, g, expr, opt.check);
    if (v.kind != Centrality::ProperCentral || !v.certified) continue;
    auto tf = tree_form(*expr);
    auto comps = multilinearize(g);
    if (comps.size() != 1) continue;
    const int n = comps[0].degree();

    for (const auto& s : subsets) {
      const int d = subset_dim(w, s);
      if (d <= r.delta_lower) break;
      if (static_cast<int>(s.size()) > n) continue;
      // Injective placement of the chosen blocks on variables.
      std::vector<int> slots(s.size());
      std::optional<std::vector<Element>> found;
      std::function<void(std::size_t, std::uint32_t)> place = [&](std::size_t i, std::uint32_t used) {
        if (found) return;
        if (i == s.size()) {
          std::vector<std::vector<Element>> choices(n, basis);
          for (std::size_t k = 0; k < s.size(); ++k) choices[slots[k]] = block_elems[s[k]];
          found = tf && tf->degree == n ? tree_nonzero(t, *tf->root, choices) : find_nonzero(t, comps[0], choices);
          return;
        }
        for (int v2 = 0; v2 < n; ++v2) {
          if (used >> v2 & 1) continue;
          slots[i] = v2;
          place(i + 1, used | (1u << v2));
        }
      };
      place(0, 0);
      if (found) {
        r.delta_lower = d;
        r.delta_witness = DeltaWitness{poly, s, *found, evaluate(t, comps[0], *found)};
        break;
      }
    }
  }
  return r;
}

}  // namespace pilab
