#include "pilab/definition.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <regex>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace pilab {

namespace {

std::vector<std::string> string_list(const YAML::Node& node) {
  std::vector<std::string> out;
  if (!node) return out;
  for (const auto& x : node) out.push_back(x.as<std::string>());
  return out;
}

std::vector<int> int_list(const YAML::Node& node) {
  std::vector<int> out;
  if (!node) return out;
  for (const auto& x : node) out.push_back(x.as<int>());
  return out;
}

ExpectedValues parse_expected(const YAML::Node& e) {
  ExpectedValues x;
  if (!e) return x;
  if (e["dim"]) x.dim = e["dim"].as<std::size_t>();
  if (e["dim_even"]) x.dim_even = e["dim_even"].as<std::size_t>();
  if (e["exp"]) x.exp = e["exp"].as<int>();
  if (e["exp_delta"]) x.exp_delta = e["exp_delta"].as<int>();
  if (e["center"]) x.center = string_list(e["center"]);
  if (e["supercenter_even"]) x.supercenter_even = string_list(e["supercenter_even"]);
  if (e["supercenter_odd"]) x.supercenter_odd = string_list(e["supercenter_odd"]);
  x.proper_central = string_list(e["proper_central"]);
  if (e["evaluations"])
    for (const auto& ev : e["evaluations"])
      x.evaluations.push_back({ev["poly"].as<std::string>(), string_list(ev["tuple"]), ev["value"].as<std::string>()});
  return x;
}

struct Entry {
  std::size_t row, col;
};

std::optional<Entry> parse_matrix_unit(const std::string& name, char prefix) {
  static const std::regex two_digit("([0-9])([0-9])");
  static const std::regex separated("([0-9]+)_([0-9]+)");
  if (name.size() < 3 || name[0] != prefix) return std::nullopt;
  std::smatch m;
  std::string rest = name.substr(1);
  if (std::regex_match(rest, m, two_digit) || std::regex_match(rest, m, separated)) {
    std::size_t r = std::stoul(m[1].str()), c = std::stoul(m[2].str());
    if (r == 0 || c == 0) return std::nullopt;
    return Entry{r - 1, c - 1};
  }
  return std::nullopt;
}

/// Splits "a - 2*b + 1/3*c" into (coefficient, name) pairs.
std::vector<std::pair<Rational, std::string>> parse_terms(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw AlgebraError("empty element expression");
  std::vector<std::pair<Rational, std::string>> out;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') sign = -sign;
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string term = s.substr(i, j - i);
    if (term.empty()) throw AlgebraError("malformed element '" + text + "'");
    Rational c = sign;
    auto star = term.find('*');
    if (star != std::string::npos) {
      try {
        c *= parse_rational(term.substr(0, star));
      } catch (const std::invalid_argument&) {
        throw AlgebraError("malformed coefficient in '" + text + "'");
      }
      term = term.substr(star + 1);
    }
    out.emplace_back(c, term);
    i = j;
  }
  return out;
}

Vector resolve_terms(const std::vector<std::string>& labels, const std::optional<Ambient>& ambient,
                     const SuperAlgebra* A, const std::string& text) {
  Vector v(labels.size());
  MatrixEntries matrix;
  for (const auto& [c, name] : parse_terms(text)) {
    auto it = std::find(labels.begin(), labels.end(), name);
    if (it != labels.end()) {
      v[static_cast<std::size_t>(it - labels.begin())] += c;
      continue;
    }
    if (ambient) {
      if (auto e = parse_matrix_unit(name, 'e')) {
        if (e->row >= ambient->size || e->col >= ambient->size)
          throw AlgebraError("matrix unit " + name + " outside the ambient");
        matrix.emplace_back(e->row * ambient->size + e->col, c);
        continue;
      }
    }
    throw AlgebraError("unknown basis element '" + name + "'");
  }
  if (!matrix.empty()) {
    Vector m = A->coordinates_of(matrix);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += m[i];
  }
  return v;
}

class SignedUnionFind {
 public:
  explicit SignedUnionFind(std::size_t n) : parent_(n), sign_(n, 1), zero_(n, false) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::pair<std::size_t, int> find(std::size_t x) {
    if (parent_[x] == x) return {x, 1};
    auto [root, s] = find(parent_[x]);
    parent_[x] = root;
    sign_[x] *= s;
    return {root, sign_[x]};
  }
  // x = s * y
  void unite(std::size_t x, std::size_t y, int s) {
    auto [rx, sx] = find(x);
    auto [ry, sy] = find(y);
    int rel = sx * s * sy;
    if (rx == ry) {
      if (rel == -1) zero_[rx] = true;
      return;
    }
    parent_[rx] = ry;
    sign_[rx] = rel;
    zero_[ry] = zero_[ry] || zero_[rx];
  }
  void set_zero(std::size_t x) { zero_[find(x).first] = true; }
  bool is_zero(std::size_t x) { return zero_[find(x).first]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> sign_;
  std::vector<bool> zero_;
};

std::string matrix_label(const MatrixEntries& m, std::size_t n) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [pos, c] : m) {
    if (sgn(c) < 0)
      os << "-";
    else if (!first)
      os << "+";
    if (abs(c) != 1) os << format_rational(Rational(abs(c))) << "*";
    std::size_t r = pos / n + 1, col = pos % n + 1;
    os << (n < 10 ? "e" + std::to_string(r) + std::to_string(col)
                  : "e" + std::to_string(r) + "_" + std::to_string(col));
    first = false;
  }
  return os.str();
}

SuperAlgebra build_from_matrix_classes(const std::string& name, std::size_t n, const std::vector<int>& h,
                                       std::vector<MatrixEntries> classes) {
  std::vector<std::string> labels;
  std::vector<int> parity;
  for (const auto& cls : classes) {
    labels.push_back(matrix_label(cls, n));
    parity.push_back((h[cls.front().first / n] + h[cls.front().first % n]) & 1);
  }
  const std::size_t d = classes.size();
  std::vector<std::size_t> owner(n * n, d);
  for (std::size_t i = 0; i < d; ++i)
    for (const auto& [pos, c] : classes[i]) owner[pos] = i;
  std::vector<std::vector<Term>> table(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      std::map<std::size_t, Rational> prod;
      for (const auto& [p1, c1] : classes[i])
        for (const auto& [p2, c2] : classes[j])
          if (p1 % n == p2 / n) prod[(p1 / n) * n + p2 % n] += c1 * c2;
      std::erase_if(prod, [](const auto& kv) { return sgn(kv.second) == 0; });
      // Each basis element owns a disjoint set of positions, so coordinates are read off directly.
      std::map<std::size_t, Rational> coords;
      for (const auto& [pos, c] : prod) {
        std::size_t k = owner[pos];
        if (k == d) throw AlgebraError("presentation of '" + name + "' is not closed under multiplication");
        if (classes[k].front().first == pos) coords[k] = c / classes[k].front().second;
      }
      std::map<std::size_t, Rational> check;
      for (const auto& [k, c] : coords)
        for (const auto& [pos, e] : classes[k]) check[pos] += c * e;
      std::erase_if(check, [](const auto& kv) { return sgn(kv.second) == 0; });
      if (check != prod) throw AlgebraError("presentation of '" + name + "' is not closed under multiplication");
      for (const auto& [k, c] : coords) table[i * d + j].push_back({k, c});
    }
  SuperAlgebra A(name, labels, parity, table);
  A.set_ambient(Ambient{n, h, std::move(classes)});
  return A;
}

SuperAlgebra build_ut(const std::string& name, const std::vector<int>& sizes, std::vector<int> grading,
                      const std::vector<std::string>& constraints) {
  if (sizes.empty()) throw AlgebraError("ut_blocks ambient needs block sizes");
  std::size_t n = 0;
  std::vector<std::size_t> block_of;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    if (sizes[b] <= 0) throw AlgebraError("block sizes must be positive");
    n += static_cast<std::size_t>(sizes[b]);
    block_of.insert(block_of.end(), static_cast<std::size_t>(sizes[b]), b);
  }
  if (grading.empty()) grading.assign(n, 0);
  if (grading.size() != n)
    throw AlgebraError("grading tuple has length " + std::to_string(grading.size()) + ", expected " +
                       std::to_string(n));
  for (int g : grading)
    if (g != 0 && g != 1) throw AlgebraError("grading entries must be 0 or 1");

  SignedUnionFind uf(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (block_of[r] > block_of[c]) uf.set_zero(r * n + c);

  static const std::regex eq(R"(a([0-9]+(?:_[0-9]+)?)=(-?)a([0-9]+(?:_[0-9]+)?))");
  static const std::regex zero(R"(a([0-9]+(?:_[0-9]+)?)=0)");
  auto position = [&](const std::string& digits) {
    auto e = parse_matrix_unit("a" + digits, 'a');
    if (!e || e->row >= n || e->col >= n) throw AlgebraError("constraint refers to bad entry a" + digits);
    return e->row * n + e->col;
  };
  for (const auto& raw : constraints) {
    std::string s;
    for (char ch : raw)
      if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    std::smatch m;
    if (std::regex_match(s, m, zero)) {
      uf.set_zero(position(m[1].str()));
    } else if (std::regex_match(s, m, eq)) {
      uf.unite(position(m[1].str()), position(m[3].str()), m[2].str() == "-" ? -1 : 1);
    } else {
      throw AlgebraError("malformed constraint '" + raw + "'");
    }
  }

  std::map<std::size_t, MatrixEntries> by_root;
  for (std::size_t pos = 0; pos < n * n; ++pos) {
    if (uf.is_zero(pos)) continue;
    auto [root, s] = uf.find(pos);
    by_root[root].emplace_back(pos, Rational(s));
  }
  if (by_root.empty()) throw AlgebraError("constraints leave algebra '" + name + "' empty");
  std::vector<MatrixEntries> classes;
  for (auto& [root, entries] : by_root) {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    if (sgn(entries.front().second) < 0)
      for (auto& e : entries) e.second = -e.second;
    int p = -1;
    for (const auto& [pos, c] : entries) {
      int q = (grading[pos / n] + grading[pos % n]) & 1;
      if (p >= 0 && p != q)
        throw AlgebraError("constraints of '" + name + "' identify entries of different parity");
      p = q;
    }
    classes.push_back(std::move(entries));
  }
  auto diagonal = [&](const MatrixEntries& cls) {
    return std::any_of(cls.begin(), cls.end(), [&](const auto& e) { return e.first / n == e.first % n; });
  };
  std::stable_sort(classes.begin(), classes.end(), [&](const auto& a, const auto& b) {
    bool da = diagonal(a), db = diagonal(b);
    if (da != db) return da;
    return a.front().first < b.front().first;
  });
  return build_from_matrix_classes(name, n, grading, std::move(classes));
}

}  // namespace

AlgebraDefinition parse_definition(const std::string& text) {
  YAML::Node doc;
  try {
    doc = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw AlgebraError(std::string("malformed algebra definition: ") + e.what());
  }
  AlgebraDefinition def;
  def.source = text;
  try {
    if (!doc["name"]) throw AlgebraError("algebra definition needs a name");
    def.name = doc["name"].as<std::string>();
    if (doc["description"]) def.description = doc["description"].as<std::string>();
    if (doc["envelope"]) def.envelope = doc["envelope"].as<bool>();
    const auto amb = doc["ambient"];
    if (!amb || !amb["type"]) throw AlgebraError("algebra definition needs ambient.type");
    def.ambient_type = amb["type"].as<std::string>();
    if (def.ambient_type == "ut_blocks") {
      def.sizes = int_list(amb["sizes"]);
      def.grading = int_list(amb["grading"]);
    } else if (def.ambient_type == "structure_constants") {
      def.labels = string_list(amb["basis"]);
      def.parity = int_list(amb["parity"]);
      if (amb["products"])
        for (const auto& p : amb["products"]) {
          if (p.size() != 3) throw AlgebraError("product entries are [left, right, value]");
          def.products.push_back({p[0].as<std::string>(), p[1].as<std::string>(), p[2].as<std::string>()});
        }
    } else {
      throw AlgebraError("unknown ambient type '" + def.ambient_type + "'");
    }
    def.constraints = string_list(doc["constraints"]);
    if (const auto w = doc["wedderburn"]) {
      std::vector<BlockSpec> blocks;
      for (const auto& b : w["blocks"]) {
        BlockSpec spec;
        spec.kind = parse_block_kind(b["kind"].as<std::string>());
        if (b["k"]) spec.k = b["k"].as<int>();
        if (b["l"]) spec.l = b["l"].as<int>();
        spec.basis = string_list(b["basis"]);
        blocks.push_back(std::move(spec));
      }
      def.blocks = std::move(blocks);
      def.radical = string_list(w["radical"]);
    }
    def.expected = parse_expected(doc["expected"]);
  } catch (const YAML::Exception& e) {
    throw AlgebraError("algebra definition '" + def.name + "': " + e.what());
  }
  return def;
}

AlgebraDefinition load_definition_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AlgebraError("cannot open definition file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_definition(ss.str());
}

SuperAlgebra build_ut_block_algebra(const std::vector<int>& sizes, const std::vector<int>& grading,
                                    const std::string& name) {
  std::size_t n = 0;
  for (int s : sizes) n += static_cast<std::size_t>(std::max(s, 0));
  if (grading.size() != n)
    throw AlgebraError("grading tuple has length " + std::to_string(grading.size()) + ", expected " +
                       std::to_string(n));
  SuperAlgebra A = build_ut(name, sizes, grading, {});
  A.validate();
  return A;
}

SuperAlgebra build_structured_algebra(const AlgebraDefinition& def) {
  std::optional<SuperAlgebra> built;
  if (def.ambient_type == "ut_blocks") {
    built.emplace(build_ut(def.name, def.sizes, def.grading, def.constraints));
  } else {
    if (!def.constraints.empty()) throw AlgebraError("constraints need a ut_blocks ambient");
    const std::size_t d = def.labels.size();
    if (d == 0) throw AlgebraError("structure constant algebra '" + def.name + "' is empty");
    std::vector<int> parity = def.parity.empty() ? std::vector<int>(d, 0) : def.parity;
    std::vector<std::vector<Term>> table(d * d);
    for (const auto& [l, r, value] : def.products) {
      auto li = std::find(def.labels.begin(), def.labels.end(), l);
      auto ri = std::find(def.labels.begin(), def.labels.end(), r);
      if (li == def.labels.end() || ri == def.labels.end())
        throw AlgebraError("product refers to unknown basis element");
      Vector v = resolve_terms(def.labels, std::nullopt, nullptr, value);
      auto& cell = table[static_cast<std::size_t>(li - def.labels.begin()) * d +
                         static_cast<std::size_t>(ri - def.labels.begin())];
      for (std::size_t k = 0; k < d; ++k)
        if (sgn(v[k]) != 0) cell.push_back({k, v[k]});
    }
    built.emplace(def.name, def.labels, parity, table);
  }
  SuperAlgebra& A = *built;
  A.validate();
  if (def.blocks) {
    WedderburnData w;
    for (const auto& spec : *def.blocks) {
      SimpleBlock b{spec.kind, spec.k, spec.l, {}};
      for (const auto& e : spec.basis) b.basis.push_back(parse_element(A, e));
      w.blocks.push_back(std::move(b));
    }
    for (const auto& e : def.radical) w.radical.push_back(parse_element(A, e));
    A.set_wedderburn(std::move(w));
  }
  return std::move(*built);
}

Vector parse_element(const SuperAlgebra& A, const std::string& text) {
  return resolve_terms(A.labels(), A.ambient(), &A, text);
}

}  // namespace pilab
