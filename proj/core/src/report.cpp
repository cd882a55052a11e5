#include "pilab/report.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace pilab {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json element_json(const SuperAlgebra& B, const Element& e) {
  return ordered_json{{"value", B.format(e.coords)}, {"parity", e.parity}};
}

}  // namespace

std::string format_interval(int lower, int upper) {
  if (lower == upper) return std::to_string(lower);
  return "[" + std::to_string(lower) + ", " + std::to_string(upper) + "]";
}

std::string format_tuple(const SuperAlgebra& B, const std::vector<Element>& tuple) {
  std::string out = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ", ";
    out += B.format(tuple[i].coords);
  }
  return out + ")";
}

std::string codim_record(const std::string& algebra, const CodimResult& r) {
  ordered_json j;
  j["kind"] = "codim";
  j["algebra"] = algebra;
  j["n"] = r.n;
  j["c_n"] = r.c_n;
  if (r.central_computed) {
    j["c_n_z"] = r.c_n_z;
    j["c_n_delta"] = r.c_n_delta;
  }
  j["method"] = r.method;
  j["primes"] = r.primes;
  j["samples"] = r.samples;
  j["certified"] = r.certified;
  return j.dump();
}

std::string exponent_record(const std::string& algebra, const SuperAlgebra& B, const AdmissibleResult& r) {
  ordered_json j;
  j["kind"] = "exponent";
  j["algebra"] = algebra;
  j["exp"] = r.exp;
  j["exp_delta_lower"] = r.delta_lower;
  j["exp_delta_upper"] = r.delta_upper;
  j["certified"] = r.delta_certified();
  const auto& w = *B.wedderburn();
  auto blocks = ordered_json::array();
  for (auto i : r.best_subset) blocks.push_back(w.blocks[i].describe());
  j["admissible"] = blocks;
  auto path = ordered_json::array();
  for (const auto& v : r.radical_path) path.push_back(B.format(v));
  j["radical_path"] = path;
  j["path_product"] = r.path_product.empty() ? std::string{} : B.format(r.path_product);
  if (r.delta_witness) {
    j["witness"] = r.delta_witness->poly;
    auto tuple = ordered_json::array();
    for (const auto& e : r.delta_witness->tuple) tuple.push_back(element_json(B, e));
    j["witness_tuple"] = tuple;
    j["witness_value"] = B.format(r.delta_witness->value);
  } else {
    j["witness"] = nullptr;
  }
  return j.dump();
}

std::string certify_record(const SuperAlgebra& B, const CertifyReport& r) {
  ordered_json j;
  j["kind"] = "certify";
  j["algebra"] = r.algebra;
  j["verdict"] = r.verdict();
  if (r.short_circuit) {
    j["lemma"] = nullptr;
    j["target"] = r.short_circuit->target;
    j["reason"] = r.short_circuit->reason;
    j["checks_passed"] = true;
    return j.dump();
  }
  if (r.certified && r.realization) {
    const auto& z = *r.realization;
    const auto& m = z.match;
    j["lemma"] = to_string(m.lemma);
    j["target"] = m.target;
    j["variant"] = z.image_member.empty() ? m.variant : z.image_member;
    auto idem = ordered_json::array();
    for (const auto& e : m.idempotents) idem.push_back(B.format(e));
    j["idempotents"] = idem;
    auto rad = ordered_json::array();
    for (const auto& e : m.radical) rad.push_back(element_json(B, e));
    j["radical_elements"] = rad;
    j["nonzero_product"] = B.format(m.nonzero_product);
    j["kernel_dim"] = z.kernel_dim;
    j["quotient_dim"] = z.quotient ? z.quotient->dim() : 0;
    j["checks_passed"] = z.checks_passed();
    return j.dump();
  }
  j["lemma"] = nullptr;
  j["target"] = nullptr;
  j["matches"] = r.matches;
  j["exp_delta"] = format_interval(r.delta_lower, r.delta_upper);
  j["checks_passed"] = true;
  return j.dump();
}

std::string check_record(const std::string& algebra, const Target& t, const std::string& poly, const PolyVerdict& v) {
  ordered_json j;
  j["kind"] = "check";
  j["algebra"] = algebra;
  j["poly"] = poly;
  j["verdict"] = to_string(v.kind);
  j["certified"] = v.certified;
  j["method"] = v.method;
  if (!v.witness.empty()) {
    auto tuple = ordered_json::array();
    for (const auto& e : v.witness) tuple.push_back(element_json(*t.algebra, e));
    j["witness"] = tuple;
    j["value"] = t.algebra->format(v.value);
  }
  return j.dump();
}

std::string SummaryTable::render() const {
  std::vector<std::size_t> width(headers_.size());
  for (std::size_t c = 0; c < headers_.size(); ++c) width[c] = headers_[c].size();
  for (const auto& r : rows_)
    for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) width[c] = std::max(width[c], r[c].size());
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t c = 0; c < width.size(); ++c) {
      std::string cell = c < cells.size() ? cells[c] : "";
      if (c + 1 < width.size()) cell.resize(width[c], ' ');
      s += cell;
      if (c + 1 < width.size()) s += "  ";
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    out << s << '\n';
  };
  line(headers_);
  std::vector<std::string> rule;
  for (auto w : width) rule.push_back(std::string(w, '-'));
  line(rule);
  for (const auto& r : rows_) line(r);
  return out.str();
}

}  // namespace pilab
