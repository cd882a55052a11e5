#pragma once

#include <string>
#include <vector>

#include "pilab/codim.hpp"
#include "pilab/exponents.hpp"
#include "pilab/witnesses.hpp"

namespace pilab {

// One JSON object per line, keys in a fixed order.

std::string codim_record(const std::string& algebra, const CodimResult& r);
std::string exponent_record(const std::string& algebra, const SuperAlgebra& B, const AdmissibleResult& r);
std::string certify_record(const SuperAlgebra& B, const CertifyReport& r);
std::string check_record(const std::string& algebra, const Target& t, const std::string& poly, const PolyVerdict& v);

/// Plain-text table with left-aligned columns.
class SummaryTable {
 public:
  explicit SummaryTable(std::vector<std::string> headers) : headers_(std::move(headers)) {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  bool empty() const { return rows_.empty(); }
  std::string render() const;

 private:
  std::vector<std::string> headers_;
  std::vector<std::vector<std::string>> rows_;
};

std::string format_interval(int lower, int upper);
std::string format_tuple(const SuperAlgebra& B, const std::vector<Element>& tuple);

}  // namespace pilab
