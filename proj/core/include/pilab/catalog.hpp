#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "pilab/codim.hpp"
#include "pilab/definition.hpp"

namespace pilab {

class UnknownAlgebra : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CatalogEntry {
  std::string name;  // as written in the definition, e.g. "A_6^1"
  std::string key;   // file stem, e.g. "A_6_1"
  AlgebraDefinition definition;
  bool envelope = false;
};

/// One row of the membership table: an identity of the members and of none of the nonmembers.
struct MembershipRow {
  std::string poly;
  std::vector<std::string> members;
  std::vector<std::string> nonmembers;
};

class Catalog {
 public:
  /// Definitions compiled into the library.
  static const Catalog& builtin();
  /// Every *.yaml file of a directory; distinguishing.yaml holds the membership table.
  static Catalog from_directory(const std::string& dir);

  void add(AlgebraDefinition def, std::string key = {});
  const std::vector<CatalogEntry>& entries() const { return entries_; }
  std::vector<std::string> names() const;
  bool contains(const std::string& name) const;
  /// Lookup by name or key; throws UnknownAlgebra listing the available names.
  const CatalogEntry& entry(const std::string& name) const;
  /// Built and validated algebra, cached.
  std::shared_ptr<const SuperAlgebra> algebra(const std::string& name) const;
  Target target(const std::string& name) const;
  const std::vector<MembershipRow>& distinguishing() const { return rows_; }

  Catalog() = default;
  Catalog(const Catalog& other) : entries_(other.entries_), rows_(other.rows_) {}
  Catalog& operator=(const Catalog&) = delete;

 private:
  void load_document(const std::string& key, const std::string& text);

  std::vector<CatalogEntry> entries_;
  std::vector<MembershipRow> rows_;
  mutable std::mutex mutex_;
  mutable std::map<std::string, std::shared_ptr<const SuperAlgebra>> built_;
};

/// Shorthand for Catalog::builtin().algebra(name).
std::shared_ptr<const SuperAlgebra> catalog_algebra(const std::string& name);

namespace detail {
/// (file stem, document text) pairs generated at build time.
const std::vector<std::pair<std::string, std::string>>& embedded_catalog();
}  // namespace detail

}  // namespace pilab
