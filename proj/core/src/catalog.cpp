#include "pilab/catalog.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace pilab {

namespace {

std::vector<std::string> names_of(const YAML::Node& n) {
  std::vector<std::string> out;
  if (n)
    for (const auto& x : n) out.push_back(x.as<std::string>());
  return out;
}

}  // namespace

const Catalog& Catalog::builtin() {
  static const Catalog cat = [] {
    Catalog c;
    for (const auto& [key, text] : detail::embedded_catalog()) c.load_document(key, text);
    return c;
  }();
  return cat;
}

Catalog Catalog::from_directory(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".yaml") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  Catalog c;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    c.load_document(f.stem().string(), ss.str());
  }
  return c;
}

void Catalog::load_document(const std::string& key, const std::string& text) {
  if (key == "distinguishing") {
    YAML::Node doc = YAML::Load(text);
    for (const auto& r : doc["rows"])
      rows_.push_back({r["poly"].as<std::string>(), names_of(r["members"]), names_of(r["nonmembers"])});
    return;
  }
  add(parse_definition(text), key);
}

void Catalog::add(AlgebraDefinition def, std::string key) {
  if (key.empty()) key = def.name;
  if (contains(def.name) || contains(key)) throw std::invalid_argument("duplicate catalog entry " + def.name);
  CatalogEntry e;
  e.name = def.name;
  e.key = std::move(key);
  e.envelope = def.envelope;
  e.definition = std::move(def);
  entries_.push_back(std::move(e));
}

std::vector<std::string> Catalog::names() const {
  std::vector<std::string> out;
  for (const auto& e : entries_) out.push_back(e.name);
  return out;
}

bool Catalog::contains(const std::string& name) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const CatalogEntry& e) { return e.name == name || e.key == name; });
}

const CatalogEntry& Catalog::entry(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.name == name || e.key == name) return e;
  std::string list;
  for (const auto& n : names()) list += (list.empty() ? "" : ", ") + n;
  throw UnknownAlgebra("unknown algebra '" + name + "'; available: " + list);
}

std::shared_ptr<const SuperAlgebra> Catalog::algebra(const std::string& name) const {
  const CatalogEntry& e = entry(name);
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = built_.find(e.key);
  if (it != built_.end()) return it->second;
  auto a = std::make_shared<const SuperAlgebra>(build_structured_algebra(e.definition));
  built_.emplace(e.key, a);
  return a;
}

Target Catalog::target(const std::string& name) const { return Target{algebra(name).get(), entry(name).envelope}; }

std::shared_ptr<const SuperAlgebra> catalog_algebra(const std::string& name) { return Catalog::builtin().algebra(name); }

}  // namespace pilab
