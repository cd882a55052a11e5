// pilab: codimensions, exponents and central polynomials of finite-dimensional (super)algebras.

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "pilab/catalog.hpp"
#include "pilab/codim.hpp"
#include "pilab/definition.hpp"
#include "pilab/exponents.hpp"
#include "pilab/report.hpp"
#include "pilab/verify.hpp"
#include "pilab/witnesses.hpp"

namespace fs = std::filesystem;
using namespace pilab;

namespace {

struct Config {
  std::vector<std::string> algebras;
  std::string degrees = "1..4";
  std::string mode = "auto";
  int primes = 2;
  int window = 3;
  std::size_t batch = 4;
  int degree_cap = 8;
  unsigned jobs = 1;
  bool with_degree7 = false;
  std::vector<int> criteria;
  std::string cache;
  std::string out;
  std::string define;
  std::string poly;
  bool quiet = false;
};

/// Records plus the rendered table; this is what gets cached.
struct Report {
  std::vector<std::string> records;
  std::string table;
  bool ok = true;
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string cache_dir(const Config& cfg) {
  if (!cfg.cache.empty()) return cfg.cache;
  if (const char* env = std::getenv("PILAB_CACHE_DIR")) return env;
  return {};
}

std::optional<Report> cache_load(const std::string& dir, const std::string& key) {
  if (dir.empty()) return std::nullopt;
  std::ifstream in(fs::path(dir) / key);
  if (!in) return std::nullopt;
  try {
    auto j = nlohmann::json::parse(in);
    return Report{j.at("records").get<std::vector<std::string>>(), j.at("table").get<std::string>(), j.at("ok").get<bool>()};
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void cache_store(const std::string& dir, const std::string& key, const Report& r) {
  if (dir.empty()) return;
  fs::create_directories(dir);
  auto tmp = fs::path(dir) / (key + ".tmp");
  {
    std::ofstream out(tmp);
    out << nlohmann::json{{"records", r.records}, {"table", r.table}, {"ok", r.ok}}.dump() << '\n';
  }
  fs::rename(tmp, fs::path(dir) / key);
}

std::vector<int> parse_degrees(const std::string& text) {
  auto dots = text.find("..");
  int lo = std::stoi(text.substr(0, dots));
  int hi = dots == std::string::npos ? lo : std::stoi(text.substr(dots + 2));
  if (lo < 1 || hi < lo) throw CLI::ValidationError("--n", "expected N or LO..HI with 1 <= LO <= HI");
  std::vector<int> out;
  for (int n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

CodimOptions::Mode parse_mode(const std::string& m) {
  if (m == "exact") return CodimOptions::Mode::Exact;
  if (m == "modular") return CodimOptions::Mode::Modular;
  return CodimOptions::Mode::Auto;
}

/// Runs fn(i) for i < count on up to jobs threads.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < count;) fn(i);
  };
  std::vector<std::jthread> pool;
  for (unsigned j = 1; j < std::min<std::size_t>(jobs, count); ++j) pool.emplace_back(worker);
  worker();
}

class Session {
 public:
  explicit Session(const Config& cfg) : cfg_(cfg), catalog_(Catalog::builtin()) {
    if (!cfg.define.empty()) {
      auto def = load_definition_file(cfg.define);
      build_structured_algebra(def);
      defined_ = def.name;
      catalog_.add(std::move(def));
    }
  }

  std::vector<std::string> algebras() const {
    if (!cfg_.algebras.empty()) {
      std::vector<std::string> out;
      for (const auto& a : cfg_.algebras) out.push_back(catalog_.entry(a).name);
      return out;
    }
    if (!defined_.empty()) return {defined_};
    throw CLI::ValidationError("--algebra", "no algebra given");
  }

  const Catalog& catalog() const { return catalog_; }

  std::string key(const std::string& command, const std::string& params) const {
    std::string material = command + '\n' + params + '\n';
    for (const auto& a : algebras()) material += catalog_.entry(a).definition.source + '\n';
    std::ostringstream s;
    s << command << '-' << std::hex << std::setw(16) << std::setfill('0') << fnv1a(material) << ".json";
    return s.str();
  }

  CodimOptions codim_options() const {
    CodimOptions o;
    o.mode = parse_mode(cfg_.mode);
    o.primes = cfg_.primes;
    o.window = cfg_.window;
    o.batch_factor = cfg_.batch;
    return o;
  }

  Report codim() const {
    auto names = algebras();
    auto degrees = parse_degrees(cfg_.degrees);
    std::vector<std::pair<std::string, int>> items;
    for (const auto& a : names)
      for (int n : degrees) items.emplace_back(a, n);
    std::vector<CodimResult> results(items.size());
    parallel_for(items.size(), cfg_.jobs, [&](std::size_t i) {
      results[i] = codimensions(catalog_.target(items[i].first), items[i].second, codim_options());
    });
    Report r;
    SummaryTable t({"algebra", "n", "c_n", "c_n^z", "c_n^delta", "method", "certified"});
    for (std::size_t i = 0; i < items.size(); ++i) {
      const auto& c = results[i];
      r.records.push_back(codim_record(items[i].first, c));
      t.add({items[i].first, std::to_string(c.n), std::to_string(c.c_n), std::to_string(c.c_n_z),
             std::to_string(c.c_n_delta), c.method, c.certified ? "yes" : "no"});
    }
    r.table = t.render();
    return r;
  }

  Report exponent() const {
    auto names = algebras();
    std::vector<AdmissibleResult> results(names.size());
    parallel_for(names.size(), cfg_.jobs, [&](std::size_t i) {
      const auto& e = catalog_.entry(names[i]);
      DeltaOptions o;
      o.degree_cap = cfg_.degree_cap;
      o.extra_witnesses = e.definition.expected.proper_central;
      results[i] = delta_exponent_bounds(*catalog_.algebra(names[i]), e.envelope, o);
    });
    Report r;
    SummaryTable t({"algebra", "exponents", "witness"});
    for (std::size_t i = 0; i < names.size(); ++i) {
      const auto& x = results[i];
      const auto& B = *catalog_.algebra(names[i]);
      r.records.push_back(exponent_record(names[i], B, x));
      std::string text = "exp = " + std::to_string(x.exp) + ", exp^delta = " + format_interval(x.delta_lower, x.delta_upper) +
                         (x.delta_certified() ? " (certified)" : "");
      t.add({names[i], text, x.delta_witness ? x.delta_witness->poly : "-"});
    }
    r.table = t.render();
    return r;
  }

  Report certify() const {
    auto names = algebras();
    std::vector<std::optional<CertifyReport>> results(names.size());
    parallel_for(names.size(), cfg_.jobs, [&](std::size_t i) {
      RealizeOptions o;
      o.catalog = &catalog_;
      DeltaOptions d;
      d.degree_cap = cfg_.degree_cap;
      results[i] = certify_delta_gt_two(*catalog_.algebra(names[i]), catalog_.entry(names[i]).envelope, o, d);
    });
    Report r;
    SummaryTable t({"algebra", "verdict", "lemma", "checks"});
    for (std::size_t i = 0; i < names.size(); ++i) {
      const auto& c = *results[i];
      r.records.push_back(certify_record(*catalog_.algebra(names[i]), c));
      std::string lemma = c.realization ? to_string(c.realization->match.lemma) : "-";
      bool passed = !c.realization || c.realization->checks_passed();
      r.ok = r.ok && passed;
      t.add({names[i], c.verdict(), lemma, passed ? "passed" : "FAILED"});
    }
    r.table = t.render();
    return r;
  }

  Report check() const {
    auto names = algebras();
    std::vector<PolyVerdict> results(names.size());
    parallel_for(names.size(), cfg_.jobs,
                 [&](std::size_t i) { results[i] = classify(catalog_.target(names[i]), cfg_.poly); });
    Report r;
    SummaryTable t({"algebra", "polynomial", "verdict", "witness value"});
    for (std::size_t i = 0; i < names.size(); ++i) {
      Target tg = catalog_.target(names[i]);
      const auto& v = results[i];
      r.records.push_back(check_record(names[i], tg, cfg_.poly, v));
      t.add({names[i], cfg_.poly, to_string(v.kind) + (v.certified ? "" : " (sampled)"),
             v.witness.empty() ? "-" : tg.algebra->format(v.value)});
    }
    r.table = t.render();
    return r;
  }

 private:
  const Config& cfg_;
  Catalog catalog_;
  std::string defined_;
};

void emit(const Config& cfg, const Report& r) {
  if (!cfg.out.empty()) {
    std::ofstream out(cfg.out);
    if (!out) throw std::runtime_error("cannot write " + cfg.out);
    for (const auto& line : r.records) out << line << '\n';
  } else if (!cfg.quiet) {
    for (const auto& line : r.records) std::cout << line << '\n';
    std::cout << '\n';
  }
  std::cout << r.table;
}

int cached(const Config& cfg, const Session& s, const std::string& command, const std::string& params,
           Report (Session::*fn)() const) {
  const std::string dir = cache_dir(cfg), key = s.key(command, params);
  auto hit = cache_load(dir, key);
  Report r = hit ? *hit : (s.*fn)();
  if (!hit) cache_store(dir, key, r);
  emit(cfg, r);
  return r.ok ? 0 : 1;
}

int run_verify(const Config& cfg) {
  VerifyOptions o;
  o.with_degree7 = cfg.with_degree7;
  o.only = cfg.algebras;
  o.criteria = cfg.criteria;
  o.jobs = cfg.jobs;
  if (!cfg.quiet)
    o.on_result = [](const ClaimResult& r) {
      std::cerr << std::left << std::setw(8) << to_string(r.status) << r.id << "  (" << std::fixed << std::setprecision(2)
                << r.seconds << "s)\n";
    };
  auto results = verify_claims(o);

  std::ofstream file;
  if (!cfg.out.empty()) file.open(cfg.out);
  SummaryTable t({"criterion", "claim", "status", "seconds"});
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.status != ClaimStatus::Fail;
    std::ostringstream secs;
    secs << std::fixed << std::setprecision(2) << r.seconds;
    t.add({std::to_string(r.criterion), r.id, to_string(r.status), secs.str()});
    if (file) {
      nlohmann::ordered_json j;
      j["kind"] = "claim";
      j["criterion"] = r.criterion;
      j["id"] = r.id;
      j["title"] = r.title;
      j["status"] = to_string(r.status);
      j["seconds"] = r.seconds;
      j["details"] = r.details;
      file << j.dump() << '\n';
    }
    if (r.status == ClaimStatus::Fail)
      for (const auto& d : r.details) std::cout << "  " << r.id << ": " << d << '\n';
  }
  std::cout << t.render();
  SummaryTable c({"criterion", "status"});
  for (int k = 1; k <= 10; ++k) c.add({std::to_string(k), to_string(criterion_status(results, k))});
  std::cout << '\n' << c.render();
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pilab: polynomial identities of finite-dimensional superalgebras and their Grassmann envelopes"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--algebra,-a", cfg.algebras, "catalog name or key (repeatable)");
    sub->add_option("--define", cfg.define, "user algebra definition (YAML)")->check(CLI::ExistingFile);
    sub->add_option("--jobs,-j", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out,-o", cfg.out, "write JSON-lines records to FILE");
    sub->add_flag("--quiet,-q", cfg.quiet, "only print the summary table");
  };
  auto cacheable = [&](CLI::App* sub) {
    sub->add_option("--cache", cfg.cache, "cache directory (default: $PILAB_CACHE_DIR)");
  };

  auto* verify = app.add_subcommand("verify", "run the claim tables");
  common(verify);
  verify->add_flag("--with-degree7", cfg.with_degree7, "include the degree-7 T-ideal checks");
  verify->add_option("--criterion", cfg.criteria, "restrict to these criteria")->check(CLI::Range(1, 10));

  auto* codim = app.add_subcommand("codim", "codimensions c_n, c_n^z, c_n^delta");
  common(codim);
  cacheable(codim);
  codim->add_option("--n,--degree", cfg.degrees, "degree N or range LO..HI");
  codim->add_option("--mode", cfg.mode, "exact, modular or auto")->check(CLI::IsMember({"auto", "exact", "modular"}));
  codim->add_option("--primes", cfg.primes, "primes for the modular path")->check(CLI::PositiveNumber);
  codim->add_option("--window", cfg.window, "stabilization window")->check(CLI::PositiveNumber);
  codim->add_option("--batch", cfg.batch, "functionals per batch, in units of n!")->check(CLI::PositiveNumber);

  auto* exponent = app.add_subcommand("exponent", "exp and the certified exp^delta interval");
  common(exponent);
  cacheable(exponent);
  exponent->add_option("--degree-cap", cfg.degree_cap, "largest witness degree tried");

  auto* certify = app.add_subcommand("certify", "search for a construction forcing exp^delta > 2");
  common(certify);
  cacheable(certify);
  certify->add_option("--degree-cap", cfg.degree_cap, "largest witness degree tried");

  auto* check = app.add_subcommand("check", "identity / proper central / non-central");
  common(check);
  cacheable(check);
  check->add_option("poly", cfg.poly, "polynomial, e.g. \"[x1,x2][x3,x4]\"")->required();

  auto* list = app.add_subcommand("list", "catalog names");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return run_verify(cfg);
    if (list->parsed()) {
      for (const auto& e : Catalog::builtin().entries())
        std::cout << std::left << std::setw(8) << e.name << (e.envelope ? "G(B)  " : "A     ") << e.definition.description
                  << '\n';
      return 0;
    }
    Session s(cfg);
    if (codim->parsed()) {
      std::ostringstream p;
      p << cfg.degrees << ' ' << cfg.mode << ' ' << cfg.primes << ' ' << cfg.window << ' ' << cfg.batch;
      return cached(cfg, s, "codim", p.str(), &Session::codim);
    }
    if (exponent->parsed()) return cached(cfg, s, "exponent", std::to_string(cfg.degree_cap), &Session::exponent);
    if (certify->parsed()) return cached(cfg, s, "certify", std::to_string(cfg.degree_cap), &Session::certify);
    if (check->parsed()) return cached(cfg, s, "check", cfg.poly, &Session::check);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "pilab: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
