#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pilab/linalg.hpp"
#include "pilab/poly.hpp"

namespace pilab {

struct TSpanOptions {
  enum class Enumeration { Reduced, Full };
  Enumeration enumeration = Enumeration::Reduced;
  int primes = 2;
  std::uint64_t seed = 0x7e11;
  std::vector<std::uint64_t> fixed_primes;
  bool lift = true;  // try to certify the dimension over Q
};

/// P_n cap <generators>_T, held modulo each prime.
struct TSpan {
  int n = 0;
  std::uint64_t dim = 0;
  std::vector<std::uint64_t> primes;
  std::vector<ModularEchelon> rows;  // one per prime
  bool certified = false;            // dim holds over Q
  std::optional<std::vector<Vector>> annihilator;  // exact complement description when certified
  std::uint64_t generated = 0;       // substitution instances produced
  std::string method;                // "reduced" or "full"
};

TSpan tideal_multilinear_span(const std::vector<GeneralPoly>& generators, int n, const TSpanOptions& opt = {});
TSpan tideal_multilinear_span(const std::vector<std::string>& generators, int n, const TSpanOptions& opt = {});

/// Membership of a multilinear polynomial of degree n (exact when the span is certified).
bool tspan_contains(const TSpan& span, const MultilinearPoly& f);

/// The orbit of a degree-n multilinear polynomial under renaming of its variables.
std::vector<MultilinearPoly> variable_orbit(const MultilinearPoly& g);

struct RewriteItem {
  std::string label;
  std::string poly;
  int n = 0;
  bool member = false;
  std::optional<bool> claimed;  // nullopt: reported only
};

struct RewriteReport {
  int n = 0;
  std::vector<RewriteItem> items;
  bool ok = true;
};

/// Checks the two commutator congruences modulo the consequences of [x1,x2,x3]x4 at degree n in {4, 5}.
RewriteReport rewrite_check(int n, const TSpanOptions& opt = {});

}  // namespace pilab
