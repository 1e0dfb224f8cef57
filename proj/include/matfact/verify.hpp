#pragma once

// Theorem suites: each cross-checks a constructive module against the
// brute-force oracle on small prime fields.

#include <optional>
#include <string>

#include "matfact/json_io.hpp"
#include "matfact/witness.hpp"

namespace matfact {

struct SuiteOptions {
  std::size_t n = 3;
  std::uint64_t p = 2;
  /// Random instances in sampled mode; constructive targets per instance.
  std::size_t samples = 20;
  /// Every normal up to scaling instead of `samples` random ones.
  bool exhaustive = false;
  SearchBudget budget;
};

struct SuiteReport {
  std::string theorem;
  std::size_t instances = 0;
  std::size_t checks = 0;
  bool passed = true;
  std::optional<json> counterexample;

  json to_json() const;
};

/// Span of products (lc2), semigroup closure (prodall), two-factor products
/// of a hyperplane (prod2), and the 2 x 2 classification (n2class).
/// Unknown names raise Errc::invalid_input; oversized runs Errc::too_large.
SuiteReport run_suite(const std::string& theorem, const SuiteOptions& opts);

SuiteReport verify_lc2(const SuiteOptions& opts);
SuiteReport verify_prodall(const SuiteOptions& opts);
SuiteReport verify_prod2(const SuiteOptions& opts);
SuiteReport verify_n2class(const SuiteOptions& opts);

}  // namespace matfact
