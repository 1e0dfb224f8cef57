// matfact: factor matrices through subspaces, run oracle suites, classify
// 2 x 2 hyperplanes. Reports are JSON on stdout.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "matfact/factor2.hpp"
#include "matfact/json_io.hpp"
#include "matfact/semigroup.hpp"
#include "matfact/verify.hpp"

namespace {

using matfact::Errc;
using matfact::json;

enum Exit { ok = 0, verification_failure = 1, input_error = 2, budget_exhausted = 3 };

struct Inputs {
  std::string digest_text;

  json load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) matfact::raise(Errc::invalid_input, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    digest_text += ss.str();
    digest_text.push_back('\0');
    return matfact::parse_json_text(ss.str());
  }

  std::string digest() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : digest_text) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
  }
};

int exit_for(Errc c) {
  switch (c) {
    case Errc::budget_exhausted: return budget_exhausted;
    case Errc::internal_contradiction: return verification_failure;
    default: return input_error;
  }
}

struct Options {
  std::string mode = "pair";
  std::string hyperplane, hyperplane2, affine, subspace, matrix;
  std::string theorem;
  std::size_t n = 3;
  std::uint64_t p = 2;
  std::size_t samples = 20;
  bool exhaustive = false;
  bool timing = false;
  matfact::SearchBudget budget;
};

json factors_json(const std::vector<matfact::Matrix>& fs) {
  json arr = json::array();
  for (const auto& f : fs) arr.push_back(matfact::to_json(f));
  return arr;
}

int cmd_factor(const Options& o, Inputs& in, json& artifacts) {
  const matfact::Matrix m = matfact::matrix_from_json(in.load(o.matrix));
  if (o.mode == "pair" || o.mode == "pair2") {
    if (o.hyperplane.empty()) matfact::raise(Errc::invalid_input, "--hyperplane is required");
    const matfact::Hyperplane h1 = matfact::hyperplane_from_json(in.load(o.hyperplane));
    const bool two = o.mode == "pair2" || !o.hyperplane2.empty();
    const matfact::Hyperplane h2 = two ? matfact::hyperplane_from_json(in.load(o.hyperplane2.empty() ? o.hyperplane : o.hyperplane2)) : h1;
    matfact::PairFactorization pf{m, m};
    if (h1.n() == 2 && !two) {
      const auto res = matfact::n2_pair_factor(h1, m, o.budget);
      if (const auto* imp = std::get_if<matfact::Impossible>(&res)) {
        artifacts = json{{"impossible", imp->reason}};
        return verification_failure;
      }
      pf = std::get<matfact::PairFactorization>(res);
    } else {
      pf = two ? matfact::two_hyperplanes_factor(h1, h2, m, o.budget) : matfact::hyperplane_pair_factor(h1, m, o.budget);
    }
    const bool verified = pf.verified(m);
    artifacts = json{{"B", matfact::to_json(pf.left)}, {"C", matfact::to_json(pf.right)}, {"verified", verified}};
    return verified ? ok : verification_failure;
  }
  if (o.mode == "semigroup") {
    if (o.affine.empty()) matfact::raise(Errc::invalid_input, "--affine is required");
    const matfact::AffineSubspace v = matfact::affine_from_json(in.load(o.affine));
    const auto chain = matfact::semigroup_factor(v, m, o.budget);
    const bool verified = matfact::verify_chain(v, m, chain);
    artifacts = json{{"factors", factors_json(chain.factors)}, {"length", chain.length()}, {"verified", verified}};
    return verified ? ok : verification_failure;
  }
  if (o.mode == "sumprod") {
    const std::string& path = o.subspace.empty() ? o.affine : o.subspace;
    if (path.empty()) matfact::raise(Errc::invalid_input, "--subspace is required");
    const matfact::LinearSubspace v = matfact::linear_from_json(in.load(path));
    const auto s = matfact::sum_of_products_decompose(v, m);
    bool verified = s.total(m.field(), m.rows()) == m;
    json terms = json::array();
    for (const auto& [a, b] : s.terms) {
      verified = verified && v.contains(a) && v.contains(b);
      terms.push_back(json{{"A", matfact::to_json(a)}, {"B", matfact::to_json(b)}});
    }
    artifacts = json{{"terms", std::move(terms)}, {"length", s.terms.size()}, {"verified", verified}};
    return verified ? ok : verification_failure;
  }
  matfact::raise(Errc::invalid_input, "unknown mode \"" + o.mode + "\"");
}

int cmd_verify(const Options& o, json& artifacts) {
  matfact::SuiteOptions so;
  so.n = o.n;
  so.p = o.p;
  so.samples = o.samples;
  so.exhaustive = o.exhaustive;
  so.budget = o.budget;
  const auto report = matfact::run_suite(o.theorem, so);
  artifacts = report.to_json();
  return report.passed ? ok : verification_failure;
}

int cmd_classify2(const Options& o, Inputs& in, json& artifacts) {
  const matfact::Hyperplane h = matfact::hyperplane_from_json(in.load(o.hyperplane));
  const auto cls = matfact::n2_classify(h);
  artifacts = json{{"verdict", matfact::to_string(cls.verdict)}};
  if (cls.conjugator) artifacts["conjugator"] = matfact::to_json(*cls.conjugator);
  return ok;
}

std::string outcome_name(int code) {
  switch (code) {
    case ok: return "success";
    case verification_failure: return "failure";
    case budget_exhausted: return "budget_exhausted";
    default: return "input_error";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact matrix factorization through large subspaces"};
  app.require_subcommand(1);
  Options o;

  const auto add_budget = [&o](CLI::App* sub) {
    sub->add_option("--seed", o.budget.rng_seed, "RNG seed")->capture_default_str();
    sub->add_option("--trials", o.budget.max_random_trials, "random trials per search")->capture_default_str();
    sub->add_option("--exhaustive-ceiling", o.budget.exhaustive_ceiling, "largest enumeration allowed")
        ->capture_default_str();
    sub->add_flag("--timing", o.timing, "include wall-clock time in the report");
  };

  auto* factor = app.add_subcommand("factor", "factor a matrix");
  factor->add_option("--mode", o.mode, "pair | pair2 | semigroup | sumprod")
      ->check(CLI::IsMember({"pair", "pair2", "semigroup", "sumprod"}))
      ->capture_default_str();
  factor->add_option("--hyperplane", o.hyperplane, "hyperplane JSON");
  factor->add_option("--hyperplane2", o.hyperplane2, "second hyperplane JSON");
  factor->add_option("--affine", o.affine, "affine subspace JSON");
  factor->add_option("--subspace", o.subspace, "linear subspace JSON");
  factor->add_option("--matrix", o.matrix, "target matrix JSON")->required();
  add_budget(factor);

  auto* verify = app.add_subcommand("verify", "run an oracle suite");
  verify->add_option("--theorem", o.theorem, "lc2 | prodall | prod2 | n2class")
      ->check(CLI::IsMember({"lc2", "prodall", "prod2", "n2class"}))
      ->required();
  verify->add_option("--n", o.n, "matrix size")->capture_default_str();
  verify->add_option("--p", o.p, "prime modulus")->capture_default_str();
  verify->add_option("--samples", o.samples, "random instances / targets")->capture_default_str();
  verify->add_flag("--exhaustive", o.exhaustive, "every normal up to scaling");
  add_budget(verify);

  auto* classify = app.add_subcommand("classify2", "classify a 2 x 2 hyperplane");
  classify->add_option("--hyperplane", o.hyperplane, "hyperplane JSON")->required();
  add_budget(classify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : input_error;
  }

  json command = json::array();
  for (int i = 1; i < argc; ++i) command.push_back(argv[i]);
  Inputs in;
  json artifacts = json::object();
  json error;
  int rc = ok;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (*factor) {
      rc = cmd_factor(o, in, artifacts);
    } else if (*verify) {
      rc = cmd_verify(o, artifacts);
    } else {
      rc = cmd_classify2(o, in, artifacts);
    }
  } catch (const matfact::Error& e) {
    rc = exit_for(e.code());
    error = json{{"code", matfact::errc_name(e.code())}, {"message", e.what()}};
  }
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);

  json report{{"command", command},
              {"input_digest", in.digest()},
              {"seed", o.budget.rng_seed},
              {"outcome", outcome_name(rc)},
              {"artifacts", artifacts}};
  if (!error.is_null()) report["error"] = error;
  if (o.timing) report["timing_ms"] = elapsed.count();
  std::cout << report.dump(2) << '\n';
  return rc;
}
