#include "matfact/verify.hpp"

#include "matfact/factor2.hpp"
#include "matfact/oracle.hpp"
#include "matfact/semigroup.hpp"

namespace matfact {

json SuiteReport::to_json() const {
  json j{{"theorem", theorem}, {"instances", instances}, {"checks", checks}, {"passed", passed}};
  if (counterexample) j["counterexample"] = *counterexample;
  return j;
}

namespace {

// Upper bound on oracle multiplications per run.
constexpr std::uint64_t work_factor = 500;

struct Context {
  FieldSpec field;
  std::size_t n;
  MatrixCodec codec;
  ScalarSampler sampler;

  Context(const SuiteOptions& o)
      : field(FieldSpec::prime(o.p)), n(o.n), codec(field, o.n, o.budget.exhaustive_ceiling),
        sampler(field, o.budget.rng_seed) {}

  Matrix random_nonzero() {
    for (;;) {
      Matrix m = sampler.next_matrix(n, n);
      if (!m.is_zero()) return m;
    }
  }

  std::vector<Matrix> normals(const SuiteOptions& o, std::vector<Matrix> fixed) {
    if (o.exhaustive) return normals_up_to_scaling(codec);
    for (std::size_t k = 0; k < o.samples; ++k) fixed.push_back(random_nonzero());
    return fixed;
  }

  std::vector<Matrix> targets(std::size_t count) {
    std::vector<Matrix> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back(sampler.next_matrix(n, n));
    return out;
  }
};

void check_work(std::uint64_t work, const SuiteOptions& o) {
  if (work / work_factor > o.budget.exhaustive_ceiling) {
    raise(Errc::too_large, "suite needs about " + std::to_string(work) + " oracle products");
  }
}

void fail(SuiteReport& r, json detail) {
  r.passed = false;
  if (!r.counterexample) r.counterexample = std::move(detail);
}

void require_field_size(const SuiteOptions& o) {
  if (o.n < 2) raise(Errc::invalid_input, "suites need n >= 2");
  if (!is_prime(o.p)) raise(Errc::invalid_input, "p must be prime");
}

}  // namespace

SuiteReport verify_lc2(const SuiteOptions& o) {
  require_field_size(o);
  Context ctx(o);
  const FieldSpec& f = ctx.field;
  const std::size_t n = o.n;
  SuiteReport r;
  r.theorem = "lc2";
  // Codim-1 subspaces once n >= 3; only the full space is large enough for n = 2.
  std::vector<LinearSubspace> spaces;
  if (n >= 3) {
    for (const auto& a : ctx.normals(o, {Matrix::identity(f, n)})) spaces.push_back(Hyperplane(a).subspace());
  } else {
    spaces.push_back(LinearSubspace::full(f, n));
  }
  for (const auto& v : spaces) {
    ++r.instances;
    const auto codes = enumerate_codes(ctx.codec, AffineSubspace::linear(v), o.budget.exhaustive_ceiling);
    if (product_span_rank(ctx.codec, codes, codes) != n * n || product_span_two(v, v).dim() != n * n) {
      fail(r, json{{"reason", "products do not span"}, {"subspace", to_json(v)}});
      continue;
    }
    r.checks += 2;
    std::vector<Matrix> ts{Matrix::elementary(f, n, 0, 0)};
    for (const auto& t : ctx.targets(std::min<std::size_t>(o.samples, 3))) ts.push_back(t);
    for (const auto& t : ts) {
      const SumOfProducts s = sum_of_products_decompose(v, t);
      bool ok = s.total(f, n) == t;
      for (const auto& [a, b] : s.terms) ok = ok && v.contains(a) && v.contains(b);
      ++r.checks;
      if (!ok) fail(r, json{{"reason", "sum of products mismatch"}, {"subspace", to_json(v)}, {"target", to_json(t)}});
    }
  }
  return r;
}

SuiteReport verify_prodall(const SuiteOptions& o) {
  require_field_size(o);
  Context ctx(o);
  const FieldSpec& f = ctx.field;
  const std::size_t n = o.n;
  SuiteReport r;
  r.theorem = "prodall";
  std::vector<AffineSubspace> spaces;
  if (n >= 3) {
    std::vector<Matrix> fixed;
    if (n == 3) fixed.push_back(Matrix::identity(f, n));
    const auto normals = ctx.normals(o, fixed);
    for (const auto& a : normals) {
      const Hyperplane h(a);
      // Offsets: every value when exhaustive, else 0 and one random value.
      std::vector<Scalar> offsets;
      if (o.exhaustive) {
        offsets = enumerate_field(f);
      } else {
        offsets = {Scalar::zero(f), ctx.sampler.next()};
        if (offsets[1].is_zero()) offsets.pop_back();
      }
      // Base point with tr(A X) = c: c times a matrix pairing to 1 with A.
      std::size_t i = 0, j = 0;
      while (a(j, i).is_zero()) {
        if (++j == n) {
          j = 0;
          ++i;
        }
      }
      for (const auto& c : offsets) {
        Matrix base(f, n, n);
        base(i, j) = c / a(j, i);
        spaces.emplace_back(base, h.subspace());
      }
    }
    check_work(spaces.size() * ctx.codec.size() * (ctx.codec.size() / f.p()), o);
  } else {
    spaces.push_back(AffineSubspace::linear(LinearSubspace::full(f, n)));
  }
  for (const auto& v : spaces) {
    ++r.instances;
    const auto gens = enumerate_codes(ctx.codec, v, o.budget.exhaustive_ceiling);
    const ClosureResult cl = closure(ctx.codec, gens);
    ++r.checks;
    if (!cl.elements.full()) {
      fail(r, json{{"reason", "closure is not the full matrix space"}, {"subspace", to_json(v)}});
      continue;
    }
    for (const auto& t : ctx.targets(std::min<std::size_t>(o.samples, 4))) {
      const ChainFactorization chain = semigroup_factor(v, t, o.budget);
      ++r.checks;
      if (!verify_chain(v, t, chain)) fail(r, json{{"reason", "chain failed"}, {"subspace", to_json(v)}, {"target", to_json(t)}});
    }
  }
  return r;
}

SuiteReport verify_prod2(const SuiteOptions& o) {
  require_field_size(o);
  if (o.n < 3) raise(Errc::invalid_input, "prod2 needs n >= 3; use n2class for n = 2");
  Context ctx(o);
  const FieldSpec& f = ctx.field;
  const std::size_t n = o.n;
  SuiteReport r;
  r.theorem = "prod2";
  const auto normals = ctx.normals(o, {Matrix::identity(f, n)});
  const std::uint64_t h_size = ctx.codec.size() / f.p();
  check_work(normals.size() * h_size * h_size / 8, o);
  for (const auto& a : normals) {
    ++r.instances;
    const Hyperplane h(a);
    const auto codes = enumerate_codes(ctx.codec, AffineSubspace::linear(h.subspace()), o.budget.exhaustive_ceiling);
    const ElementSet ps = product_set(ctx.codec, codes, codes);
    ++r.checks;
    if (!ps.full()) {
      fail(r, json{{"reason", "product set misses a matrix"}, {"normal", to_json(a)}});
      continue;
    }
    for (const auto& t : ctx.targets(o.samples)) {
      const PairFactorization pf = hyperplane_pair_factor(h, t, o.budget);
      ++r.checks;
      if (!pf.verified(t)) fail(r, json{{"reason", "pair failed"}, {"normal", to_json(a)}, {"target", to_json(t)}});
    }
  }
  return r;
}

SuiteReport verify_n2class(const SuiteOptions& o) {
  require_field_size(o);
  if (o.n != 2) raise(Errc::invalid_input, "n2class needs n = 2");
  Context ctx(o);
  const FieldSpec& f = ctx.field;
  SuiteReport r;
  r.theorem = "n2class";
  const Hyperplane h0(Matrix::elementary(f, 2, 0, 0));
  const Hyperplane t2(Matrix::elementary(f, 2, 0, 1));
  for (const auto& a : ctx.normals(o, {})) {
    ++r.instances;
    const Hyperplane h(a);
    const N2Class cls = n2_classify(h);
    const auto codes = enumerate_codes(ctx.codec, AffineSubspace::linear(h.subspace()), o.budget.exhaustive_ceiling);
    const ElementSet ps = product_set(ctx.codec, codes, codes);
    const std::size_t rk = rank(a);
    N2Verdict expected = N2Verdict::factorable;
    if (rk == 1) expected = a.trace().is_zero() ? N2Verdict::conjugate_T2plus : N2Verdict::conjugate_H0;
    bool ok = cls.verdict == expected && ps.full() == (cls.verdict == N2Verdict::factorable);
    if (ok && cls.conjugator) {
      const Hyperplane& canon = cls.verdict == N2Verdict::conjugate_H0 ? h0 : t2;
      ok = conjugate(h.subspace(), *cls.conjugator) == canon.subspace();
    }
    ++r.checks;
    if (!ok) {
      fail(r, json{{"reason", "classification disagrees with the oracle"}, {"normal", to_json(a)},
                   {"verdict", to_string(cls.verdict)}});
      continue;
    }
    for (std::uint64_t c = 0; c < ctx.codec.size(); ++c) {
      const Matrix t = ctx.codec.decode(c);
      const N2PairResult res = n2_pair_factor(h, t, o.budget);
      const auto* pf = std::get_if<PairFactorization>(&res);
      ++r.checks;
      if (pf ? !(pf->verified(t) && ps.contains(c)) : ps.contains(c)) {
        fail(r, json{{"reason", "pair result disagrees with the oracle"}, {"normal", to_json(a)}, {"target", to_json(t)}});
      }
    }
  }
  return r;
}

SuiteReport run_suite(const std::string& theorem, const SuiteOptions& opts) {
  if (theorem == "lc2") return verify_lc2(opts);
  if (theorem == "prodall") return verify_prodall(opts);
  if (theorem == "prod2") return verify_prod2(opts);
  if (theorem == "n2class") return verify_n2class(opts);
  raise(Errc::invalid_input, "unknown theorem suite \"" + theorem + "\"");
}

}  // namespace matfact
