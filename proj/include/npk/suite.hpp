#pragma once

#include <cstdint>
#include <future>
#include <stdexcept>
#include <string>
#include <vector>

#include "npk/grassmann.hpp"
#include "npk/poisson.hpp"
#include "npk/random.hpp"
#include "npk/sigma_delta.hpp"

namespace npk {

struct SuiteResult {
  explicit SuiteResult(std::string n = {}) : name(std::move(n)) {}

  std::string name;
  int cases = 0;
  int failures = 0;
  std::vector<std::string> notes;

  bool passed() const { return cases > 0 && failures == 0; }

  void check(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    ++failures;
    if (failures <= 10) notes.push_back("FAIL " + what);
  }
  void note(std::string text) { notes.push_back(std::move(text)); }
};

// Runs `body` and turns an escaped exception into a recorded failure.
template <class F>
void guarded(SuiteResult& r, const std::string& what, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    r.check(false, what + " threw: " + e.what());
  }
}

namespace suites {

// Separate streams per population so suites stay independent of each other.
inline Generator stream(std::uint64_t seed, std::uint64_t tag) {
  return Generator(seed * 0x9E3779B97F4A7C15ULL + tag);
}

struct Labeled {
  std::string label;
  PolyMultivectorField p;
};

// 50 sparse 3-vector fields on R^5 with components of degree <= 1, half of
// them pointwise decomposable by construction.
inline std::vector<Labeled> fields3(std::uint64_t seed) {
  Generator g = stream(seed, 1);
  std::vector<Labeled> out;
  for (int i = 0; i < 50; ++i) {
    auto p = i % 2 == 0 ? g.decomposable_field(5, 3, 6) : g.field(5, 3, 1, 6);
    out.push_back({"n=3 m=5 #" + std::to_string(i), std::move(p)});
  }
  return out;
}

// 20 4-vector fields: 16 on R^7, 4 on R^6.
inline std::vector<Labeled> fields4(std::uint64_t seed) {
  Generator g = stream(seed, 2);
  std::vector<Labeled> out;
  for (int i = 0; i < 20; ++i) {
    const int m = i < 16 ? 7 : 6;
    auto p = i % 2 == 0 ? g.field(m, 4, 1, 8) : g.decomposable_field(m, 4, 6);
    out.push_back({"n=4 m=" + std::to_string(m) + " #" + std::to_string(i), std::move(p)});
  }
  return out;
}

struct LabeledConstant {
  std::string label;
  Multivector<Rational> p;
};

// 200 constant n-vectors, n in {3, 4}, m <= 6; even positions decomposable.
inline std::vector<LabeledConstant> constants(std::uint64_t seed) {
  Generator g = stream(seed, 3);
  std::vector<LabeledConstant> out;
  for (int i = 0; i < 200; ++i) {
    const int n = i % 4 < 2 ? 3 : 4;
    const int m = g.uniform(n + 1, 6);
    auto p = i % 2 == 0 ? g.decomposable(m, n) : g.multivector(m, n, 8);
    out.push_back({"n=" + std::to_string(n) + " m=" + std::to_string(m) + " #" + std::to_string(i),
                   std::move(p)});
  }
  return out;
}

inline Multivector<Rational> e123_plus_e456() {
  Multivector<Rational> p(6, 3);
  p.add_term(Blade::from_indices({1, 2, 3}), Rational(1));
  p.add_term(Blade::from_indices({4, 5, 6}), Rational(1));
  return p;
}

// Outputs of the semi-decomposable builder: coordinate instances plus
// constant and polynomial frames.
inline std::vector<Labeled> builder_outputs(std::uint64_t seed, bool include_heavy = true) {
  Generator g = stream(seed, 4);
  std::vector<Labeled> out;
  out.push_back({"coordinates h=1 n=5 m=10", example_15(10, 1, 5)});
  for (int n = 3; n <= 5; ++n)
    out.push_back({"coordinates h=0 n=" + std::to_string(n), example_15(2 * n, 0, n)});
  for (int t = 0; t < 2; ++t) {
    auto fr = g.constant_frame(10);
    std::vector<VectorField> v(fr.begin(), fr.begin() + 5), w(fr.begin() + 5, fr.end());
    out.push_back({"constant frame h=1 n=5 #" + std::to_string(t), build_semidecomposable(v, w, 1)});
  }
  for (int n = 3; n <= 5; ++n) {
    auto fr = g.polynomial_frame(n + 2);
    std::vector<VectorField> w(fr.begin(), fr.begin() + n);
    out.push_back({"polynomial frame h=0 n=" + std::to_string(n), build_semidecomposable({}, w, 0)});
  }
  if (include_heavy) {
    auto fr = g.polynomial_frame(10);
    std::vector<VectorField> v(fr.begin(), fr.begin() + 5), w(fr.begin() + 5, fr.end());
    out.push_back({"polynomial frame h=1 n=5", build_semidecomposable(v, w, 1)});
  }
  return out;
}

inline int expected_builder_rank(const std::string& label, int n) {
  return label.find("h=0") != std::string::npos ? n : 2 * n;
}

}  // namespace suites

inline SuiteResult jacobi_equivalence_suite(std::uint64_t seed) {
  SuiteResult r{"jacobi_equivalence"};
  for (auto* pop : {&suites::fields3, &suites::fields4}) {
    int poisson = 0, total = 0;
    for (const auto& [label, p] : (*pop)(seed)) {
      guarded(r, label, [&] {
        bool oracle = jacobi_oracle(p);
        bool verdict = classify_poisson(p).is_poisson;
        r.check(oracle == verdict, label + ": jacobi_oracle " + std::to_string(oracle) +
                                       " vs is_poisson " + std::to_string(verdict));
        poisson += verdict;
        ++total;
      });
    }
    r.note(std::to_string(poisson) + "/" + std::to_string(total) + " Poisson");
    r.check(poisson > 0 && poisson < total, "population mixes Poisson and non-Poisson fields");
  }
  return r;
}

inline SuiteResult contraction_profile_suite(std::uint64_t seed) {
  SuiteResult r{"contraction_profile"};
  int decomposable = 0;
  for (const auto& [label, p] : suites::constants(seed)) {
    guarded(r, label, [&] {
      bool dec = is_decomposable(p);
      decomposable += dec;
      for (int k = 1; k <= p.grade() - 2; ++k)
        r.check(dec == contraction_profile(p, k), label + " k=" + std::to_string(k));
      r.check(dec == (rank_of(p) == p.grade()), label + ": Plucker vs rank");
    });
  }
  r.note(std::to_string(decomposable) + "/200 decomposable");
  auto ce = suites::e123_plus_e456();
  bool basis_ok = true;
  for (int u = 1; u <= 6; ++u) basis_ok = basis_ok && is_decomposable(contract_basis(u, ce));
  r.check(basis_ok, "e123+e456: every basis contraction decomposable");
  r.check(!contraction_profile(ce, 1), "e123+e456: contraction profile false");
  r.check(!is_decomposable(ce), "e123+e456: not decomposable");
  return r;
}

inline SuiteResult plucker_suite(std::uint64_t seed) {
  SuiteResult r{"condition_a_plucker"};
  for (const auto& [label, p] : suites::constants(seed)) {
    if (p.grade() != 3) continue;
    guarded(r, label, [&] {
      r.check(!condition_a_failure(p) == is_decomposable(p), label + ": (A) vs Plucker");
    });
  }
  for (const auto& [label, p] : suites::fields3(seed)) {
    guarded(r, label, [&] {
      bool a = condition_A(p).holds;
      bool plucker = plucker_defects(p).empty();
      r.check(a == plucker, label + ": (A) vs Plucker");
      auto v = classify_poisson(p);
      r.check(v.is_poisson == plucker, label + ": is_poisson vs Plucker");
      if (a) r.check(v.condition_D, label + ": (D) follows from (A)");
    });
  }
  return r;
}

inline SuiteResult semidecomposable_suite(std::uint64_t seed) {
  SuiteResult r{"semidecomposable_builder"};
  for (const auto& [label, p] : suites::builder_outputs(seed)) {
    guarded(r, label, [&] {
      const int n = p.grade();
      auto v = classify_poisson(p, {8, seed});
      r.check(v.is_poisson, label + ": Poisson");
      r.check(v.rank_at_samples.size() >= 10, label + ": at least 10 samples");
      const int want = suites::expected_builder_rank(label, n);
      for (const auto& s : v.rank_at_samples) r.check(s.rank == want, label + ": rank " + std::to_string(s.rank));
      r.check(v.pointwise_decomposable == (want == n), label + ": decomposable iff h=0");
    });
  }
  auto rejects = [&](int h, int n) {
    bool threw = false;
    try {
      example_15(2 * n, h, n);
    } catch (const std::invalid_argument&) {
      threw = true;
    }
    r.check(threw, "h=" + std::to_string(h) + " n=" + std::to_string(n) + " rejected");
  };
  rejects(1, 4);
  rejects(-1, 5);
  rejects(2, 6);
  rejects(0, 2);
  return r;
}

inline SuiteResult nambu_suite(std::uint64_t seed) {
  SuiteResult r{"nambu_chain"};
  auto chain = [&](const std::string& label, const PolyMultivectorField& p) {
    guarded(r, label, [&] {
      bool n1 = nambu_component_holds(p);
      bool n2 = nambu_polarized_holds(p);
      bool dec = is_decomposable(p);
      r.check(n1 == n2 && n2 == dec, label + ": (N1) " + std::to_string(n1) + " (N2) " + std::to_string(n2) +
                                         " Plucker " + std::to_string(dec));
    });
  };
  for (const auto& [label, p] : suites::fields3(seed)) chain(label, p);
  for (const auto& [label, p] : suites::fields4(seed)) chain(label, p);
  for (const auto& [label, p] : suites::constants(seed)) chain(label, to_field(p));
  chain("e123+e456", to_field(suites::e123_plus_e456()));
  chain("block sum e1234+e5678", example_16(2, 2, 8));
  for (const auto& [label, p] : suites::builder_outputs(seed)) {
    chain(label, p);
    if (label.find("h=0") == std::string::npos) {
      guarded(r, label, [&] {
        auto v = classify_poisson(p, {8, seed});
        r.check(v.is_poisson && !v.nambu_algebraic, label + ": Poisson but not Nambu");
      });
    }
  }
  return r;
}

inline SuiteResult block_sum_suite(std::uint64_t seed) {
  SuiteResult r{"reducible_block_sum"};
  guarded(r, "u=2 s=2 m=8", [&] {
    auto p = example_16(2, 2, 8);
    auto v = classify_poisson(p, {8, seed});
    r.check(v.is_poisson, "is_poisson");
    r.check(!v.condition_A.holds, "condition (A) fails");
    for (const auto& s : v.rank_at_samples) r.check(s.rank == 8, "rank " + std::to_string(s.rank));
    r.check(has_constant_coefficients(p), "constant coefficients, so sampled rank is the rank everywhere");
    auto verdict = irreducibility_check(evaluate_at(p, Point(8, Rational(0))), 16, seed);
    r.check(verdict.kind == IrreducibilityKind::reducibility_witness,
            std::string("irreducibility verdict ") + to_string(verdict.kind));
    r.check(jacobi_oracle(p), "Jacobi oracle holds");
  });
  return r;
}

inline SuiteResult sigma_delta_suite(std::uint64_t seed) {
  SuiteResult r{"sigma_delta"};
  std::vector<suites::Labeled> ps = suites::builder_outputs(seed);
  auto f3 = suites::fields3(seed);
  for (std::size_t i = 0; i < f3.size(); i += 2) ps.push_back(f3[i]);  // decomposable by construction

  for (const auto& [label, p] : ps) {
    guarded(r, label, [&] {
      r.check(sigma_membership(p, p).holds, label + ": P in Sigma^n");
      r.check(delta(p, p).is_zero(), label + ": delta P = 0");
    });
  }

  // 50 random f spread round robin over the instances without the heavy frame.
  Generator g = suites::stream(seed, 5);
  std::vector<const suites::Labeled*> light;
  for (const auto& item : ps)
    if (item.label != "polynomial frame h=1 n=5") light.push_back(&item);
  int delta_squared_zero = 0;
  for (int i = 0; i < 50; ++i) {
    const auto& [label, p] = *light[static_cast<std::size_t>(i) % light.size()];
    const int m = p.dim();
    const std::string what = label + " f#" + std::to_string(i);
    guarded(r, what, [&] {
      Polynomial f = g.nonzero_polynomial(m, 2, 3);
      auto sf = scalar_field(m, f);
      r.check(sigma_membership(p, sf).holds, what + ": f in Sigma^0");
      PolyMultivectorField df = delta(p, sf);
      r.check(df == contract(gradient(f, m), p), what + ": delta f = i(df)P");
      r.check(sigma_membership(p, df).holds, what + ": delta f in Sigma^{n-1}");
      PolyMultivectorField fp = p;
      fp = fp.map([&](const Polynomial& c) { return c * f; });
      if (sigma_membership(p, fp).holds) {
        r.check(sigma_membership(p, delta(p, fp)).holds, what + ": delta(fP) in Sigma^{2n-1}");
      }
      if (i < 10) delta_squared_zero += delta(p, df).is_zero();
    });
  }
  r.note("delta^2 f = 0 on " + std::to_string(delta_squared_zero) + "/10 samples (recorded only)");
  return r;
}

inline SuiteResult kernel_suite(std::uint64_t seed) {
  SuiteResult r{"kernel_consistency"};
  Generator g = suites::stream(seed, 6);
  std::vector<suites::LabeledConstant> items = suites::constants(seed);
  items.push_back({"e123+e456", suites::e123_plus_e456()});
  items.push_back({"block sum e1234+e5678", evaluate_at(example_16(2, 2, 8), Point(8, Rational(0)))});
  for (const auto& [label, p] : suites::builder_outputs(seed, false))
    items.push_back({label + " at a sample", evaluate_at(p, g.point(p.dim()))});

  int drop_one = 0;
  for (const auto& [label, p] : items) {
    guarded(r, label, [&] {
      const int m = p.dim();
      SharpProfile prof = sharp_profile(p);
      r.check(prof.rank == m - prof.annihilator.dim(), label + ": rank vs annihilator");
      if (is_decomposable(p) && !p.is_zero()) {
        Factorization f = factorize(p);
        r.check(static_cast<int>(f.factors.size()) == p.grade() && f.wedge_product(m) == p,
                label + ": factorization round trip");
      }
      std::vector<Covector<Rational>> alphas;
      for (int u = 1; u <= m; ++u) alphas.push_back(Covector<Rational>::basis(m, u));
      for (int t = 0; t < 3; ++t) alphas.push_back(g.covector(m));
      for (const auto& alpha : alphas) {
        SubspaceRelation rel = contraction_subspace_relation(p, alpha);
        r.check(rel.inclusion_holds, label + ": image inclusion");
        if (rel.rank_drop == 1) {
          ++drop_one;
          r.check(rel.equality_holds, label + ": equality at rank drop 1");
        }
      }
    });
  }
  r.note(std::to_string(drop_one) + " contractions with rank drop 1");
  return r;
}

using SuiteFn = SuiteResult (*)(std::uint64_t);

struct SuiteEntry {
  const char* name;
  SuiteFn run;
};

inline const std::vector<SuiteEntry>& all_suites() {
  static const std::vector<SuiteEntry> list = {
      {"jacobi_equivalence", &jacobi_equivalence_suite}, {"contraction_profile", &contraction_profile_suite},
      {"condition_a_plucker", &plucker_suite}, {"semidecomposable_builder", &semidecomposable_suite},
      {"nambu_chain", &nambu_suite},               {"reducible_block_sum", &block_sum_suite},
      {"sigma_delta", &sigma_delta_suite},         {"kernel_consistency", &kernel_suite},
  };
  return list;
}

// Suites run concurrently; results come back in registration order.
inline std::vector<SuiteResult> run_all_suites(std::uint64_t seed) {
  std::vector<std::future<SuiteResult>> jobs;
  for (const auto& s : all_suites()) jobs.push_back(std::async(std::launch::async, s.run, seed));
  std::vector<SuiteResult> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace npk
