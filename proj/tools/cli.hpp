#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "npk/grassmann.hpp"
#include "npk/poisson.hpp"
#include "npk/random.hpp"
#include "npk/sigma_delta.hpp"
#include "npk/suite.hpp"
#include "npk/tensor_spec.hpp"

namespace npk::cli {

using nlohmann::json;

enum Exit { kHolds = 0, kFails = 1, kError = 2 };

struct Options {
  std::string command;
  std::string spec_path;
  std::string with_path;
  std::uint64_t seed = 0;
  int samples = 8;
  bool json = false;
};

// A command's outcome: a JSON report plus its human rendering.
struct Report {
  json body = json::object();
  std::vector<std::string> lines;
  int exit = kHolds;
};

inline json point_json(const Point& x) {
  json a = json::array();
  for (const auto& c : x) a.push_back(to_string(c));
  return a;
}

inline json vector_json(const RationalVector& v) { return point_json(v); }

inline json pair_json(const std::optional<std::pair<int, int>>& w) {
  if (!w) return nullptr;
  return json::array({w->first, w->second});
}

inline std::string yes(bool b) { return b ? "yes" : "no"; }

inline std::string describe(const Point& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + to_string(x[i]);
  return s + ")";
}

inline TensorSpec load(const std::string& path) {
  if (path.empty()) throw SpecError("missing spec file");
  return parse_spec(path);
}

inline Report run_check(const Options& o, const TensorSpec& spec) {
  Report r;
  auto v = classify_poisson(spec.tensor, {o.samples, o.seed});
  json ranks = json::array();
  for (const auto& s : v.rank_at_samples) ranks.push_back({{"point", point_json(s.point)}, {"rank", s.rank}});
  r.body = {{"command", "check"},
            {"order", v.order},
            {"parity", v.parity == Parity::even ? "even" : "odd"},
            {"condition_A", {{"holds", v.condition_A.holds}, {"witness", pair_json(v.condition_A.witness)}}},
            {"condition_D", v.condition_D},
            {"is_poisson", v.is_poisson},
            {"rank_at_samples", ranks},
            {"pointwise_decomposable", v.pointwise_decomposable},
            {"nambu_algebraic", v.nambu_algebraic}};
  r.lines.push_back("order " + std::to_string(v.order) + (v.parity == Parity::even ? " (even)" : " (odd)"));
  std::string a = "condition (A): " + yes(v.condition_A.holds);
  if (v.condition_A.witness)
    a += ", fails at (dx^" + std::to_string(v.condition_A.witness->first) + ", dx^" +
         std::to_string(v.condition_A.witness->second) + ")";
  r.lines.push_back(a);
  r.lines.push_back("condition (D): " + yes(v.condition_D));
  r.lines.push_back("Poisson: " + yes(v.is_poisson));
  int lo = 1 << 30, hi = -1;
  for (const auto& s : v.rank_at_samples) lo = std::min(lo, s.rank), hi = std::max(hi, s.rank);
  r.lines.push_back("rank at " + std::to_string(v.rank_at_samples.size()) + " samples: " + std::to_string(lo) +
                    (lo == hi ? "" : ".." + std::to_string(hi)));
  r.lines.push_back("pointwise decomposable: " + yes(v.pointwise_decomposable));
  r.lines.push_back("Nambu (algebraic): " + yes(v.nambu_algebraic));
  r.exit = v.is_poisson ? kHolds : kFails;
  return r;
}

inline Report run_rank(const Options& o, const TensorSpec& spec) {
  Report r;
  if (spec.n < 1) throw std::invalid_argument("rank needs order >= 1");
  std::vector<Point> points = has_constant_coefficients(spec.tensor)
                                  ? std::vector<Point>{Point(spec.m, Rational(0))}
                                  : default_sample_points(spec.m, {o.samples, o.seed});
  json rows = json::array();
  for (const auto& x : points) {
    SharpProfile prof = sharp_profile(evaluate_at(spec.tensor, x));
    json image = json::array(), ann = json::array();
    for (const auto& b : prof.image.basis()) image.push_back(vector_json(b));
    for (const auto& b : prof.annihilator.basis()) ann.push_back(vector_json(b));
    rows.push_back({{"point", point_json(x)}, {"rank", prof.rank}, {"image", image}, {"annihilator", ann}});
    r.lines.push_back("at " + describe(x) + ": rank " + std::to_string(prof.rank) + ", dim A(P) " +
                      std::to_string(prof.annihilator.dim()));
  }
  r.body = {{"command", "rank"}, {"constant", has_constant_coefficients(spec.tensor)}, {"samples", rows}};
  return r;
}

inline Report run_factorize(const Options&, const TensorSpec& spec) {
  Report r;
  if (spec.kind != SpecKind::constant || !has_constant_coefficients(spec.tensor))
    throw std::invalid_argument("factorize needs a constant spec");
  if (spec.n < 1) throw std::invalid_argument("factorization needs order >= 1");
  auto p = evaluate_at(spec.tensor, Point(spec.m, Rational(0)));
  r.body = {{"command", "factorize"}};
  try {
    Factorization f = factorize(p);
    json factors = json::array();
    for (const auto& v : f.factors) {
      factors.push_back(vector_json(v));
      r.lines.push_back("W = " + describe(v));
    }
    r.body["decomposable"] = true;
    r.body["factors"] = factors;
  } catch (const std::domain_error& e) {
    r.body["decomposable"] = false;
    r.body["error"] = e.what();
    r.lines.push_back(std::string("error: ") + e.what());
    r.exit = kFails;
  }
  return r;
}

inline Report run_nambu(const Options&, const TensorSpec& spec) {
  Report r;
  bool holds = is_nambu_algebraic(spec.tensor);
  r.body = {{"command", "nambu"}, {"nambu_algebraic", holds}};
  r.lines.push_back("Nambu (algebraic): " + yes(holds));
  r.exit = holds ? kHolds : kFails;
  return r;
}

inline Report run_jacobi(const Options&, const TensorSpec& spec) {
  Report r;
  if (spec.n < 1) throw std::invalid_argument("bracket needs order >= 1");
  auto violation = find_jacobi_violation(spec.tensor);
  r.body = {{"command", "jacobi"}, {"jacobi_holds", !violation}};
  if (violation) {
    json args = json::array();
    std::string text;
    for (const auto& f : violation->arguments) {
      args.push_back(f.to_string());
      text += (text.empty() ? "" : ", ") + f.to_string();
    }
    r.body["witness"] = {{"arguments", args}, {"defect", violation->defect.to_string()}};
    r.lines.push_back("Jacobi identity: fails");
    r.lines.push_back("arguments: " + text);
    r.lines.push_back("defect: " + violation->defect.to_string());
    r.exit = kFails;
  } else {
    r.lines.push_back("Jacobi identity: holds");
  }
  return r;
}

inline Report run_sigma_delta(const Options& o, const TensorSpec& spec) {
  Report r;
  const auto& p = spec.tensor;
  if (spec.n < 1) throw std::invalid_argument("delta needs order >= 1");
  r.body = {{"command", "sigma-delta"}};
  bool ok = true;
  if (!o.with_path.empty()) {
    TensorSpec u = load(o.with_path);
    auto member = sigma_membership(p, u.tensor);
    r.body["member"] = member.holds;
    r.body["witness"] = pair_json(member.witness);
    r.lines.push_back("U in Sigma^" + std::to_string(u.n) + ": " + yes(member.holds));
    if (member.holds) {
      auto d = delta(p, u.tensor);
      bool range = sigma_membership(p, d).holds;
      r.body["delta"] = to_json(make_spec(d));
      r.body["delta_in_sigma"] = range;
      r.lines.push_back("delta U = " + d.to_string());
      r.lines.push_back("delta U in Sigma: " + yes(range));
      ok = range;
    } else {
      ok = false;
    }
    r.exit = ok ? kHolds : kFails;
    return r;
  }
  auto self = sigma_membership(p, p);
  r.body["P_in_sigma"] = self.holds;
  r.lines.push_back("P in Sigma^" + std::to_string(spec.n) + ": " + yes(self.holds));
  ok = self.holds;
  if (self.holds) {
    bool dp = delta(p, p).is_zero();
    r.body["delta_P_zero"] = dp;
    r.lines.push_back("delta P = 0: " + yes(dp));
    ok = ok && dp;
  }
  Generator g(o.seed);
  json fs = json::array();
  int formulas = 0, ranges = 0;
  for (int i = 0; i < o.samples; ++i) {
    Polynomial f = g.nonzero_polynomial(spec.m, 2, 3);
    auto df = delta(p, scalar_field(spec.m, f));
    bool formula = df == contract(gradient(f, spec.m), p);
    bool range = sigma_membership(p, df).holds;
    formulas += formula;
    ranges += range;
    fs.push_back({{"f", f.to_string()}, {"delta_f_is_i_df_P", formula}, {"delta_f_in_sigma", range}});
  }
  r.body["functions"] = fs;
  const std::string of = "/" + std::to_string(o.samples) + " random f";
  r.lines.push_back("delta f = i(df)P: " + std::to_string(formulas) + of);
  r.lines.push_back("delta f in Sigma^" + std::to_string(spec.n - 1) + ": " + std::to_string(ranges) + of);
  ok = ok && formulas == o.samples && ranges == o.samples;
  r.exit = ok ? kHolds : kFails;
  return r;
}

inline json suite_json(const SuiteResult& s) {
  return {{"name", s.name},
          {"cases", s.cases},
          {"failures", s.failures},
          {"passed", s.passed()},
          {"notes", s.notes}};
}

inline Report run_suite(const Options& o) {
  Report r;
  auto results = run_all_suites(o.seed);
  json list = json::array();
  bool all = true;
  for (const auto& s : results) {
    list.push_back(suite_json(s));
    all = all && s.passed();
    r.lines.push_back((s.passed() ? "PASS " : "FAIL ") + s.name + " (" + std::to_string(s.cases) + " cases, " +
                      std::to_string(s.failures) + " failures)");
    for (const auto& n : s.notes) r.lines.push_back("  " + n);
  }
  r.body = {{"command", "suite"}, {"seed", o.seed}, {"suites", list}, {"passed", all}};
  r.exit = all ? kHolds : kFails;
  return r;
}

inline Report dispatch(const Options& o) {
  if (o.command == "suite") return run_suite(o);
  TensorSpec spec = load(o.spec_path);
  if (o.command == "check") return run_check(o, spec);
  if (o.command == "rank") return run_rank(o, spec);
  if (o.command == "factorize") return run_factorize(o, spec);
  if (o.command == "nambu") return run_nambu(o, spec);
  if (o.command == "jacobi") return run_jacobi(o, spec);
  if (o.command == "sigma-delta") return run_sigma_delta(o, spec);
  throw std::invalid_argument("unknown command " + o.command);
}

// Entry point shared by the executable and the tests; args exclude argv[0].
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks for n-ary Poisson tensors", "npk"};
  Options o;
  app.add_option("command", o.command, "check | rank | factorize | nambu | jacobi | sigma-delta | suite")
      ->required()
      ->check(CLI::IsMember({"check", "rank", "factorize", "nambu", "jacobi", "sigma-delta", "suite"}));
  app.add_option("spec", o.spec_path, "tensor spec (JSON)");
  app.add_option("--seed", o.seed, "seed for sample points and random inputs");
  app.add_option("--samples", o.samples, "random sample points (check, rank) or random f (sigma-delta)")
      ->check(CLI::Range(0, 1000));
  app.add_option("--with", o.with_path, "sigma-delta: second spec U");
  app.add_flag("--json", o.json, "machine-readable report");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kHolds : kError;
  }

  auto t0 = std::chrono::steady_clock::now();
  Report r;
  try {
    r = dispatch(o);
  } catch (const std::exception& e) {
    if (o.json) out << json{{"command", o.command}, {"error", e.what()}}.dump(2) << "\n";
    err << "error: " << e.what() << "\n";
    return kError;
  }
  if (o.json) {
    out << r.body.dump(2) << "\n";
  } else {
    for (const auto& line : r.lines) out << line << "\n";
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out << "time " << secs << " s\n";
  }
  return r.exit;
}

}  // namespace npk::cli
