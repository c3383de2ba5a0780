// ckd — command-line surface over the labeled-trigonometry library:
// solve triangles, verify law suites on stored records, sweep the 27
// geometries, study label contractions, and check the algebra tables.
//
// Exit codes: 0 success; 1 bad flags/config/input file; 2 degenerate
// triangle; 3 configuration with no real solution; 4 verification failure.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ckd/algebra.hpp"
#include "ckd/classical.hpp"
#include "ckd/laws.hpp"
#include "ckd/scalars.hpp"
#include "ckd/triangle.hpp"

using nlohmann::json;
using namespace ckd;

namespace {

// ---------------------------------------------------------------------------
// Small shared helpers
// ---------------------------------------------------------------------------

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SpaceLabels parse_labels(const std::string& text) {
  std::string norm = text;
  std::replace(norm.begin(), norm.end(), ';', ',');
  std::istringstream in(norm);
  double v[3];
  char sep = ',';
  for (int i = 0; i < 3; ++i) {
    if (i > 0) in >> sep;
    if (!(in >> v[i]) || (i > 0 && sep != ',')) {
      throw CLI::ValidationError(
          "--labels", "expected three comma-separated reals, got '" + text +
                          "'");
    }
  }
  std::string rest;
  if (in >> rest) {
    throw CLI::ValidationError("--labels", "trailing content in '" + text +
                                               "'");
  }
  return SpaceLabels{v[0], v[1], v[2]};
}

// CSV-safe rendering (semicolons, so the field never collides with the
// column separator). parse_labels accepts this form back.
std::string labels_field(const SpaceLabels& l) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%g;%g;%g", l.eta, l.kappa1, l.kappa2);
  return buf;
}

std::vector<SpaceLabels> all_label_triples() {
  std::vector<SpaceLabels> out;
  const int signs[3] = {1, 0, -1};
  for (int e : signs)
    for (int k1 : signs)
      for (int k2 : signs)
        out.push_back({double(e), double(k1), double(k2)});
  return out;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

bool sample_triangle(std::mt19937_64& rng, const SpaceLabels& l,
                     TriangleData* out) {
  const double a = uniform(rng, 0.2, 1.2);
  const double b = uniform(rng, 0.2, 1.2);
  const double C = uniform(rng, 0.2, 1.2);
  const double psi_C = uniform(rng, -0.8, 0.8);
  try {
    const auto ph = lateral_phases(a, b, C, psi_C, l);
    *out = solve(a, ph[0], b, ph[1], C, psi_C, l, 1e-9);
    return true;
  } catch (const error&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Triangle record serialization (flat key-value document)
// ---------------------------------------------------------------------------

json triangle_record(const TriangleData& t) {
  const DerivedInvariants d = derived(t);
  json j;
  j["eta"] = t.labels.eta;
  j["kappa1"] = t.labels.kappa1;
  j["kappa2"] = t.labels.kappa2;
  j["a"] = t.a;
  j["b"] = t.b;
  j["c"] = t.c;
  j["phi_a"] = t.phi_a;
  j["phi_b"] = t.phi_b;
  j["phi_c"] = t.phi_c;
  j["A"] = t.A;
  j["B"] = t.B;
  j["C"] = t.C;
  j["psi_A"] = t.psi_A;
  j["psi_B"] = t.psi_B;
  j["psi_C"] = t.psi_C;
  j["omega"] = d.omega;
  j["Omega"] = d.Omega;
  j["S"] = d.S;
  j["s"] = d.s;
  j["gamma"] = d.gamma;
  j["Gamma"] = d.Gamma;
  j["residual"] = closure_residual(t);
  return j;
}

double need_number(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number()) {
    throw std::runtime_error(std::string("record is missing numeric field '") +
                             key + "'");
  }
  return it->get<double>();
}

TriangleData record_triangle(const json& j) {
  TriangleData t;
  t.labels.eta = need_number(j, "eta");
  t.labels.kappa1 = need_number(j, "kappa1");
  t.labels.kappa2 = need_number(j, "kappa2");
  t.a = need_number(j, "a");
  t.b = need_number(j, "b");
  t.c = need_number(j, "c");
  t.phi_a = need_number(j, "phi_a");
  t.phi_b = need_number(j, "phi_b");
  t.phi_c = need_number(j, "phi_c");
  t.A = need_number(j, "A");
  t.B = need_number(j, "B");
  t.C = need_number(j, "C");
  t.psi_A = need_number(j, "psi_A");
  t.psi_B = need_number(j, "psi_B");
  t.psi_C = need_number(j, "psi_C");
  return t;
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

struct SolveArgs {
  std::string labels = "1,1,1";
  double a = 0.0, b = 0.0, C = 0.0;
  double phi_a = 0.0, phi_b = 0.0, psi_C = 0.0;
  bool phi_a_set = false, phi_b_set = false;
  double tol = 0.0;
  bool as_json = false, as_csv = false, do_normalize = false;
};

int cmd_solve(const SolveArgs& args) {
  SpaceLabels l = parse_labels(args.labels);
  if (args.do_normalize) l = normalize(l);

  double phi_a = args.phi_a, phi_b = args.phi_b;
  if (!args.phi_a_set || !args.phi_b_set) {
    if (args.phi_a_set != args.phi_b_set) {
      std::cerr << "error: give both --phi-a and --phi-b or neither\n";
      return 1;
    }
    const bool all_zero =
        args.a == 0.0 && args.b == 0.0 && args.C == 0.0 && args.psi_C == 0.0;
    if (all_zero) {
      phi_a = phi_b = 0.0;
    } else {
      const auto ph = lateral_phases(args.a, args.b, args.C, args.psi_C, l,
                                     args.tol);
      phi_a = ph[0];
      phi_b = ph[1];
    }
  }
  const TriangleData t =
      solve(args.a, phi_a, args.b, phi_b, args.C, args.psi_C, l, args.tol);
  const json rec = triangle_record(t);

  if (args.as_json) {
    std::cout << rec.dump(2) << "\n";
  } else if (args.as_csv) {
    std::string header, row;
    for (const auto& [key, value] : rec.items()) {
      if (!header.empty()) {
        header += ',';
        row += ',';
      }
      header += key;
      row += fmt_g(value.get<double>());
    }
    std::cout << header << "\n" << row << "\n";
  } else {
    std::cout << "geometry: " << classify(normalize(l)) << " "
              << labels_field(l) << "\n";
    for (const auto& [key, value] : rec.items())
      std::cout << "  " << key << " = " << fmt_g(value.get<double>()) << "\n";
    std::cout << "  class = "
              << triangle_class_name(classify_special(t)) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string file;
  double tol = 0.0;
  bool as_json = false, as_csv = false;
};

int cmd_verify(const VerifyArgs& args) {
  json j;
  {
    std::ifstream in(args.file);
    if (!in) {
      std::cerr << "error: cannot open record file '" << args.file << "'\n";
      return 1;
    }
    try {
      in >> j;
    } catch (const json::exception& e) {
      std::cerr << "error: record parse failed: " << e.what() << "\n";
      return 1;
    }
  }

  TriangleData t;
  QuantState q;
  try {
    t = record_triangle(j);
    q = quant_state(t);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  // Recorded area/coarea take precedence so their consistency is checked
  // rather than silently recomputed.
  if (j.contains("S") && j["S"].is_number()) q.S = j["S"].get<double>();
  if (j.contains("s") && j["s"].is_number()) q.s = j["s"].get<double>();

  std::vector<std::pair<std::string, LawEntry>> entries;
  for (LawTag tag : all_law_tags())
    for (int v = 0; v < kLawVariants; ++v) {
      const LawEval ev = evaluate_law(LawId{tag, v}, q);
      LawEntry e;
      e.residual = ev.residual;
      e.applicable = ev.applicable;
      e.pass = !ev.applicable || ev.residual <= args.tol;
      entries.emplace_back(law_id_string(LawId{tag, v}), e);
    }
  // Consistency of the recorded derived invariants against the core fields.
  {
    const DerivedInvariants d = derived(t);
    const std::pair<const char*, double> claims[] = {
        {"omega", d.omega}, {"Omega", d.Omega}, {"S", d.S},
        {"s", d.s},         {"gamma", d.gamma}, {"Gamma", d.Gamma}};
    for (const auto& [key, recomputed] : claims) {
      if (!j.contains(key) || !j[key].is_number()) continue;
      LawEntry e;
      e.applicable = true;
      e.residual = std::abs(j[key].get<double>() - recomputed) /
                   std::max(1.0, std::abs(recomputed));
      e.pass = e.residual <= args.tol;
      entries.emplace_back(std::string("record_") + key, e);
    }
  }

  int fails = 0;
  double worst = 0.0;
  for (const auto& [id, e] : entries)
    if (e.applicable) {
      worst = std::max(worst, e.residual);
      if (!e.pass) ++fails;
    }

  if (args.as_json) {
    json out;
    for (const auto& [id, e] : entries)
      out[id] = {{"residual", e.residual},
                 {"pass", e.pass},
                 {"applicable", e.applicable}};
    std::cout << out.dump(2) << "\n";
  } else if (args.as_csv) {
    std::cout << "law-id,residual,applicable,pass\n";
    for (const auto& [id, e] : entries)
      std::cout << id << "," << fmt_g(e.residual) << ","
                << (e.applicable ? "true" : "false") << ","
                << (e.pass ? "true" : "false") << "\n";
  } else {
    int applicable = 0;
    for (const auto& [id, e] : entries)
      if (e.applicable) ++applicable;
    std::cout << "checked " << applicable << " applicable law entries, worst "
              << fmt_g(worst) << ", tolerance " << fmt_g(args.tol) << "\n";
    for (const auto& [id, e] : entries)
      if (e.applicable && !e.pass)
        std::cout << "  FAIL " << id << " residual " << fmt_g(e.residual)
                  << "\n";
    std::cout << (fails == 0 ? "PASS" : "FAIL") << "\n";
  }
  return fails == 0 ? 0 : 4;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepArgs {
  std::vector<std::string> labels;
  int count = 500;
  std::uint64_t seed = 1;
  double tol = 0.0;
  bool as_json = false, as_csv = false, do_normalize = false;
};

struct LawAggregate {
  double max_residual = 0.0;
  long pass_count = 0;
  long fail_count = 0;
};

struct TripleSweep {
  SpaceLabels labels;
  int solved = 0;
  std::vector<std::pair<std::string, LawAggregate>> laws;  // stable order
};

TripleSweep sweep_one(const SpaceLabels& l, int count, std::uint64_t seed,
                      double tol) {
  TripleSweep out;
  out.labels = l;
  std::map<std::string, size_t> index;
  std::mt19937_64 rng(seed);
  const long max_tries = 200L * count;
  for (long tries = 0; out.solved < count && tries < max_tries; ++tries) {
    TriangleData t;
    if (!sample_triangle(rng, l, &t)) continue;
    ++out.solved;
    const LawResidualReport rep = evaluate_all(t, tol);
    for (const auto& [id, e] : rep.entries) {
      const std::string key = law_id_string(id);
      auto [it, inserted] = index.try_emplace(key, out.laws.size());
      if (inserted) out.laws.emplace_back(key, LawAggregate{});
      LawAggregate& agg = out.laws[it->second].second;
      if (!e.applicable) continue;
      agg.max_residual = std::max(agg.max_residual, e.residual);
      (e.pass ? agg.pass_count : agg.fail_count) += 1;
    }
  }
  return out;
}

int cmd_sweep(const SweepArgs& args) {
  std::vector<SpaceLabels> triples;
  if (args.labels.empty()) {
    triples = all_label_triples();
  } else {
    for (const std::string& s : args.labels) {
      SpaceLabels l = parse_labels(s);
      triples.push_back(args.do_normalize ? normalize(l) : l);
    }
  }

  // One worker task per label triple, seeded from the master seed by task
  // index; merging by index keeps the output independent of scheduling.
  std::vector<std::future<TripleSweep>> tasks;
  for (size_t i = 0; i < triples.size(); ++i) {
    const std::uint64_t task_seed =
        args.seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(i) + 1));
    tasks.push_back(std::async(std::launch::async, sweep_one, triples[i],
                               args.count, task_seed, args.tol));
  }
  std::vector<TripleSweep> results;
  for (auto& f : tasks) results.push_back(f.get());

  if (args.as_csv) {
    std::cout << "labels,law-id,max-residual,pass-count,fail-count\n";
    for (const TripleSweep& r : results)
      for (const auto& [id, agg] : r.laws)
        std::cout << labels_field(r.labels) << "," << id << ","
                  << fmt_g(agg.max_residual) << "," << agg.pass_count << ","
                  << agg.fail_count << "\n";
  } else if (args.as_json) {
    json out;
    out["seed"] = args.seed;
    out["count"] = args.count;
    out["tolerance"] = args.tol;
    out["results"] = json::array();
    for (const TripleSweep& r : results) {
      json rj;
      rj["labels"] = labels_field(r.labels);
      rj["geometry"] = classify(normalize(r.labels));
      rj["solved"] = r.solved;
      json laws;
      for (const auto& [id, agg] : r.laws)
        laws[id] = {{"max_residual", agg.max_residual},
                    {"pass_count", agg.pass_count},
                    {"fail_count", agg.fail_count}};
      rj["laws"] = laws;
      out["results"].push_back(rj);
    }
    std::cout << out.dump(2) << "\n";
  } else {
    long total_fail = 0;
    for (const TripleSweep& r : results) {
      double worst = 0.0;
      long fails = 0;
      for (const auto& [id, agg] : r.laws) {
        worst = std::max(worst, agg.max_residual);
        fails += agg.fail_count;
      }
      total_fail += fails;
      std::cout << labels_field(r.labels) << "  solved " << r.solved << "/"
                << args.count << "  worst " << fmt_g(worst) << "  "
                << (fails == 0 ? "all pass" : std::to_string(fails) +
                                                  " failing entries")
                << "  (" << classify(normalize(r.labels)) << ")\n";
    }
    std::cout << (total_fail == 0 ? "PASS" : "FAIL") << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// contract
// ---------------------------------------------------------------------------

struct ContractArgs {
  std::string labels = "1,1,1";
  std::string which;
  std::vector<double> epsilons = {1e-3, 1e-4, 1e-5};
  double a = 0.45, b = 0.65, C = 0.55, psi_C = 0.3;
  double tol = 0.0;
  bool as_json = false, as_csv = false;
};

struct InvariantRow {
  std::string name;
  std::vector<double> values;  // one per epsilon
  double zero = 0.0;
  std::vector<double> deviations;
  double order = 0.0;        // empirical, from the last epsilon pair
  double extrapolated = 0.0; // |linear Richardson limit - value at zero|
};

int cmd_contract(const ContractArgs& args) {
  const SpaceLabels base = parse_labels(args.labels);
  const int which_idx =
      args.which == "eta" ? 0 : args.which == "kappa1" ? 1 : 2;
  const double base_value = which_idx == 0   ? base.eta
                            : which_idx == 1 ? base.kappa1
                                             : base.kappa2;
  if (base_value == 0.0) {
    std::cerr << "error: base labels already have " << args.which << " = 0\n";
    return 1;
  }
  const double sign = base_value < 0.0 ? -1.0 : 1.0;

  const auto solve_at = [&](double value) {
    SpaceLabels l = base;
    (which_idx == 0 ? l.eta : which_idx == 1 ? l.kappa1 : l.kappa2) = value;
    const auto ph = lateral_phases(args.a, args.b, args.C, args.psi_C, l,
                                   args.tol);
    return solve(args.a, ph[0], args.b, ph[1], args.C, args.psi_C, l,
                 args.tol);
  };

  struct Extract {
    const char* name;
    double (*get)(const TriangleData&, const DerivedInvariants&);
  };
  static const Extract extracts[] = {
      {"c", [](const TriangleData& t, const DerivedInvariants&) { return t.c; }},
      {"phi_c", [](const TriangleData& t, const DerivedInvariants&) { return t.phi_c; }},
      {"A", [](const TriangleData& t, const DerivedInvariants&) { return t.A; }},
      {"psi_A", [](const TriangleData& t, const DerivedInvariants&) { return t.psi_A; }},
      {"B", [](const TriangleData& t, const DerivedInvariants&) { return t.B; }},
      {"psi_B", [](const TriangleData& t, const DerivedInvariants&) { return t.psi_B; }},
      {"omega", [](const TriangleData&, const DerivedInvariants& d) { return d.omega; }},
      {"Omega", [](const TriangleData&, const DerivedInvariants& d) { return d.Omega; }},
      {"S", [](const TriangleData&, const DerivedInvariants& d) { return d.S; }},
      {"s", [](const TriangleData&, const DerivedInvariants& d) { return d.s; }},
      {"gamma", [](const TriangleData&, const DerivedInvariants& d) { return d.gamma; }},
      {"Gamma", [](const TriangleData&, const DerivedInvariants& d) { return d.Gamma; }},
  };

  std::vector<double> eps = args.epsilons;
  std::vector<TriangleData> at_eps;
  TriangleData at_zero;
  try {
    for (double e : eps) at_eps.push_back(solve_at(sign * std::abs(e)));
    at_zero = solve_at(0.0);
  } catch (const error& e) {
    std::cerr << "error: canonical inputs not solvable along this "
                 "contraction: "
              << e.what() << "\n";
    return 1;
  }
  std::vector<DerivedInvariants> d_eps;
  d_eps.reserve(at_eps.size());
  for (const TriangleData& t : at_eps) d_eps.push_back(derived(t));
  const DerivedInvariants d_zero = derived(at_zero);

  std::vector<InvariantRow> rows;
  const auto finish_row = [&](InvariantRow& row) {
    for (double v : row.values) row.deviations.push_back(std::abs(v - row.zero));
    const size_t n = row.deviations.size();
    row.order = std::numeric_limits<double>::quiet_NaN();
    if (n >= 2) {
      const double d1 = row.deviations[n - 2], d2 = row.deviations[n - 1];
      if (d1 > 1e-14 && d2 > 1e-14)
        row.order = std::log(d1 / d2) / std::log(eps[n - 2] / eps[n - 1]);
      const double e1 = eps[n - 2], e2 = eps[n - 1];
      const double v1 = row.values[n - 2], v2 = row.values[n - 1];
      const double limit = v2 - (v1 - v2) * e2 / (e1 - e2);
      row.extrapolated = std::abs(limit - row.zero);
    } else if (n == 1) {
      row.extrapolated = row.deviations[0];
    }
    rows.push_back(row);
  };

  for (const Extract& ex : extracts) {
    InvariantRow row;
    row.name = ex.name;
    for (size_t i = 0; i < at_eps.size(); ++i)
      row.values.push_back(ex.get(at_eps[i], d_eps[i]));
    row.zero = ex.get(at_zero, d_zero);
    finish_row(row);
  }
  // The mixed phase excess over twice the contracted curvature label tends
  // to the surviving area invariant.
  if (args.which == "kappa1" || args.which == "kappa2") {
    InvariantRow row;
    row.name = args.which == "kappa1" ? "omega/(2*kappa1)" : "Omega/(2*kappa2)";
    for (size_t i = 0; i < at_eps.size(); ++i) {
      const double e = sign * std::abs(eps[i]);
      row.values.push_back(
          (args.which == "kappa1" ? d_eps[i].omega : d_eps[i].Omega) /
          (2.0 * e));
    }
    row.zero = args.which == "kappa1" ? d_zero.S : d_zero.s;
    finish_row(row);
  }

  if (args.as_json) {
    json out;
    out["base_labels"] = labels_field(base);
    out["which"] = args.which;
    out["epsilons"] = eps;
    json inv;
    for (const InvariantRow& r : rows)
      inv[r.name] = {{"values", r.values},
                     {"zero", r.zero},
                     {"deviations", r.deviations},
                     {"order", r.order},
                     {"extrapolated_error", r.extrapolated}};
    out["invariants"] = inv;
    std::cout << out.dump(2) << "\n";
  } else if (args.as_csv) {
    std::cout << "invariant,epsilon,value,zero,deviation\n";
    for (const InvariantRow& r : rows)
      for (size_t i = 0; i < eps.size(); ++i)
        std::cout << r.name << "," << fmt_g(eps[i]) << ","
                  << fmt_g(r.values[i]) << "," << fmt_g(r.zero) << ","
                  << fmt_g(r.deviations[i]) << "\n";
  } else {
    std::cout << "contraction " << args.which << " from "
              << labels_field(base) << " at";
    for (double e : eps) std::cout << " " << fmt_g(e);
    std::cout << "\n";
    for (const InvariantRow& r : rows) {
      std::cout << "  " << r.name << ": dev";
      for (double d : r.deviations) std::cout << " " << fmt_g(d);
      std::cout << "  order " << fmt_g(r.order) << "  extrapolated "
                << fmt_g(r.extrapolated) << "\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// algebra-check
// ---------------------------------------------------------------------------

struct AlgebraArgs {
  std::vector<std::string> labels;
  bool as_json = false;
  bool corrupt = false;
};

int cmd_algebra_check(const AlgebraArgs& args) {
  std::vector<SpaceLabels> triples;
  if (args.labels.empty()) triples = all_label_triples();
  else
    for (const std::string& s : args.labels) triples.push_back(parse_labels(s));

  struct Row {
    std::string name;
    bool ok;
  };
  std::vector<Row> rows;
  for (const SpaceLabels& l : triples) {
    rows.push_back({labels_field(l) + " commutation_table",
                    check_commutation_table(l)});
    rows.push_back({labels_field(l) + " casimir", casimir_commutes(l)});
    rows.push_back({labels_field(l) + " duality",
                    check_duality_automorphism(l)});
  }
  rows.push_back({"involution point",
                  check_involution_automorphism(InvolutionKind::point)});
  rows.push_back({"involution line_first",
                  check_involution_automorphism(InvolutionKind::line_first)});
  rows.push_back({"involution line_second",
                  check_involution_automorphism(InvolutionKind::line_second)});
  rows.push_back({"involution conjugation",
                  check_involution_automorphism(InvolutionKind::conjugation)});

  if (args.corrupt) {
    // Negative control: compare one bracket against a deliberately shifted
    // target; the mismatch must be caught and reported.
    const SpaceLabels l = triples.front();
    const AlgebraElement lhs = bracket(rep(Gen::P1, l), rep(Gen::P2, l));
    const Mat3 shifted = mat_add(lhs.matrix, rep(Gen::J, l).matrix);
    rows.push_back({"negative_control corrupted_bracket",
                    mat_max_dev(lhs.matrix, shifted) == 0.0});
  }

  bool all_ok = true;
  for (const Row& r : rows) all_ok = all_ok && r.ok;

  if (args.as_json) {
    json out;
    json checks = json::array();
    for (const Row& r : rows)
      checks.push_back({{"check", r.name}, {"ok", r.ok}});
    out["checks"] = checks;
    out["all_ok"] = all_ok;
    std::cout << out.dump(2) << "\n";
  } else {
    for (const Row& r : rows)
      std::cout << (r.ok ? "  ok   " : "  FAIL ") << r.name << "\n";
    std::cout << (all_ok ? "PASS" : "FAIL") << "\n";
  }
  return all_ok ? 0 : 4;
}

}  // namespace

// ---------------------------------------------------------------------------
// flag wiring
// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{
      "ckd: triangle trigonometry across the twenty-seven labeled Hermitian "
      "Cayley-Klein geometries"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  solve_args.tol = default_tol();
  auto* sc_solve = app.add_subcommand(
      "solve", "Solve a triangle from two sides and the included angle");
  sc_solve->add_option("--labels", solve_args.labels,
                       "Space labels eta,kappa1,kappa2 (arbitrary reals)");
  sc_solve->add_option("-a,--a", solve_args.a, "First side modulus");
  sc_solve->add_option("-b,--b", solve_args.b, "Second side modulus");
  sc_solve->add_option("-C,--C", solve_args.C, "Included angle modulus");
  auto* opt_pa = sc_solve->add_option("--phi-a", solve_args.phi_a,
                                      "Lateral phase of the first side "
                                      "(derived when omitted)");
  auto* opt_pb = sc_solve->add_option("--phi-b", solve_args.phi_b,
                                      "Lateral phase of the second side "
                                      "(derived when omitted)");
  sc_solve->add_option("--psi-C", solve_args.psi_C,
                       "Angular phase of the included angle");
  sc_solve->add_option("--tol", solve_args.tol, "Comparison tolerance");
  sc_solve->add_flag("--json", solve_args.as_json, "Emit the record as JSON");
  sc_solve->add_flag("--csv", solve_args.as_csv, "Emit the record as CSV");
  sc_solve->add_flag("--normalize", solve_args.do_normalize,
                     "Sign-normalize the labels first");

  VerifyArgs verify_args;
  verify_args.tol = default_tol();
  auto* sc_verify = app.add_subcommand(
      "verify", "Evaluate the full law catalogue on a stored triangle record");
  sc_verify->add_option("record", verify_args.file, "Record file (JSON)")
      ->required();
  sc_verify->add_option("--tol", verify_args.tol, "Pass/fail tolerance");
  sc_verify->add_flag("--json", verify_args.as_json, "Flat JSON report");
  sc_verify->add_flag("--csv", verify_args.as_csv, "CSV report");

  SweepArgs sweep_args;
  sweep_args.tol = default_tol();
  auto* sc_sweep = app.add_subcommand(
      "sweep",
      "Sample triangles per label triple and aggregate law residuals");
  sc_sweep->add_option("--labels", sweep_args.labels,
                       "Label triple (repeatable; default: all 27)");
  sc_sweep->add_option("--count", sweep_args.count, "Triangles per triple")
      ->check(CLI::PositiveNumber);
  sc_sweep->add_option("--seed", sweep_args.seed, "Master seed");
  sc_sweep->add_option("--tol", sweep_args.tol, "Pass/fail tolerance")
      ->check(CLI::PositiveNumber);
  sc_sweep->add_flag("--json", sweep_args.as_json, "JSON summary");
  sc_sweep->add_flag("--csv", sweep_args.as_csv, "CSV summary");
  sc_sweep->add_flag("--normalize", sweep_args.do_normalize,
                     "Sign-normalize every given label triple");

  ContractArgs contract_args;
  contract_args.tol = default_tol();
  auto* sc_contract = app.add_subcommand(
      "contract",
      "Track invariants of fixed canonical inputs along a label contraction");
  sc_contract->add_option("--labels", contract_args.labels, "Base labels");
  sc_contract->add_option("--which", contract_args.which,
                          "Label to contract: eta, kappa1 or kappa2")
      ->required()
      ->check(CLI::IsMember({"eta", "kappa1", "kappa2"}));
  sc_contract->add_option("--epsilons", contract_args.epsilons,
                          "Contraction parameter values");
  sc_contract->add_option("-a,--a", contract_args.a, "Canonical first side");
  sc_contract->add_option("-b,--b", contract_args.b, "Canonical second side");
  sc_contract->add_option("-C,--C", contract_args.C, "Canonical angle");
  sc_contract->add_option("--psi-C", contract_args.psi_C,
                          "Canonical angular phase");
  sc_contract->add_option("--tol", contract_args.tol, "Solver tolerance");
  sc_contract->add_flag("--json", contract_args.as_json, "JSON table");
  sc_contract->add_flag("--csv", contract_args.as_csv, "CSV table");

  AlgebraArgs algebra_args;
  auto* sc_algebra = app.add_subcommand(
      "algebra-check",
      "Check commutator table, quadratic invariant, duality and involutions");
  sc_algebra->add_option("--labels", algebra_args.labels,
                         "Label triple (repeatable; default: all 27)");
  sc_algebra->add_flag("--json", algebra_args.as_json, "JSON report");
  sc_algebra->add_flag("--corrupt", algebra_args.corrupt,
                       "Negative control: inject one corrupted bracket")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  solve_args.phi_a_set = opt_pa->count() > 0;
  solve_args.phi_b_set = opt_pb->count() > 0;

  try {
    if (sc_solve->parsed()) return cmd_solve(solve_args);
    if (sc_verify->parsed()) return cmd_verify(verify_args);
    if (sc_sweep->parsed()) return cmd_sweep(sweep_args);
    if (sc_contract->parsed()) return cmd_contract(contract_args);
    if (sc_algebra->parsed()) return cmd_algebra_check(algebra_args);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code) {
      case errc::degenerate_triangle:
        return 2;
      case errc::no_real_argument:
        return 3;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
