// cfgroup: command line front end for the cube-free counting library.
//
// Subcommands: bounds, classes, split, verify. Every run emits one JSON
// document on stdout with the fixed key order
//   {"command", "params", "result", "oracle"?, "match"?, "elapsed_ms"}
// and diagnostics on stderr. Exit codes: 0 success, 1 formula/oracle
// mismatch, 2 invalid arguments, 3 time budget exhausted.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cubefree/extensions.hpp"
#include "cubefree/field.hpp"
#include "cubefree/formulas.hpp"
#include "cubefree/gl2.hpp"
#include "cubefree/numthy.hpp"
#include "cubefree/smallgroup.hpp"
#include "cubefree/verify.hpp"

namespace {

using json = nlohmann::ordered_json;
using u32 = std::uint32_t;
using u64 = std::uint64_t;

namespace nt = cubefree::numthy;
namespace ff = cubefree::ff;
namespace sg = cubefree::sg;
namespace gl2 = cubefree::gl2;
namespace ext = cubefree::ext;
namespace formulas = cubefree::formulas;
namespace verify = cubefree::verify;

// Bad input detected after CLI11 parsing; reported on stderr, exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json big_to_json(const formulas::BigInt& v) {
  if (v >= 0 && v <= formulas::BigInt(std::numeric_limits<u64>::max()))
    return static_cast<u64>(v);
  return v.str();
}

json bound_json(const formulas::BoundValue& b) {
  json j;
  j["log2"] = b.log2_value;
  j["exact"] = b.exact ? big_to_json(*b.exact) : json(nullptr);
  return j;
}

sg::AbelianSpec spec_of(std::vector<u64> factors) {
  std::vector<u64> keep;
  for (u64 f : factors)
    if (f > 1) keep.push_back(f);
  return sg::make_abelian_spec(keep);
}

u64 matrix_order(const ff::FieldSpec& F, const gl2::Mat2& m) {
  gl2::Mat2 a = m;
  u64 o = 1;
  while (!(a == gl2::mat_identity())) {
    a = gl2::mat_mul(F, a, m);
    ++o;
  }
  return o;
}

std::set<u64> closure_keys(const ff::FieldSpec& F, const std::vector<gl2::Mat2>& gens) {
  std::vector<gl2::Mat2> els{gl2::mat_identity()};
  std::set<u64> seen{gl2::mat_key(els[0], F.q)};
  for (std::size_t i = 0; i < els.size(); ++i) {
    for (const auto& g : gens) {
      gl2::Mat2 prod = gl2::mat_mul(F, els[i], g);
      if (seen.insert(gl2::mat_key(prod, F.q)).second) els.push_back(prod);
    }
  }
  return seen;
}

// Greedy generating set: keep adjoining the largest-order element not yet
// generated (ties broken by matrix key, so the output is deterministic).
std::vector<gl2::Mat2> small_generating_set(const gl2::Subgroup& sub) {
  std::vector<std::pair<u64, gl2::Mat2>> byOrder;
  for (const auto& m : sub.els) byOrder.emplace_back(matrix_order(sub.F, m), m);
  std::stable_sort(byOrder.begin(), byOrder.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<gl2::Mat2> gens;
  std::set<u64> cl = closure_keys(sub.F, gens);
  for (const auto& [o, m] : byOrder) {
    (void)o;
    if (cl.size() == sub.els.size()) break;
    if (cl.count(gl2::mat_key(m, sub.F.q))) continue;
    gens.push_back(m);
    cl = closure_keys(sub.F, gens);
  }
  return gens;
}

json representative_json(const gl2::Subgroup& sub) {
  json gens = json::array();
  for (const auto& m : small_generating_set(sub))
    gens.push_back(json::array({json::array({m.e[0], m.e[1]}), json::array({m.e[2], m.e[3]})}));
  json j;
  j["order"] = sub.order();
  j["generators"] = std::move(gens);
  return j;
}

int run_bounds(u64 n, json& doc) {
  if (n == 0) throw UsageError("n must be a positive integer");
  if (!nt::is_cubefree(n)) throw UsageError("n = " + std::to_string(n) + " is not cube-free");
  doc["command"] = "bounds";
  doc["params"] = json{{"n", n}};
  json result;
  result["omega"] = nt::omega(n);
  result["mu"] = nt::mu_exp(n);
  result["tau"] = nt::tau(n);
  result["cubefree"] = true;
  result["solvable_bound"] = bound_json(formulas::upper_bound_solvable(n));
  result["odd_bound"] = n % 2 == 1 ? bound_json(formulas::upper_bound_odd(n)) : json(nullptr);
  doc["result"] = std::move(result);
  return 0;
}

int run_classes(u64 q, const std::string& kindName, bool oracle, bool reportOnly, bool reps,
                const verify::Caps& caps, json& doc) {
  auto kindOpt = gl2::kind_from_name(kindName);
  if (!kindOpt)
    throw UsageError("unknown kind '" + kindName +
                     "' (expected abelian_odd, abelian_even, nonabelian, odd_all or all)");
  gl2::Kind kind = *kindOpt;
  if (q < 2 || !nt::is_prime_power(q)) throw UsageError("q must be a prime power >= 2");

  bool wantOracle = oracle || reportOnly || reps;
  bool wantFormula = kind == gl2::Kind::nonabelian && !reportOnly;
  if (wantFormula && q % 2 == 0)
    throw UsageError("the nonabelian class count needs odd q; use --report-only for the "
                     "enumeration alone");
  if (!wantFormula && !wantOracle)
    throw UsageError("kind '" + kindName +
                     "' has no closed count; pass --oracle or --report-only");
  if (wantOracle && q > caps.max_q)
    throw UsageError("the oracle needs q <= --max-q (" + std::to_string(caps.max_q) + ")");

  std::optional<u64> formulaVal;
  if (wantFormula) formulaVal = formulas::nonabelian_maximal_count(q);
  std::vector<gl2::Subgroup> classes;
  std::optional<u64> oracleVal;
  if (wantOracle) {
    classes = gl2::maximal_cubefree_classes(q, kind, caps.max_q);
    oracleVal = classes.size();
  }

  doc["command"] = "classes";
  doc["params"] = json{{"q", q}, {"kind", gl2::kind_name(kind)}};
  json result;
  result["formula"] = formulaVal ? json(*formulaVal) : json(nullptr);
  if (reps) {
    json arr = json::array();
    for (const auto& sub : classes) arr.push_back(representative_json(sub));
    result["representatives"] = std::move(arr);
  }
  doc["result"] = std::move(result);
  if (oracleVal) doc["oracle"] = *oracleVal;
  if (formulaVal && oracleVal) {
    bool match = *formulaVal == *oracleVal;
    doc["match"] = match;
    return match ? 0 : 1;
  }
  return 0;
}

int run_split(u64 p, std::optional<unsigned> alpha, bool pp, u64 c, u64 d, bool oracle,
              const verify::Caps& caps, json& doc) {
  if (pp == alpha.has_value()) throw UsageError("pass exactly one of --alpha and --pp");
  if (alpha && *alpha == 0) throw UsageError("--alpha must be >= 1");
  formulas::Thm13Input in = formulas::make_thm13_input(p, c, d);

  u64 formulaVal =
      pp ? formulas::split_count_p2(p, c, d) : formulas::split_count_cyclic(p, *alpha, c, d);

  doc["command"] = "split";
  json params;
  params["p"] = p;
  if (pp)
    params["pp"] = true;
  else
    params["alpha"] = *alpha;
  params["c"] = c;
  params["d"] = d;
  doc["params"] = std::move(params);
  doc["result"] = json{{"formula", formulaVal}};

  if (oracle) {
    u64 npart = pp ? p * p : nt::ipow(p, *alpha);
    u64 qpart = c * d * d;
    if (npart > caps.max_order / qpart)
      throw UsageError("the oracle needs |N||Q| <= --max-order (" +
                       std::to_string(caps.max_order) + ")");
    sg::AbelianSpec N = pp ? spec_of({p, p}) : spec_of({npart});
    sg::AbelianSpec Q = spec_of({in.c * in.d, in.d});
    u64 oracleVal = ext::iso_class_count_direct(N, Q);
    doc["oracle"] = oracleVal;
    bool match = oracleVal == formulaVal;
    doc["match"] = match;
    return match ? 0 : 1;
  }
  return 0;
}

int run_verify(const std::optional<std::string>& suite, const verify::Caps& caps,
               double budgetSec, json& doc) {
  std::vector<std::string> names;
  if (suite) {
    const auto& all = verify::suite_names();
    if (std::find(all.begin(), all.end(), *suite) == all.end()) {
      std::string known;
      for (const auto& s : all) known += (known.empty() ? "" : ", ") + s;
      throw UsageError("unknown suite '" + *suite + "' (expected one of " + known + ")");
    }
    names.push_back(*suite);
  } else {
    names = verify::suite_names();
  }

  doc["command"] = "verify";
  json params;
  params["suite"] = suite ? json(*suite) : json(nullptr);
  params["max_q"] = caps.max_q;
  params["max_order"] = caps.max_order;
  params["max_n"] = caps.max_n;
  params["time_budget_sec"] = budgetSec;
  doc["params"] = std::move(params);

  verify::Budget budget(budgetSec);
  json suites = json::array();
  bool overall = true;
  bool exhausted = false;
  for (const auto& name : names) {
    try {
      json report = verify::run_suite(name, caps, budget);
      overall = overall && report.at("overall").get<bool>();
      suites.push_back(std::move(report));
    } catch (const verify::BudgetExhausted&) {
      std::cerr << "time budget exhausted during suite '" << name << "'\n";
      exhausted = true;
      overall = false;
      break;
    }
  }
  json result;
  result["suites"] = std::move(suites);
  result["overall"] = overall;
  if (exhausted) result["budget_exhausted"] = true;
  doc["result"] = std::move(result);
  if (exhausted) return 3;
  return overall ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cube-free group counting: closed formulas, GL(2,q) oracles and "
               "verification suites"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  verify::Caps caps;
  double budgetSec = 600.0;
  std::string outPath;
  app.add_option("--max-q", caps.max_q, "largest field size for the matrix-group oracle")
      ->capture_default_str();
  app.add_option("--max-order", caps.max_order, "largest group order for the extension oracle")
      ->capture_default_str();
  app.add_option("--max-n", caps.max_n, "largest n for the square-free census")
      ->capture_default_str();
  app.add_option("--time-budget-sec", budgetSec, "wall-clock budget; exceeding it exits 3")
      ->capture_default_str();
  app.add_option("--out", outPath, "also write the JSON document to this file");

  auto* cmdBounds =
      app.add_subcommand("bounds", "upper bounds for the number of groups of cube-free order n");
  u64 boundsN = 0;
  cmdBounds->add_option("n", boundsN, "the order (positive, cube-free)")->required();

  auto* cmdClasses = app.add_subcommand(
      "classes", "maximal cube-free solvable subgroup classes of GL(2,q) by kind");
  u64 classesQ = 0;
  std::string kindName;
  bool classesOracle = false, reportOnly = false, listReps = false;
  cmdClasses->add_option("--q", classesQ, "prime power field size")->required();
  cmdClasses->add_option("--kind", kindName, "abelian_odd|abelian_even|nonabelian|odd_all|all")
      ->required();
  cmdClasses->add_flag("--oracle", classesOracle, "also count classes by enumeration and compare");
  cmdClasses->add_flag("--report-only", reportOnly,
                       "skip the closed formula and report the enumeration count alone");
  cmdClasses->add_flag("--reps", listReps, "list class representatives as generator matrices");

  auto* cmdSplit =
      app.add_subcommand("split", "split extension counts N x| Q with Q = Z_{cd} x Z_d");
  u64 splitP = 0, splitC = 0, splitD = 0;
  unsigned alphaVal = 0;
  bool pairFlag = false, splitOracle = false;
  cmdSplit->add_option("--p", splitP, "the prime p")->required();
  auto* alphaOpt = cmdSplit->add_option("--alpha", alphaVal, "N = Z_{p^alpha}");
  cmdSplit->add_flag("--pp", pairFlag, "N = Z_p x Z_p");
  cmdSplit->add_option("--c", splitC, "cube-free part of Q")->required();
  cmdSplit->add_option("--d", splitD, "square-free part of Q")->required();
  cmdSplit->add_flag("--oracle", splitOracle, "also classify the extensions directly and compare");

  auto* cmdVerify = app.add_subcommand("verify", "run formula-vs-oracle verification suites");
  std::string suiteName;
  auto* suiteOpt = cmdVerify->add_option("--suite", suiteName, "one suite (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  json doc;
  int rc = 0;
  auto t0 = std::chrono::steady_clock::now();
  try {
    if (cmdBounds->parsed()) {
      rc = run_bounds(boundsN, doc);
    } else if (cmdClasses->parsed()) {
      rc = run_classes(classesQ, kindName, classesOracle, reportOnly, listReps, caps, doc);
    } else if (cmdSplit->parsed()) {
      std::optional<unsigned> alpha;
      if (alphaOpt->count()) alpha = alphaVal;
      rc = run_split(splitP, alpha, pairFlag, splitC, splitD, splitOracle, caps, doc);
    } else {
      std::optional<std::string> suite;
      if (suiteOpt->count()) suite = suiteName;
      rc = run_verify(suite, caps, budgetSec, doc);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  doc["elapsed_ms"] = static_cast<std::int64_t>(ms);

  std::string text = doc.dump(2);
  text += '\n';
  std::cout << text;
  if (!outPath.empty()) {
    std::ofstream out(outPath, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open " << outPath << " for writing\n";
      return 2;
    }
    out << text;
  }
  return rc;
}
