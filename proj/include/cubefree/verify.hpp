#pragma once
// Formula-vs-oracle verification suites with wall-clock budgeting. Each suite
// produces a report of cases; a case matches when the formula value agrees
// with (or is bounded by) its oracle.

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace cubefree::verify {

using u64 = std::uint64_t;
using json = nlohmann::ordered_json;

struct Caps {
  u64 max_q = 13;
  u64 max_order = 5000;
  u64 max_n = 200;
};

struct BudgetExhausted : std::runtime_error {
  BudgetExhausted() : std::runtime_error("time budget exhausted") {}
};

// Wall-clock deadline; check() throws BudgetExhausted once it has passed.
class Budget {
 public:
  explicit Budget(double seconds);
  void check() const;

 private:
  std::chrono::steady_clock::time_point deadline_;
};

const std::vector<std::string>& suite_names();

// Runs one suite under the caps. The report is
//   {"suite": name, "cases": [{"params", "formula_value", "oracle_value",
//    "match", "elapsed_ms"}...], "overall": bool}
// with overall the conjunction of the match flags.
json run_suite(const std::string& name, const Caps& caps, Budget& budget);

// Independent classification of the groups of square-free order n: builds
// every split metacyclic group Z_m x| Z_{n/m} over the divisors m of n and
// partitions by isomorphism.
u64 metacyclic_class_count(u64 n);

}  // namespace cubefree::verify
