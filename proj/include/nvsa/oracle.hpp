#pragma once

// Brute-force exact probabilistic abduction and execution. Rule
// probabilities are exact sums, over every concrete value assignment
// that implements the rule, of the product of the context-panel
// probabilities; execution is the exact conditional distribution of the
// missing value. Serves as the correctness oracle and timing baseline
// for the vector-symbolic backend. Enumeration cost is bounded by an
// explicit budget instead of silently truncating.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nvsa/backend.hpp"
#include "nvsa/pmf.hpp"
#include "nvsa/rpm.hpp"

namespace nvsa {

struct OracleConfig {
  std::uint64_t budget = 1'000'000'000;  // max tuple evaluations per call
};

struct BudgetExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateEvidenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ExactOracle {
 public:
  explicit ExactOracle(OracleConfig cfg = {});

  const OracleConfig& config() const { return cfg_; }

  // Scalar attributes: values 1..n with ordinary integer arithmetic.
  double rule_prob(const rpm::RuleKind& rule, const PmfGrid& grid) const;
  AttributePMF execute_rule(const rpm::RuleKind& rule, const PmfGrid& grid) const;

  // Position: values are occupancy bitmaps; arithmetic is set
  // union/difference and progression a circular shift.
  double position_rule_prob(const rpm::RuleKind& rule, const PmfGrid& grid,
                            int n_slots) const;
  AttributePMF execute_position_rule(const rpm::RuleKind& rule, const PmfGrid& grid,
                                     int n_slots) const;

  std::vector<ScoredRule> score_scalar_attribute(const PmfGrid& grid,
                                                 bool continuous_allowed) const;
  std::vector<ScoredRule> score_position_attribute(const PmfGrid& grid,
                                                   int n_slots) const;

  // Same selection pipeline as the backend, exact probabilities throughout.
  SolveResult solve(const rpm::RpmTest& test) const;
  SolveResult solve_pmfs(rpm::ConstellationKind kind,
                         const std::vector<std::array<PanelPMFs, 8>>& context,
                         const std::vector<std::array<PanelPMFs, 8>>& candidates) const;

 private:
  void check_budget(std::uint64_t evaluations, const char* what) const;

  OracleConfig cfg_;
};

}  // namespace nvsa
