#pragma once

// Vector-symbolic reasoning backend: PMFs are transformed into FHRR
// phasor vectors, rule probabilities are estimated with binding algebra
// and floored cosine similarities, the winning rule is executed in
// vector space, and the result is cleaned up against the value codebook
// with a softmax. Position arithmetic and progression are computed in
// PMF space, where the rules act on occupancy bitmaps. The final answer
// minimizes the summed Jensen-Shannon divergence over the five
// predicted attribute PMFs.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "nvsa/fhrr.hpp"
#include "nvsa/pmf.hpp"
#include "nvsa/rpm.hpp"

namespace nvsa {

struct BackendConfig {
  std::size_t d = kFhrrDim;        // 1024
  std::uint64_t seed = 0;
  double similarity_floor = 0.05;  // applied to every match-probability factor
  double softmax_temp = 40.0;      // inverse temperature of the cleanup
};

// PMFs of one attribute over the 3x3 matrix, row-major; cell 8 is the
// missing panel and is ignored by the scoring functions.
using PmfGrid = std::array<AttributePMF, 9>;

struct ScoredRule {
  rpm::RuleKind rule;
  double u = 0.0;
};

struct AttributeTrace {
  rpm::Attribute attr = rpm::Attribute::Type;
  std::vector<ScoredRule> scores;
  rpm::RuleKind chosen;
  double best_u = 0.0;
};

struct ComponentTrace {
  std::vector<AttributeTrace> attrs;
  bool has_layout = false;
  rpm::Attribute governed = rpm::Attribute::Number;
};

struct SolveResult {
  int answer_index = 1;  // 1..8, lowest index on ties
  std::array<double, 8> candidate_scores{};
  std::vector<ComponentTrace> components;
};

class ReasoningBackend {
 public:
  explicit ReasoningBackend(BackendConfig cfg = {});

  const BackendConfig& config() const { return cfg_; }

  // Value codebooks for supports of size n; built once and shared.
  const FhrrCodebook& discrete_codebook(std::size_t n) const;
  const FhrrCodebook& continuous_codebook(std::size_t n) const;

  // Eq.-style weighted superposition of the codebook under the PMF.
  // An inconsistency slot is stripped and the PMF renormalized first.
  PhasorVector pmf_to_fhrr(const AttributePMF& pmf, const FhrrCodebook& codebook) const;

  // Rule probabilities from the 8 context PMFs of a single attribute.
  double rule_prob_arithmetic(bool plus, const PmfGrid& grid) const;
  double rule_prob_progression(const PmfGrid& grid) const;
  double rule_prob_distribute_three(const PmfGrid& grid) const;
  double rule_prob_constant(const PmfGrid& grid, FhrrCodebook::Kind kind) const;

  // Position arithmetic/progression, computed exactly in PMF space over
  // the occupancy bitmaps.
  double position_rule_prob_pmf_space(const rpm::RuleKind& rule, const PmfGrid& grid,
                                      int n_slots) const;

  // All applicable rules for a scalar attribute (continuous_allowed is
  // false for type, which is treated as discrete-only).
  std::vector<ScoredRule> score_scalar_attribute(const PmfGrid& grid,
                                                 bool continuous_allowed) const;
  std::vector<ScoredRule> score_position_attribute(const PmfGrid& grid,
                                                   int n_slots) const;

  // Executes a scored rule and returns the predicted PMF for cell (3,3).
  // Constant is a bit-exact pass-through of p^{(3,1)}.
  AttributePMF execute_scalar_rule(const rpm::RuleKind& rule, const PmfGrid& grid) const;
  AttributePMF execute_position_rule(const rpm::RuleKind& rule, const PmfGrid& grid,
                                     int n_slots) const;

  // Cleanup: softmax over codebook similarities.
  AttributePMF cleanup(const PhasorVector& v, const FhrrCodebook& codebook) const;

  SolveResult solve(const rpm::RpmTest& test) const;

  // Solve from precomputed PMFs: per component, 8 context panels and
  // 8 candidate panels.
  SolveResult solve_pmfs(rpm::ConstellationKind kind,
                         const std::vector<std::array<PanelPMFs, 8>>& context,
                         const std::vector<std::array<PanelPMFs, 8>>& candidates) const;

 private:
  double floored(double sim) const {
    return sim < cfg_.similarity_floor ? 0.0 : sim;
  }
  double clamp01(double x) const;

  // Codebooks are cached together with their basis phasors in Cartesian
  // form so repeated PMF transforms avoid recomputing cos/sin.
  struct CachedCodebook {
    std::unique_ptr<FhrrCodebook> cb;
    std::vector<double> re, im;  // row-major, size() x d
  };
  const CachedCodebook& cached(int kind_key, std::size_t n) const;

  BackendConfig cfg_;
  mutable std::mutex codebook_mutex_;
  mutable std::map<std::pair<int, std::size_t>, CachedCodebook> codebooks_;
};

}  // namespace nvsa
