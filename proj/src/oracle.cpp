#include "nvsa/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace nvsa {

namespace {

constexpr std::array<int, 4> kReportedSteps = {-2, -1, 1, 2};

// Inconsistency slot stripped and renormalized away.
std::vector<double> core(const AttributePMF& pmf) {
  std::vector<double> p(pmf.p.begin(), pmf.p.begin() + pmf.n_values());
  double sum = 0.0;
  for (double v : p) sum += v;
  if (sum <= 0.0) {
    throw DegenerateEvidenceError("exact oracle: no mass outside the inconsistency slot");
  }
  for (double& v : p) v /= sum;
  return p;
}

struct Grid8 {
  std::array<std::vector<double>, 8> p;  // cells (1,1)..(3,2), row-major
  int n = 0;
};

Grid8 strip(const PmfGrid& grid) {
  Grid8 g;
  g.n = static_cast<int>(grid[0].n_values());
  for (int i = 0; i < 8; ++i) {
    g.p[i] = core(grid[i]);
    if (static_cast<int>(g.p[i].size()) != g.n) {
      throw std::invalid_argument("exact oracle: context PMFs differ in support");
    }
  }
  return g;
}

// All distribute-three implementations: an unordered triple of distinct
// values arranged as one of the 12 order-3 Latin squares. The callback
// receives the implementation probability over the 8 context cells and
// the implied (3,3) value (0-based).
template <typename F>
void for_each_d3(const Grid8& g, F&& f) {
  static constexpr int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                       {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  const int n = g.n;
  for (int x = 0; x < n - 2; ++x) {
    for (int y = x + 1; y < n - 1; ++y) {
      for (int z = y + 1; z < n; ++z) {
        const int v[3] = {x, y, z};
        for (const auto& perm : kPerms) {
          const int r1[3] = {v[perm[0]], v[perm[1]], v[perm[2]]};
          const double w1 = g.p[0][r1[0]] * g.p[1][r1[1]] * g.p[2][r1[2]];
          for (int shift = 1; shift <= 2; ++shift) {
            const int r2[3] = {r1[shift % 3], r1[(1 + shift) % 3],
                               r1[(2 + shift) % 3]};
            const int r3[3] = {r1[(2 * shift) % 3], r1[(1 + 2 * shift) % 3],
                               r1[(2 + 2 * shift) % 3]};
            const double w = w1 * g.p[3][r2[0]] * g.p[4][r2[1]] * g.p[5][r2[2]] *
                             g.p[6][r3[0]] * g.p[7][r3[1]];
            f(w, r3[2]);
          }
        }
      }
    }
  }
}

std::uint64_t d3_evaluations(int n) {
  if (n < 3) return 0;
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  return un * (un - 1) * (un - 2) / 6 * 12;
}

double constant_prob(const Grid8& g) {
  double r1 = 0.0, r2 = 0.0, r3 = 0.0;
  for (int k = 0; k < g.n; ++k) {
    r1 += g.p[0][k] * g.p[1][k] * g.p[2][k];
    r2 += g.p[3][k] * g.p[4][k] * g.p[5][k];
    r3 += g.p[6][k] * g.p[7][k];
  }
  return r1 * r2 * r3;
}

double arithmetic_prob(const Grid8& g, bool plus) {
  const int n = g.n;
  auto row = [&](int c1, int c2, int c3) {
    double s = 0.0;
    for (int k1 = 0; k1 < n; ++k1) {
      for (int k2 = 0; k2 < n; ++k2) {
        // 1-based values: v3 = v1 + v2 or v1 - v2.
        const int v3 = plus ? (k1 + 1) + (k2 + 1) : (k1 + 1) - (k2 + 1);
        if (v3 < 1 || v3 > n) continue;
        s += g.p[c1][k1] * g.p[c2][k2] * g.p[c3][v3 - 1];
      }
    }
    return s;
  };
  double h = 0.0;
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = 0; k2 < n; ++k2) {
      const int v3 = plus ? (k1 + 1) + (k2 + 1) : (k1 + 1) - (k2 + 1);
      if (v3 >= 1 && v3 <= n) h += g.p[6][k1] * g.p[7][k2];
    }
  }
  return row(0, 1, 2) * row(3, 4, 5) * std::min(h, 1.0);
}

// Per-step row and feasibility masses for a common nonzero step delta.
double progression_prob(const Grid8& g) {
  const int n = g.n;
  double total = 0.0;
  for (int delta = -(n - 1); delta <= n - 1; ++delta) {
    if (delta == 0) continue;
    double s1 = 0.0, s2 = 0.0, h = 0.0;
    for (int s = 0; s < n; ++s) {
      const int b = s + delta, c = s + 2 * delta;
      if (b >= 0 && b < n) h += g.p[6][s] * g.p[7][b];
      if (b < 0 || b >= n || c < 0 || c >= n) continue;
      s1 += g.p[0][s] * g.p[1][b] * g.p[2][c];
      s2 += g.p[3][s] * g.p[4][b] * g.p[5][c];
    }
    total += s1 * s2 * h;
  }
  return std::min(total, 1.0);
}

double d3_prob(const Grid8& g) {
  double total = 0.0;
  for_each_d3(g, [&](double w, int) { total += w; });
  return std::min(total, 1.0);
}

AttributePMF normalized(std::vector<double> p, const char* what) {
  double total = 0.0;
  for (double v : p) total += v;
  if (total <= 0.0) {
    throw DegenerateEvidenceError(std::string("exact oracle: zero evidence mass in ") +
                                  what);
  }
  for (double& v : p) v /= total;
  AttributePMF out;
  out.p = std::move(p);
  return out;
}

double inconsistency_damp(const PmfGrid& grid) {
  double damp = 1.0;
  for (int i = 0; i < 8; ++i) damp *= 1.0 - grid[i].inconsistency_mass();
  return std::max(damp, 0.0);
}

const ScoredRule& best_rule(const std::vector<ScoredRule>& scores) {
  const ScoredRule* best = &scores.front();
  for (const ScoredRule& s : scores) {
    if (s.u > best->u) best = &s;
  }
  return *best;
}

AttributePMF with_inconsistency_slot(AttributePMF pmf) {
  if (!pmf.has_inconsistency) {
    pmf.has_inconsistency = true;
    pmf.p.push_back(0.0);
  }
  return pmf;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

PmfGrid make_grid(const std::vector<std::array<PanelPMFs, 8>>& context, int component,
                  AttributePMF PanelPMFs::* field) {
  PmfGrid grid;
  for (int i = 0; i < 8; ++i) grid[i] = context[component][i].*field;
  return grid;
}

}  // namespace

ExactOracle::ExactOracle(OracleConfig cfg) : cfg_(cfg) {}

void ExactOracle::check_budget(std::uint64_t evaluations, const char* what) const {
  if (evaluations > cfg_.budget) {
    throw BudgetExceededError(std::string("exact oracle: ") + what + " needs " +
                              std::to_string(evaluations) +
                              " tuple evaluations, budget is " +
                              std::to_string(cfg_.budget));
  }
}

double ExactOracle::rule_prob(const rpm::RuleKind& rule, const PmfGrid& grid) const {
  const Grid8 g = strip(grid);
  const std::uint64_t n = static_cast<std::uint64_t>(g.n);
  switch (rule.family) {
    case rpm::RuleFamily::Constant:
      check_budget(3 * n, "constant");
      return constant_prob(g);
    case rpm::RuleFamily::ArithmeticPlus:
      check_budget(3 * n * n, "arithmetic");
      return arithmetic_prob(g, true);
    case rpm::RuleFamily::ArithmeticMinus:
      check_budget(3 * n * n, "arithmetic");
      return arithmetic_prob(g, false);
    case rpm::RuleFamily::Progression:
      check_budget(6 * n * n, "progression");
      return progression_prob(g);
    case rpm::RuleFamily::DistributeThree:
      check_budget(d3_evaluations(g.n), "distribute three");
      return g.n >= 3 ? d3_prob(g) : 0.0;
  }
  throw std::invalid_argument("exact oracle: unknown rule");
}

AttributePMF ExactOracle::execute_rule(const rpm::RuleKind& rule,
                                       const PmfGrid& grid) const {
  const Grid8 g = strip(grid);
  const int n = g.n;
  std::vector<double> out(n, 0.0);
  switch (rule.family) {
    case rpm::RuleFamily::Constant:
      for (int k = 0; k < n; ++k) out[k] = g.p[6][k] * g.p[7][k];
      return normalized(std::move(out), "constant");
    case rpm::RuleFamily::ArithmeticPlus:
    case rpm::RuleFamily::ArithmeticMinus: {
      const bool plus = rule.family == rpm::RuleFamily::ArithmeticPlus;
      for (int k1 = 0; k1 < n; ++k1) {
        for (int k2 = 0; k2 < n; ++k2) {
          const int v3 = plus ? (k1 + 1) + (k2 + 1) : (k1 + 1) - (k2 + 1);
          if (v3 < 1 || v3 > n) continue;
          out[v3 - 1] += g.p[6][k1] * g.p[7][k2];
        }
      }
      return normalized(std::move(out), "arithmetic");
    }
    case rpm::RuleFamily::Progression:
      for (int delta = -(n - 1); delta <= n - 1; ++delta) {
        if (delta == 0) continue;
        for (int s = 0; s < n; ++s) {
          const int b = s + delta, c = s + 2 * delta;
          if (b < 0 || b >= n || c < 0 || c >= n) continue;
          out[c] += g.p[6][s] * g.p[7][b];
        }
      }
      return normalized(std::move(out), "progression");
    case rpm::RuleFamily::DistributeThree: {
      check_budget(d3_evaluations(n), "distribute three");
      for_each_d3(g, [&](double w, int v33) { out[v33] += w; });
      return normalized(std::move(out), "distribute three");
    }
  }
  throw std::invalid_argument("exact oracle: unknown rule");
}

double ExactOracle::position_rule_prob(const rpm::RuleKind& rule, const PmfGrid& grid,
                                       int n_slots) const {
  const std::uint32_t n_bitmaps = (1u << n_slots) - 1u;
  if (grid[0].n_values() != n_bitmaps) {
    throw std::invalid_argument("exact oracle: position support mismatch");
  }
  const Grid8 g = strip(grid);
  const std::uint64_t n = n_bitmaps;
  switch (rule.family) {
    case rpm::RuleFamily::Constant:
      check_budget(3 * n, "position constant");
      return constant_prob(g);
    case rpm::RuleFamily::DistributeThree:
      check_budget(d3_evaluations(g.n), "position distribute three");
      return g.n >= 3 ? d3_prob(g) : 0.0;
    case rpm::RuleFamily::ArithmeticPlus:
    case rpm::RuleFamily::ArithmeticMinus: {
      check_budget(3 * n * n, "position arithmetic");
      const bool plus = rule.family == rpm::RuleFamily::ArithmeticPlus;
      auto row = [&](int c1, int c2, int c3) {
        double s = 0.0;
        for (std::uint32_t k1 = 1; k1 <= n_bitmaps; ++k1) {
          for (std::uint32_t k2 = 1; k2 <= n_bitmaps; ++k2) {
            const std::uint32_t f = plus ? (k1 | k2) : (k1 & ~k2);
            if (f == 0) continue;
            s += g.p[c1][k1 - 1] * g.p[c2][k2 - 1] * g.p[c3][f - 1];
          }
        }
        return s;
      };
      double h = 1.0;
      if (!plus) {
        h = 0.0;
        for (std::uint32_t k1 = 1; k1 <= n_bitmaps; ++k1) {
          for (std::uint32_t k2 = 1; k2 <= n_bitmaps; ++k2) {
            if ((k1 & ~k2) != 0) h += g.p[6][k1 - 1] * g.p[7][k2 - 1];
          }
        }
        h = std::min(h, 1.0);
      }
      return row(0, 1, 2) * row(3, 4, 5) * h;
    }
    case rpm::RuleFamily::Progression: {
      check_budget(3 * n, "position progression");
      auto shift = [&](std::uint32_t k) {
        return rpm::rotate_bitmap(k, n_slots, rule.step);
      };
      auto row = [&](int c1, int c2, int c3) {
        double s = 0.0;
        for (std::uint32_t k = 1; k <= n_bitmaps; ++k) {
          s += g.p[c1][k - 1] * g.p[c2][shift(k) - 1] * g.p[c3][shift(shift(k)) - 1];
        }
        return s;
      };
      double h = 0.0;
      for (std::uint32_t k = 1; k <= n_bitmaps; ++k) {
        h += g.p[6][k - 1] * g.p[7][shift(k) - 1];
      }
      return row(0, 1, 2) * row(3, 4, 5) * std::min(h, 1.0);
    }
  }
  throw std::invalid_argument("exact oracle: unknown rule");
}

AttributePMF ExactOracle::execute_position_rule(const rpm::RuleKind& rule,
                                                const PmfGrid& grid,
                                                int n_slots) const {
  const std::uint32_t n_bitmaps = (1u << n_slots) - 1u;
  const Grid8 g = strip(grid);
  std::vector<double> out(n_bitmaps, 0.0);
  switch (rule.family) {
    case rpm::RuleFamily::Constant:
      for (std::uint32_t k = 1; k <= n_bitmaps; ++k) {
        out[k - 1] = g.p[6][k - 1] * g.p[7][k - 1];
      }
      return normalized(std::move(out), "position constant");
    case rpm::RuleFamily::DistributeThree: {
      check_budget(d3_evaluations(g.n), "position distribute three");
      for_each_d3(g, [&](double w, int v33) { out[v33] += w; });
      return normalized(std::move(out), "position distribute three");
    }
    case rpm::RuleFamily::ArithmeticPlus:
    case rpm::RuleFamily::ArithmeticMinus: {
      const bool plus = rule.family == rpm::RuleFamily::ArithmeticPlus;
      for (std::uint32_t k1 = 1; k1 <= n_bitmaps; ++k1) {
        for (std::uint32_t k2 = 1; k2 <= n_bitmaps; ++k2) {
          const std::uint32_t f = plus ? (k1 | k2) : (k1 & ~k2);
          if (f == 0) continue;
          out[f - 1] += g.p[6][k1 - 1] * g.p[7][k2 - 1];
        }
      }
      return normalized(std::move(out), "position arithmetic");
    }
    case rpm::RuleFamily::Progression: {
      auto shift = [&](std::uint32_t k) {
        return rpm::rotate_bitmap(k, n_slots, rule.step);
      };
      for (std::uint32_t k = 1; k <= n_bitmaps; ++k) {
        const std::uint32_t prev = rpm::rotate_bitmap(k, n_slots, -rule.step);
        out[shift(k) - 1] += g.p[6][prev - 1] * g.p[7][k - 1];
      }
      return normalized(std::move(out), "position progression");
    }
  }
  throw std::invalid_argument("exact oracle: unknown rule");
}

std::vector<ScoredRule> ExactOracle::score_scalar_attribute(
    const PmfGrid& grid, bool continuous_allowed) const {
  const int n = static_cast<int>(grid[0].n_values());
  std::vector<ScoredRule> scores;
  scores.push_back({rpm::RuleKind{rpm::RuleFamily::Constant, 0},
                    rule_prob(rpm::RuleKind{rpm::RuleFamily::Constant, 0}, grid)});
  if (continuous_allowed) {
    // The score sums over every common step; for reporting pick the best
    // step among the generator's repertoire.
    const Grid8 g = strip(grid);
    int best_step = 1;
    double best_mass = -1.0;
    for (int delta : kReportedSteps) {
      double s1 = 0.0;
      for (int s = 0; s < n; ++s) {
        const int b = s + delta, c = s + 2 * delta;
        if (b < 0 || b >= n || c < 0 || c >= n) continue;
        s1 += g.p[0][s] * g.p[1][b] * g.p[2][c];
      }
      if (s1 > best_mass) {
        best_mass = s1;
        best_step = delta;
      }
    }
    scores.push_back(
        {rpm::RuleKind{rpm::RuleFamily::Progression, best_step},
         rule_prob(rpm::RuleKind{rpm::RuleFamily::Progression, 0}, grid)});
    scores.push_back(
        {rpm::RuleKind{rpm::RuleFamily::ArithmeticPlus, 0},
         rule_prob(rpm::RuleKind{rpm::RuleFamily::ArithmeticPlus, 0}, grid)});
    scores.push_back(
        {rpm::RuleKind{rpm::RuleFamily::ArithmeticMinus, 0},
         rule_prob(rpm::RuleKind{rpm::RuleFamily::ArithmeticMinus, 0}, grid)});
  }
  if (n >= 3) {
    scores.push_back(
        {rpm::RuleKind{rpm::RuleFamily::DistributeThree, 0},
         rule_prob(rpm::RuleKind{rpm::RuleFamily::DistributeThree, 0}, grid)});
  }
  return scores;
}

std::vector<ScoredRule> ExactOracle::score_position_attribute(const PmfGrid& grid,
                                                              int n_slots) const {
  std::vector<ScoredRule> scores;
  scores.push_back(
      {rpm::RuleKind{rpm::RuleFamily::Constant, 0},
       position_rule_prob(rpm::RuleKind{rpm::RuleFamily::Constant, 0}, grid, n_slots)});

  rpm::RuleKind best_prog{rpm::RuleFamily::Progression, 1};
  double best_u = -1.0;
  for (int s : kReportedSteps) {
    const rpm::RuleKind rule{rpm::RuleFamily::Progression, s};
    const double u = position_rule_prob(rule, grid, n_slots);
    if (u > best_u) {
      best_u = u;
      best_prog = rule;
    }
  }
  scores.push_back({best_prog, best_u});

  scores.push_back({rpm::RuleKind{rpm::RuleFamily::ArithmeticPlus, 0},
                    position_rule_prob(rpm::RuleKind{rpm::RuleFamily::ArithmeticPlus, 0},
                                       grid, n_slots)});
  scores.push_back(
      {rpm::RuleKind{rpm::RuleFamily::ArithmeticMinus, 0},
       position_rule_prob(rpm::RuleKind{rpm::RuleFamily::ArithmeticMinus, 0}, grid,
                          n_slots)});
  scores.push_back(
      {rpm::RuleKind{rpm::RuleFamily::DistributeThree, 0},
       position_rule_prob(rpm::RuleKind{rpm::RuleFamily::DistributeThree, 0}, grid,
                          n_slots)});
  return scores;
}

SolveResult ExactOracle::solve_pmfs(
    rpm::ConstellationKind kind,
    const std::vector<std::array<PanelPMFs, 8>>& context,
    const std::vector<std::array<PanelPMFs, 8>>& candidates) const {
  const auto& con = rpm::Constellation::get(kind);
  const std::size_t n_components = con.components.size();
  if (context.size() != n_components || candidates.size() != n_components) {
    throw std::invalid_argument("exact oracle: component count mismatch");
  }

  SolveResult result;
  result.candidate_scores.fill(0.0);

  for (std::size_t c = 0; c < n_components; ++c) {
    const int n_slots = con.components[c].n_slots();
    ComponentTrace trace;
    trace.has_layout = n_slots > 1;

    AttributePMF pred_pos, pred_num, pred_type, pred_size, pred_color;

    if (n_slots > 1) {
      const PmfGrid pos_grid = make_grid(context, static_cast<int>(c), &PanelPMFs::pos);
      const PmfGrid num_grid = make_grid(context, static_cast<int>(c), &PanelPMFs::num);

      AttributeTrace pos_trace{rpm::Attribute::Position,
                               score_position_attribute(pos_grid, n_slots), {}, 0.0};
      AttributeTrace num_trace{rpm::Attribute::Number,
                               score_scalar_attribute(num_grid, true), {}, 0.0};
      const ScoredRule& bp = best_rule(pos_trace.scores);
      const ScoredRule& bn = best_rule(num_trace.scores);
      pos_trace.chosen = bp.rule;
      pos_trace.best_u = bp.u;
      num_trace.chosen = bn.rule;
      num_trace.best_u = bn.u;

      // Near-ties go to position: its prediction determines the count
      // exactly, so it is never less informative.
      if (bn.u > bp.u + 1e-6) {
        trace.governed = rpm::Attribute::Number;
        pred_num = execute_rule(bn.rule, num_grid);
        pred_pos.p.assign((1u << n_slots) - 1u, 0.0);
        for (std::uint32_t j = 1; j < (1u << n_slots); ++j) {
          const int cnt = std::popcount(j);
          pred_pos.p[j - 1] = pred_num.p[cnt - 1] / binomial(n_slots, cnt);
        }
      } else {
        trace.governed = rpm::Attribute::Position;
        pred_pos = execute_position_rule(bp.rule, pos_grid, n_slots);
        pred_num.p.assign(n_slots, 0.0);
        for (std::uint32_t j = 1; j < (1u << n_slots); ++j) {
          pred_num.p[std::popcount(j) - 1] += pred_pos.p[j - 1];
        }
      }
      trace.attrs.push_back(std::move(pos_trace));
      trace.attrs.push_back(std::move(num_trace));
    } else {
      pred_pos.p = {1.0};
      pred_num.p = {1.0};
    }

    auto solve_scalar = [&](rpm::Attribute attr, AttributePMF PanelPMFs::* field,
                            bool continuous_allowed) {
      const PmfGrid grid = make_grid(context, static_cast<int>(c), field);
      AttributeTrace t{attr, score_scalar_attribute(grid, continuous_allowed), {}, 0.0};
      const double damp = inconsistency_damp(grid);
      for (ScoredRule& s : t.scores) s.u *= damp;
      const ScoredRule& b = best_rule(t.scores);
      t.chosen = b.rule;
      t.best_u = b.u;
      AttributePMF pred = with_inconsistency_slot(execute_rule(b.rule, grid));
      trace.attrs.push_back(std::move(t));
      return pred;
    };

    pred_type = solve_scalar(rpm::Attribute::Type, &PanelPMFs::type, false);
    pred_size = solve_scalar(rpm::Attribute::Size, &PanelPMFs::size, true);
    pred_color = solve_scalar(rpm::Attribute::Color, &PanelPMFs::color, true);

    for (int j = 0; j < 8; ++j) {
      const PanelPMFs& cand = candidates[c][j];
      result.candidate_scores[j] += jsd(pred_pos, cand.pos) + jsd(pred_num, cand.num) +
                                    jsd(pred_type, cand.type) +
                                    jsd(pred_size, cand.size) +
                                    jsd(pred_color, cand.color);
    }
    result.components.push_back(std::move(trace));
  }

  int best = 0;
  for (int j = 1; j < 8; ++j) {
    if (result.candidate_scores[j] < result.candidate_scores[best]) best = j;
  }
  result.answer_index = best + 1;
  return result;
}

SolveResult ExactOracle::solve(const rpm::RpmTest& test) const {
  const auto& con = rpm::Constellation::get(test.constellation);
  const std::size_t n_components = con.components.size();
  std::vector<std::array<PanelPMFs, 8>> context(n_components);
  std::vector<std::array<PanelPMFs, 8>> candidates(n_components);
  for (std::size_t c = 0; c < n_components; ++c) {
    for (int i = 0; i < 8; ++i) {
      context[c][i] = panel_pmfs(test.context[i], static_cast<int>(c));
      candidates[c][i] = panel_pmfs(test.candidates[i], static_cast<int>(c));
    }
  }
  return solve_pmfs(test.constellation, context, candidates);
}

}  // namespace nvsa
