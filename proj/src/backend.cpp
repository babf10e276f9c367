#include "nvsa/backend.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "nvsa/rng.hpp"

namespace nvsa {

namespace {

constexpr std::array<int, 4> kProgressionSteps = {-2, -1, 1, 2};

// PMF with the inconsistency slot stripped and renormalized away.
std::vector<double> core_probs(const AttributePMF& pmf) {
  std::vector<double> p(pmf.p.begin(), pmf.p.begin() + pmf.n_values());
  double sum = 0.0;
  for (double v : p) sum += v;
  if (sum <= 0.0) {
    throw std::invalid_argument("pmf_to_fhrr: no mass outside the inconsistency slot");
  }
  for (double& v : p) v /= sum;
  return p;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// FHRR transforms of the 8 context panels for one attribute.
std::array<PhasorVector, 8> transform_grid(const ReasoningBackend& backend,
                                           const PmfGrid& grid,
                                           const FhrrCodebook& codebook) {
  std::array<PhasorVector, 8> out;
  for (int i = 0; i < 8; ++i) out[i] = backend.pmf_to_fhrr(grid[i], codebook);
  return out;
}

}  // namespace

ReasoningBackend::ReasoningBackend(BackendConfig cfg) : cfg_(cfg) {
  if (cfg_.d == 0) throw std::invalid_argument("ReasoningBackend: d must be positive");
}

double ReasoningBackend::clamp01(double x) const {
  return std::clamp(x, 0.0, 1.0);
}

const ReasoningBackend::CachedCodebook& ReasoningBackend::cached(int kind_key,
                                                                 std::size_t n) const {
  std::lock_guard<std::mutex> lock(codebook_mutex_);
  auto key = std::make_pair(kind_key, n);
  auto it = codebooks_.find(key);
  if (it == codebooks_.end()) {
    const auto kind =
        kind_key == 0 ? FhrrCodebook::Kind::Discrete : FhrrCodebook::Kind::Continuous;
    const char* tag = kind_key == 0 ? "nvsa.backend.discrete" : "nvsa.backend.continuous";
    CachedCodebook entry;
    entry.cb = std::make_unique<FhrrCodebook>(make_fhrr_codebook(
        kind, "value", hash_combine(cfg_.seed, hash_str(tag)), n, cfg_.d));
    entry.re.resize(n * cfg_.d);
    entry.im.resize(n * cfg_.d);
    for (std::size_t k = 0; k < n; ++k) {
      const auto& ang = entry.cb->vectors[k].angles;
      for (std::size_t i = 0; i < cfg_.d; ++i) {
        entry.re[k * cfg_.d + i] = std::cos(ang[i]);
        entry.im[k * cfg_.d + i] = std::sin(ang[i]);
      }
    }
    it = codebooks_.emplace(key, std::move(entry)).first;
  }
  return it->second;
}

const FhrrCodebook& ReasoningBackend::discrete_codebook(std::size_t n) const {
  return *cached(0, n).cb;
}

const FhrrCodebook& ReasoningBackend::continuous_codebook(std::size_t n) const {
  return *cached(1, n).cb;
}

PhasorVector ReasoningBackend::pmf_to_fhrr(const AttributePMF& pmf,
                                           const FhrrCodebook& codebook) const {
  const std::vector<double> p = core_probs(pmf);
  if (p.size() != codebook.size()) {
    throw std::invalid_argument("pmf_to_fhrr: PMF support does not match the codebook");
  }

  // Use the precomputed Cartesian tables when the codebook is one of our
  // cached ones; the summation order and terms are identical to
  // fhrr_bundle_weighted, so the result is bit-for-bit the same.
  const CachedCodebook* hit = nullptr;
  {
    std::lock_guard<std::mutex> lock(codebook_mutex_);
    for (const auto& [key, entry] : codebooks_) {
      if (entry.cb.get() == &codebook) {
        hit = &entry;
        break;
      }
    }
  }
  if (hit == nullptr) return fhrr_bundle_weighted(p, codebook.vectors);

  std::size_t nonzero = 0, last_nonzero = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] > 0.0) {
      ++nonzero;
      last_nonzero = k;
    }
  }
  if (nonzero == 1) return codebook.vectors[last_nonzero];

  const std::size_t d = cfg_.d;
  std::vector<double> re(d, 0.0), im(d, 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0.0) continue;
    const double w = p[k];
    const double* cr = hit->re.data() + k * d;
    const double* ci = hit->im.data() + k * d;
    for (std::size_t i = 0; i < d; ++i) {
      re[i] += w * cr[i];
      im[i] += w * ci[i];
    }
  }
  PhasorVector out;
  out.angles.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double mag = std::hypot(re[i], im[i]);
    out.angles[i] = (mag < kMagEps) ? 0.0 : canon_angle(std::atan2(im[i], re[i]));
  }
  return out;
}

double ReasoningBackend::rule_prob_arithmetic(bool plus, const PmfGrid& grid) const {
  const std::size_t n = grid[0].n_values();
  const FhrrCodebook& cb = continuous_codebook(n);
  const auto a = transform_grid(*this, grid, cb);

  auto combine = [&](const PhasorVector& x, const PhasorVector& y) {
    return plus ? fhrr_bind(x, y) : fhrr_unbind(x, y);
  };
  const double s1 = floored(fhrr_sim(combine(a[0], a[1]), a[2]));
  const double s2 = floored(fhrr_sim(combine(a[3], a[4]), a[5]));

  // Feasibility of the third row: mass of a31 (+/-) a32 that lands on a
  // representable value.
  const PhasorVector r3 = combine(a[6], a[7]);
  double h = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    h += floored(fhrr_sim(r3, cb.value(k)));
  }
  h = std::min(h, 1.0);
  return s1 * s2 * h;
}

double ReasoningBackend::rule_prob_progression(const PmfGrid& grid) const {
  const std::size_t n = grid[0].n_values();
  const FhrrCodebook& cb = continuous_codebook(n);
  const auto a = transform_grid(*this, grid, cb);

  const PhasorVector d11 = fhrr_unbind(a[1], a[0]);
  const PhasorVector d12 = fhrr_unbind(a[2], a[1]);
  const PhasorVector d21 = fhrr_unbind(a[4], a[3]);
  const PhasorVector d22 = fhrr_unbind(a[5], a[4]);
  const PhasorVector d31 = fhrr_unbind(a[7], a[6]);

  const double u = floored(fhrr_sim(d11, d12)) * floored(fhrr_sim(d21, d22)) *
                   floored(fhrr_sim(d11, d21)) * floored(fhrr_sim(d11, d31));
  // Non-degeneracy: a zero step would also satisfy constant.
  const double h = clamp01(1.0 - fhrr_sim(d11, fhrr_identity(cfg_.d)));
  return u * h;
}

double ReasoningBackend::rule_prob_distribute_three(const PmfGrid& grid) const {
  const std::size_t n = grid[0].n_values();
  if (n < 3) return 0.0;
  const auto a = transform_grid(*this, grid, discrete_codebook(n));

  const PhasorVector r1 = fhrr_bind(fhrr_bind(a[0], a[1]), a[2]);
  const PhasorVector r2 = fhrr_bind(fhrr_bind(a[3], a[4]), a[5]);
  const PhasorVector c1 = fhrr_bind(fhrr_bind(a[0], a[3]), a[6]);
  const PhasorVector c2 = fhrr_bind(fhrr_bind(a[1], a[4]), a[7]);

  // Distinctness: values must actually differ between rows.
  const double h1 = clamp01(1.0 - fhrr_sim(a[0], a[3]));
  const double h2 = clamp01(1.0 - fhrr_sim(a[2], a[5]));
  return floored(fhrr_sim(r1, r2)) * floored(fhrr_sim(c1, c2)) * h1 * h2;
}

double ReasoningBackend::rule_prob_constant(const PmfGrid& grid,
                                            FhrrCodebook::Kind kind) const {
  const std::size_t n = grid[0].n_values();
  const FhrrCodebook& cb = kind == FhrrCodebook::Kind::Discrete
                               ? discrete_codebook(n)
                               : continuous_codebook(n);
  const auto a = transform_grid(*this, grid, cb);
  return floored(fhrr_sim(a[0], a[1])) * floored(fhrr_sim(a[1], a[2])) *
         floored(fhrr_sim(a[3], a[4])) * floored(fhrr_sim(a[4], a[5])) *
         floored(fhrr_sim(a[6], a[7]));
}

double ReasoningBackend::position_rule_prob_pmf_space(const rpm::RuleKind& rule,
                                                      const PmfGrid& grid,
                                                      int n_slots) const {
  const std::uint32_t n_bitmaps = (1u << n_slots) - 1u;
  if (grid[0].n_values() != n_bitmaps) {
    throw std::invalid_argument("position_rule_prob_pmf_space: support mismatch");
  }
  auto p = [&](int cell, std::uint32_t bitmap) { return grid[cell].p[bitmap - 1]; };

  switch (rule.family) {
    case rpm::RuleFamily::ArithmeticPlus:
    case rpm::RuleFamily::ArithmeticMinus: {
      const bool plus = rule.family == rpm::RuleFamily::ArithmeticPlus;
      auto row_match = [&](int c1, int c2, int c3) {
        double s = 0.0;
        for (std::uint32_t k1 = 1; k1 <= n_bitmaps; ++k1) {
          const double p1 = p(c1, k1);
          if (p1 == 0.0) continue;
          for (std::uint32_t k2 = 1; k2 <= n_bitmaps; ++k2) {
            const std::uint32_t f = plus ? (k1 | k2) : (k1 & ~k2);
            if (f == 0) continue;
            s += p1 * p(c2, k2) * p(c3, f);
          }
        }
        return s;
      };
      double h = 1.0;
      if (!plus) {
        h = 0.0;
        for (std::uint32_t k1 = 1; k1 <= n_bitmaps; ++k1) {
          for (std::uint32_t k2 = 1; k2 <= n_bitmaps; ++k2) {
            if ((k1 & ~k2) != 0) h += p(6, k1) * p(7, k2);
          }
        }
        h = floored(std::min(h, 1.0));
      }
      return floored(row_match(0, 1, 2)) * floored(row_match(3, 4, 5)) * h;
    }
    case rpm::RuleFamily::Progression: {
      auto shift = [&](std::uint32_t k) {
        return rpm::rotate_bitmap(k, n_slots, rule.step);
      };
      auto row_match = [&](int c1, int c2, int c3) {
        double s = 0.0;
        for (std::uint32_t k = 1; k <= n_bitmaps; ++k) {
          s += p(c1, k) * p(c2, shift(k)) * p(c3, shift(shift(k)));
        }
        return s;
      };
      double h = 0.0;
      for (std::uint32_t k = 1; k <= n_bitmaps; ++k) h += p(6, k) * p(7, shift(k));
      return floored(row_match(0, 1, 2)) * floored(row_match(3, 4, 5)) *
             floored(std::min(h, 1.0));
    }
    default:
      throw std::invalid_argument(
          "position_rule_prob_pmf_space: only arithmetic and progression");
  }
}

std::vector<ScoredRule> ReasoningBackend::score_scalar_attribute(
    const PmfGrid& grid, bool continuous_allowed) const {
  const std::size_t n = grid[0].n_values();
  std::vector<ScoredRule> scores;

  double u_const = rule_prob_constant(grid, FhrrCodebook::Kind::Discrete);
  if (continuous_allowed) {
    u_const = std::max(u_const,
                       rule_prob_constant(grid, FhrrCodebook::Kind::Continuous));
  }
  scores.push_back({rpm::RuleKind{rpm::RuleFamily::Constant, 0}, u_const});

  if (continuous_allowed) {
    // Recover the most plausible step from the first row difference for
    // reporting; the score itself is step-agnostic.
    const FhrrCodebook& cb = continuous_codebook(n);
    const PhasorVector d11 = fhrr_unbind(pmf_to_fhrr(grid[1], cb),
                                         pmf_to_fhrr(grid[0], cb));
    int best_step = 1;
    double best_sim = -2.0;
    for (int s : kProgressionSteps) {
      const double sim = fhrr_sim(d11, fractional_power(cb.base, s));
      if (sim > best_sim) {
        best_sim = sim;
        best_step = s;
      }
    }
    scores.push_back({rpm::RuleKind{rpm::RuleFamily::Progression, best_step},
                      rule_prob_progression(grid)});
    scores.push_back({rpm::RuleKind{rpm::RuleFamily::ArithmeticPlus, 0},
                      rule_prob_arithmetic(true, grid)});
    scores.push_back({rpm::RuleKind{rpm::RuleFamily::ArithmeticMinus, 0},
                      rule_prob_arithmetic(false, grid)});
  }
  if (n >= 3) {
    scores.push_back({rpm::RuleKind{rpm::RuleFamily::DistributeThree, 0},
                      rule_prob_distribute_three(grid)});
  }
  return scores;
}

std::vector<ScoredRule> ReasoningBackend::score_position_attribute(
    const PmfGrid& grid, int n_slots) const {
  std::vector<ScoredRule> scores;
  scores.push_back({rpm::RuleKind{rpm::RuleFamily::Constant, 0},
                    rule_prob_constant(grid, FhrrCodebook::Kind::Discrete)});

  rpm::RuleKind best_prog{rpm::RuleFamily::Progression, 1};
  double best_u = -1.0;
  for (int s : kProgressionSteps) {
    const rpm::RuleKind rule{rpm::RuleFamily::Progression, s};
    const double u = position_rule_prob_pmf_space(rule, grid, n_slots);
    if (u > best_u) {
      best_u = u;
      best_prog = rule;
    }
  }
  scores.push_back({best_prog, best_u});

  scores.push_back({rpm::RuleKind{rpm::RuleFamily::ArithmeticPlus, 0},
                    position_rule_prob_pmf_space(
                        rpm::RuleKind{rpm::RuleFamily::ArithmeticPlus, 0}, grid,
                        n_slots)});
  scores.push_back({rpm::RuleKind{rpm::RuleFamily::ArithmeticMinus, 0},
                    position_rule_prob_pmf_space(
                        rpm::RuleKind{rpm::RuleFamily::ArithmeticMinus, 0}, grid,
                        n_slots)});
  scores.push_back({rpm::RuleKind{rpm::RuleFamily::DistributeThree, 0},
                    rule_prob_distribute_three(grid)});
  return scores;
}

AttributePMF ReasoningBackend::cleanup(const PhasorVector& v,
                                       const FhrrCodebook& codebook) const {
  AttributePMF out;
  out.p.resize(codebook.size());
  double max_logit = -1e300;
  for (std::size_t k = 0; k < codebook.size(); ++k) {
    out.p[k] = cfg_.softmax_temp * fhrr_sim(v, codebook.vectors[k]);
    max_logit = std::max(max_logit, out.p[k]);
  }
  double sum = 0.0;
  for (double& x : out.p) {
    x = std::exp(x - max_logit);
    sum += x;
  }
  for (double& x : out.p) x /= sum;
  return out;
}

AttributePMF ReasoningBackend::execute_scalar_rule(const rpm::RuleKind& rule,
                                                   const PmfGrid& grid) const {
  const std::size_t n = grid[0].n_values();
  switch (rule.family) {
    case rpm::RuleFamily::Constant:
      return grid[6];  // pass p^{(3,1)} through untouched
    case rpm::RuleFamily::ArithmeticPlus: {
      const FhrrCodebook& cb = continuous_codebook(n);
      return cleanup(fhrr_bind(pmf_to_fhrr(grid[6], cb), pmf_to_fhrr(grid[7], cb)),
                     cb);
    }
    case rpm::RuleFamily::ArithmeticMinus: {
      const FhrrCodebook& cb = continuous_codebook(n);
      return cleanup(
          fhrr_unbind(pmf_to_fhrr(grid[6], cb), pmf_to_fhrr(grid[7], cb)), cb);
    }
    case rpm::RuleFamily::Progression: {
      const FhrrCodebook& cb = continuous_codebook(n);
      const PhasorVector d11 = fhrr_unbind(pmf_to_fhrr(grid[1], cb),
                                           pmf_to_fhrr(grid[0], cb));
      return cleanup(fhrr_bind(pmf_to_fhrr(grid[7], cb), d11), cb);
    }
    case rpm::RuleFamily::DistributeThree: {
      const FhrrCodebook& cb = discrete_codebook(n);
      const auto a = transform_grid(*this, grid, cb);
      const PhasorVector r1 = fhrr_bind(fhrr_bind(a[0], a[1]), a[2]);
      return cleanup(fhrr_unbind(r1, fhrr_bind(a[6], a[7])), cb);
    }
  }
  throw std::invalid_argument("execute_scalar_rule: unknown rule");
}

AttributePMF ReasoningBackend::execute_position_rule(const rpm::RuleKind& rule,
                                                     const PmfGrid& grid,
                                                     int n_slots) const {
  const std::uint32_t n_bitmaps = (1u << n_slots) - 1u;
  switch (rule.family) {
    case rpm::RuleFamily::Constant:
      return grid[6];
    case rpm::RuleFamily::DistributeThree:
      return execute_scalar_rule(rule, grid);
    case rpm::RuleFamily::ArithmeticPlus:
    case rpm::RuleFamily::ArithmeticMinus: {
      const bool plus = rule.family == rpm::RuleFamily::ArithmeticPlus;
      AttributePMF out;
      out.p.assign(n_bitmaps, 0.0);
      double total = 0.0;
      for (std::uint32_t k1 = 1; k1 <= n_bitmaps; ++k1) {
        const double p1 = grid[6].p[k1 - 1];
        if (p1 == 0.0) continue;
        for (std::uint32_t k2 = 1; k2 <= n_bitmaps; ++k2) {
          const std::uint32_t f = plus ? (k1 | k2) : (k1 & ~k2);
          if (f == 0) continue;
          const double w = p1 * grid[7].p[k2 - 1];
          out.p[f - 1] += w;
          total += w;
        }
      }
      if (total <= 0.0) return uniform_pmf(static_cast<int>(n_bitmaps));
      for (double& x : out.p) x /= total;
      return out;
    }
    case rpm::RuleFamily::Progression: {
      AttributePMF out;
      out.p.assign(n_bitmaps, 0.0);
      for (std::uint32_t k = 1; k <= n_bitmaps; ++k) {
        out.p[rpm::rotate_bitmap(k, n_slots, rule.step) - 1] += grid[7].p[k - 1];
      }
      return out;
    }
  }
  throw std::invalid_argument("execute_position_rule: unknown rule");
}

namespace {

PmfGrid make_grid(const std::vector<std::array<PanelPMFs, 8>>& context, int component,
                  AttributePMF PanelPMFs::* field) {
  PmfGrid grid;
  for (int i = 0; i < 8; ++i) grid[i] = context[component][i].*field;
  return grid;
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

}  // namespace

SolveResult ReasoningBackend::solve_pmfs(
    rpm::ConstellationKind kind,
    const std::vector<std::array<PanelPMFs, 8>>& context,
    const std::vector<std::array<PanelPMFs, 8>>& candidates) const {
  const auto& con = rpm::Constellation::get(kind);
  const std::size_t n_components = con.components.size();
  if (context.size() != n_components || candidates.size() != n_components) {
    throw std::invalid_argument("solve_pmfs: component count mismatch");
  }

  SolveResult result;
  result.candidate_scores.fill(0.0);

  for (std::size_t c = 0; c < n_components; ++c) {
    const int n_slots = con.components[c].n_slots();
    ComponentTrace trace;
    trace.has_layout = n_slots > 1;

    // Predicted PMFs for the missing panel, in candidate-comparable form.
    AttributePMF pred_pos, pred_num, pred_type, pred_size, pred_color;

    if (n_slots > 1) {
      const PmfGrid pos_grid = make_grid(context, static_cast<int>(c), &PanelPMFs::pos);
      const PmfGrid num_grid = make_grid(context, static_cast<int>(c), &PanelPMFs::num);

      AttributeTrace pos_trace{rpm::Attribute::Position,
                               score_position_attribute(pos_grid, n_slots),
                               {}, 0.0};
      AttributeTrace num_trace{rpm::Attribute::Number,
                               score_scalar_attribute(num_grid, true), {}, 0.0};
      const ScoredRule& bp = best_rule(pos_trace.scores);
      const ScoredRule& bn = best_rule(num_trace.scores);
      pos_trace.chosen = bp.rule;
      pos_trace.best_u = bp.u;
      num_trace.chosen = bn.rule;
      num_trace.best_u = bn.u;

      // The layout attribute with the more plausible rule governs; the
      // other PMF is derived from it. Near-ties go to position: its
      // prediction determines the count exactly, so it is never less
      // informative, and the two scores come from different estimators
      // whose values agree only up to small numerical slack.
      if (bn.u > bp.u + 1e-6) {
        trace.governed = rpm::Attribute::Number;
        pred_num = execute_scalar_rule(bn.rule, num_grid);
        // Spread each count's mass uniformly over the bitmaps of that count.
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
      AttributeTrace t{attr, score_scalar_attribute(grid, continuous_allowed),
                       {}, 0.0};
      const double damp = inconsistency_damp(grid);
      for (ScoredRule& s : t.scores) s.u *= damp;
      const ScoredRule& b = best_rule(t.scores);
      t.chosen = b.rule;
      t.best_u = b.u;
      AttributePMF pred = with_inconsistency_slot(execute_scalar_rule(b.rule, grid));
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

SolveResult ReasoningBackend::solve(const rpm::RpmTest& test) const {
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
