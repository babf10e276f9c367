#include "nvsa/rpm.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

#include "nvsa/rng.hpp"

namespace nvsa::rpm {

namespace {

Constellation make_constellation(ConstellationKind kind) {
  Constellation c;
  c.kind = kind;
  switch (kind) {
    case ConstellationKind::Center:
      c.components = {Component{{1}}};
      break;
    case ConstellationKind::Grid2x2:
      c.components = {Component{{2, 3, 4, 5}}};
      break;
    case ConstellationKind::Grid3x3:
      c.components = {Component{{6, 7, 8, 9, 10, 11, 12, 13, 14}}};
      break;
    case ConstellationKind::LeftRight:
      c.components = {Component{{15}}, Component{{16}}};
      break;
    case ConstellationKind::UpDown:
      c.components = {Component{{17}}, Component{{18}}};
      break;
    case ConstellationKind::OutInCenter:
      c.components = {Component{{1}}, Component{{10}}};
      break;
    case ConstellationKind::OutInGrid:
      // Outer single object plus an inner grid sharing the 3x3 slot
      // identities.
      c.components = {Component{{1}}, Component{{6, 7, 8, 9, 10, 11, 12, 13, 14}}};
      break;
  }
  return c;
}

}  // namespace

std::string constellation_name(ConstellationKind kind) {
  switch (kind) {
    case ConstellationKind::Center: return "center";
    case ConstellationKind::Grid2x2: return "2x2";
    case ConstellationKind::Grid3x3: return "3x3";
    case ConstellationKind::LeftRight: return "left_right";
    case ConstellationKind::UpDown: return "up_down";
    case ConstellationKind::OutInCenter: return "out_in_center";
    case ConstellationKind::OutInGrid: return "out_in_grid";
  }
  return "?";
}

std::optional<ConstellationKind> constellation_from_name(const std::string& name) {
  for (ConstellationKind k : kAllConstellations) {
    if (constellation_name(k) == name) return k;
  }
  return std::nullopt;
}

int Constellation::n_pos() const {
  int n = 0;
  for (const auto& comp : components) n += comp.n_slots();
  return n;
}

std::pair<int, int> Constellation::locate(int slot) const {
  int base = 0;
  for (std::size_t c = 0; c < components.size(); ++c) {
    const int n = components[c].n_slots();
    if (slot <= base + n) return {static_cast<int>(c), slot - base};
    base += n;
  }
  throw std::out_of_range("Constellation::locate: bad slot");
}

int Constellation::global_position(int slot) const {
  auto [c, local] = locate(slot);
  return components[c].global_positions[local - 1];
}

int Constellation::component_base(int component) const {
  int base = 0;
  for (int c = 0; c < component; ++c) base += components[c].n_slots();
  return base;
}

const Constellation& Constellation::get(ConstellationKind kind) {
  static const std::map<ConstellationKind, Constellation> table = [] {
    std::map<ConstellationKind, Constellation> t;
    for (ConstellationKind k : kAllConstellations) t.emplace(k, make_constellation(k));
    return t;
  }();
  return table.at(kind);
}

std::string attribute_name(Attribute a) {
  switch (a) {
    case Attribute::Position: return "position";
    case Attribute::Number: return "number";
    case Attribute::Type: return "type";
    case Attribute::Size: return "size";
    case Attribute::Color: return "color";
  }
  return "?";
}

std::string rule_name(const RuleKind& r) {
  switch (r.family) {
    case RuleFamily::Constant: return "constant";
    case RuleFamily::Progression: return "progression";
    case RuleFamily::ArithmeticPlus: return "arithmetic_plus";
    case RuleFamily::ArithmeticMinus: return "arithmetic_minus";
    case RuleFamily::DistributeThree: return "distribute_three";
  }
  return "?";
}

std::string answer_mode_name(AnswerMode mode) {
  return mode == AnswerMode::RavenBiased ? "raven" : "fair";
}

std::optional<AnswerMode> answer_mode_from_name(const std::string& name) {
  if (name == "raven") return AnswerMode::RavenBiased;
  if (name == "fair") return AnswerMode::FairTree;
  return std::nullopt;
}

int ComponentPanel::count() const { return std::popcount(occupancy); }

Scene materialize(ConstellationKind kind, const std::vector<ComponentPanel>& panels) {
  const Constellation& con = Constellation::get(kind);
  if (panels.size() != con.components.size()) {
    throw std::invalid_argument("materialize: component count mismatch");
  }
  Scene scene;
  scene.constellation = kind;
  for (std::size_t c = 0; c < panels.size(); ++c) {
    const int base = con.component_base(static_cast<int>(c));
    const int n = con.components[c].n_slots();
    for (int k = 0; k < n; ++k) {
      if (panels[c].occupancy & (1u << k)) {
        scene.objects.push_back(ObjectSpec{base + k + 1, panels[c].type,
                                           panels[c].size, panels[c].color});
      }
    }
  }
  return scene;
}

std::vector<ExtractedPanel> extract_panels(const Scene& scene) {
  const Constellation& con = Constellation::get(scene.constellation);
  std::vector<ExtractedPanel> out(con.components.size());
  std::vector<bool> first(con.components.size(), true);
  for (const ObjectSpec& obj : scene.objects) {
    auto [c, local] = con.locate(obj.slot);
    ExtractedPanel& panel = out[c];
    panel.occupancy |= 1u << (local - 1);
    if (first[c]) {
      panel.type = obj.type;
      panel.size = obj.size;
      panel.color = obj.color;
      first[c] = false;
    } else {
      if (panel.type && *panel.type != obj.type) panel.type.reset();
      if (panel.size && *panel.size != obj.size) panel.size.reset();
      if (panel.color && *panel.color != obj.color) panel.color.reset();
    }
  }
  return out;
}

std::optional<int> apply_rule_row(const RuleKind& rule, int v1, int v2, int n) {
  switch (rule.family) {
    case RuleFamily::Constant:
      if (v1 != v2) return std::nullopt;
      return v1;
    case RuleFamily::Progression: {
      if (v2 - v1 != rule.step) return std::nullopt;
      const int v3 = v2 + rule.step;
      if (v3 < 1 || v3 > n) return std::nullopt;
      return v3;
    }
    case RuleFamily::ArithmeticPlus: {
      const int v3 = v1 + v2;
      if (v3 > n) return std::nullopt;
      return v3;
    }
    case RuleFamily::ArithmeticMinus: {
      const int v3 = v1 - v2;
      if (v3 < 1) return std::nullopt;
      return v3;
    }
    case RuleFamily::DistributeThree:
      // Not determined by two values alone.
      return std::nullopt;
  }
  return std::nullopt;
}

std::uint32_t rotate_bitmap(std::uint32_t bits, int n_slots, int step) {
  const std::uint32_t mask = (n_slots >= 32) ? ~0u : ((1u << n_slots) - 1u);
  int s = ((step % n_slots) + n_slots) % n_slots;
  bits &= mask;
  return ((bits << s) | (bits >> (n_slots - s))) & mask;
}

std::optional<std::uint32_t> apply_rule_row_position(const RuleKind& rule,
                                                     std::uint32_t v1,
                                                     std::uint32_t v2,
                                                     int n_slots) {
  switch (rule.family) {
    case RuleFamily::Constant:
      if (v1 != v2) return std::nullopt;
      return v1;
    case RuleFamily::Progression: {
      if (rotate_bitmap(v1, n_slots, rule.step) != v2) return std::nullopt;
      return rotate_bitmap(v2, n_slots, rule.step);
    }
    case RuleFamily::ArithmeticPlus:
      return v1 | v2;
    case RuleFamily::ArithmeticMinus: {
      const std::uint32_t v3 = v1 & ~v2;
      if (v3 == 0) return std::nullopt;
      return v3;
    }
    case RuleFamily::DistributeThree:
      return std::nullopt;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Generation
// ---------------------------------------------------------------------------

namespace {

using nvsa::CounterRng;

struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int attr_range(Attribute a, int n_slots) {
  switch (a) {
    case Attribute::Type: return kNumTypes;
    case Attribute::Size: return kNumSizes;
    case Attribute::Color: return kNumColors;
    case Attribute::Number: return n_slots;
    case Attribute::Position: return (1 << n_slots) - 1;
  }
  return 0;
}

std::vector<int> feasible_steps(int n) {
  std::vector<int> steps;
  if (n >= 3) { steps.push_back(1); steps.push_back(-1); }
  if (n >= 5) { steps.push_back(2); steps.push_back(-2); }
  return steps;
}

RuleKind draw_scalar_rule(CounterRng& rng, int n, bool discrete_only) {
  std::vector<RuleFamily> families = {RuleFamily::Constant};
  if (n >= 3) families.push_back(RuleFamily::DistributeThree);
  if (!discrete_only) {
    if (n >= 2) {
      families.push_back(RuleFamily::ArithmeticPlus);
      families.push_back(RuleFamily::ArithmeticMinus);
    }
    if (n >= 3) families.push_back(RuleFamily::Progression);
  }
  RuleKind rule;
  rule.family = families[rng.next_below(families.size())];
  if (rule.family == RuleFamily::Progression) {
    auto steps = feasible_steps(n);
    rule.step = steps[rng.next_below(steps.size())];
  }
  return rule;
}

RuleKind draw_position_rule(CounterRng& rng, int n_slots) {
  std::vector<RuleFamily> families = {RuleFamily::Constant,
                                      RuleFamily::DistributeThree,
                                      RuleFamily::ArithmeticPlus,
                                      RuleFamily::Progression};
  if (n_slots >= 2) families.push_back(RuleFamily::ArithmeticMinus);
  RuleKind rule;
  rule.family = families[rng.next_below(families.size())];
  if (rule.family == RuleFamily::Progression) {
    const int mags[] = {1, 2};
    const int mag = mags[rng.next_below(2)];
    rule.step = rng.next_bool() ? mag : -mag;
  }
  return rule;
}

// Three distinct values and a Latin-square arrangement: rows are cyclic
// shifts of each other, which also makes every column distinct.
template <typename T>
std::array<T, 9> latin_rows(CounterRng& rng, const std::array<T, 3>& values) {
  std::array<T, 3> row = values;
  for (int i = 2; i > 0; --i) {
    std::swap(row[i], row[rng.next_below(i + 1)]);
  }
  const int dir = rng.next_bool() ? 1 : 2;
  std::array<T, 9> grid{};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      grid[r * 3 + c] = row[(c + r * dir) % 3];
    }
  }
  return grid;
}

std::array<int, 9> build_scalar_grid(CounterRng& rng, const RuleKind& rule, int n) {
  std::array<int, 9> grid{};
  switch (rule.family) {
    case RuleFamily::Constant:
      for (int r = 0; r < 3; ++r) {
        const int v = 1 + static_cast<int>(rng.next_below(n));
        grid[r * 3] = grid[r * 3 + 1] = grid[r * 3 + 2] = v;
      }
      break;
    case RuleFamily::Progression: {
      const int s = rule.step;
      const int lo = (s > 0) ? 1 : 1 - 2 * s;
      const int hi = (s > 0) ? n - 2 * s : n;
      if (hi < lo) throw GenerationError("progression infeasible");
      for (int r = 0; r < 3; ++r) {
        const int v = lo + static_cast<int>(rng.next_below(hi - lo + 1));
        grid[r * 3] = v;
        grid[r * 3 + 1] = v + s;
        grid[r * 3 + 2] = v + 2 * s;
      }
      break;
    }
    case RuleFamily::ArithmeticPlus:
      if (n < 2) throw GenerationError("arithmetic plus infeasible");
      for (int r = 0; r < 3; ++r) {
        const int v1 = 1 + static_cast<int>(rng.next_below(n - 1));
        const int v2 = 1 + static_cast<int>(rng.next_below(n - v1));
        grid[r * 3] = v1;
        grid[r * 3 + 1] = v2;
        grid[r * 3 + 2] = v1 + v2;
      }
      break;
    case RuleFamily::ArithmeticMinus:
      if (n < 2) throw GenerationError("arithmetic minus infeasible");
      for (int r = 0; r < 3; ++r) {
        const int v1 = 2 + static_cast<int>(rng.next_below(n - 1));
        const int v2 = 1 + static_cast<int>(rng.next_below(v1 - 1));
        grid[r * 3] = v1;
        grid[r * 3 + 1] = v2;
        grid[r * 3 + 2] = v1 - v2;
      }
      break;
    case RuleFamily::DistributeThree: {
      if (n < 3) throw GenerationError("distribute three infeasible");
      std::vector<int> pool(n);
      std::iota(pool.begin(), pool.end(), 1);
      for (int i = 0; i < 3; ++i) {
        std::swap(pool[i], pool[i + rng.next_below(n - i)]);
      }
      grid = latin_rows<int>(rng, {pool[0], pool[1], pool[2]});
      break;
    }
  }
  return grid;
}

std::uint32_t random_bitmap(CounterRng& rng, int n_slots, int min_bits = 1) {
  const std::uint32_t max = (1u << n_slots) - 1u;
  for (int tries = 0; tries < 200; ++tries) {
    const std::uint32_t b = 1u + static_cast<std::uint32_t>(rng.next_below(max));
    if (std::popcount(b) >= min_bits) return b;
  }
  throw GenerationError("random_bitmap exhausted");
}

std::array<std::uint32_t, 9> build_position_grid(CounterRng& rng, const RuleKind& rule,
                                                 int n_slots) {
  std::array<std::uint32_t, 9> grid{};
  switch (rule.family) {
    case RuleFamily::Constant:
      for (int r = 0; r < 3; ++r) {
        const std::uint32_t b = random_bitmap(rng, n_slots);
        grid[r * 3] = grid[r * 3 + 1] = grid[r * 3 + 2] = b;
      }
      break;
    case RuleFamily::Progression:
      for (int r = 0; r < 3; ++r) {
        std::uint32_t b = random_bitmap(rng, n_slots);
        for (int tries = 0; tries < 50; ++tries) {
          if (rotate_bitmap(b, n_slots, rule.step) != b) break;
          b = random_bitmap(rng, n_slots);
        }
        grid[r * 3] = b;
        grid[r * 3 + 1] = rotate_bitmap(b, n_slots, rule.step);
        grid[r * 3 + 2] = rotate_bitmap(b, n_slots, 2 * rule.step);
      }
      break;
    case RuleFamily::ArithmeticPlus:
      for (int r = 0; r < 3; ++r) {
        std::uint32_t a = 0, b = 0;
        bool ok = false;
        for (int tries = 0; tries < 200; ++tries) {
          a = random_bitmap(rng, n_slots);
          b = random_bitmap(rng, n_slots);
          const std::uint32_t u = a | b;
          if (u != a && u != b) { ok = true; break; }
        }
        if (!ok) throw GenerationError("position plus infeasible");
        grid[r * 3] = a;
        grid[r * 3 + 1] = b;
        grid[r * 3 + 2] = a | b;
      }
      break;
    case RuleFamily::ArithmeticMinus:
      for (int r = 0; r < 3; ++r) {
        std::uint32_t a = 0, b = 0;
        bool ok = false;
        for (int tries = 0; tries < 200; ++tries) {
          a = random_bitmap(rng, n_slots, 2);
          b = random_bitmap(rng, n_slots);
          if ((a & b) != 0 && (a & ~b) != 0) { ok = true; break; }
        }
        if (!ok) throw GenerationError("position minus infeasible");
        grid[r * 3] = a;
        grid[r * 3 + 1] = b;
        grid[r * 3 + 2] = a & ~b;
      }
      break;
    case RuleFamily::DistributeThree: {
      std::array<std::uint32_t, 3> vals{};
      for (int i = 0; i < 3; ++i) {
        bool ok = false;
        for (int tries = 0; tries < 200 && !ok; ++tries) {
          const std::uint32_t b = random_bitmap(rng, n_slots);
          ok = true;
          for (int j = 0; j < i; ++j) ok = ok && vals[j] != b;
          if (ok) vals[i] = b;
        }
        if (!ok) throw GenerationError("position distribute three infeasible");
      }
      grid = latin_rows<std::uint32_t>(rng, vals);
      break;
    }
  }
  return grid;
}

// Menu of every rule the solver scores for a value range of n.
std::vector<RuleKind> scalar_rule_menu(int n, bool discrete_only) {
  std::vector<RuleKind> rules = {{RuleFamily::Constant, 0}};
  if (n >= 3) rules.push_back({RuleFamily::DistributeThree, 0});
  if (!discrete_only) {
    if (n >= 2) {
      rules.push_back({RuleFamily::ArithmeticPlus, 0});
      rules.push_back({RuleFamily::ArithmeticMinus, 0});
    }
    for (int s : feasible_steps(n)) rules.push_back({RuleFamily::Progression, s});
  }
  return rules;
}

std::vector<RuleKind> position_rule_menu(int n_slots) {
  std::vector<RuleKind> rules = {{RuleFamily::Constant, 0},
                                 {RuleFamily::DistributeThree, 0},
                                 {RuleFamily::ArithmeticPlus, 0}};
  if (n_slots >= 2) rules.push_back({RuleFamily::ArithmeticMinus, 0});
  for (int s : {1, -1, 2, -2}) rules.push_back({RuleFamily::Progression, s});
  return rules;
}

// Distribute-three consistency with the eight context cells: rows 1-2
// hold the same three distinct values without repeating panels, and the
// leading two columns are permutations of each other. Returns the
// remaining third value.
template <typename T>
std::optional<T> distribute_three_prediction(const std::array<T, 9>& g) {
  const std::set<T> s1{g[0], g[1], g[2]}, s2{g[3], g[4], g[5]};
  if (s1.size() != 3 || s1 != s2) return std::nullopt;
  if (g[0] == g[3] || g[2] == g[5]) return std::nullopt;
  const std::multiset<T> c1{g[0], g[3], g[6]}, c2{g[1], g[4], g[7]};
  if (c1 != c2) return std::nullopt;
  if (g[6] == g[7]) return std::nullopt;
  for (T v : s1) {
    if (v != g[6] && v != g[7]) return v;
  }
  return std::nullopt;
}

// Value a rule would place in the missing cell if it is consistent with
// the eight context cells; nullopt when the rule does not apply.
std::optional<int> scalar_context_prediction(const RuleKind& r,
                                             const std::array<int, 9>& g, int n) {
  if (r.family == RuleFamily::DistributeThree) {
    return distribute_three_prediction<int>(g);
  }
  for (int c : {0, 3}) {
    const auto v = apply_rule_row(r, g[c], g[c + 1], n);
    if (!v.has_value() || *v != g[c + 2]) return std::nullopt;
  }
  return apply_rule_row(r, g[6], g[7], n);
}

std::optional<std::uint32_t> position_context_prediction(
    const RuleKind& r, const std::array<std::uint32_t, 9>& g, int n_slots) {
  if (r.family == RuleFamily::DistributeThree) {
    return distribute_three_prediction<std::uint32_t>(g);
  }
  for (int c : {0, 3}) {
    const auto v = apply_rule_row_position(r, g[c], g[c + 1], n_slots);
    if (!v.has_value() || *v != g[c + 2]) return std::nullopt;
  }
  return apply_rule_row_position(r, g[6], g[7], n_slots);
}

// Well-posedness of a scalar attribute grid: no rule other than the
// declared one may fit the context, otherwise the solver's rule choice
// (and possibly its prediction) is ambiguous.
bool scalar_well_posed(const std::array<int, 9>& g, int n, bool discrete_only,
                       const RuleKind& declared) {
  for (const RuleKind& r : scalar_rule_menu(n, discrete_only)) {
    if (r == declared) continue;
    if (scalar_context_prediction(r, g, n).has_value()) return false;
  }
  return true;
}

// Weaker layout condition: rules that coincidentally fit the paired
// number/position grid are fine as long as they predict the actual
// missing-cell value (e.g. a constant position rule always implies a
// constant object count).
bool counts_well_posed(const std::array<int, 9>& g, int n_slots) {
  for (const RuleKind& r : scalar_rule_menu(n_slots, /*discrete_only=*/false)) {
    const auto pred = scalar_context_prediction(r, g, n_slots);
    if (pred.has_value() && *pred != g[8]) return false;
  }
  return true;
}

bool occupancy_well_posed(const std::array<std::uint32_t, 9>& g, int n_slots) {
  for (const RuleKind& r : position_rule_menu(n_slots)) {
    const auto pred = position_context_prediction(r, g, n_slots);
    if (pred.has_value() && *pred != g[8]) return false;
  }
  return true;
}

std::uint32_t random_occupancy_of_count(CounterRng& rng, int n_slots, int count) {
  std::vector<int> slots(n_slots);
  std::iota(slots.begin(), slots.end(), 0);
  for (int i = 0; i < count; ++i) {
    std::swap(slots[i], slots[i + rng.next_below(n_slots - i)]);
  }
  std::uint32_t bits = 0;
  for (int i = 0; i < count; ++i) bits |= 1u << slots[i];
  return bits;
}

struct ComponentGrids {
  ComponentRules rules;
  std::array<std::uint32_t, 9> occupancy{};  // per cell
  std::array<int, 9> type{}, size{}, color{};
};

ComponentGrids build_component(CounterRng& rng, const Component& comp) {
  ComponentGrids g;
  const int n_slots = comp.n_slots();

  if (comp.single()) {
    g.rules.has_layout_rule = false;
    g.occupancy.fill(1u);
  } else {
    g.rules.has_layout_rule = true;
    g.rules.governed = rng.next_bool() ? Attribute::Number : Attribute::Position;
    if (g.rules.governed == Attribute::Number) {
      g.rules.layout = draw_scalar_rule(rng, n_slots, /*discrete_only=*/false);
      const auto counts = build_scalar_grid(rng, g.rules.layout, n_slots);
      for (int i = 0; i < 9; ++i) {
        g.occupancy[i] = random_occupancy_of_count(rng, n_slots, counts[i]);
      }
    } else {
      g.rules.layout = draw_position_rule(rng, n_slots);
      g.occupancy = build_position_grid(rng, g.rules.layout, n_slots);
    }
    std::array<int, 9> counts{};
    for (int i = 0; i < 9; ++i) counts[i] = std::popcount(g.occupancy[i]);
    if (!counts_well_posed(counts, n_slots) ||
        !occupancy_well_posed(g.occupancy, n_slots)) {
      throw GenerationError("ambiguous layout grid");
    }
  }

  g.rules.type = draw_scalar_rule(rng, kNumTypes, /*discrete_only=*/true);
  g.rules.size = draw_scalar_rule(rng, kNumSizes, /*discrete_only=*/false);
  g.rules.color = draw_scalar_rule(rng, kNumColors, /*discrete_only=*/false);
  g.type = build_scalar_grid(rng, g.rules.type, kNumTypes);
  g.size = build_scalar_grid(rng, g.rules.size, kNumSizes);
  g.color = build_scalar_grid(rng, g.rules.color, kNumColors);
  if (!scalar_well_posed(g.type, kNumTypes, /*discrete_only=*/true, g.rules.type) ||
      !scalar_well_posed(g.size, kNumSizes, /*discrete_only=*/false, g.rules.size) ||
      !scalar_well_posed(g.color, kNumColors, /*discrete_only=*/false,
                         g.rules.color)) {
    throw GenerationError("ambiguous attribute grid");
  }
  return g;
}

std::vector<ComponentPanel> cell_panels(const std::vector<ComponentGrids>& grids, int cell) {
  std::vector<ComponentPanel> panels;
  panels.reserve(grids.size());
  for (const auto& g : grids) {
    panels.push_back(ComponentPanel{g.occupancy[cell], g.type[cell], g.size[cell],
                                    g.color[cell]});
  }
  return panels;
}

// A single-field modification of the correct completion; used by both
// answer-set modes.
struct Mutation {
  int component = 0;
  Attribute attr = Attribute::Type;

  std::uint32_t occupancy = 0;  // layout attributes
  int value = 0;                // type/size/color

  void apply(std::vector<ComponentPanel>& panels) const {
    ComponentPanel& p = panels[component];
    switch (attr) {
      case Attribute::Number:
      case Attribute::Position: p.occupancy = occupancy; break;
      case Attribute::Type: p.type = value; break;
      case Attribute::Size: p.size = value; break;
      case Attribute::Color: p.color = value; break;
    }
  }
};

std::vector<std::pair<int, Attribute>> attribute_pool(
    const std::vector<ComponentGrids>& grids) {
  std::vector<std::pair<int, Attribute>> pool;
  for (std::size_t c = 0; c < grids.size(); ++c) {
    if (grids[c].rules.has_layout_rule) {
      pool.emplace_back(static_cast<int>(c), grids[c].rules.governed);
    }
    pool.emplace_back(static_cast<int>(c), Attribute::Type);
    pool.emplace_back(static_cast<int>(c), Attribute::Size);
    pool.emplace_back(static_cast<int>(c), Attribute::Color);
  }
  return pool;
}

Mutation draw_mutation(CounterRng& rng, const Constellation& con,
                       const std::vector<ComponentPanel>& correct, int component,
                       Attribute attr) {
  Mutation m;
  m.component = component;
  m.attr = attr;
  const ComponentPanel& cur = correct[component];
  const int n_slots = con.components[component].n_slots();
  switch (attr) {
    case Attribute::Number: {
      int alt = cur.count();
      while (alt == cur.count()) {
        alt = 1 + static_cast<int>(rng.next_below(n_slots));
      }
      m.occupancy = random_occupancy_of_count(rng, n_slots, alt);
      break;
    }
    case Attribute::Position: {
      std::uint32_t alt = cur.occupancy;
      for (int tries = 0; alt == cur.occupancy; ++tries) {
        // Keep the object count when an alternative exists.
        if (cur.count() < n_slots || tries > 50) {
          alt = (tries > 50) ? random_bitmap(rng, n_slots)
                             : random_occupancy_of_count(rng, n_slots, cur.count());
        } else {
          alt = random_bitmap(rng, n_slots);
        }
      }
      m.occupancy = alt;
      break;
    }
    case Attribute::Type:
    case Attribute::Size:
    case Attribute::Color: {
      const int n = attr_range(attr, n_slots);
      const int cur_v = (attr == Attribute::Type) ? cur.type
                      : (attr == Attribute::Size) ? cur.size
                                                  : cur.color;
      int alt = cur_v;
      while (alt == cur_v) alt = 1 + static_cast<int>(rng.next_below(n));
      m.value = alt;
      break;
    }
  }
  return m;
}

void make_answer_set(CounterRng& rng, const Constellation& con,
                     const std::vector<ComponentGrids>& grids,
                     const std::vector<ComponentPanel>& correct, AnswerMode mode,
                     std::array<std::vector<ComponentPanel>, 8>& candidates,
                     int& answer_index) {
  auto pool = attribute_pool(grids);

  std::vector<std::vector<ComponentPanel>> distractors;
  if (mode == AnswerMode::RavenBiased) {
    while (distractors.size() < 7) {
      bool placed = false;
      for (int tries = 0; tries < 200 && !placed; ++tries) {
        const auto& [c, attr] = pool[rng.next_below(pool.size())];
        Mutation m = draw_mutation(rng, con, correct, c, attr);
        std::vector<ComponentPanel> cand = correct;
        m.apply(cand);
        if (cand == correct) continue;
        bool dup = false;
        for (const auto& d : distractors) dup = dup || d == cand;
        if (dup) continue;
        distractors.push_back(std::move(cand));
        placed = true;
      }
      if (!placed) throw GenerationError("answer set exhausted");
    }
  } else {
    // Three binary modification levels yield eight leaves, one of which
    // is the unmodified completion; each modified attribute splits the
    // candidate set in half.
    std::vector<std::pair<int, Attribute>> non_constant, constant;
    for (const auto& [c, attr] : pool) {
      const ComponentRules& r = grids[c].rules;
      const RuleKind rule = (attr == Attribute::Type) ? r.type
                          : (attr == Attribute::Size) ? r.size
                          : (attr == Attribute::Color) ? r.color
                                                       : r.layout;
      if (rule.family == RuleFamily::Constant) {
        constant.emplace_back(c, attr);
      } else {
        non_constant.emplace_back(c, attr);
      }
    }
    auto shuffle = [&rng](std::vector<std::pair<int, Attribute>>& v) {
      for (std::size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[rng.next_below(i)]);
      }
    };
    shuffle(non_constant);
    shuffle(constant);
    std::vector<std::pair<int, Attribute>> chosen = non_constant;
    chosen.insert(chosen.end(), constant.begin(), constant.end());
    if (chosen.size() < 3) throw GenerationError("fair tree needs 3 attributes");
    chosen.resize(3);

    std::array<Mutation, 3> mutations;
    for (int l = 0; l < 3; ++l) {
      mutations[l] = draw_mutation(rng, con, correct, chosen[l].first, chosen[l].second);
    }
    for (int mask = 1; mask < 8; ++mask) {
      std::vector<ComponentPanel> cand = correct;
      for (int l = 0; l < 3; ++l) {
        if (mask & (1 << l)) mutations[l].apply(cand);
      }
      distractors.push_back(std::move(cand));
    }
  }

  answer_index = 1 + static_cast<int>(rng.next_below(8));
  int d = 0;
  for (int i = 0; i < 8; ++i) {
    candidates[i] = (i == answer_index - 1) ? correct : distractors[d++];
  }
}

}  // namespace

RpmTest generate_test(std::uint64_t seed, ConstellationKind kind, AnswerMode mode) {
  const Constellation& con = Constellation::get(kind);
  const std::uint64_t stream =
      hash_combine(hash_str("nvsa.rpm.generate"),
                   hash_combine(static_cast<std::uint64_t>(kind),
                                static_cast<std::uint64_t>(mode)));
  for (int attempt = 0; attempt < 64; ++attempt) {
    CounterRng rng(hash_combine(seed, attempt), stream);
    try {
      std::vector<ComponentGrids> grids;
      grids.reserve(con.components.size());
      for (const Component& comp : con.components) {
        grids.push_back(build_component(rng, comp));
      }

      RpmTest test;
      test.constellation = kind;
      test.seed = seed;
      test.mode = mode;
      for (const auto& g : grids) test.rules.push_back(g.rules);

      for (int cell = 0; cell < 8; ++cell) {
        test.context[cell] = materialize(kind, cell_panels(grids, cell));
      }
      const auto correct = cell_panels(grids, 8);

      std::array<std::vector<ComponentPanel>, 8> cand_panels;
      make_answer_set(rng, con, grids, correct, mode, cand_panels, test.answer_index);
      for (int i = 0; i < 8; ++i) {
        test.candidates[i] = materialize(kind, cand_panels[i]);
      }

      if (!verify_rules(test).ok) continue;
      return test;
    } catch (const GenerationError&) {
      continue;
    }
  }
  throw std::runtime_error("generate_test: retries exhausted for seed " +
                           std::to_string(seed));
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

namespace {

template <typename T>
bool check_distribute_three(const std::array<T, 9>& g) {
  for (int r = 0; r < 3; ++r) {
    const T a = g[r * 3], b = g[r * 3 + 1], c = g[r * 3 + 2];
    if (a == b || b == c || a == c) return false;
  }
  // Same value set in every row.
  for (int r = 1; r < 3; ++r) {
    for (int i = 0; i < 3; ++i) {
      bool found = false;
      for (int j = 0; j < 3; ++j) found = found || g[r * 3 + i] == g[j];
      if (!found) return false;
    }
  }
  // Distinct permutations per row.
  for (int r1 = 0; r1 < 3; ++r1) {
    for (int r2 = r1 + 1; r2 < 3; ++r2) {
      bool same = true;
      for (int c = 0; c < 3; ++c) same = same && g[r1 * 3 + c] == g[r2 * 3 + c];
      if (same) return false;
    }
  }
  // Distinct values per column.
  for (int c = 0; c < 3; ++c) {
    const T a = g[c], b = g[3 + c], d = g[6 + c];
    if (a == b || b == d || a == d) return false;
  }
  return true;
}

bool check_scalar_grid(const std::array<int, 9>& g, const RuleKind& rule, int n) {
  if (rule.family == RuleFamily::DistributeThree) {
    return check_distribute_three<int>(g);
  }
  for (int r = 0; r < 3; ++r) {
    const auto v3 = apply_rule_row(rule, g[r * 3], g[r * 3 + 1], n);
    if (!v3 || *v3 != g[r * 3 + 2]) return false;
  }
  return true;
}

bool check_position_grid(const std::array<std::uint32_t, 9>& g, const RuleKind& rule,
                         int n_slots) {
  if (rule.family == RuleFamily::DistributeThree) {
    return check_distribute_three<std::uint32_t>(g);
  }
  for (int r = 0; r < 3; ++r) {
    const auto v3 = apply_rule_row_position(rule, g[r * 3], g[r * 3 + 1], n_slots);
    if (!v3 || *v3 != g[r * 3 + 2]) return false;
  }
  return true;
}

}  // namespace

VerifyResult verify_rules(const RpmTest& test) {
  VerifyResult result;
  const Constellation& con = Constellation::get(test.constellation);
  if (test.answer_index < 1 || test.answer_index > 8) {
    result.ok = false;
    result.violations.push_back("answer_index out of range");
    return result;
  }
  if (test.rules.size() != con.components.size()) {
    result.ok = false;
    result.violations.push_back("rule set does not match constellation components");
    return result;
  }

  std::array<std::vector<ExtractedPanel>, 9> panels;
  for (int i = 0; i < 8; ++i) panels[i] = extract_panels(test.context[i]);
  panels[8] = extract_panels(test.correct());

  for (std::size_t c = 0; c < con.components.size(); ++c) {
    const ComponentRules& rules = test.rules[c];
    const int n_slots = con.components[c].n_slots();
    const std::string where = "component " + std::to_string(c);

    std::array<std::uint32_t, 9> occ{};
    std::array<int, 9> type{}, size{}, color{};
    bool consistent = true;
    for (int i = 0; i < 9; ++i) {
      const ExtractedPanel& p = panels[i][c];
      if (p.occupancy == 0) {
        result.violations.push_back(where + ": empty panel " + std::to_string(i));
        consistent = false;
        break;
      }
      if (!p.type || !p.size || !p.color) {
        result.violations.push_back(where + ": inconsistent attribute values in panel " +
                                    std::to_string(i));
        consistent = false;
        break;
      }
      occ[i] = p.occupancy;
      type[i] = *p.type;
      size[i] = *p.size;
      color[i] = *p.color;
    }
    if (!consistent) continue;

    if (rules.has_layout_rule) {
      if (rules.governed == Attribute::Number) {
        std::array<int, 9> counts{};
        for (int i = 0; i < 9; ++i) counts[i] = std::popcount(occ[i]);
        if (!check_scalar_grid(counts, rules.layout, n_slots)) {
          result.violations.push_back(where + ": number rule violated (" +
                                      rule_name(rules.layout) + ")");
        }
      } else if (!check_position_grid(occ, rules.layout, n_slots)) {
        result.violations.push_back(where + ": position rule violated (" +
                                    rule_name(rules.layout) + ")");
      }
    } else {
      for (int i = 0; i < 9; ++i) {
        if (occ[i] != 1u) {
          result.violations.push_back(where + ": single-slot occupancy violated");
          break;
        }
      }
    }

    if (!check_scalar_grid(type, rules.type, kNumTypes)) {
      result.violations.push_back(where + ": type rule violated (" +
                                  rule_name(rules.type) + ")");
    }
    if (!check_scalar_grid(size, rules.size, kNumSizes)) {
      result.violations.push_back(where + ": size rule violated (" +
                                  rule_name(rules.size) + ")");
    }
    if (!check_scalar_grid(color, rules.color, kNumColors)) {
      result.violations.push_back(where + ": color rule violated (" +
                                  rule_name(rules.color) + ")");
    }
  }

  result.ok = result.violations.empty();
  return result;
}

}  // namespace nvsa::rpm
