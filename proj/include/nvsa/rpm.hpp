#pragma once

// RAVEN-style domain model: the seven panel constellations, object
// attributes, row-wise rules, a seeded synthetic test generator with
// ground-truth rules, and a rule verifier.
//
// Slot identities are global across constellations: 22 unique positions,
// with the single center/outer object shared as position 1 and the
// 3x3-grid middle shared with the out-in-center inner object as
// position 10.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nvsa::rpm {

enum class ConstellationKind {
  Center,
  Grid2x2,
  Grid3x3,
  LeftRight,
  UpDown,
  OutInCenter,
  OutInGrid,
};

inline constexpr std::array<ConstellationKind, 7> kAllConstellations = {
    ConstellationKind::Center,      ConstellationKind::Grid2x2,
    ConstellationKind::Grid3x3,     ConstellationKind::LeftRight,
    ConstellationKind::UpDown,      ConstellationKind::OutInCenter,
    ConstellationKind::OutInGrid,
};

inline constexpr int kNumTypes = 5;
inline constexpr int kNumSizes = 6;
inline constexpr int kNumColors = 10;
inline constexpr int kNumGlobalPositions = 22;

std::string constellation_name(ConstellationKind kind);
std::optional<ConstellationKind> constellation_from_name(const std::string& name);

// One independently-ruled group of slots. Slots are 1-based within the
// component; global_positions[i] is the global identity (1..22) of
// component slot i+1.
struct Component {
  std::vector<int> global_positions;

  int n_slots() const { return static_cast<int>(global_positions.size()); }
  bool single() const { return n_slots() == 1; }
};

struct Constellation {
  ConstellationKind kind;
  std::vector<Component> components;

  int n_pos() const;
  // Constellation-local slot (1..n_pos) -> (component index, local slot).
  std::pair<int, int> locate(int slot) const;
  int global_position(int slot) const;
  // First constellation-local slot of a component.
  int component_base(int component) const;

  static const Constellation& get(ConstellationKind kind);
};

enum class Attribute { Position, Number, Type, Size, Color };

std::string attribute_name(Attribute a);

enum class RuleFamily {
  Constant,
  Progression,
  ArithmeticPlus,
  ArithmeticMinus,
  DistributeThree,
};

struct RuleKind {
  RuleFamily family = RuleFamily::Constant;
  int step = 0;  // Progression only; one of {-2,-1,+1,+2}

  bool operator==(const RuleKind&) const = default;
};

std::string rule_name(const RuleKind& r);

struct ObjectSpec {
  int slot = 1;  // constellation-local, 1..n_pos
  int type = 1;  // 1..5
  int size = 1;  // 1..6
  int color = 1; // 1..10
};

struct Scene {
  ConstellationKind constellation = ConstellationKind::Center;
  std::vector<ObjectSpec> objects;  // distinct slots
};

// Compact per-component panel description used by the generator and the
// verifier. Bit k of occupancy is component-local slot k+1; objects in a
// component share one value per attribute.
struct ComponentPanel {
  std::uint32_t occupancy = 0;
  int type = 1;
  int size = 1;
  int color = 1;

  int count() const;
  bool operator==(const ComponentPanel&) const = default;
};

Scene materialize(ConstellationKind kind, const std::vector<ComponentPanel>& panels);

// Inverse of materialize; attribute fields are nullopt when the objects
// of a component disagree on that attribute.
struct ExtractedPanel {
  std::uint32_t occupancy = 0;
  std::optional<int> type, size, color;
};
std::vector<ExtractedPanel> extract_panels(const Scene& scene);

// Rules governing one component. Grid components carry a layout rule on
// exactly one of {Number, Position}; the other follows from it.
struct ComponentRules {
  bool has_layout_rule = false;
  Attribute governed = Attribute::Number;
  RuleKind layout;
  RuleKind type, size, color;
};

enum class AnswerMode { RavenBiased, FairTree };

std::string answer_mode_name(AnswerMode mode);
std::optional<AnswerMode> answer_mode_from_name(const std::string& name);

struct RpmTest {
  ConstellationKind constellation = ConstellationKind::Center;
  std::uint64_t seed = 0;
  AnswerMode mode = AnswerMode::RavenBiased;
  std::array<Scene, 8> context;     // row-major cells (1,1)..(3,2); (3,3) hidden
  std::array<Scene, 8> candidates;
  int answer_index = 1;             // 1..8
  std::vector<ComponentRules> rules;

  const Scene& correct() const { return candidates.at(answer_index - 1); }
};

// Third-panel value under a row rule for a scalar attribute with range
// 1..n. Returns nullopt when infeasible (result out of range).
std::optional<int> apply_rule_row(const RuleKind& rule, int v1, int v2, int n);

// Position variant on occupancy bitmaps over n_slots slots. Progression
// is a circular shift of the bitmap by the step. Returns nullopt when
// the result would be empty or the rule is inconsistent with (v1, v2).
std::optional<std::uint32_t> apply_rule_row_position(const RuleKind& rule,
                                                     std::uint32_t v1,
                                                     std::uint32_t v2,
                                                     int n_slots);

std::uint32_t rotate_bitmap(std::uint32_t bits, int n_slots, int step);

// Deterministic synthetic test generation; a pure function of
// (seed, constellation, mode).
RpmTest generate_test(std::uint64_t seed, ConstellationKind kind,
                      AnswerMode mode = AnswerMode::RavenBiased);

struct VerifyResult {
  bool ok = true;
  std::vector<std::string> violations;
};

// Substitutes the declared answer into cell (3,3) and checks every rule
// row-wise (and column-wise for distribute three).
VerifyResult verify_rules(const RpmTest& test);

// JSONL serialization (schema v:1, one test per line).
std::string to_jsonl_line(const RpmTest& test);
RpmTest from_jsonl_line(const std::string& line);

}  // namespace nvsa::rpm
