#pragma once

// Object dictionary W and bundled-scene coding: every (type, size,
// color, position) combination gets a quasi-orthogonal product vector;
// scenes are bundles of object rows and are decoded with a thresholded
// similarity search over all m = 6600 rows.

#include <cstdint>
#include <vector>

#include "nvsa/bipolar.hpp"
#include "nvsa/rpm.hpp"

namespace nvsa {

inline constexpr double kDefaultDecodeThreshold = 0.23;

struct ObjectCode {
  int type = 1;   // 1..5
  int size = 1;   // 1..6
  int color = 1;  // 1..10
  int pos = 1;    // global position, 1..22

  bool operator==(const ObjectCode&) const = default;
  auto operator<=>(const ObjectCode&) const = default;
};

class ObjectDictionary {
 public:
  static constexpr std::size_t kRows =
      static_cast<std::size_t>(rpm::kNumTypes) * rpm::kNumSizes * rpm::kNumColors *
      rpm::kNumGlobalPositions;  // 6600

  explicit ObjectDictionary(std::uint64_t seed, std::size_t d = kBipolarDim);

  std::size_t dim() const { return d_; }
  std::uint64_t seed() const { return seed_; }

  static std::size_t row_index(const ObjectCode& code);
  static ObjectCode code_of(std::size_t row);

  const BipolarVector& row(const ObjectCode& code) const;
  const BipolarVector& row(std::size_t index) const { return rows_[index]; }

  const Codebook& types() const { return types_; }
  const Codebook& sizes() const { return sizes_; }
  const Codebook& colors() const { return colors_; }
  const Codebook& positions() const { return positions_; }

  // Bundle of the object rows; throws on an empty object list.
  BipolarVector encode(const std::vector<ObjectCode>& objects) const;
  BipolarVector encode_scene(const rpm::Scene& scene) const;

  // All rows whose cosine similarity to the query exceeds tau.
  std::vector<ObjectCode> decode(const BipolarVector& query,
                                 double tau = kDefaultDecodeThreshold) const;

 private:
  std::uint64_t seed_;
  std::size_t d_;
  Codebook types_, sizes_, colors_, positions_;
  std::vector<BipolarVector> rows_;
};

// Scene objects as dictionary codes (slots mapped to global positions).
std::vector<ObjectCode> scene_codes(const rpm::Scene& scene);

// Inverse of scene_codes: rebuild a scene from decoded dictionary codes,
// dropping codes whose global position has no slot in the constellation.
rpm::Scene scene_from_codes(rpm::ConstellationKind kind,
                            const std::vector<ObjectCode>& codes);

}  // namespace nvsa
