#include "nvsa/codec.hpp"

#include <cmath>
#include <stdexcept>

namespace nvsa {

ObjectDictionary::ObjectDictionary(std::uint64_t seed, std::size_t d)
    : seed_(seed),
      d_(d),
      types_(make_codebook("type", seed, rpm::kNumTypes, d)),
      sizes_(make_codebook("size", seed, rpm::kNumSizes, d)),
      colors_(make_codebook("color", seed, rpm::kNumColors, d)),
      positions_(make_codebook("position", seed, rpm::kNumGlobalPositions, d)) {
  rows_.reserve(kRows);
  for (std::size_t r = 0; r < kRows; ++r) {
    const ObjectCode code = code_of(r);
    rows_.push_back(bipolar_bind({&types_.at(code.type - 1), &sizes_.at(code.size - 1),
                                  &colors_.at(code.color - 1),
                                  &positions_.at(code.pos - 1)}));
  }
}

std::size_t ObjectDictionary::row_index(const ObjectCode& code) {
  if (code.type < 1 || code.type > rpm::kNumTypes || code.size < 1 ||
      code.size > rpm::kNumSizes || code.color < 1 || code.color > rpm::kNumColors ||
      code.pos < 1 || code.pos > rpm::kNumGlobalPositions) {
    throw std::out_of_range("ObjectDictionary: attribute value out of range");
  }
  return (((static_cast<std::size_t>(code.type - 1) * rpm::kNumSizes +
            (code.size - 1)) * rpm::kNumColors + (code.color - 1)) *
          rpm::kNumGlobalPositions) + (code.pos - 1);
}

ObjectCode ObjectDictionary::code_of(std::size_t row) {
  ObjectCode code;
  code.pos = static_cast<int>(row % rpm::kNumGlobalPositions) + 1;
  row /= rpm::kNumGlobalPositions;
  code.color = static_cast<int>(row % rpm::kNumColors) + 1;
  row /= rpm::kNumColors;
  code.size = static_cast<int>(row % rpm::kNumSizes) + 1;
  row /= rpm::kNumSizes;
  code.type = static_cast<int>(row) + 1;
  return code;
}

const BipolarVector& ObjectDictionary::row(const ObjectCode& code) const {
  return rows_[row_index(code)];
}

BipolarVector ObjectDictionary::encode(const std::vector<ObjectCode>& objects) const {
  if (objects.empty()) {
    throw std::invalid_argument("ObjectDictionary::encode: empty scene");
  }
  std::vector<const BipolarVector*> vs;
  vs.reserve(objects.size());
  for (const ObjectCode& code : objects) vs.push_back(&row(code));
  return bipolar_bundle(vs);
}

BipolarVector ObjectDictionary::encode_scene(const rpm::Scene& scene) const {
  return encode(scene_codes(scene));
}

std::vector<ObjectCode> ObjectDictionary::decode(const BipolarVector& query,
                                                 double tau) const {
  if (query.dim() != d_) {
    throw std::invalid_argument("ObjectDictionary::decode: dimension mismatch");
  }
  std::vector<ObjectCode> hits;
  // Rows are bipolar, so the normalized similarity reduces to dot / d.
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const auto& row = rows_[r].elems;
    long long dot = 0;
    for (std::size_t i = 0; i < d_; ++i) {
      dot += static_cast<long long>(query.elems[i]) * row[i];
    }
    if (static_cast<double>(dot) / static_cast<double>(d_) > tau) {
      hits.push_back(code_of(r));
    }
  }
  return hits;
}

std::vector<ObjectCode> scene_codes(const rpm::Scene& scene) {
  const auto& con = rpm::Constellation::get(scene.constellation);
  std::vector<ObjectCode> codes;
  codes.reserve(scene.objects.size());
  for (const rpm::ObjectSpec& obj : scene.objects) {
    codes.push_back(ObjectCode{obj.type, obj.size, obj.color,
                               con.global_position(obj.slot)});
  }
  return codes;
}

rpm::Scene scene_from_codes(rpm::ConstellationKind kind,
                            const std::vector<ObjectCode>& codes) {
  const auto& con = rpm::Constellation::get(kind);
  rpm::Scene scene;
  scene.constellation = kind;
  for (const ObjectCode& code : codes) {
    // Global positions outside this constellation's layout are dropped.
    for (int slot = 1; slot <= con.n_pos(); ++slot) {
      if (con.global_position(slot) == code.pos) {
        scene.objects.push_back(rpm::ObjectSpec{slot, code.type, code.size,
                                                code.color});
        break;
      }
    }
  }
  return scene;
}

}  // namespace nvsa
