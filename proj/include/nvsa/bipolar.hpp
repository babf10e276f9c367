#pragma once

// Dense bipolar VSA model: vectors in {-1,+1}^d with element-wise product
// binding, sign-of-sum bundling, and cosine similarity.

#include <cstdint>
#include <string>
#include <vector>

namespace nvsa {

struct BipolarVector {
  std::vector<std::int8_t> elems;  // each exactly -1 or +1

  std::size_t dim() const { return elems.size(); }
  bool operator==(const BipolarVector&) const = default;
};

inline constexpr std::size_t kBipolarDim = 512;

// Rademacher draw, deterministic per (seed, d).
BipolarVector bipolar_random(std::uint64_t seed, std::size_t d);

// Element-wise product. Commutative, self-inverse.
BipolarVector bipolar_bind(const BipolarVector& a, const BipolarVector& b);

// Convenience n-ary bind.
BipolarVector bipolar_bind(const std::vector<const BipolarVector*>& vs);

// Element-wise sum then sign. Ties (sum == 0) are broken by a seeded
// per-index coin so the result is deterministic and unbiased in aggregate.
BipolarVector bipolar_bundle(const std::vector<const BipolarVector*>& vs);
BipolarVector bipolar_bundle(const std::vector<BipolarVector>& vs);

BipolarVector bipolar_negate(const BipolarVector& a);

double cosine_sim(const BipolarVector& a, const BipolarVector& b);

// Named family of atomic bipolar vectors. Entry i is a pure function of
// (seed, name, i, d).
struct Codebook {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<BipolarVector> vectors;

  const BipolarVector& at(std::size_t i) const { return vectors.at(i); }
  std::size_t size() const { return vectors.size(); }
};

Codebook make_codebook(const std::string& name, std::uint64_t seed,
                       std::size_t size, std::size_t d = kBipolarDim);

}  // namespace nvsa
