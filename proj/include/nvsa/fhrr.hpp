#pragma once

// Fourier holographic reduced representations (FHRR): complex unit
// phasors stored as angles in (-pi, pi]. Binding is the modulo-2pi
// angle sum, bundling is a normalized Cartesian sum, and similarity is
// the mean cosine of the angle differences. Fractional power encoding
// (angle scaling) represents scalar values with the exact homomorphism
// bind(e^a, e^b) = e^{a+b}.

#include <cstdint>
#include <string>
#include <vector>

namespace nvsa {

inline constexpr std::size_t kFhrrDim = 1024;
inline constexpr double kMagEps = 1e-12;

struct PhasorVector {
  std::vector<double> angles;  // canonical interval (-pi, pi]

  std::size_t dim() const { return angles.size(); }
  bool operator==(const PhasorVector&) const = default;
};

// Wrap into (-pi, pi].
double canon_angle(double a);

// Zero-angle vector; the binding identity.
PhasorVector fhrr_identity(std::size_t d);

// Angles i.i.d. uniform, deterministic per (seed, d).
PhasorVector fhrr_random(std::uint64_t seed, std::size_t d);

PhasorVector fhrr_bind(const PhasorVector& a, const PhasorVector& b);
PhasorVector fhrr_unbind(const PhasorVector& a, const PhasorVector& b);

// (1/d) * sum cos(a_i - b_i); the 1/d keeps the range in [-1, 1].
double fhrr_sim(const PhasorVector& a, const PhasorVector& b);

// Per-element Cartesian accumulation of weighted phasors with a final
// normalization back to unit magnitude. Elements whose accumulated
// magnitude falls below kMagEps get angle 0.
PhasorVector fhrr_bundle_weighted(const std::vector<double>& weights,
                                  const std::vector<const PhasorVector*>& vectors);
PhasorVector fhrr_bundle_weighted(const std::vector<double>& weights,
                                  const std::vector<PhasorVector>& vectors);

// All angles scaled by the exponent, then re-canonicalized.
PhasorVector fractional_power(const PhasorVector& base, double exponent);

// Basis vectors for attribute values 1..n. Discrete codebooks hold n
// independent random phasors; continuous ones hold fractional powers
// e^1..e^n of a single random base vector.
struct FhrrCodebook {
  enum class Kind { Discrete, Continuous };

  Kind kind = Kind::Discrete;
  std::string name;
  std::uint64_t seed = 0;
  PhasorVector base;                  // continuous only
  std::vector<PhasorVector> vectors;  // entry i-1 encodes value i

  std::size_t size() const { return vectors.size(); }
  std::size_t dim() const { return vectors.empty() ? 0 : vectors[0].dim(); }
  // 1-based attribute value.
  const PhasorVector& value(std::size_t v) const { return vectors.at(v - 1); }
};

FhrrCodebook make_fhrr_codebook(FhrrCodebook::Kind kind, const std::string& name,
                                std::uint64_t seed, std::size_t size,
                                std::size_t d = kFhrrDim);

}  // namespace nvsa
