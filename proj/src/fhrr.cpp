#include "nvsa/fhrr.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nvsa/rng.hpp"

namespace nvsa {

namespace {

constexpr std::uint64_t kFhrrStream = hash_str("nvsa.fhrr.random");

void check_same_dim(const PhasorVector& a, const PhasorVector& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("fhrr: dimension mismatch");
  }
}

}  // namespace

double canon_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::remainder(a, two_pi);  // [-pi, pi]
  if (a <= -std::numbers::pi) a += two_pi;
  return a;
}

PhasorVector fhrr_identity(std::size_t d) {
  PhasorVector v;
  v.angles.assign(d, 0.0);
  return v;
}

PhasorVector fhrr_random(std::uint64_t seed, std::size_t d) {
  if (d == 0) {
    throw std::invalid_argument("fhrr_random: dimension must be > 0");
  }
  CounterRng rng(seed, kFhrrStream);
  PhasorVector v;
  v.angles.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    v.angles[i] = canon_angle(rng.next_angle());
  }
  return v;
}

PhasorVector fhrr_bind(const PhasorVector& a, const PhasorVector& b) {
  check_same_dim(a, b);
  PhasorVector out;
  out.angles.resize(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    out.angles[i] = canon_angle(a.angles[i] + b.angles[i]);
  }
  return out;
}

PhasorVector fhrr_unbind(const PhasorVector& a, const PhasorVector& b) {
  check_same_dim(a, b);
  PhasorVector out;
  out.angles.resize(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    out.angles[i] = canon_angle(a.angles[i] - b.angles[i]);
  }
  return out;
}

double fhrr_sim(const PhasorVector& a, const PhasorVector& b) {
  check_same_dim(a, b);
  if (a.dim() == 0) {
    throw std::invalid_argument("fhrr_sim: empty vectors");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    acc += std::cos(a.angles[i] - b.angles[i]);
  }
  return acc / static_cast<double>(a.dim());
}

PhasorVector fhrr_bundle_weighted(const std::vector<double>& weights,
                                  const std::vector<const PhasorVector*>& vectors) {
  if (weights.size() != vectors.size()) {
    throw std::invalid_argument("fhrr_bundle_weighted: length mismatch");
  }
  if (weights.empty()) {
    throw std::invalid_argument("fhrr_bundle_weighted: empty input");
  }
  std::size_t nonzero = 0;
  std::size_t last_nonzero = 0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] < 0.0) {
      throw std::invalid_argument("fhrr_bundle_weighted: negative weight");
    }
    if (weights[k] > 0.0) {
      ++nonzero;
      last_nonzero = k;
    }
  }
  if (nonzero == 0) {
    throw std::invalid_argument("fhrr_bundle_weighted: all weights are zero");
  }
  // A single surviving term is returned as-is; the result is exactly the
  // corresponding basis vector.
  if (nonzero == 1) return *vectors[last_nonzero];

  const std::size_t d = vectors[0]->dim();
  std::vector<double> re(d, 0.0), im(d, 0.0);
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (weights[k] == 0.0) continue;
    if (vectors[k]->dim() != d) {
      throw std::invalid_argument("fhrr_bundle_weighted: dimension mismatch");
    }
    const double w = weights[k];
    const auto& ang = vectors[k]->angles;
    for (std::size_t i = 0; i < d; ++i) {
      re[i] += w * std::cos(ang[i]);
      im[i] += w * std::sin(ang[i]);
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

PhasorVector fhrr_bundle_weighted(const std::vector<double>& weights,
                                  const std::vector<PhasorVector>& vectors) {
  std::vector<const PhasorVector*> ptrs;
  ptrs.reserve(vectors.size());
  for (const auto& v : vectors) ptrs.push_back(&v);
  return fhrr_bundle_weighted(weights, ptrs);
}

PhasorVector fractional_power(const PhasorVector& base, double exponent) {
  PhasorVector out;
  out.angles.resize(base.dim());
  for (std::size_t i = 0; i < base.dim(); ++i) {
    out.angles[i] = canon_angle(base.angles[i] * exponent);
  }
  return out;
}

FhrrCodebook make_fhrr_codebook(FhrrCodebook::Kind kind, const std::string& name,
                                std::uint64_t seed, std::size_t size,
                                std::size_t d) {
  FhrrCodebook cb;
  cb.kind = kind;
  cb.name = name;
  cb.seed = seed;
  const std::uint64_t base_seed = hash_combine(seed, hash_str(name));
  cb.vectors.reserve(size);
  if (kind == FhrrCodebook::Kind::Continuous) {
    cb.base = fhrr_random(base_seed, d);
    for (std::size_t i = 1; i <= size; ++i) {
      cb.vectors.push_back(fractional_power(cb.base, static_cast<double>(i)));
    }
  } else {
    for (std::size_t i = 1; i <= size; ++i) {
      cb.vectors.push_back(fhrr_random(hash_combine(base_seed, i), d));
    }
  }
  return cb;
}

}  // namespace nvsa
