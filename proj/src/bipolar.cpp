#include "nvsa/bipolar.hpp"

#include <cmath>
#include <stdexcept>

#include "nvsa/rng.hpp"

namespace nvsa {

namespace {

constexpr std::uint64_t kBipolarStream = hash_str("nvsa.bipolar.random");
constexpr std::uint64_t kBundleSalt = hash_str("nvsa.bipolar.bundle-tiebreak");

void check_same_dim(const BipolarVector& a, const BipolarVector& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("bipolar: dimension mismatch");
  }
}

}  // namespace

BipolarVector bipolar_random(std::uint64_t seed, std::size_t d) {
  if (d == 0) {
    throw std::invalid_argument("bipolar_random: dimension must be > 0");
  }
  CounterRng rng(seed, kBipolarStream);
  BipolarVector v;
  v.elems.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    v.elems[i] = rng.next_bool() ? std::int8_t{1} : std::int8_t{-1};
  }
  return v;
}

BipolarVector bipolar_bind(const BipolarVector& a, const BipolarVector& b) {
  check_same_dim(a, b);
  BipolarVector out;
  out.elems.resize(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    out.elems[i] = static_cast<std::int8_t>(a.elems[i] * b.elems[i]);
  }
  return out;
}

BipolarVector bipolar_bind(const std::vector<const BipolarVector*>& vs) {
  if (vs.empty()) {
    throw std::invalid_argument("bipolar_bind: empty list");
  }
  BipolarVector out = *vs[0];
  for (std::size_t j = 1; j < vs.size(); ++j) {
    check_same_dim(out, *vs[j]);
    for (std::size_t i = 0; i < out.dim(); ++i) {
      out.elems[i] = static_cast<std::int8_t>(out.elems[i] * vs[j]->elems[i]);
    }
  }
  return out;
}

BipolarVector bipolar_bundle(const std::vector<const BipolarVector*>& vs) {
  if (vs.empty()) {
    throw std::invalid_argument("bipolar_bundle: empty list");
  }
  const std::size_t d = vs[0]->dim();
  std::vector<int> sum(d, 0);
  for (const BipolarVector* v : vs) {
    if (v->dim() != d) {
      throw std::invalid_argument("bipolar_bundle: dimension mismatch");
    }
    for (std::size_t i = 0; i < d; ++i) sum[i] += v->elems[i];
  }
  BipolarVector out;
  out.elems.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (sum[i] > 0) {
      out.elems[i] = 1;
    } else if (sum[i] < 0) {
      out.elems[i] = -1;
    } else {
      // Seeded coin on the element index only; independent of the inputs.
      out.elems[i] = (mix64(kBundleSalt + i * kGolden) & 1ull) ? std::int8_t{1}
                                                              : std::int8_t{-1};
    }
  }
  return out;
}

BipolarVector bipolar_bundle(const std::vector<BipolarVector>& vs) {
  std::vector<const BipolarVector*> ptrs;
  ptrs.reserve(vs.size());
  for (const auto& v : vs) ptrs.push_back(&v);
  return bipolar_bundle(ptrs);
}

BipolarVector bipolar_negate(const BipolarVector& a) {
  BipolarVector out;
  out.elems.resize(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    out.elems[i] = static_cast<std::int8_t>(-a.elems[i]);
  }
  return out;
}

double cosine_sim(const BipolarVector& a, const BipolarVector& b) {
  check_same_dim(a, b);
  if (a.dim() == 0) {
    throw std::invalid_argument("cosine_sim: empty vectors");
  }
  long long dot = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    dot += static_cast<long long>(a.elems[i]) * b.elems[i];
  }
  return static_cast<double>(dot) / static_cast<double>(a.dim());
}

Codebook make_codebook(const std::string& name, std::uint64_t seed,
                       std::size_t size, std::size_t d) {
  Codebook cb;
  cb.name = name;
  cb.seed = seed;
  cb.vectors.reserve(size);
  const std::uint64_t base = hash_combine(seed, hash_str(name));
  for (std::size_t i = 0; i < size; ++i) {
    cb.vectors.push_back(bipolar_random(hash_combine(base, i), d));
  }
  return cb;
}

}  // namespace nvsa
