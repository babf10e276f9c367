#pragma once

// Oracle perception: turn ground-truth scenes into the five per-panel
// attribute PMFs. One-hot observations are smoothed with a discrete
// Laplace kernel (diversity b = 0.05) and the type/size/color PMFs carry
// an extra inconsistency slot that absorbs the mass left over when
// objects inside one panel disagree on the attribute value.

#include <cstdint>
#include <vector>

#include "nvsa/rpm.hpp"

namespace nvsa {

inline constexpr double kLaplaceDiversity = 0.05;

struct AttributePMF {
  std::vector<double> p;
  bool has_inconsistency = false;  // last entry, type/size/color only

  std::size_t n_values() const { return p.size() - (has_inconsistency ? 1 : 0); }
  double inconsistency_mass() const {
    return has_inconsistency ? p.back() : 0.0;
  }
  double sum() const;
  std::size_t argmax() const;  // 0-based

  bool operator==(const AttributePMF&) const = default;
};

// One-hot at 1-based index over 1..n, convolved with exp(-|i-j|/b) and
// renormalized.
AttributePMF smooth_onehot(int index, int n, double b = kLaplaceDiversity);

AttributePMF uniform_pmf(int n, bool has_inconsistency = false);

struct ObjectPMFs {
  double exist_present = 0.0;
  double exist_absent = 1.0;
  AttributePMF type, size, color;
};

// PMF bundle for one component of a panel. pos ranges over the nonempty
// occupancy bitmaps 1..2^n_slots-1, num over 1..n_slots.
struct PanelPMFs {
  AttributePMF pos, num, type, size, color;
};

// Per-slot PMFs for component slot k (1-based).
ObjectPMFs object_pmfs(const rpm::Scene& scene, int component, int slot,
                       double b = kLaplaceDiversity);

PanelPMFs panel_pmfs(const rpm::Scene& scene, int component,
                     double b = kLaplaceDiversity);

// Jensen-Shannon divergence in nats; 0 iff p = q, at most ln 2.
double jsd(const AttributePMF& p, const AttributePMF& q);

}  // namespace nvsa
