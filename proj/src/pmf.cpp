#include "nvsa/pmf.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace nvsa {

double AttributePMF::sum() const {
  double s = 0.0;
  for (double v : p) s += v;
  return s;
}

std::size_t AttributePMF::argmax() const {
  return static_cast<std::size_t>(
      std::max_element(p.begin(), p.end()) - p.begin());
}

AttributePMF smooth_onehot(int index, int n, double b) {
  if (index < 1 || index > n) {
    throw std::invalid_argument("smooth_onehot: index out of range");
  }
  AttributePMF pmf;
  pmf.p.resize(n);
  double sum = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double w = std::exp(-std::abs(i - index) / b);
    pmf.p[i - 1] = w;
    sum += w;
  }
  for (double& v : pmf.p) v /= sum;
  return pmf;
}

AttributePMF uniform_pmf(int n, bool has_inconsistency) {
  AttributePMF pmf;
  pmf.has_inconsistency = has_inconsistency;
  pmf.p.assign(n + (has_inconsistency ? 1 : 0), 0.0);
  for (int i = 0; i < n; ++i) pmf.p[i] = 1.0 / n;
  return pmf;
}

namespace {

// Smoothed two-state existence PMF.
std::pair<double, double> exist_pmf(bool present, double b) {
  const double eps = std::exp(-1.0 / b);
  const double z = 1.0 + eps;
  return present ? std::make_pair(1.0 / z, eps / z)
                 : std::make_pair(eps / z, 1.0 / z);
}

struct ComponentView {
  int n_slots = 0;
  std::vector<const rpm::ObjectSpec*> by_slot;  // nullptr when empty
};

ComponentView component_view(const rpm::Scene& scene, int component) {
  const auto& con = rpm::Constellation::get(scene.constellation);
  if (component < 0 || component >= static_cast<int>(con.components.size())) {
    throw std::invalid_argument("panel_pmfs: bad component index");
  }
  ComponentView view;
  view.n_slots = con.components[component].n_slots();
  view.by_slot.assign(view.n_slots, nullptr);
  for (const rpm::ObjectSpec& obj : scene.objects) {
    auto [c, local] = con.locate(obj.slot);
    if (c == component) view.by_slot[local - 1] = &obj;
  }
  return view;
}

}  // namespace

ObjectPMFs object_pmfs(const rpm::Scene& scene, int component, int slot, double b) {
  const ComponentView view = component_view(scene, component);
  if (slot < 1 || slot > view.n_slots) {
    throw std::invalid_argument("object_pmfs: bad slot");
  }
  const rpm::ObjectSpec* obj = view.by_slot[slot - 1];
  ObjectPMFs out;
  const auto [present, absent] = exist_pmf(obj != nullptr, b);
  out.exist_present = present;
  out.exist_absent = absent;
  if (obj != nullptr) {
    out.type = smooth_onehot(obj->type, rpm::kNumTypes, b);
    out.size = smooth_onehot(obj->size, rpm::kNumSizes, b);
    out.color = smooth_onehot(obj->color, rpm::kNumColors, b);
  } else {
    // Never contributes: the occupancy product gates empty slots out.
    out.type = uniform_pmf(rpm::kNumTypes);
    out.size = uniform_pmf(rpm::kNumSizes);
    out.color = uniform_pmf(rpm::kNumColors);
  }
  return out;
}

PanelPMFs panel_pmfs(const rpm::Scene& scene, int component, double b) {
  const ComponentView view = component_view(scene, component);
  const int n = view.n_slots;
  const std::uint32_t n_bitmaps = (1u << n) - 1u;

  std::vector<ObjectPMFs> slots;
  slots.reserve(n);
  for (int k = 1; k <= n; ++k) {
    slots.push_back(object_pmfs(scene, component, k, b));
  }

  PanelPMFs out;

  // Occupancy likelihood over all nonempty bitmaps: presence factors for
  // occupied slots, absence factors for the rest, then normalized.
  out.pos.p.resize(n_bitmaps);
  double pos_sum = 0.0;
  for (std::uint32_t j = 1; j <= n_bitmaps; ++j) {
    double prob = 1.0;
    for (int k = 0; k < n; ++k) {
      prob *= (j & (1u << k)) ? slots[k].exist_present : slots[k].exist_absent;
    }
    out.pos.p[j - 1] = prob;
    pos_sum += prob;
  }
  for (double& v : out.pos.p) v /= pos_sum;

  // Exact pushforward of pos under bitmap -> object count.
  out.num.p.assign(n, 0.0);
  for (std::uint32_t j = 1; j <= n_bitmaps; ++j) {
    out.num.p[std::popcount(j) - 1] += out.pos.p[j - 1];
  }

  auto combine = [&](auto attr_of, int n_attr) {
    AttributePMF pmf;
    pmf.has_inconsistency = true;
    pmf.p.assign(n_attr + 1, 0.0);
    for (int v = 0; v < n_attr; ++v) {
      double acc = 0.0;
      for (std::uint32_t j = 1; j <= n_bitmaps; ++j) {
        double prod = out.pos.p[j - 1];
        for (int k = 0; k < n && prod > 0.0; ++k) {
          if (j & (1u << k)) prod *= attr_of(k).p[v];
        }
        acc += prod;
      }
      pmf.p[v] = acc;
    }
    double total = 0.0;
    for (int v = 0; v < n_attr; ++v) total += pmf.p[v];
    pmf.p[n_attr] = std::max(0.0, 1.0 - total);
    return pmf;
  };

  out.type = combine([&](int k) -> const AttributePMF& { return slots[k].type; },
                     rpm::kNumTypes);
  out.size = combine([&](int k) -> const AttributePMF& { return slots[k].size; },
                     rpm::kNumSizes);
  out.color = combine([&](int k) -> const AttributePMF& { return slots[k].color; },
                      rpm::kNumColors);
  return out;
}

double jsd(const AttributePMF& p, const AttributePMF& q) {
  if (p.p.size() != q.p.size() || p.has_inconsistency != q.has_inconsistency) {
    throw std::invalid_argument("jsd: support mismatch");
  }
  double div = 0.0;
  for (std::size_t i = 0; i < p.p.size(); ++i) {
    const double m = 0.5 * (p.p[i] + q.p[i]);
    if (p.p[i] > 0.0) div += 0.5 * p.p[i] * std::log(p.p[i] / m);
    if (q.p[i] > 0.0) div += 0.5 * q.p[i] * std::log(q.p[i] / m);
  }
  return std::max(0.0, div);
}

}  // namespace nvsa
