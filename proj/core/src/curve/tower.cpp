#include "cliffkit/curve/tower.hpp"

#include <algorithm>

#include "cliffkit/curve/curve.hpp"
#include "cliffkit/util/errors.hpp"

namespace cliff::curve {

PushforwardTower::PushforwardTower(std::vector<TowerLayer> layers) {
  for (const auto& l : layers) add_layer(l);
}

void PushforwardTower::add_layer(const TowerLayer& layer) {
  if (layer.degree < 1) throw PreconditionError("tower layer degree must be positive");
  if (static_cast<int>(layer.twists.size()) != layer.degree)
    throw PreconditionError("tower layer needs one twist per sheet");
  if (layer.twists.front() != 0) throw PreconditionError("first twist of a tower layer must be 0");
  for (int a : layer.twists)
    if (a < 0) throw PreconditionError("tower twists must be non-negative");
  layers_.push_back(layer);
}

std::vector<int> PushforwardTower::twists(size_t upto) const {
  if (upto == 0 || upto > layers_.size()) throw PreconditionError("tower layer out of range");
  std::vector<int> acc{0};
  for (size_t i = 0; i < upto; ++i) {
    std::vector<int> next;
    for (int a : acc)
      for (int b : layers_[i].twists) next.push_back(a + b);
    acc = std::move(next);
  }
  std::sort(acc.begin(), acc.end());
  return acc;
}

int PushforwardTower::degree(size_t upto) const {
  if (upto == 0 || upto > layers_.size()) throw PreconditionError("tower layer out of range");
  int d = 1;
  for (size_t i = 0; i < upto; ++i) d *= layers_[i].degree;
  return d;
}

int PushforwardTower::genus(size_t upto) const {
  int g = 0;
  for (int a : twists(upto)) g += std::max(0, a - 1);
  return g;
}

int PushforwardTower::h0(size_t upto, int k) const {
  int s = 0;
  for (int a : twists(upto)) s += std::max(0, k - a + 1);
  return s;
}

int PushforwardTower::h1(size_t upto, int k) const {
  int s = 0;
  for (int a : twists(upto)) s += std::max(0, a - k - 1);
  return s;
}

int PushforwardTower::hurwitz_genus(size_t upto) const {
  if (upto == 0 || upto > layers_.size()) throw PreconditionError("tower layer out of range");
  int g = 0;
  for (size_t i = 0; i < upto; ++i) {
    const auto& l = layers_[i];
    g = curve::hurwitz_genus(l.degree, std::vector<int>(static_cast<size_t>(l.branch_points), l.degree), g);
  }
  return g;
}

}  // namespace cliff::curve
