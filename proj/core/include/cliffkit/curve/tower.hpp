#pragma once

#include <vector>

namespace cliff::curve {

// One step of a tower of cyclic covers of P^1, described by the twists a_i
// with pi_* O = sum O(-a_i) relative to the layer below.
struct TowerLayer {
  int degree = 0;
  int branch_points = 0;
  std::vector<int> twists;
};

// Cover of a cover, handled purely through pushforward bookkeeping: the
// composed twists are the pairwise sums of each layer's twists.
class PushforwardTower {
 public:
  PushforwardTower() = default;
  explicit PushforwardTower(std::vector<TowerLayer> layers);

  void add_layer(const TowerLayer& layer);
  size_t layers() const { return layers_.size(); }
  const TowerLayer& layer(size_t i) const { return layers_.at(i); }

  // Composed twists of the first `upto` layers (1-based), sorted.
  std::vector<int> twists(size_t upto) const;
  int degree(size_t upto) const;
  int genus(size_t upto) const;
  // h^0 and h^1 of the k-th multiple of the pulled-back point class.
  int h0(size_t upto, int k) const;
  int h1(size_t upto, int k) const;
  // Genus of layer `upto` from Hurwitz over the previous layer, assuming
  // total ramification at its branch points.
  int hurwitz_genus(size_t upto) const;

 private:
  std::vector<TowerLayer> layers_;
};

}  // namespace cliff::curve
