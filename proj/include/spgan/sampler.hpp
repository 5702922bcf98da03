#pragma once

#include "spgan/manifest.hpp"
#include "spgan/rng.hpp"
#include "spgan/tensor.hpp"

#include <iosfwd>
#include <vector>

namespace spgan {

// All images of a manifest decoded once, resized and normalized, in record
// order. Desk-scale sets fit in memory comfortably.
struct ImageCache {
  std::vector<Tensor> images;

  static ImageCache load(const DatasetManifest& m, int h, int w);
};

// Paired index stream over two sets. Each set is visited in shuffled order;
// the smaller one reshuffles and cycles, so one epoch is max(|S|, |T|) draws.
class EpochSampler {
 public:
  EpochSampler(size_t n_source, size_t n_target, Rng rng);

  struct Draw {
    size_t s, t;
  };
  Draw next();
  size_t epoch_len() const { return std::max(s_order_.size(), t_order_.size()); }

  void save(std::ostream& os) const;
  void load(std::istream& is);

 private:
  void reshuffle(std::vector<uint32_t>& order);
  size_t take(std::vector<uint32_t>& order, size_t& pos);

  std::vector<uint32_t> s_order_, t_order_;
  size_t s_pos_ = 0, t_pos_ = 0;
  Rng rng_;
};

}  // namespace spgan
