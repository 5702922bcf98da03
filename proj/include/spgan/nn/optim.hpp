#pragma once

#include "spgan/nn/layers.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace spgan::nn {

// Adam over a fixed parameter list. The slot buffers are keyed by position,
// so the list passed to step() must be the one given at construction.
class Adam {
 public:
  Adam(std::vector<Param*> params, float lr, float beta1 = 0.5f, float beta2 = 0.999f,
       float eps = 1e-8f);

  void step();
  void set_lr(float lr) { lr_ = lr; }
  float lr() const { return lr_; }
  int64_t t() const { return t_; }

  void save_state(std::ostream& os) const;
  void load_state(std::istream& is);

 private:
  std::vector<Param*> params_;
  std::vector<std::vector<float>> m_, v_;
  float lr_, beta1_, beta2_, eps_;
  int64_t t_ = 0;
};

class SgdMomentum {
 public:
  SgdMomentum(std::vector<Param*> params, float lr, float momentum = 0.9f);

  void step();
  void set_lr(float lr) { lr_ = lr; }
  float lr() const { return lr_; }

  void save_state(std::ostream& os) const;
  void load_state(std::istream& is);

 private:
  std::vector<Param*> params_;
  std::vector<std::vector<float>> vel_;
  float lr_, momentum_;
};

}  // namespace spgan::nn
