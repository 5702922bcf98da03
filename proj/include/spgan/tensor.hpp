#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace spgan {

// Dense row-major C x H x W float array. Vectors are stored as C x 1 x 1.
struct Tensor {
  int c = 0, h = 0, w = 0;
  std::vector<float> v;

  Tensor() = default;
  Tensor(int c_, int h_, int w_)
      : c(c_), h(h_), w(w_), v(static_cast<size_t>(c_) * h_ * w_, 0.f) {
    if (c_ < 0 || h_ < 0 || w_ < 0) throw std::invalid_argument("negative tensor dim");
  }

  static Tensor vec(int n) { return Tensor(n, 1, 1); }

  size_t size() const { return v.size(); }
  bool empty() const { return v.empty(); }
  int plane() const { return h * w; }

  float& at(int ci, int yi, int xi) {
    return v[(static_cast<size_t>(ci) * h + yi) * w + xi];
  }
  float at(int ci, int yi, int xi) const {
    return v[(static_cast<size_t>(ci) * h + yi) * w + xi];
  }

  float* data() { return v.data(); }
  const float* data() const { return v.data(); }

  bool same_shape(const Tensor& o) const { return c == o.c && h == o.h && w == o.w; }
  std::string shape_str() const {
    return std::to_string(c) + "x" + std::to_string(h) + "x" + std::to_string(w);
  }

  void fill(float x) { std::fill(v.begin(), v.end(), x); }
  void zero() { fill(0.f); }

  bool finite() const {
    for (float x : v)
      if (!std::isfinite(x)) return false;
    return true;
  }
};

inline void check_same_shape(const Tensor& a, const Tensor& b, const char* what) {
  if (!a.same_shape(b))
    throw std::invalid_argument(std::string(what) + ": shape mismatch " + a.shape_str() +
                                " vs " + b.shape_str());
}

// y += alpha * x
inline void axpy(float alpha, const Tensor& x, Tensor& y) {
  check_same_shape(x, y, "axpy");
  for (size_t i = 0; i < x.size(); ++i) y.v[i] += alpha * x.v[i];
}

uint64_t hash_bytes(const void* data, size_t n);
uint64_t hash_tensor(const Tensor& t);

}  // namespace spgan
