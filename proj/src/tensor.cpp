#include "spgan/tensor.hpp"

namespace spgan {

uint64_t hash_bytes(const void* data, size_t n) {
  // FNV-1a 64-bit
  const auto* p = static_cast<const unsigned char*>(data);
  uint64_t h = 1469598103934665603ull;
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

uint64_t hash_tensor(const Tensor& t) {
  uint64_t h = hash_bytes(t.v.data(), t.v.size() * sizeof(float));
  int dims[3] = {t.c, t.h, t.w};
  h ^= hash_bytes(dims, sizeof(dims));
  return h;
}

}  // namespace spgan
