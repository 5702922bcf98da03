#include "spgan/sampler.hpp"

#include "spgan/image_io.hpp"

#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace spgan {

ImageCache ImageCache::load(const DatasetManifest& m, int h, int w) {
  ImageCache cache;
  cache.images.reserve(m.records.size());
  for (const auto& r : m.records) cache.images.push_back(load_image(r.path, h, w));
  return cache;
}

EpochSampler::EpochSampler(size_t n_source, size_t n_target, Rng rng) : rng_(rng) {
  if (n_source == 0 || n_target == 0)
    throw std::invalid_argument("EpochSampler: both sets must be non-empty");
  s_order_.resize(n_source);
  t_order_.resize(n_target);
  std::iota(s_order_.begin(), s_order_.end(), 0u);
  std::iota(t_order_.begin(), t_order_.end(), 0u);
  reshuffle(s_order_);
  reshuffle(t_order_);
}

void EpochSampler::reshuffle(std::vector<uint32_t>& order) {
  for (size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[uniform_index(rng_, i)]);
}

size_t EpochSampler::take(std::vector<uint32_t>& order, size_t& pos) {
  if (pos == order.size()) {
    reshuffle(order);
    pos = 0;
  }
  return order[pos++];
}

EpochSampler::Draw EpochSampler::next() {
  // Fixed draw order (source first) keeps the rng stream reproducible.
  const size_t s = take(s_order_, s_pos_);
  const size_t t = take(t_order_, t_pos_);
  return {s, t};
}

void EpochSampler::save(std::ostream& os) const {
  auto put = [&os](const std::vector<uint32_t>& v, size_t pos) {
    const uint64_t n = v.size(), p = pos;
    os.write(reinterpret_cast<const char*>(&n), sizeof(n));
    os.write(reinterpret_cast<const char*>(&p), sizeof(p));
    os.write(reinterpret_cast<const char*>(v.data()),
             static_cast<std::streamsize>(n * sizeof(uint32_t)));
  };
  put(s_order_, s_pos_);
  put(t_order_, t_pos_);
  const std::string rng_text = serialize_rng(rng_);
  const uint64_t len = rng_text.size();
  os.write(reinterpret_cast<const char*>(&len), sizeof(len));
  os.write(rng_text.data(), static_cast<std::streamsize>(len));
}

void EpochSampler::load(std::istream& is) {
  auto get = [&is](std::vector<uint32_t>& v, size_t& pos) {
    uint64_t n = 0, p = 0;
    is.read(reinterpret_cast<char*>(&n), sizeof(n));
    is.read(reinterpret_cast<char*>(&p), sizeof(p));
    if (n != v.size()) throw std::runtime_error("sampler state: set size mismatch");
    pos = p;
    is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(uint32_t)));
  };
  get(s_order_, s_pos_);
  get(t_order_, t_pos_);
  uint64_t len = 0;
  is.read(reinterpret_cast<char*>(&len), sizeof(len));
  std::string rng_text(len, '\0');
  is.read(rng_text.data(), static_cast<std::streamsize>(len));
  if (!is) throw std::runtime_error("sampler state: truncated stream");
  deserialize_rng(rng_, rng_text);
}

}  // namespace spgan
