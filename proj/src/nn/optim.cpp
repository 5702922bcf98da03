#include "spgan/nn/optim.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace spgan::nn {

namespace {

void write_slots(std::ostream& os, const std::vector<std::vector<float>>& slots, int64_t t) {
  os.write(reinterpret_cast<const char*>(&t), sizeof(t));
  const uint64_t n = slots.size();
  os.write(reinterpret_cast<const char*>(&n), sizeof(n));
  for (const auto& s : slots) {
    const uint64_t len = s.size();
    os.write(reinterpret_cast<const char*>(&len), sizeof(len));
    os.write(reinterpret_cast<const char*>(s.data()), static_cast<std::streamsize>(len * sizeof(float)));
  }
}

void read_slots(std::istream& is, std::vector<std::vector<float>>& slots, int64_t& t) {
  is.read(reinterpret_cast<char*>(&t), sizeof(t));
  uint64_t n = 0;
  is.read(reinterpret_cast<char*>(&n), sizeof(n));
  if (n != slots.size()) throw std::runtime_error("optimizer state: slot count mismatch");
  for (auto& s : slots) {
    uint64_t len = 0;
    is.read(reinterpret_cast<char*>(&len), sizeof(len));
    if (len != s.size()) throw std::runtime_error("optimizer state: slot size mismatch");
    is.read(reinterpret_cast<char*>(s.data()), static_cast<std::streamsize>(len * sizeof(float)));
  }
  if (!is) throw std::runtime_error("optimizer state: truncated stream");
}

}  // namespace

Adam::Adam(std::vector<Param*> params, float lr, float beta1, float beta2, float eps)
    : params_(std::move(params)), lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {
  m_.reserve(params_.size());
  v_.reserve(params_.size());
  for (const Param* p : params_) {
    m_.emplace_back(p->value.size(), 0.f);
    v_.emplace_back(p->value.size(), 0.f);
  }
}

void Adam::step() {
  ++t_;
  const float bc1 = 1.f - std::pow(beta1_, static_cast<float>(t_));
  const float bc2 = 1.f - std::pow(beta2_, static_cast<float>(t_));
  for (size_t i = 0; i < params_.size(); ++i) {
    Param& p = *params_[i];
    float* m = m_[i].data();
    float* v = v_[i].data();
    for (size_t j = 0; j < p.value.size(); ++j) {
      const float g = p.grad.v[j];
      m[j] = beta1_ * m[j] + (1.f - beta1_) * g;
      v[j] = beta2_ * v[j] + (1.f - beta2_) * g * g;
      const float mh = m[j] / bc1;
      const float vh = v[j] / bc2;
      p.value.v[j] -= lr_ * mh / (std::sqrt(vh) + eps_);
    }
  }
}

void Adam::save_state(std::ostream& os) const {
  write_slots(os, m_, t_);
  int64_t dummy = 0;
  write_slots(os, v_, dummy);
}

void Adam::load_state(std::istream& is) {
  read_slots(is, m_, t_);
  int64_t dummy = 0;
  read_slots(is, v_, dummy);
}

SgdMomentum::SgdMomentum(std::vector<Param*> params, float lr, float momentum)
    : params_(std::move(params)), lr_(lr), momentum_(momentum) {
  vel_.reserve(params_.size());
  for (const Param* p : params_) vel_.emplace_back(p->value.size(), 0.f);
}

void SgdMomentum::step() {
  for (size_t i = 0; i < params_.size(); ++i) {
    Param& p = *params_[i];
    float* vel = vel_[i].data();
    for (size_t j = 0; j < p.value.size(); ++j) {
      vel[j] = momentum_ * vel[j] + p.grad.v[j];
      p.value.v[j] -= lr_ * vel[j];
    }
  }
}

void SgdMomentum::save_state(std::ostream& os) const {
  int64_t t = 0;
  write_slots(os, vel_, t);
}

void SgdMomentum::load_state(std::istream& is) {
  int64_t t = 0;
  read_slots(is, vel_, t);
}

}  // namespace spgan::nn
