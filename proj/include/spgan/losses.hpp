#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace spgan {

// Weights of the joint translation objective and the contrastive margin.
struct LossWeights {
  double lambda1 = 10.0;  // cycle
  double lambda2 = 5.0;   // target-domain identity
  double lambda3 = 2.0;   // contrastive
  double margin = 2.0;    // in [0, 2]

  void validate() const {
    if (lambda1 < 0 || lambda2 < 0 || lambda3 < 0)
      throw std::invalid_argument("loss weights must be non-negative");
    if (margin < 0 || margin > 2)
      throw std::invalid_argument("margin must lie in [0, 2]");
  }
};

// Per-step scalar terms. adv_t/adv_s are the generator-role values.
struct LossReport {
  double adv_t = 0, adv_s = 0, cyc = 0, ide = 0, con = 0, total = 0;
};

enum class AdvRole { generator, discriminator };

// Least-squares adversarial loss over a patch score map.
// Discriminator role: mean((real-1)^2) + mean(fake^2).
// Generator role: mean((fake-1)^2); real scores are not consulted.
template <typename T>
T lsgan_loss(std::span<const T> real, std::span<const T> fake, AdvRole role) {
  if (fake.empty()) throw std::invalid_argument("lsgan_loss: empty fake score array");
  if (role == AdvRole::generator) {
    T acc = 0;
    for (T s : fake) acc += (s - T(1)) * (s - T(1));
    return acc / static_cast<T>(fake.size());
  }
  if (real.empty()) throw std::invalid_argument("lsgan_loss: empty real score array");
  T acc_r = 0, acc_f = 0;
  for (T s : real) acc_r += (s - T(1)) * (s - T(1));
  for (T s : fake) acc_f += s * s;
  return acc_r / static_cast<T>(real.size()) + acc_f / static_cast<T>(fake.size());
}

template <typename T>
void lsgan_loss_grad(std::span<const T> real, std::span<const T> fake, AdvRole role,
                     std::span<T> d_real, std::span<T> d_fake) {
  if (fake.empty()) throw std::invalid_argument("lsgan_loss_grad: empty fake score array");
  if (role == AdvRole::generator) {
    const T inv = T(1) / static_cast<T>(fake.size());
    for (size_t i = 0; i < fake.size(); ++i) d_fake[i] = T(2) * (fake[i] - T(1)) * inv;
    for (size_t i = 0; i < d_real.size(); ++i) d_real[i] = 0;
    return;
  }
  if (real.empty()) throw std::invalid_argument("lsgan_loss_grad: empty real score array");
  const T inv_r = T(1) / static_cast<T>(real.size());
  const T inv_f = T(1) / static_cast<T>(fake.size());
  for (size_t i = 0; i < real.size(); ++i) d_real[i] = T(2) * (real[i] - T(1)) * inv_r;
  for (size_t i = 0; i < fake.size(); ++i) d_fake[i] = T(2) * fake[i] * inv_f;
}

// Adversarial loss of the source->target pair {G, D_T}; scores come from D_T.
template <typename T>
T adversarial_loss_t(std::span<const T> real, std::span<const T> fake, AdvRole role) {
  return lsgan_loss(real, fake, role);
}

// Adversarial loss of the target->source pair {F, D_S}; scores come from D_S.
template <typename T>
T adversarial_loss_s(std::span<const T> real, std::span<const T> fake, AdvRole role) {
  return lsgan_loss(real, fake, role);
}

// Per-element mean absolute difference. Averaging (not summing) over pixels
// keeps the lambda weights resolution-independent.
template <typename T>
T l1_mean(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("l1_mean: shape mismatch or empty input");
  T acc = 0;
  for (size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
  return acc / static_cast<T>(a.size());
}

// d/da of l1_mean(a, b), written into d_a.
template <typename T>
void l1_mean_grad(std::span<const T> a, std::span<const T> b, std::span<T> d_a) {
  const T inv = T(1) / static_cast<T>(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    const T d = a[i] - b[i];
    d_a[i] = d > 0 ? inv : (d < 0 ? -inv : T(0));
  }
}

// Cycle-consistency: reconstructions of both domains against their originals.
template <typename T>
T cycle_loss(std::span<const T> x, std::span<const T> f_g_x, std::span<const T> y,
             std::span<const T> g_f_y) {
  return l1_mean(f_g_x, x) + l1_mean(g_f_y, y);
}

// Identity regularizer: F applied to source samples, G applied to target samples.
template <typename T>
T identity_loss(std::span<const T> x, std::span<const T> f_x, std::span<const T> y,
                std::span<const T> g_y) {
  return l1_mean(f_x, x) + l1_mean(g_y, y);
}

// Contrastive loss over L2-normalized embeddings:
//   i * d^2 + (1 - i) * max(0, m - d)^2,  d = ||e1/|e1| - e2/|e2|||_2 in [0, 2].
template <typename T>
T contrastive_loss(int label, std::span<const T> e1, std::span<const T> e2, T margin) {
  if (e1.size() != e2.size() || e1.empty())
    throw std::invalid_argument("contrastive_loss: embedding size mismatch");
  T n1 = 0, n2 = 0;
  for (size_t i = 0; i < e1.size(); ++i) {
    n1 += e1[i] * e1[i];
    n2 += e2[i] * e2[i];
  }
  n1 = std::sqrt(n1);
  n2 = std::sqrt(n2);
  if (n1 == 0 || n2 == 0)
    throw std::invalid_argument("contrastive_loss: zero-norm embedding");
  T d2 = 0;
  for (size_t i = 0; i < e1.size(); ++i) {
    const T d = e1[i] / n1 - e2[i] / n2;
    d2 += d * d;
  }
  const T d = std::sqrt(d2);
  if (label != 0) return d2;
  const T slack = margin - d;
  return slack > 0 ? slack * slack : T(0);
}

// Analytic gradient of contrastive_loss w.r.t. the raw (unnormalized) embeddings.
template <typename T>
void contrastive_loss_grad(int label, std::span<const T> e1, std::span<const T> e2,
                           T margin, std::span<T> d_e1, std::span<T> d_e2) {
  const size_t n = e1.size();
  if (e2.size() != n || n == 0)
    throw std::invalid_argument("contrastive_loss_grad: embedding size mismatch");
  T n1 = 0, n2 = 0;
  for (size_t i = 0; i < n; ++i) {
    n1 += e1[i] * e1[i];
    n2 += e2[i] * e2[i];
  }
  n1 = std::sqrt(n1);
  n2 = std::sqrt(n2);
  if (n1 == 0 || n2 == 0)
    throw std::invalid_argument("contrastive_loss_grad: zero-norm embedding");

  std::vector<T> u1(n), u2(n), diff(n);
  T d2 = 0;
  for (size_t i = 0; i < n; ++i) {
    u1[i] = e1[i] / n1;
    u2[i] = e2[i] / n2;
    diff[i] = u1[i] - u2[i];
    d2 += diff[i] * diff[i];
  }
  const T d = std::sqrt(d2);

  // dL/d(diff), via dL/dd.
  T scale = 0;
  if (label != 0) {
    scale = T(2);  // L = d^2 = |diff|^2
  } else {
    const T slack = margin - d;
    if (slack > 0 && d > 0) scale = T(-2) * slack / d;
  }

  // Chain through the normalization: d(u)/d(e) = (I - u u^T) / |e|.
  T dot1 = 0, dot2 = 0;
  for (size_t i = 0; i < n; ++i) {
    dot1 += diff[i] * u1[i];
    dot2 += diff[i] * u2[i];
  }
  for (size_t i = 0; i < n; ++i) {
    d_e1[i] = scale * (diff[i] - dot1 * u1[i]) / n1;
    d_e2[i] = -scale * (diff[i] - dot2 * u2[i]) / n2;
  }
}

// Joint objective: adv_T + adv_S + l1*cyc + l2*ide + l3*con.
inline LossReport total_spgan_loss(double adv_t, double adv_s, double cyc, double ide,
                                   double con, const LossWeights& w) {
  LossReport r;
  r.adv_t = adv_t;
  r.adv_s = adv_s;
  r.cyc = cyc;
  r.ide = ide;
  r.con = con;
  r.total = adv_t + adv_s + w.lambda1 * cyc + w.lambda2 * ide + w.lambda3 * con;
  return r;
}

}  // namespace spgan
