#include "spgan/synthetic.hpp"

#include "spgan/image_io.hpp"
#include "spgan/rng.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>

namespace fs = std::filesystem;

namespace spgan {

namespace {

struct Rgb {
  float r, g, b;
};

Rgb hsv_to_rgb(float h, float s, float v) {
  h = h - std::floor(h / 6.f) * 6.f;
  const int i = static_cast<int>(h);
  const float f = h - static_cast<float>(i);
  const float p = v * (1.f - s), q = v * (1.f - s * f), t = v * (1.f - s * (1.f - f));
  switch (i) {
    case 0: return {v, t, p};
    case 1: return {q, v, p};
    case 2: return {p, v, t};
    case 3: return {p, q, v};
    case 4: return {t, p, v};
    default: return {v, p, q};
  }
}

Rgb random_color(Rng& rng) {
  const float h = static_cast<float>(uniform01(rng)) * 6.f;
  const float s = 0.55f + 0.45f * static_cast<float>(uniform01(rng));
  const float v = 0.55f + 0.45f * static_cast<float>(uniform01(rng));
  return hsv_to_rgb(h, s, v);
}

struct Glyph {
  int kind;        // 0 disc, 1 box, 2 diamond, 3 stripe
  float cx, cy;    // center in figure space ([-1,1] wide, [0,1] tall)
  float size;
  Rgb color;
};

// Everything that makes an identity recognizable; a pure function of
// (render_seed, identity).
struct FigureSpec {
  Rgb torso, legs, head;
  float body_width;   // torso half-width as a fraction of canvas width
  float leg_split;    // where torso ends and legs begin, fraction of height
  Glyph glyphs[3];
};

FigureSpec make_figure(std::uint64_t render_seed, int identity) {
  Rng rng = make_stream(render_seed, "id:" + std::to_string(identity));
  FigureSpec f;
  f.torso = random_color(rng);
  f.legs = random_color(rng);
  const float u = static_cast<float>(uniform01(rng));
  f.head = {0.82f + 0.12f * u, 0.62f + 0.16f * u, 0.50f + 0.18f * u};
  f.body_width = 0.26f + 0.14f * static_cast<float>(uniform01(rng));
  f.leg_split = 0.52f + 0.10f * static_cast<float>(uniform01(rng));
  for (Glyph& g : f.glyphs) {
    g.kind = static_cast<int>(uniform_index(rng, 4));
    g.cx = (static_cast<float>(uniform01(rng)) * 2.f - 1.f) * 0.55f;
    g.cy = 0.22f + 0.28f * static_cast<float>(uniform01(rng));  // on the torso
    g.size = 0.10f + 0.10f * static_cast<float>(uniform01(rng));
    g.color = random_color(rng);
  }
  return f;
}

void apply_style(Tensor& img, const StyleTransform& st) {
  if (st.hue_shift != 0.f) {
    // Rotation about the luma axis (the classic YIQ hue-rotate matrix).
    const float c = std::cos(st.hue_shift), s = std::sin(st.hue_shift);
    const float m[3][3] = {
        {0.299f + 0.701f * c + 0.168f * s, 0.587f - 0.587f * c + 0.330f * s,
         0.114f - 0.114f * c - 0.497f * s},
        {0.299f - 0.299f * c - 0.328f * s, 0.587f + 0.413f * c + 0.035f * s,
         0.114f - 0.114f * c + 0.292f * s},
        {0.299f - 0.300f * c + 1.250f * s, 0.587f - 0.588f * c - 1.050f * s,
         0.114f + 0.886f * c - 0.203f * s}};
    for (int y = 0; y < img.h; ++y) {
      for (int x = 0; x < img.w; ++x) {
        const float r = img.at(0, y, x), g = img.at(1, y, x), b = img.at(2, y, x);
        img.at(0, y, x) = m[0][0] * r + m[0][1] * g + m[0][2] * b;
        img.at(1, y, x) = m[1][0] * r + m[1][1] * g + m[1][2] * b;
        img.at(2, y, x) = m[2][0] * r + m[2][1] * g + m[2][2] * b;
      }
    }
  }
  if (st.brightness != 0.f)
    for (float& v : img.v) v += st.brightness;
  for (int pass = 0; pass < st.blur_passes; ++pass) {
    Tensor src = img;
    for (int ch = 0; ch < 3; ++ch) {
      for (int y = 0; y < img.h; ++y) {
        for (int x = 0; x < img.w; ++x) {
          float acc = 0;
          for (int dy = -1; dy <= 1; ++dy) {
            const int yy = std::clamp(y + dy, 0, img.h - 1);
            for (int dx = -1; dx <= 1; ++dx)
              acc += src.at(ch, yy, std::clamp(x + dx, 0, img.w - 1));
          }
          img.at(ch, y, x) = acc / 9.f;
        }
      }
    }
  }
  for (float& v : img.v) v = std::clamp(v, 0.f, 1.f);
}

}  // namespace

Tensor render_synthetic_figure(const SyntheticDomainSpec& spec, int identity, int camera, int seq,
                               int h, int w) {
  const FigureSpec fig = make_figure(spec.render_seed, identity);

  Rng cam_rng = make_stream(spec.render_seed, "cam:" + std::to_string(camera));
  const float cam_dx = (static_cast<float>(uniform01(cam_rng)) - 0.5f) * 0.12f;
  const float cam_scale = 0.94f + 0.12f * static_cast<float>(uniform01(cam_rng));
  const float cam_light = (static_cast<float>(uniform01(cam_rng)) - 0.5f) * 0.10f;

  Rng img_rng = make_stream(spec.render_seed, "img:" + std::to_string(identity) + ":" +
                                                  std::to_string(camera) + ":" +
                                                  std::to_string(seq));
  const float dx = cam_dx + (static_cast<float>(uniform01(img_rng)) - 0.5f) * 0.10f;
  const float dy = (static_cast<float>(uniform01(img_rng)) - 0.5f) * 0.06f;
  const float scale = cam_scale * (0.96f + 0.08f * static_cast<float>(uniform01(img_rng)));

  Tensor img(3, h, w);
  const StyleTransform& st = spec.style;
  for (int y = 0; y < h; ++y) {
    // Slight vertical gradient keeps the backdrop from being one flat value.
    const float grad = 0.06f * (static_cast<float>(y) / static_cast<float>(h) - 0.5f);
    for (int x = 0; x < w; ++x) {
      // Figure space: u in [-1,1] across the width, v in [0,1] head to feet.
      const float u = ((static_cast<float>(x) + 0.5f) / static_cast<float>(w) * 2.f - 1.f - dx) / scale;
      const float v = ((static_cast<float>(y) + 0.5f) / static_cast<float>(h) - 0.08f - dy) / scale;

      Rgb px{st.bg_r + grad, st.bg_g + grad, st.bg_b + grad};
      const float bw = fig.body_width * 2.f;  // torso half-width in u units
      if (v >= fig.leg_split && v < 0.92f) {
        const float lw = bw * 0.42f;
        if (std::fabs(u + bw * 0.5f) < lw || std::fabs(u - bw * 0.5f) < lw) px = fig.legs;
      }
      if (v >= 0.16f && v < fig.leg_split && std::fabs(u) < bw) px = fig.torso;
      if (v < 0.16f) {
        const float hr = 0.085f * 2.f;
        const float hv = (v - 0.08f) / 0.08f;
        if (u * u + hv * hv * hr * hr < hr * hr) px = fig.head;
      }
      for (const Glyph& g : fig.glyphs) {
        const float gu = u - g.cx, gv = (v - g.cy) * 2.f;  // compensate tall aspect
        const float s = g.size * 2.f;
        bool hit = false;
        switch (g.kind) {
          case 0: hit = gu * gu + gv * gv < s * s; break;
          case 1: hit = std::fabs(gu) < s && std::fabs(gv) < s; break;
          case 2: hit = std::fabs(gu) + std::fabs(gv) < s * 1.2f; break;
          default: hit = std::fabs(gv) < s * 0.45f && std::fabs(u) < bw; break;
        }
        // Glyphs live on the torso only.
        if (hit && v >= 0.16f && v < fig.leg_split && std::fabs(u) < bw) px = g.color;
      }
      img.at(0, y, x) = px.r + cam_light;
      img.at(1, y, x) = px.g + cam_light;
      img.at(2, y, x) = px.b + cam_light;
    }
  }
  apply_style(img, st);
  for (float& v : img.v) v = v * 2.f - 1.f;  // [0,1] -> [-1,1]
  return img;
}

DatasetManifest generate_synthetic_domain(const SyntheticDomainSpec& spec,
                                          const std::string& out_dir, int h, int w,
                                          DomainTag domain) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir))
    throw std::runtime_error("cannot create output directory: " + out_dir);

  for (int i = 0; i < spec.n_identities; ++i) {
    const int identity = spec.first_identity + i;
    for (int j = 0; j < spec.images_per_identity; ++j) {
      const int seq = spec.first_seq + j;
      const int camera = 1 + (seq % spec.n_cameras);
      const Tensor img = render_synthetic_figure(spec, identity, camera, seq, h, w);
      char name[64];
      std::snprintf(name, sizeof(name), "%04d_c%d_%03d.png", identity, camera, seq);
      save_image_png(img, (fs::path(out_dir) / name).string());
    }
  }
  DatasetManifest m = load_manifest(out_dir, NamingConvention::id_cam_filename, domain);
  write_manifest_csv(m, (fs::path(out_dir) / "manifest.csv").string());
  return m;
}

std::pair<DatasetManifest, DatasetManifest> generate_synthetic_pair(
    const SyntheticDomainSpec& source_spec, const SyntheticDomainSpec& target_spec,
    const std::string& out_dir, int h, int w) {
  const int s_lo = source_spec.first_identity, s_hi = s_lo + source_spec.n_identities;
  const int t_lo = target_spec.first_identity, t_hi = t_lo + target_spec.n_identities;
  if (s_lo < t_hi && t_lo < s_hi)
    throw std::runtime_error("synthetic domains must have disjoint identity sets (got [" +
                             std::to_string(s_lo) + "," + std::to_string(s_hi) + ") vs [" +
                             std::to_string(t_lo) + "," + std::to_string(t_hi) + "))");
  if (source_spec.style == target_spec.style)
    throw std::runtime_error("synthetic domains must differ in style parameters");

  auto src = generate_synthetic_domain(source_spec, (fs::path(out_dir) / "source").string(), h, w,
                                       DomainTag::source);
  auto tgt = generate_synthetic_domain(target_spec, (fs::path(out_dir) / "target").string(), h, w,
                                       DomainTag::target);
  return {std::move(src), std::move(tgt)};
}

}  // namespace spgan
