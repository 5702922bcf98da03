#pragma once

#include "spgan/manifest.hpp"
#include "spgan/tensor.hpp"

#include <cstdint>
#include <string>
#include <utility>

namespace spgan {

// Domain-wide appearance transform. Two specs used as (source, target) must
// not share the exact same parameter set.
struct StyleTransform {
  float hue_shift = 0.f;    // radians, rotation on the color wheel
  float brightness = 0.f;   // additive offset in [0,1] intensity space
  float bg_r = 0.5f, bg_g = 0.5f, bg_b = 0.5f;  // backdrop base color
  int blur_passes = 0;      // 3x3 box blur repetitions

  bool operator==(const StyleTransform&) const = default;
};

struct SyntheticDomainSpec {
  int n_identities = 20;
  int images_per_identity = 6;  // total per identity, spread round-robin over cameras
  int n_cameras = 2;
  int first_identity = 0;       // identities are first_identity .. first_identity+n-1
  int first_seq = 0;            // lets two specs render disjoint shots of the same identities
  StyleTransform style;
  std::uint64_t render_seed = 0;
};

// Render one figure (before the domain style pass) into a [0,1] RGB canvas.
// Exposed for tests; appearance depends only on (render_seed, identity) and
// pose jitter only on (render_seed, identity, camera, seq).
Tensor render_synthetic_figure(const SyntheticDomainSpec& spec, int identity, int camera, int seq,
                               int h, int w);

// Render a whole domain into out_dir under the id_cam_filename convention
// (plus a manifest.csv) and return its validated manifest.
DatasetManifest generate_synthetic_domain(const SyntheticDomainSpec& spec,
                                          const std::string& out_dir, int h, int w,
                                          DomainTag domain);

// Render source into <out_dir>/source and target into <out_dir>/target.
// Fatal if the identity ranges overlap or the styles are identical.
std::pair<DatasetManifest, DatasetManifest> generate_synthetic_pair(
    const SyntheticDomainSpec& source_spec, const SyntheticDomainSpec& target_spec,
    const std::string& out_dir, int h, int w);

}  // namespace spgan
