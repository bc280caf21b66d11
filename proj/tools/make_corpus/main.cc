// Copyright 2026 The NLPD Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Generates the bundled fitting corpus: dead-leaves images (occluding disks
// with power-law radii, per-leaf linear shading and mild sensor noise). The
// output depends only on the flags, so the corpus can be regenerated
// bit-exactly.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlpd/error.h"
#include "nlpd/image.h"
#include "nlpd/image_io.h"

namespace {

// Uniform in [0, 1) from the top 53 bits; identical across standard libraries.
class Uniform {
 public:
  explicit Uniform(uint64_t seed) : gen_(seed) {}
  double operator()() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

// Radius with density proportional to r^-3 on [r_min, r_max].
double PowerLawRadius(Uniform& u, double r_min, double r_max) {
  const double a = 1.0 / (r_min * r_min);
  const double b = 1.0 / (r_max * r_max);
  return 1.0 / std::sqrt(a - u() * (a - b));
}

// Box-Muller; only the cosine branch, to keep the draw count fixed.
double Gaussian(Uniform& u) {
  const double u1 = 1.0 - u();
  const double u2 = u();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

nlpd::Image DeadLeaves(int size, uint64_t seed, double noise) {
  Uniform u(seed);
  const int n = size * size;
  std::vector<double> pixels(n, 0.0);
  std::vector<bool> covered(n, false);
  int remaining = n;
  // Front-to-back: each leaf only paints pixels no earlier leaf covered.
  for (int leaf = 0; leaf < 20000 && remaining > 0; ++leaf) {
    const double cx = u() * size;
    const double cy = u() * size;
    const double r = PowerLawRadius(u, 1.5, size / 3.0);
    const double base = 0.1 + 0.8 * u();
    const double gx = (u() - 0.5) * 0.6 / size;
    const double gy = (u() - 0.5) * 0.6 / size;
    const int x0 = std::max(0, static_cast<int>(std::floor(cx - r)));
    const int x1 = std::min(size - 1, static_cast<int>(std::ceil(cx + r)));
    const int y0 = std::max(0, static_cast<int>(std::floor(cy - r)));
    const int y1 = std::min(size - 1, static_cast<int>(std::ceil(cy + r)));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const double dx = x + 0.5 - cx;
        const double dy = y + 0.5 - cy;
        const int i = y * size + x;
        if (covered[i] || dx * dx + dy * dy > r * r) continue;
        covered[i] = true;
        --remaining;
        pixels[i] = base + gx * dx + gy * dy;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!covered[i]) pixels[i] = 0.5;
    pixels[i] = std::clamp(pixels[i] + noise * Gaussian(u), 0.0, 1.0);
  }
  return nlpd::Image(size, size, 1, std::move(pixels));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate the dead-leaves fitting corpus"};
  std::string out_dir;
  int count = 15;
  int size = 256;
  uint64_t seed = 2026;
  double noise = 0.01;
  app.add_option("out_dir", out_dir, "output directory")->required();
  app.add_option("--count", count)->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--size", size)->capture_default_str()->check(CLI::Range(8, 4096));
  app.add_option("--seed", seed)->capture_default_str();
  app.add_option("--noise", noise, "Gaussian noise std")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    std::filesystem::create_directories(out_dir);
    for (int i = 0; i < count; ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "leaves_%02d.png", i);
      const auto path = std::filesystem::path(out_dir) / name;
      nlpd::SaveImage(DeadLeaves(size, seed + static_cast<uint64_t>(i), noise), path);
      std::cout << path.string() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "ERR_IO " << e.what() << "\n";
    return 2;
  }
  return 0;
}
