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

#ifndef NLPD_PYRAMID_DUMP_H_
#define NLPD_PYRAMID_DUMP_H_

#include <filesystem>
#include <string>

#include "nlpd/image.h"

namespace nlpd {

// Sidecar for a dumped band: the PGM holds (v - min) / (max - min), so
// v = min + s * (max - min). A flat band stores min == max and all-zero
// pixels.
struct BandDumpInfo {
  int stage = 0;  // 1-based
  int channel = 0;
  int width = 0;
  int height = 0;
  double min = 0.0;
  double max = 0.0;
};

// Writes `<stem>.pgm` (16-bit) and `<stem>.json`. Returns the sidecar info.
BandDumpInfo DumpBand(const Plane& band, int stage, int channel,
                      const std::filesystem::path& stem);

// Reads a dump back through the inverse affine mapping.
Plane LoadBandDump(const std::filesystem::path& stem);

std::string BandDumpStem(int stage, int channel);

}  // namespace nlpd

#endif  // NLPD_PYRAMID_DUMP_H_
