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

#ifndef NLPD_IMAGE_IO_H_
#define NLPD_IMAGE_IO_H_

#include <filesystem>

#include "nlpd/image.h"

namespace nlpd {

// Reads PNG (8/16-bit gray or RGB, palette expanded) and binary PGM/PPM
// (P5/P6). 8-bit samples map by v/255, 16-bit by v/65535. Images with an
// alpha channel are rejected as unsupported.
Image LoadImage(const std::filesystem::path& path);

// Writes by extension: .png, .pgm (1 channel) or .ppm (3 channels).
// Samples are quantized as round(v * (2^depth - 1)), ties away from zero.
void SaveImage(const Image& image, const std::filesystem::path& path,
               int depth = 8);

// Writes a single plane as a 16-bit binary PGM. Samples must be in [0, 1].
void SavePlanePgm16(const Plane& plane, const std::filesystem::path& path);

}  // namespace nlpd

#endif  // NLPD_IMAGE_IO_H_
