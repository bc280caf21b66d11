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

#include "nlpd/pyramid_dump.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nlpd/error.h"
#include "nlpd/image_io.h"

namespace nlpd {

std::string BandDumpStem(int stage, int channel) {
  return "stage" + std::to_string(stage) + "_ch" + std::to_string(channel);
}

BandDumpInfo DumpBand(const Plane& band, int stage, int channel,
                      const std::filesystem::path& stem) {
  BandDumpInfo info;
  info.stage = stage;
  info.channel = channel;
  info.width = band.width();
  info.height = band.height();
  const auto [lo, hi] = std::minmax_element(band.data().begin(), band.data().end());
  info.min = *lo;
  info.max = *hi;

  Plane mapped(band.width(), band.height());
  const double range = info.max - info.min;
  if (range > 0.0) {
    for (size_t i = 0; i < band.size(); ++i) {
      mapped[i] = std::clamp((band[i] - info.min) / range, 0.0, 1.0);
    }
  }
  std::filesystem::path pgm = stem;
  pgm += ".pgm";
  SavePlanePgm16(mapped, pgm);

  nlohmann::ordered_json j;
  j["stage"] = info.stage;
  j["channel"] = info.channel;
  j["width"] = info.width;
  j["height"] = info.height;
  j["min"] = info.min;
  j["max"] = info.max;
  std::filesystem::path sidecar = stem;
  sidecar += ".json";
  std::ofstream out(sidecar, std::ios::binary | std::ios::trunc);
  if (!out || !(out << j.dump(2) << "\n")) {
    throw Error(ErrorCode::kIo, "cannot write " + sidecar.string());
  }
  return info;
}

Plane LoadBandDump(const std::filesystem::path& stem) {
  std::filesystem::path sidecar = stem;
  sidecar += ".json";
  std::ifstream in(sidecar, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kFileNotFound, "missing sidecar " + sidecar.string());
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kCorruptFile,
                sidecar.string() + ": " + std::string(e.what()));
  }
  std::filesystem::path pgm = stem;
  pgm += ".pgm";
  const Image image = LoadImage(pgm);
  const double lo = j.at("min").get<double>();
  const double hi = j.at("max").get<double>();
  if (image.width() != j.at("width").get<int>() ||
      image.height() != j.at("height").get<int>() || image.channels() != 1) {
    throw Error(ErrorCode::kCorruptFile,
                pgm.string() + " does not match its sidecar");
  }
  Plane band(image.width(), image.height());
  for (size_t i = 0; i < band.size(); ++i) {
    band[i] = lo + image.data()[i] * (hi - lo);
  }
  return band;
}

}  // namespace nlpd
