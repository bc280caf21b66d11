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

#include "nlpd/params_io.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nlpd/error.h"

namespace nlpd {
namespace {

using nlohmann::ordered_json;

[[noreturn]] void BadParams(const std::string& what) {
  throw Error(ErrorCode::kParams, "invalid params: " + what);
}

std::vector<double> Doubles(const ordered_json& j, const std::string& where) {
  if (!j.is_array()) BadParams(where + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) BadParams(where + " must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

Kernel2D KernelFromJson(const ordered_json& j, const std::string& where) {
  if (!j.is_object()) BadParams(where + " must be an object");
  for (const char* key : {"rows", "cols", "taps"}) {
    if (!j.contains(key)) BadParams(where + " is missing \"" + key + "\"");
  }
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer()) {
    BadParams(where + " rows/cols must be integers");
  }
  const int rows = j["rows"].get<int>();
  const int cols = j["cols"].get<int>();
  std::vector<double> taps = Doubles(j["taps"], where + ".taps");
  try {
    if (j.contains("row") || j.contains("col")) {
      std::vector<double> col = Doubles(j.at("col"), where + ".col");
      std::vector<double> row = Doubles(j.at("row"), where + ".row");
      if (static_cast<int>(col.size()) != rows ||
          static_cast<int>(row.size()) != cols) {
        BadParams(where + " factor lengths do not match rows/cols");
      }
      Kernel2D k = Kernel2D::Separable(std::move(col), std::move(row));
      const auto product = k.taps();
      for (size_t i = 0; i < taps.size() && i < product.size(); ++i) {
        if (std::abs(product[i] - taps[i]) > 1e-15) {
          BadParams(where + " taps are not the product of row and col");
        }
      }
      if (taps.size() != product.size()) BadParams(where + " tap count");
      return k;
    }
    return Kernel2D(rows, cols, std::move(taps));
  } catch (const nlohmann::json::exception& e) {
    BadParams(where + ": " + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParams) throw;
    BadParams(where + ": " + e.what());
  }
}

ordered_json KernelToJson(const Kernel2D& k) {
  ordered_json j;
  j["rows"] = k.rows();
  j["cols"] = k.cols();
  j["taps"] = std::vector<double>(k.taps().begin(), k.taps().end());
  if (k.separable()) {
    j["col"] = std::vector<double>(k.col_taps().begin(), k.col_taps().end());
    j["row"] = std::vector<double>(k.row_taps().begin(), k.row_taps().end());
  }
  return j;
}

}  // namespace

NlpParams ParseParams(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    BadParams(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) BadParams("top level must be an object");
  if (!j.contains("schema") || j["schema"] != kParamsSchema) {
    BadParams("schema must be \"" + std::string(kParamsSchema) + "\"");
  }
  for (const char* key : {"stages", "lowpass", "norm_filters", "sigmas"}) {
    if (!j.contains(key)) BadParams(std::string("missing \"") + key + "\"");
  }
  if (!j["stages"].is_number_integer()) BadParams("stages must be an integer");

  NlpParams params;
  params.stages = j["stages"].get<int>();
  params.lowpass = KernelFromJson(j["lowpass"], "lowpass");
  if (!j["norm_filters"].is_array()) BadParams("norm_filters must be an array");
  for (size_t k = 0; k < j["norm_filters"].size(); ++k) {
    params.norm_filters.push_back(KernelFromJson(
        j["norm_filters"][k], "norm_filters[" + std::to_string(k) + "]"));
  }
  params.sigmas = Doubles(j["sigmas"], "sigmas");
  params.Validate();
  return params;
}

NlpParams LoadParams(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kParams,
                "cannot open params file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return ParseParams(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string SerializeParams(const NlpParams& params) {
  params.Validate();
  ordered_json j;
  j["schema"] = kParamsSchema;
  j["stages"] = params.stages;
  j["lowpass"] = KernelToJson(params.lowpass);
  j["norm_filters"] = ordered_json::array();
  for (const Kernel2D& k : params.norm_filters) {
    j["norm_filters"].push_back(KernelToJson(k));
  }
  j["sigmas"] = params.sigmas;
  return j.dump(2) + "\n";
}

void SaveParams(const NlpParams& params, const std::filesystem::path& path) {
  const std::string text = SerializeParams(params);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) {
    throw Error(ErrorCode::kIo, "cannot write params file " + path.string());
  }
}

}  // namespace nlpd
