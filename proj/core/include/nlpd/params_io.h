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

#ifndef NLPD_PARAMS_IO_H_
#define NLPD_PARAMS_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "nlpd/nlp.h"

namespace nlpd {

inline constexpr std::string_view kParamsSchema = "nlpd-params-v1";

// JSON layout:
//   {"schema": "nlpd-params-v1", "stages": N,
//    "lowpass": {"rows": r, "cols": c, "taps": [...]},
//    "norm_filters": [{"rows": r, "cols": c, "taps": [...]}, ...],
//    "sigmas": [...]}
// Taps are row-major. A kernel may also carry "row" and "col" factor
// vectors, in which case it is treated as separable.
// Parse errors and invariant violations throw kParams.
NlpParams ParseParams(std::string_view json);
NlpParams LoadParams(const std::filesystem::path& path);

// Serialization is deterministic: fixed key order, shortest round-trip
// decimal for every double.
std::string SerializeParams(const NlpParams& params);
void SaveParams(const NlpParams& params, const std::filesystem::path& path);

}  // namespace nlpd

#endif  // NLPD_PARAMS_IO_H_
