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

#ifndef NLPD_TOOLS_NLPD_COMMANDS_H_
#define NLPD_TOOLS_NLPD_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <string>

#include "nlpd/error.h"
#include "nlpd/optimize.h"

namespace nlpd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPartial = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitShape = 3;
inline constexpr int kExitParams = 4;
inline constexpr int kExitStages = 5;
inline constexpr int kExitNonFinite = 6;
inline constexpr int kExitUsage = 64;

int ExitCodeFor(ErrorCode code);
// Machine-greppable prefix, e.g. "ERR_IO".
const char* ReasonFor(ErrorCode code);

struct CommonOptions {
  std::string params_path;  // empty: NLPD_PARAMS, then built-in defaults
  bool auto_clamp = false;
};

struct DistOptions {
  CommonOptions common;
  std::string a;
  std::string b;
};

struct BatchOptions {
  CommonOptions common;
  std::string manifest;
  int jobs = 1;
  std::string format = "json";
};

struct FitOptions {
  std::string corpus_dir;
  int stages = 6;
  int neighborhood = 5;
  double ridge = 1e-6;
  std::optional<double> sigma;
  std::string out;
};

struct OptimizeOptions {
  CommonOptions common;
  std::string ref;
  std::string init = "flat";
  std::string init_path;
  int steps = 500;
  double lr = kDefaultStepSize;
  uint64_t seed = 0;
  std::string trace_out;
  std::string out;
};

struct PyramidOptions {
  CommonOptions common;
  std::string image;
  std::optional<int> stages;
  std::string out_dir;
  bool normalized = false;
};

// Each command writes its report to stdout and returns an exit code. Errors
// propagate as nlpd::Error, except batch, which records them per row.
int RunDist(const DistOptions& opt);
int RunBatch(const BatchOptions& opt);
int RunFit(const FitOptions& opt);
int RunOptimize(const OptimizeOptions& opt);
int RunPyramid(const PyramidOptions& opt);

}  // namespace nlpd::cli

#endif  // NLPD_TOOLS_NLPD_COMMANDS_H_
