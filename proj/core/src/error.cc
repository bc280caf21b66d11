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

#include "nlpd/error.h"

namespace nlpd {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid-argument";
    case ErrorCode::kInvalidImage:
      return "invalid-image";
    case ErrorCode::kFileNotFound:
      return "file-not-found";
    case ErrorCode::kUnsupportedFormat:
      return "unsupported-format";
    case ErrorCode::kCorruptFile:
      return "corrupt-file";
    case ErrorCode::kIo:
      return "io-error";
    case ErrorCode::kShapeMismatch:
      return "shape-mismatch";
    case ErrorCode::kDimensionMismatch:
      return "dimension-mismatch";
    case ErrorCode::kKernelTooLarge:
      return "kernel-too-large";
    case ErrorCode::kTooManyStages:
      return "too-many-stages";
    case ErrorCode::kParams:
      return "params-error";
    case ErrorCode::kEmptyCorpus:
      return "empty-corpus";
    case ErrorCode::kNonFinite:
      return "non-finite";
  }
  return "unknown";
}

}  // namespace nlpd
