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

#ifndef NLPD_TOOLS_NLPD_MANIFEST_H_
#define NLPD_TOOLS_NLPD_MANIFEST_H_

#include <filesystem>
#include <string>
#include <vector>

namespace nlpd::cli {

struct ManifestEntry {
  std::filesystem::path path_a;
  std::filesystem::path path_b;
  std::string id;
};

// Reads a CSV manifest with header path_a,path_b,id. Relative paths resolve
// against the manifest's directory. A blank id defaults to the 1-based row
// number. Throws nlpd::Error (kFileNotFound, kIo or kInvalidArgument).
std::vector<ManifestEntry> ReadManifest(const std::filesystem::path& path);

// Splits one CSV record. Double-quoted fields may contain commas and ""
// escapes.
std::vector<std::string> SplitCsvLine(const std::string& line);

}  // namespace nlpd::cli

#endif  // NLPD_TOOLS_NLPD_MANIFEST_H_
