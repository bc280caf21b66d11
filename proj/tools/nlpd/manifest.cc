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

#include "manifest.h"

#include <fstream>
#include <set>

#include "nlpd/error.h"

namespace nlpd::cli {
namespace {

std::string Trim(const std::string& s) {
  const size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const size_t end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void Bad(const std::filesystem::path& path, int line,
                      const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument,
              path.string() + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(Trim(field));
      field.clear();
    } else {
      field += ch;
    }
  }
  fields.push_back(Trim(field));
  return fields;
}

std::vector<ManifestEntry> ReadManifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kFileNotFound, "cannot open manifest " + path.string());
  }
  const std::filesystem::path base = path.parent_path();
  std::vector<ManifestEntry> entries;
  std::set<std::string> ids;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const std::vector<std::string> fields = SplitCsvLine(line);
    if (!header_seen) {
      if (fields.size() < 2 || fields[0] != "path_a" || fields[1] != "path_b" ||
          (fields.size() == 3 && fields[2] != "id") || fields.size() > 3) {
        Bad(path, line_no, "header must be path_a,path_b,id");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() < 2 || fields.size() > 3) {
      Bad(path, line_no, "expected 2 or 3 fields");
    }
    if (fields[0].empty() || fields[1].empty()) Bad(path, line_no, "empty path");
    ManifestEntry e;
    e.path_a = base / fields[0];
    e.path_b = base / fields[1];
    e.id = fields.size() == 3 && !fields[2].empty()
               ? fields[2]
               : std::to_string(entries.size() + 1);
    if (!ids.insert(e.id).second) Bad(path, line_no, "duplicate id " + e.id);
    entries.push_back(std::move(e));
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  if (!header_seen) Bad(path, line_no, "missing header");
  if (entries.empty()) Bad(path, line_no, "manifest has no pairs");
  return entries;
}

}  // namespace nlpd::cli
