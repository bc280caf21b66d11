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

#include "nlpd/image_io.h"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>
#include <string>
#include <system_error>
#include <vector>

#include "nlpd/error.h"

namespace nlpd {
namespace {

namespace fs = std::filesystem;

[[noreturn]] void Fail(ErrorCode code, const fs::path& path,
                       const std::string& what) {
  throw Error(code, std::string(ErrorCodeName(code)) + ": " + path.string() +
                        ": " + what);
}

std::vector<unsigned char> ReadAll(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    Fail(ErrorCode::kFileNotFound, path, "no such file");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, path, "cannot open");
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in), {});
}

void WriteAll(const fs::path& path, const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, path, "cannot open for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) Fail(ErrorCode::kIo, path, "write failed");
}

std::string LowerExtension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext;
}

uint32_t Quantize(double v, uint32_t max_value) {
  // Samples are non-negative, so floor(x + 0.5) rounds half up.
  return static_cast<uint32_t>(std::floor(v * max_value + 0.5));
}

// Interleaved samples (pixel-major, channel-minor) to a channel-planar Image.
Image FromInterleaved(int width, int height, int channels,
                      const std::vector<uint32_t>& samples, double max_value) {
  const size_t pixels = static_cast<size_t>(width) * height;
  std::vector<double> data(pixels * channels);
  for (size_t i = 0; i < pixels; ++i) {
    for (int c = 0; c < channels; ++c) {
      data[c * pixels + i] = samples[i * channels + c] / max_value;
    }
  }
  return Image(width, height, channels, std::move(data));
}

// --- PNM --------------------------------------------------------------------

class PnmHeaderReader {
 public:
  PnmHeaderReader(const std::vector<unsigned char>& bytes, const fs::path& path)
      : bytes_(bytes), path_(path) {}

  int NextInt() {
    SkipSpaceAndComments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      Fail(ErrorCode::kCorruptFile, path_, "malformed PNM header");
    }
    long long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_++] - '0');
      if (v > (1 << 30)) Fail(ErrorCode::kCorruptFile, path_, "header value");
    }
    return static_cast<int>(v);
  }

  // Exactly one whitespace byte separates the header from the raster.
  size_t RasterStart() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      Fail(ErrorCode::kCorruptFile, path_, "malformed PNM header");
    }
    return pos_ + 1;
  }

  void Skip(size_t n) { pos_ += n; }

 private:
  void SkipSpaceAndComments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<unsigned char>& bytes_;
  const fs::path& path_;
  size_t pos_ = 0;
};

Image DecodePnm(const std::vector<unsigned char>& bytes, const fs::path& path) {
  const int channels = bytes[1] == '5' ? 1 : 3;
  PnmHeaderReader header(bytes, path);
  header.Skip(2);
  const int width = header.NextInt();
  const int height = header.NextInt();
  const int maxval = header.NextInt();
  if (width < 1 || height < 1 || maxval < 1 || maxval > 65535) {
    Fail(ErrorCode::kCorruptFile, path, "bad PNM dimensions or maxval");
  }
  const size_t start = header.RasterStart();
  const int bytes_per_sample = maxval > 255 ? 2 : 1;
  const size_t count = static_cast<size_t>(width) * height * channels;
  if (bytes.size() < start + count * bytes_per_sample) {
    Fail(ErrorCode::kCorruptFile, path, "truncated raster");
  }
  std::vector<uint32_t> samples(count);
  const unsigned char* p = bytes.data() + start;
  for (size_t i = 0; i < count; ++i) {
    uint32_t v = bytes_per_sample == 2 ? (uint32_t{p[2 * i]} << 8) | p[2 * i + 1]
                                       : p[i];
    if (v > static_cast<uint32_t>(maxval)) {
      Fail(ErrorCode::kCorruptFile, path, "sample exceeds maxval");
    }
    samples[i] = v;
  }
  return FromInterleaved(width, height, channels, samples, maxval);
}

std::vector<unsigned char> EncodePnm(const Image& image, int depth) {
  const uint32_t max_value = depth == 8 ? 255 : 65535;
  const std::string header = std::string(image.channels() == 1 ? "P5" : "P6") +
                             "\n" + std::to_string(image.width()) + " " +
                             std::to_string(image.height()) + "\n" +
                             std::to_string(max_value) + "\n";
  std::vector<unsigned char> out(header.begin(), header.end());
  const size_t pixels = image.pixels();
  for (size_t i = 0; i < pixels; ++i) {
    for (int c = 0; c < image.channels(); ++c) {
      const uint32_t v = Quantize(image.data()[c * pixels + i], max_value);
      if (depth == 16) out.push_back(static_cast<unsigned char>(v >> 8));
      out.push_back(static_cast<unsigned char>(v & 0xff));
    }
  }
  return out;
}

// --- PNG --------------------------------------------------------------------

struct PngReadState {
  const std::vector<unsigned char>* bytes;
  size_t offset;
};

void PngReadCallback(png_structp png, png_bytep out, png_size_t length) {
  auto* state = static_cast<PngReadState*>(png_get_io_ptr(png));
  if (state->offset + length > state->bytes->size()) {
    png_error(png, "unexpected end of data");
  }
  std::copy_n(state->bytes->data() + state->offset, length, out);
  state->offset += length;
}

void PngWriteCallback(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<unsigned char>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void PngFlushCallback(png_structp) {}

void PngErrorCallback(png_structp png, png_const_charp message) {
  auto* msg = static_cast<std::string*>(png_get_error_ptr(png));
  *msg = message;
  longjmp(png_jmpbuf(png), 1);
}

void PngWarningCallback(png_structp, png_const_charp) {}

// Plain-old-data result of the setjmp-guarded section, so that no object
// with a destructor lives across longjmp.
struct PngDecoded {
  int width = 0;
  int height = 0;
  int channels = 0;
  int depth = 0;
  bool has_alpha = false;
};

// Buffers are owned by the caller so nothing with a destructor lives in the
// frame that setjmp guards.
bool DecodePngRaw(const std::vector<unsigned char>& bytes, PngDecoded* info,
                  std::vector<unsigned char>* raster,
                  std::vector<png_bytep>* rows, std::string* error) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, error,
                                           PngErrorCallback, PngWarningCallback);
  if (png == nullptr) {
    *error = "libpng init failed";
    return false;
  }
  png_infop info_ptr = png_create_info_struct(png);
  if (info_ptr == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    *error = "libpng init failed";
    return false;
  }
  PngReadState state{&bytes, 0};
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info_ptr, nullptr);
    return false;
  }
  png_set_read_fn(png, &state, PngReadCallback);
  png_read_info(png, info_ptr);

  const png_byte color = png_get_color_type(png, info_ptr);
  const png_byte bit_depth = png_get_bit_depth(png, info_ptr);
  info->has_alpha = (color & PNG_COLOR_MASK_ALPHA) != 0 ||
                    png_get_valid(png, info_ptr, PNG_INFO_tRNS) != 0;
  if (info->has_alpha) {
    png_destroy_read_struct(&png, &info_ptr, nullptr);
    return true;
  }
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && bit_depth < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  png_read_update_info(png, info_ptr);

  info->width = static_cast<int>(png_get_image_width(png, info_ptr));
  info->height = static_cast<int>(png_get_image_height(png, info_ptr));
  info->channels = png_get_channels(png, info_ptr);
  info->depth = png_get_bit_depth(png, info_ptr);
  const size_t rowbytes = png_get_rowbytes(png, info_ptr);
  raster->resize(rowbytes * info->height);
  rows->resize(info->height);
  for (int y = 0; y < info->height; ++y) {
    (*rows)[y] = raster->data() + rowbytes * y;
  }
  png_read_image(png, rows->data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info_ptr, nullptr);
  return true;
}

Image DecodePng(const std::vector<unsigned char>& bytes, const fs::path& path) {
  PngDecoded info;
  std::vector<unsigned char> raster;
  std::vector<png_bytep> rows;
  std::string error;
  if (!DecodePngRaw(bytes, &info, &raster, &rows, &error)) {
    Fail(ErrorCode::kCorruptFile, path, error);
  }
  if (info.has_alpha) {
    Fail(ErrorCode::kUnsupportedFormat, path, "alpha channels are not supported");
  }
  if ((info.channels != 1 && info.channels != 3) ||
      (info.depth != 8 && info.depth != 16)) {
    Fail(ErrorCode::kUnsupportedFormat, path, "unsupported PNG layout");
  }
  const size_t count =
      static_cast<size_t>(info.width) * info.height * info.channels;
  std::vector<uint32_t> samples(count);
  for (size_t i = 0; i < count; ++i) {
    // PNG stores 16-bit samples big-endian.
    samples[i] = info.depth == 16
                     ? (uint32_t{raster[2 * i]} << 8) | raster[2 * i + 1]
                     : raster[i];
  }
  return FromInterleaved(info.width, info.height, info.channels, samples,
                         info.depth == 16 ? 65535.0 : 255.0);
}

bool EncodePngRaw(int width, int height, int channels, int depth,
                  const std::vector<unsigned char>& raster,
                  std::vector<png_bytep>* rows,
                  std::vector<unsigned char>* out, std::string* error) {
  png_structp png = png_create_write_struct(
      PNG_LIBPNG_VER_STRING, error, PngErrorCallback, PngWarningCallback);
  if (png == nullptr) return false;
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_set_write_fn(png, out, PngWriteCallback, PngFlushCallback);
  png_set_IHDR(png, info, width, height, depth,
               channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const size_t rowbytes = static_cast<size_t>(width) * channels * (depth / 8);
  rows->resize(height);
  for (int y = 0; y < height; ++y) {
    (*rows)[y] = const_cast<png_bytep>(raster.data() + rowbytes * y);
  }
  png_write_image(png, rows->data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

std::vector<unsigned char> EncodePng(const Image& image, int depth,
                                     const fs::path& path) {
  const uint32_t max_value = depth == 8 ? 255 : 65535;
  const size_t pixels = image.pixels();
  std::vector<unsigned char> raster;
  raster.reserve(pixels * image.channels() * (depth / 8));
  for (size_t i = 0; i < pixels; ++i) {
    for (int c = 0; c < image.channels(); ++c) {
      const uint32_t v = Quantize(image.data()[c * pixels + i], max_value);
      if (depth == 16) raster.push_back(static_cast<unsigned char>(v >> 8));
      raster.push_back(static_cast<unsigned char>(v & 0xff));
    }
  }
  std::vector<unsigned char> out;
  std::vector<png_bytep> rows;
  std::string error;
  if (!EncodePngRaw(image.width(), image.height(), image.channels(), depth,
                    raster, &rows, &out, &error)) {
    Fail(ErrorCode::kIo, path, "PNG encoding failed: " + error);
  }
  return out;
}

bool IsPng(const std::vector<unsigned char>& bytes) {
  return bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0;
}

bool IsBinaryPnm(const std::vector<unsigned char>& bytes) {
  return bytes.size() >= 2 && bytes[0] == 'P' &&
         (bytes[1] == '5' || bytes[1] == '6');
}

}  // namespace

Image LoadImage(const fs::path& path) {
  const std::vector<unsigned char> bytes = ReadAll(path);
  if (IsPng(bytes)) return DecodePng(bytes, path);
  if (IsBinaryPnm(bytes)) return DecodePnm(bytes, path);
  Fail(ErrorCode::kUnsupportedFormat, path, "not a PNG, P5 PGM or P6 PPM file");
}

void SaveImage(const Image& image, const fs::path& path, int depth) {
  if (depth != 8 && depth != 16) {
    throw Error(ErrorCode::kInvalidArgument,
                "invalid-depth: " + std::to_string(depth) + " (expected 8 or 16)");
  }
  const std::string ext = LowerExtension(path);
  if (ext == ".png") {
    WriteAll(path, EncodePng(image, depth, path));
  } else if (ext == ".pgm" || ext == ".ppm") {
    if ((ext == ".pgm") != (image.channels() == 1)) {
      Fail(ErrorCode::kUnsupportedFormat, path,
           "extension does not match channel count " +
               std::to_string(image.channels()));
    }
    WriteAll(path, EncodePnm(image, depth));
  } else {
    Fail(ErrorCode::kUnsupportedFormat, path,
         "unknown output extension \"" + ext + "\"");
  }
}

void SavePlanePgm16(const Plane& plane, const fs::path& path) {
  std::vector<double> data(plane.data().begin(), plane.data().end());
  WriteAll(path,
           EncodePnm(Image(plane.width(), plane.height(), 1, std::move(data)), 16));
}

}  // namespace nlpd
