// Copyright 2026 The slumkit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "slumkit/image.h"

#include <png.h>

#include <algorithm>
#include <cstdio>
#include <memory>
#include <utility>

#include "slumkit/error.h"

namespace slumkit {
namespace {

struct FileCloser {
  void operator()(FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

struct PngWriteState {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngWriteState() { png_destroy_write_struct(&png, &info); }
};

struct PngReadState {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngReadState() { png_destroy_read_struct(&png, &info, nullptr); }
};

// The setjmp frames below hold no objects with destructors, so a libpng
// longjmp cannot skip any cleanup.
bool ReadPngHeader(PngReadState& st, FILE* file) {
  if (setjmp(png_jmpbuf(st.png))) return false;
  png_init_io(st.png, file);
  png_set_sig_bytes(st.png, 8);
  png_read_info(st.png, st.info);

  int color_type = png_get_color_type(st.png, st.info);
  int bit_depth = png_get_bit_depth(st.png, st.info);
  if (bit_depth == 16) png_set_strip_16(st.png);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(st.png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) {
    png_set_expand_gray_1_2_4_to_8(st.png);
  }
  if (color_type == PNG_COLOR_TYPE_GRAY ||
      color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
    png_set_gray_to_rgb(st.png);
  }
  if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(st.png);
  if (png_get_valid(st.png, st.info, PNG_INFO_tRNS)) {
    png_set_tRNS_to_alpha(st.png);
    png_set_strip_alpha(st.png);
  }
  png_read_update_info(st.png, st.info);
  return true;
}

bool ReadPngBody(PngReadState& st, png_bytepp rows) {
  if (setjmp(png_jmpbuf(st.png))) return false;
  png_read_image(st.png, rows);
  png_read_end(st.png, nullptr);
  return true;
}

bool WritePngBody(PngWriteState& st, FILE* file, int width, int height,
                  int color_type, png_colorp colors, int n_colors,
                  png_bytepp rows) {
  if (setjmp(png_jmpbuf(st.png))) return false;
  png_init_io(st.png, file);
  png_set_IHDR(st.png, st.info, width, height, 8, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  if (color_type == PNG_COLOR_TYPE_PALETTE) {
    png_set_PLTE(st.png, st.info, colors, n_colors);
  }
  png_write_info(st.png, st.info);
  png_write_image(st.png, rows);
  png_write_end(st.png, nullptr);
  return true;
}

void WriteRows(const std::string& path, int width, int height, int color_type,
               int channels, const uint8_t* data,
               std::span<const std::array<uint8_t, 3>> palette) {
  FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file) throw Error(ErrorCode::kIoError, "cannot open " + path);

  PngWriteState st;
  st.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                   nullptr);
  if (!st.png) throw Error(ErrorCode::kIoError, "png_create_write_struct");
  st.info = png_create_info_struct(st.png);
  if (!st.info) throw Error(ErrorCode::kIoError, "png_create_info_struct");

  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y) {
    rows[y] = const_cast<png_bytep>(data + static_cast<size_t>(y) * width *
                                               channels);
  }
  std::vector<png_color> colors;
  for (const auto& c : palette) colors.push_back({c[0], c[1], c[2]});

  if (!WritePngBody(st, file.get(), width, height, color_type, colors.data(),
                    static_cast<int>(colors.size()), rows.data())) {
    throw Error(ErrorCode::kIoError, "failed writing PNG " + path);
  }
  if (std::fflush(file.get()) != 0) {
    throw Error(ErrorCode::kIoError, "failed writing PNG " + path);
  }
}

}  // namespace

RgbImage::RgbImage(int width, int height) : RgbImage(width, height, {}) {}

RgbImage::RgbImage(int width, int height, std::vector<uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "image dimensions must be positive");
  }
  const size_t expected = static_cast<size_t>(width) * height * 3;
  if (pixels_.empty()) {
    pixels_.assign(expected, 0);
  } else if (pixels_.size() != expected) {
    throw Error(ErrorCode::kDimensionMismatch,
                "pixel buffer size does not match image dimensions");
  }
}

RgbImage ReadPng(const std::string& path) {
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) throw Error(ErrorCode::kImageLoadError, "cannot open " + path);

  png_byte sig[8];
  if (std::fread(sig, 1, 8, file.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
    throw Error(ErrorCode::kImageLoadError, path + " is not a PNG file");
  }

  PngReadState st;
  st.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                  nullptr);
  if (!st.png) throw Error(ErrorCode::kImageLoadError, "png_create_read_struct");
  st.info = png_create_info_struct(st.png);
  if (!st.info) throw Error(ErrorCode::kImageLoadError, "png_create_info_struct");

  if (!ReadPngHeader(st, file.get())) {
    throw Error(ErrorCode::kImageLoadError, "corrupt PNG header " + path);
  }
  png_uint_32 width = png_get_image_width(st.png, st.info);
  png_uint_32 height = png_get_image_height(st.png, st.info);
  if (png_get_rowbytes(st.png, st.info) != static_cast<size_t>(width) * 3) {
    throw Error(ErrorCode::kImageLoadError, "unsupported PNG layout " + path);
  }

  std::vector<uint8_t> pixels(static_cast<size_t>(width) * height * 3);
  std::vector<png_bytep> rows(height);
  for (png_uint_32 y = 0; y < height; ++y) {
    rows[y] = pixels.data() + static_cast<size_t>(y) * width * 3;
  }
  if (!ReadPngBody(st, rows.data())) {
    throw Error(ErrorCode::kImageLoadError, "corrupt PNG data " + path);
  }
  return RgbImage(static_cast<int>(width), static_cast<int>(height),
                  std::move(pixels));
}

void WritePng(const RgbImage& image, const std::string& path) {
  WriteRows(path, image.width(), image.height(), PNG_COLOR_TYPE_RGB, 3,
            image.pixels().data(), {});
}

void WriteMaskPng(const RasterMask& mask, const std::string& path) {
  std::vector<uint8_t> gray(mask.size());
  auto bits = mask.bits();
  for (size_t i = 0; i < gray.size(); ++i) gray[i] = bits[i] ? 255 : 0;
  WriteRows(path, mask.width(), mask.height(), PNG_COLOR_TYPE_GRAY, 1,
            gray.data(), {});
}

RasterMask ReadMaskPng(const std::string& path) {
  RgbImage img = ReadPng(path);
  std::vector<uint8_t> bits(static_cast<size_t>(img.width()) * img.height());
  auto px = img.pixels();
  for (size_t i = 0; i < bits.size(); ++i) {
    bits[i] = std::max({px[3 * i], px[3 * i + 1], px[3 * i + 2]}) >= 128 ? 1 : 0;
  }
  return RasterMask(img.width(), img.height(), std::move(bits));
}

void WritePalettePng(int width, int height, std::span<const uint8_t> indices,
                     std::span<const std::array<uint8_t, 3>> palette,
                     const std::string& path) {
  if (indices.size() != static_cast<size_t>(width) * height) {
    throw Error(ErrorCode::kDimensionMismatch,
                "palette index buffer does not match image dimensions");
  }
  WriteRows(path, width, height, PNG_COLOR_TYPE_PALETTE, 1, indices.data(),
            palette);
}

}  // namespace slumkit
