#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dmlite::traffic {

// IDX container (MNIST convention): big-endian magic 0x0000TTDD where TT is
// the element type and DD the dimension count, then DD big-endian u32 dims,
// then raw element data.
//
//   images: magic 0x00000803, dims (n, h, w), u8 pixels
//   labels: magic 0x00000801, dims (n),       u8 labels
//   float matrices (features): magic 0x00000D02, dims (n, d), big-endian f32

struct IdxImages {
    std::uint32_t count = 0;
    std::uint32_t height = 0;
    std::uint32_t width = 0;
    std::vector<std::uint8_t> pixels;  // count*height*width, row-major
};

void write_idx_images(const std::string& path, const IdxImages& images);
IdxImages read_idx_images(const std::string& path);

void write_idx_labels(const std::string& path, const std::vector<std::uint8_t>& labels);
std::vector<std::uint8_t> read_idx_labels(const std::string& path);

struct IdxMatrix {
    std::uint32_t rows = 0;
    std::uint32_t cols = 0;
    std::vector<float> values;  // rows*cols, row-major
};

void write_idx_matrix(const std::string& path, const IdxMatrix& m);
IdxMatrix read_idx_matrix(const std::string& path);

}  // namespace dmlite::traffic
