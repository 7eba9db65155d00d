#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dmlite::traffic {

struct TrafficImage {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::vector<std::uint8_t> pixels;  // row-major, one byte per pixel
    std::uint8_t label = 0;
};

// First L bytes if longer, zero padded at the tail if shorter.
std::vector<std::uint8_t> uniform_length(const std::vector<std::uint8_t>& bytes, std::size_t length);

// Row-major reshape: byte k becomes pixel (k / w, k mod w).
TrafficImage to_image(const std::vector<std::uint8_t>& bytes, std::uint32_t width,
                      std::uint32_t height);

struct LabeledImageSet {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::vector<TrafficImage> images;
    std::vector<std::string> class_names;
    std::string split_tag;  // "train" or "test"
};

}  // namespace dmlite::traffic
