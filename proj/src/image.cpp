#include "dmlite/image.hpp"

#include "dmlite/common.hpp"

namespace dmlite::traffic {

std::vector<std::uint8_t> uniform_length(const std::vector<std::uint8_t>& bytes,
                                         std::size_t length) {
    std::vector<std::uint8_t> out(length, 0);
    std::size_t n = std::min(bytes.size(), length);
    std::copy(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(n), out.begin());
    return out;
}

TrafficImage to_image(const std::vector<std::uint8_t>& bytes, std::uint32_t width,
                      std::uint32_t height) {
    if (bytes.size() != static_cast<std::size_t>(width) * height)
        throw DimensionError("byte count " + std::to_string(bytes.size()) +
                             " does not match image dimensions " + std::to_string(width) + "x" +
                             std::to_string(height));
    TrafficImage image;
    image.width = width;
    image.height = height;
    image.pixels = bytes;
    return image;
}

}  // namespace dmlite::traffic
