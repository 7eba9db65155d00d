#include "dmlite/idx.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "dmlite/common.hpp"

namespace dmlite::traffic {

namespace {

constexpr std::uint32_t kImagesMagic = 0x00000803u;
constexpr std::uint32_t kLabelsMagic = 0x00000801u;
constexpr std::uint32_t kMatrixMagic = 0x00000D02u;

void put_u32be(std::ofstream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v >> 24), static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 8), static_cast<unsigned char>(v)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32be(std::ifstream& in, const std::string& path) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4))
        throw FormatError("truncated IDX header in " + path);
    return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) | (std::uint32_t{b[2]} << 8) |
           std::uint32_t{b[3]};
}

std::ifstream open_for_read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return in;
}

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create " + path);
    return out;
}

std::size_t remaining_bytes(std::ifstream& in) {
    auto pos = in.tellg();
    in.seekg(0, std::ios::end);
    auto end = in.tellg();
    in.seekg(pos);
    return static_cast<std::size_t>(end - pos);
}

}  // namespace

void write_idx_images(const std::string& path, const IdxImages& images) {
    if (images.pixels.size() !=
        static_cast<std::size_t>(images.count) * images.height * images.width)
        throw DimensionError("IDX image buffer size does not match count*h*w");
    auto out = open_for_write(path);
    put_u32be(out, kImagesMagic);
    put_u32be(out, images.count);
    put_u32be(out, images.height);
    put_u32be(out, images.width);
    out.write(reinterpret_cast<const char*>(images.pixels.data()),
              static_cast<std::streamsize>(images.pixels.size()));
    if (!out) throw IoError("short write to " + path);
}

IdxImages read_idx_images(const std::string& path) {
    auto in = open_for_read(path);
    if (get_u32be(in, path) != kImagesMagic)
        throw FormatError("bad IDX image magic in " + path);
    IdxImages images;
    images.count = get_u32be(in, path);
    images.height = get_u32be(in, path);
    images.width = get_u32be(in, path);
    std::size_t expect = static_cast<std::size_t>(images.count) * images.height * images.width;
    if (remaining_bytes(in) != expect)
        throw FormatError("IDX image payload size mismatch in " + path);
    images.pixels.resize(expect);
    in.read(reinterpret_cast<char*>(images.pixels.data()), static_cast<std::streamsize>(expect));
    if (!in) throw FormatError("truncated IDX image payload in " + path);
    return images;
}

void write_idx_labels(const std::string& path, const std::vector<std::uint8_t>& labels) {
    auto out = open_for_write(path);
    put_u32be(out, kLabelsMagic);
    put_u32be(out, static_cast<std::uint32_t>(labels.size()));
    out.write(reinterpret_cast<const char*>(labels.data()),
              static_cast<std::streamsize>(labels.size()));
    if (!out) throw IoError("short write to " + path);
}

std::vector<std::uint8_t> read_idx_labels(const std::string& path) {
    auto in = open_for_read(path);
    if (get_u32be(in, path) != kLabelsMagic)
        throw FormatError("bad IDX label magic in " + path);
    std::uint32_t n = get_u32be(in, path);
    if (remaining_bytes(in) != n)
        throw FormatError("IDX label payload size mismatch in " + path);
    std::vector<std::uint8_t> labels(n);
    in.read(reinterpret_cast<char*>(labels.data()), static_cast<std::streamsize>(n));
    if (!in) throw FormatError("truncated IDX label payload in " + path);
    return labels;
}

void write_idx_matrix(const std::string& path, const IdxMatrix& m) {
    if (m.values.size() != static_cast<std::size_t>(m.rows) * m.cols)
        throw DimensionError("IDX matrix buffer size does not match rows*cols");
    auto out = open_for_write(path);
    put_u32be(out, kMatrixMagic);
    put_u32be(out, m.rows);
    put_u32be(out, m.cols);
    for (float v : m.values) {
        std::uint32_t bits = std::bit_cast<std::uint32_t>(v);
        put_u32be(out, bits);
    }
    if (!out) throw IoError("short write to " + path);
}

IdxMatrix read_idx_matrix(const std::string& path) {
    auto in = open_for_read(path);
    if (get_u32be(in, path) != kMatrixMagic)
        throw FormatError("bad IDX matrix magic in " + path);
    IdxMatrix m;
    m.rows = get_u32be(in, path);
    m.cols = get_u32be(in, path);
    std::size_t n = static_cast<std::size_t>(m.rows) * m.cols;
    if (remaining_bytes(in) != n * 4)
        throw FormatError("IDX matrix payload size mismatch in " + path);
    m.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        m.values[i] = std::bit_cast<float>(get_u32be(in, path));
    }
    return m;
}

}  // namespace dmlite::traffic
