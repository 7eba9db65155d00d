#include "dmlite/pcap.hpp"

#include <cstring>
#include <fstream>

#include "dmlite/common.hpp"

namespace dmlite::traffic {

namespace {

constexpr std::uint32_t kMagicNative = 0xa1b2c3d4u;
constexpr std::uint32_t kMagicSwapped = 0xd4c3b2a1u;

std::uint32_t bswap32(std::uint32_t v) {
    return ((v & 0x000000ffu) << 24) | ((v & 0x0000ff00u) << 8) | ((v & 0x00ff0000u) >> 8) |
           ((v & 0xff000000u) >> 24);
}

std::uint16_t bswap16(std::uint16_t v) {
    return static_cast<std::uint16_t>((v << 8) | (v >> 8));
}

struct Reader {
    const std::vector<std::uint8_t>& data;
    std::size_t pos = 0;
    bool swap = false;
    const std::string& origin;

    std::uint32_t u32() {
        if (pos + 4 > data.size())
            throw ParseError("truncated pcap record in " + origin + " at byte offset " +
                             std::to_string(pos));
        std::uint32_t v;
        std::memcpy(&v, data.data() + pos, 4);
        pos += 4;
        return swap ? bswap32(v) : v;
    }

    std::uint16_t u16() {
        if (pos + 2 > data.size())
            throw ParseError("truncated pcap record in " + origin + " at byte offset " +
                             std::to_string(pos));
        std::uint16_t v;
        std::memcpy(&v, data.data() + pos, 2);
        pos += 2;
        return swap ? bswap16(v) : v;
    }
};

void append_u32(std::vector<std::uint8_t>& out, std::uint32_t v, bool swap) {
    if (swap) v = bswap32(v);
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 24));
}

void append_u16(std::vector<std::uint8_t>& out, std::uint16_t v, bool swap) {
    if (swap) v = bswap16(v);
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

}  // namespace

Capture parse_pcap_bytes(const std::vector<std::uint8_t>& data, const std::string& origin) {
    if (data.size() < 24)
        throw FormatError("file too short for pcap global header: " + origin);

    std::uint32_t magic;
    std::memcpy(&magic, data.data(), 4);
    bool swap;
    if (magic == kMagicNative) {
        swap = false;
    } else if (magic == kMagicSwapped) {
        swap = true;
    } else {
        throw FormatError("unsupported capture format (magic mismatch) in " + origin);
    }

    Reader r{data, 4, swap, origin};
    r.u16();  // version major
    r.u16();  // version minor
    r.u32();  // thiszone
    r.u32();  // sigfigs
    std::uint32_t snaplen = r.u32();
    (void)snaplen;

    Capture capture;
    capture.link_type = r.u32();

    while (r.pos < data.size()) {
        std::size_t record_start = r.pos;
        RawPacket pkt;
        pkt.ts_sec = r.u32();
        pkt.ts_usec = r.u32();
        std::uint32_t incl_len = r.u32();
        pkt.orig_len = r.u32();
        if (incl_len == 0 || incl_len > pkt.orig_len)
            throw ParseError("invalid pcap record lengths in " + origin + " at byte offset " +
                             std::to_string(record_start));
        if (r.pos + incl_len > data.size())
            throw ParseError("truncated pcap record in " + origin + " at byte offset " +
                             std::to_string(record_start));
        pkt.link_bytes.assign(data.begin() + static_cast<std::ptrdiff_t>(r.pos),
                              data.begin() + static_cast<std::ptrdiff_t>(r.pos + incl_len));
        r.pos += incl_len;
        capture.packets.push_back(std::move(pkt));
    }
    return capture;
}

Capture parse_pcap(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open capture file: " + path);
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    return parse_pcap_bytes(data, path);
}

std::vector<std::uint8_t> write_pcap_bytes(const Capture& capture, bool swap_byte_order) {
    std::vector<std::uint8_t> out;
    append_u32(out, kMagicNative, swap_byte_order);
    append_u16(out, 2, swap_byte_order);  // version 2.4
    append_u16(out, 4, swap_byte_order);
    append_u32(out, 0, swap_byte_order);       // thiszone
    append_u32(out, 0, swap_byte_order);       // sigfigs
    append_u32(out, 0x40000, swap_byte_order); // snaplen
    append_u32(out, capture.link_type, swap_byte_order);
    for (const RawPacket& pkt : capture.packets) {
        append_u32(out, pkt.ts_sec, swap_byte_order);
        append_u32(out, pkt.ts_usec, swap_byte_order);
        append_u32(out, static_cast<std::uint32_t>(pkt.link_bytes.size()), swap_byte_order);
        append_u32(out, pkt.orig_len, swap_byte_order);
        out.insert(out.end(), pkt.link_bytes.begin(), pkt.link_bytes.end());
    }
    return out;
}

void write_pcap(const std::string& path, const Capture& capture, bool swap_byte_order) {
    auto bytes = write_pcap_bytes(capture, swap_byte_order);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write to " + path);
}

}  // namespace dmlite::traffic
