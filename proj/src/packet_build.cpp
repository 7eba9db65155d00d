#include "dmlite/packet_build.hpp"

namespace dmlite::traffic {

namespace {

void put16(std::vector<std::uint8_t>& b, std::size_t off, std::uint16_t v) {
    b[off] = static_cast<std::uint8_t>(v >> 8);
    b[off + 1] = static_cast<std::uint8_t>(v);
}

void put32(std::vector<std::uint8_t>& b, std::size_t off, std::uint32_t v) {
    b[off] = static_cast<std::uint8_t>(v >> 24);
    b[off + 1] = static_cast<std::uint8_t>(v >> 16);
    b[off + 2] = static_cast<std::uint8_t>(v >> 8);
    b[off + 3] = static_cast<std::uint8_t>(v);
}

std::uint32_t sum16(const std::uint8_t* data, std::size_t len, std::uint32_t sum) {
    for (std::size_t i = 0; i + 1 < len; i += 2)
        sum += static_cast<std::uint32_t>((data[i] << 8) | data[i + 1]);
    if (len & 1) sum += static_cast<std::uint32_t>(data[len - 1] << 8);
    return sum;
}

std::uint16_t fold(std::uint32_t sum) {
    while (sum >> 16) sum = (sum & 0xffff) + (sum >> 16);
    return static_cast<std::uint16_t>(~sum);
}

}  // namespace

RawPacket build_packet(const PacketSpec& spec) {
    const bool tcp = spec.protocol == 6;
    const std::size_t l4_header = tcp ? 20 : 8;
    const std::size_t ip_total = 20 + l4_header + spec.payload.size();
    std::vector<std::uint8_t> b(14 + ip_total, 0);

    // Ethernet II
    std::copy(spec.dst_mac.begin(), spec.dst_mac.end(), b.begin());
    std::copy(spec.src_mac.begin(), spec.src_mac.end(), b.begin() + 6);
    put16(b, 12, 0x0800);

    // IPv4
    const std::size_t ip = 14;
    b[ip] = 0x45;
    b[ip + 1] = 0;
    put16(b, ip + 2, static_cast<std::uint16_t>(ip_total));
    put16(b, ip + 4, 0);       // identification
    put16(b, ip + 6, 0x4000);  // don't fragment
    b[ip + 8] = 64;            // TTL
    b[ip + 9] = spec.protocol;
    put32(b, ip + 12, spec.src_ip);
    put32(b, ip + 16, spec.dst_ip);
    put16(b, ip + 10, fold(sum16(b.data() + ip, 20, 0)));

    // Transport
    const std::size_t l4 = ip + 20;
    put16(b, l4, spec.src_port);
    put16(b, l4 + 2, spec.dst_port);
    if (tcp) {
        put32(b, l4 + 4, 0x1000);  // seq
        put32(b, l4 + 8, 0);       // ack
        b[l4 + 12] = 5 << 4;       // data offset
        b[l4 + 13] = 0x18;         // PSH|ACK
        put16(b, l4 + 14, 0xffff); // window
    } else {
        put16(b, l4 + 4, static_cast<std::uint16_t>(8 + spec.payload.size()));
    }
    std::copy(spec.payload.begin(), spec.payload.end(),
              b.begin() + static_cast<std::ptrdiff_t>(l4 + l4_header));

    // Transport checksum over pseudo header + segment.
    std::uint32_t pseudo = 0;
    pseudo = sum16(b.data() + ip + 12, 8, pseudo);  // src + dst IP
    pseudo += spec.protocol;
    std::size_t seg_len = l4_header + spec.payload.size();
    pseudo += static_cast<std::uint32_t>(seg_len);
    std::uint16_t csum = fold(sum16(b.data() + l4, seg_len, pseudo));
    put16(b, l4 + (tcp ? 16 : 6), csum);

    RawPacket pkt;
    pkt.ts_sec = spec.ts_sec;
    pkt.ts_usec = spec.ts_usec;
    pkt.orig_len = static_cast<std::uint32_t>(b.size());
    pkt.link_bytes = std::move(b);
    return pkt;
}

}  // namespace dmlite::traffic
