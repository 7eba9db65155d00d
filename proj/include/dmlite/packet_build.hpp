#pragma once

#include <cstdint>
#include <vector>

#include "dmlite/pcap.hpp"
#include "dmlite/sanitize.hpp"

namespace dmlite::traffic {

// Minimal packet crafting for the synthetic corpus generator and test
// fixtures: Ethernet II + IPv4 + TCP/UDP with valid lengths and checksums.
struct PacketSpec {
    MacAddr src_mac{};
    MacAddr dst_mac{};
    std::uint32_t src_ip = 0;
    std::uint32_t dst_ip = 0;
    std::uint16_t src_port = 0;
    std::uint16_t dst_port = 0;
    std::uint8_t protocol = 17;  // 6 = TCP, 17 = UDP
    std::uint32_t ts_sec = 0;
    std::uint32_t ts_usec = 0;
    std::vector<std::uint8_t> payload;
};

RawPacket build_packet(const PacketSpec& spec);

}  // namespace dmlite::traffic
