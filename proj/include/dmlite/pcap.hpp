#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dmlite::traffic {

struct RawPacket {
    std::uint32_t ts_sec = 0;
    std::uint32_t ts_usec = 0;
    std::uint32_t orig_len = 0;
    std::vector<std::uint8_t> link_bytes;  // captured frame, non-empty
};

struct Capture {
    std::uint32_t link_type = 1;  // LINKTYPE_ETHERNET by default
    std::vector<RawPacket> packets;
};

// Classic pcap only. Accepts native and byte-swapped magic; anything else
// (pcapng, nanosecond variants) is rejected as unsupported.
Capture parse_pcap(const std::string& path);
Capture parse_pcap_bytes(const std::vector<std::uint8_t>& data, const std::string& origin);

// Writes a classic pcap. swap_byte_order emits the 0xd4c3b2a1 variant with
// all header fields byte-swapped, as produced by opposite-endian captures.
void write_pcap(const std::string& path, const Capture& capture, bool swap_byte_order = false);
std::vector<std::uint8_t> write_pcap_bytes(const Capture& capture, bool swap_byte_order = false);

}  // namespace dmlite::traffic
