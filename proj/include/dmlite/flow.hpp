#pragma once

#include <array>
#include <tuple>
#include <cstdint>
#include <string>
#include <vector>

#include "dmlite/pcap.hpp"

namespace dmlite::traffic {

struct FlowKey {
    std::uint32_t src_ip = 0;
    std::uint32_t dst_ip = 0;
    std::uint16_t src_port = 0;
    std::uint16_t dst_port = 0;
    std::uint8_t protocol = 0;

    bool operator==(const FlowKey&) const = default;
    bool operator<(const FlowKey& o) const {
        return std::tie(src_ip, dst_ip, src_port, dst_port, protocol) <
               std::tie(o.src_ip, o.dst_ip, o.src_port, o.dst_port, o.protocol);
    }
};

// One packet inside a flow, with offsets into link_bytes resolved at split
// time so later stages never re-parse headers.
struct FlowPacket {
    std::uint32_t ts_sec = 0;
    std::uint32_t ts_usec = 0;
    std::uint64_t capture_index = 0;
    std::size_t ip_offset = 0;       // start of the IPv4 header
    std::size_t payload_offset = 0;  // first byte past the transport header
    bool has_ethernet = false;
    std::vector<std::uint8_t> link_bytes;
};

struct TrafficFlow {
    FlowKey key;
    std::vector<FlowPacket> packets;
    std::string label;

    // Concatenated packet bytes in arrival order. With headers included this
    // starts at the IPv4 header of each packet, otherwise at the transport
    // payload.
    std::vector<std::uint8_t> payload(bool include_headers = true) const;
};

struct SplitResult {
    std::vector<TrafficFlow> flows;  // ordered by first packet's capture index
    std::uint64_t ip_packets = 0;    // IPv4 TCP/UDP packets assigned to flows
    std::uint64_t skipped_non_ip = 0;
    std::uint64_t skipped_ipv6 = 0;
    std::uint64_t skipped_other = 0;  // IPv4 but not TCP/UDP, or malformed
};

// Partition packets into 5-tuple flows. Only IPv4 TCP/UDP packets are kept;
// everything else increments a skip counter. When bidirectional is set the
// two directed keys of a conversation are merged into one flow under the
// lexicographically smaller direction.
SplitResult split_flows(const Capture& capture, bool bidirectional = false);

std::string format_ipv4(std::uint32_t ip);

}  // namespace dmlite::traffic
