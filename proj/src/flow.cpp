#include "dmlite/flow.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "dmlite/common.hpp"

namespace dmlite::traffic {

namespace {

constexpr std::uint16_t kEtherTypeIpv4 = 0x0800;
constexpr std::uint16_t kEtherTypeIpv6 = 0x86dd;
constexpr std::uint16_t kEtherTypeVlan = 0x8100;
constexpr std::uint8_t kProtoTcp = 6;
constexpr std::uint8_t kProtoUdp = 17;

constexpr std::uint32_t kLinkEthernet = 1;
constexpr std::uint32_t kLinkRawIp = 101;

std::uint16_t rd16(const std::vector<std::uint8_t>& b, std::size_t off) {
    return static_cast<std::uint16_t>((b[off] << 8) | b[off + 1]);
}

std::uint32_t rd32(const std::vector<std::uint8_t>& b, std::size_t off) {
    return (std::uint32_t{b[off]} << 24) | (std::uint32_t{b[off + 1]} << 16) |
           (std::uint32_t{b[off + 2]} << 8) | std::uint32_t{b[off + 3]};
}

enum class Classify { kFlow, kNonIp, kIpv6, kOther };

// Resolves link/IP/transport offsets for one packet. Returns kFlow and fills
// pkt/key only for IPv4 TCP/UDP.
Classify classify_packet(const RawPacket& raw, std::uint32_t link_type, FlowPacket& pkt,
                         FlowKey& key) {
    const auto& b = raw.link_bytes;
    std::size_t ip_off = 0;
    bool has_eth = false;

    if (link_type == kLinkEthernet) {
        if (b.size() < 14) return Classify::kNonIp;
        has_eth = true;
        std::size_t off = 12;
        std::uint16_t ether_type = rd16(b, off);
        off += 2;
        if (ether_type == kEtherTypeVlan) {
            if (b.size() < off + 4) return Classify::kNonIp;
            ether_type = rd16(b, off + 2);
            off += 4;
        }
        if (ether_type == kEtherTypeIpv6) return Classify::kIpv6;
        if (ether_type != kEtherTypeIpv4) return Classify::kNonIp;
        ip_off = off;
    } else if (link_type == kLinkRawIp) {
        if (b.empty()) return Classify::kNonIp;
        std::uint8_t version = b[0] >> 4;
        if (version == 6) return Classify::kIpv6;
        if (version != 4) return Classify::kNonIp;
    } else {
        return Classify::kNonIp;
    }

    if (b.size() < ip_off + 20) return Classify::kOther;
    if ((b[ip_off] >> 4) != 4) return Classify::kOther;
    std::size_t ihl = static_cast<std::size_t>(b[ip_off] & 0x0f) * 4;
    if (ihl < 20 || b.size() < ip_off + ihl) return Classify::kOther;

    std::uint8_t protocol = b[ip_off + 9];
    if (protocol != kProtoTcp && protocol != kProtoUdp) return Classify::kOther;

    std::size_t l4_off = ip_off + ihl;
    if (b.size() < l4_off + 4) return Classify::kOther;

    key.src_ip = rd32(b, ip_off + 12);
    key.dst_ip = rd32(b, ip_off + 16);
    key.src_port = rd16(b, l4_off);
    key.dst_port = rd16(b, l4_off + 2);
    key.protocol = protocol;

    std::size_t header_len = 8;  // UDP
    if (protocol == kProtoTcp) {
        if (b.size() < l4_off + 13) return Classify::kOther;
        header_len = static_cast<std::size_t>(b[l4_off + 12] >> 4) * 4;
        if (header_len < 20) return Classify::kOther;
    }
    std::size_t payload_off = l4_off + header_len;
    if (payload_off > b.size()) payload_off = b.size();

    pkt.ip_offset = ip_off;
    pkt.payload_offset = payload_off;
    pkt.has_ethernet = has_eth;
    return Classify::kFlow;
}

FlowKey reversed(const FlowKey& k) {
    return FlowKey{k.dst_ip, k.src_ip, k.dst_port, k.src_port, k.protocol};
}

}  // namespace

std::vector<std::uint8_t> TrafficFlow::payload(bool include_headers) const {
    std::vector<std::uint8_t> out;
    for (const FlowPacket& pkt : packets) {
        std::size_t start = include_headers ? pkt.ip_offset : pkt.payload_offset;
        out.insert(out.end(), pkt.link_bytes.begin() + static_cast<std::ptrdiff_t>(start),
                   pkt.link_bytes.end());
    }
    return out;
}

SplitResult split_flows(const Capture& capture, bool bidirectional) {
    SplitResult result;
    std::map<FlowKey, std::size_t> index_by_key;

    std::uint64_t capture_index = 0;
    for (const RawPacket& raw : capture.packets) {
        FlowPacket pkt;
        FlowKey key;
        Classify cls = classify_packet(raw, capture.link_type, pkt, key);
        std::uint64_t idx = capture_index++;
        switch (cls) {
            case Classify::kNonIp: result.skipped_non_ip++; continue;
            case Classify::kIpv6: result.skipped_ipv6++; continue;
            case Classify::kOther: result.skipped_other++; continue;
            case Classify::kFlow: break;
        }

        pkt.ts_sec = raw.ts_sec;
        pkt.ts_usec = raw.ts_usec;
        pkt.capture_index = idx;
        pkt.link_bytes = raw.link_bytes;

        FlowKey lookup = key;
        if (bidirectional) {
            FlowKey rev = reversed(key);
            if (rev < key) lookup = rev;
        }

        auto it = index_by_key.find(lookup);
        if (it == index_by_key.end()) {
            it = index_by_key.emplace(lookup, result.flows.size()).first;
            result.flows.push_back(TrafficFlow{lookup, {}, {}});
        }
        result.flows[it->second].packets.push_back(std::move(pkt));
        result.ip_packets++;
    }

    // Flows in first-seen order, packets by timestamp with capture order as
    // the tiebreak.
    std::sort(result.flows.begin(), result.flows.end(),
              [](const TrafficFlow& a, const TrafficFlow& b) {
                  return a.packets.front().capture_index < b.packets.front().capture_index;
              });
    for (TrafficFlow& flow : result.flows) {
        std::stable_sort(flow.packets.begin(), flow.packets.end(),
                         [](const FlowPacket& a, const FlowPacket& b) {
                             return std::tie(a.ts_sec, a.ts_usec, a.capture_index) <
                                    std::tie(b.ts_sec, b.ts_usec, b.capture_index);
                         });
    }
    return result;
}

std::string format_ipv4(std::uint32_t ip) {
    return std::to_string((ip >> 24) & 0xff) + "." + std::to_string((ip >> 16) & 0xff) + "." +
           std::to_string((ip >> 8) & 0xff) + "." + std::to_string(ip & 0xff);
}

}  // namespace dmlite::traffic
