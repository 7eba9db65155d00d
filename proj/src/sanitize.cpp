#include "dmlite/sanitize.hpp"

#include <unordered_map>

#include "dmlite/common.hpp"
#include "dmlite/rng.hpp"

namespace dmlite::traffic {

namespace {

std::uint16_t ipv4_header_checksum(const std::uint8_t* hdr, std::size_t len) {
    std::uint32_t sum = 0;
    for (std::size_t i = 0; i + 1 < len; i += 2) {
        if (i == 10) continue;  // checksum field treated as zero
        sum += static_cast<std::uint32_t>((hdr[i] << 8) | hdr[i + 1]);
    }
    while (sum >> 16) sum = (sum & 0xffff) + (sum >> 16);
    return static_cast<std::uint16_t>(~sum);
}

void rewrite_packet(FlowPacket& pkt, SanitizationMap& map) {
    auto& b = pkt.link_bytes;
    if (pkt.has_ethernet && b.size() >= 12) {
        MacAddr dst, src;
        std::copy(b.begin(), b.begin() + 6, dst.begin());
        std::copy(b.begin() + 6, b.begin() + 12, src.begin());
        MacAddr new_dst = map.map_mac(dst);
        MacAddr new_src = map.map_mac(src);
        std::copy(new_dst.begin(), new_dst.end(), b.begin());
        std::copy(new_src.begin(), new_src.end(), b.begin() + 6);
    }

    std::size_t ip = pkt.ip_offset;
    auto put32 = [&](std::size_t off, std::uint32_t v) {
        b[off] = static_cast<std::uint8_t>(v >> 24);
        b[off + 1] = static_cast<std::uint8_t>(v >> 16);
        b[off + 2] = static_cast<std::uint8_t>(v >> 8);
        b[off + 3] = static_cast<std::uint8_t>(v);
    };
    auto get32 = [&](std::size_t off) {
        return (std::uint32_t{b[off]} << 24) | (std::uint32_t{b[off + 1]} << 16) |
               (std::uint32_t{b[off + 2]} << 8) | std::uint32_t{b[off + 3]};
    };
    put32(ip + 12, map.map_ip(get32(ip + 12)));
    put32(ip + 16, map.map_ip(get32(ip + 16)));

    std::size_t ihl = static_cast<std::size_t>(b[ip] & 0x0f) * 4;
    std::uint16_t ck = ipv4_header_checksum(b.data() + ip, ihl);
    b[ip + 10] = static_cast<std::uint8_t>(ck >> 8);
    b[ip + 11] = static_cast<std::uint8_t>(ck);
}

}  // namespace

std::uint32_t SanitizationMap::map_ip(std::uint32_t ip) {
    auto it = ip_map.find(ip);
    if (it != ip_map.end()) return it->second;
    Rng rng(Rng::mix(seed, 0x1b00d1ull ^ ip));
    std::uint32_t candidate;
    do {
        // Stay inside 10.0.0.0/8 so sanitized captures are visibly synthetic.
        candidate = 0x0a000000u | static_cast<std::uint32_t>(rng.next_u64() & 0x00ffffffu);
    } while (used_ips_.count(candidate) > 0);
    used_ips_[candidate] = true;
    ip_map[ip] = candidate;
    return candidate;
}

MacAddr SanitizationMap::map_mac(const MacAddr& mac) {
    auto it = mac_map.find(mac);
    if (it != mac_map.end()) return it->second;
    std::uint64_t packed = 0;
    for (std::uint8_t byte : mac) packed = (packed << 8) | byte;
    Rng rng(Rng::mix(seed, 0x3acull ^ packed));
    MacAddr candidate;
    do {
        std::uint64_t bits = rng.next_u64();
        candidate[0] = 0x02;  // locally administered, unicast
        for (std::size_t i = 1; i < 6; ++i)
            candidate[i] = static_cast<std::uint8_t>(bits >> (8 * i));
    } while (used_macs_.count(candidate) > 0);
    used_macs_[candidate] = true;
    mac_map[mac] = candidate;
    return candidate;
}

SanitizeResult sanitize_corpus(std::vector<TrafficFlow> flows, const SanitizeOptions& options) {
    SanitizeResult result;
    result.map.seed = options.seed;

    for (TrafficFlow& flow : flows) {
        for (FlowPacket& pkt : flow.packets) rewrite_packet(pkt, result.map);
        // The flow key must stay consistent with the rewritten addresses.
        flow.key.src_ip = result.map.map_ip(flow.key.src_ip);
        flow.key.dst_ip = result.map.map_ip(flow.key.dst_ip);
    }

    // Digest buckets first, byte comparison on collision, so dedup is exact.
    std::unordered_map<std::uint64_t, std::vector<std::vector<std::uint8_t>>> seen;
    for (TrafficFlow& flow : flows) {
        std::vector<std::uint8_t> payload = flow.payload(options.include_headers);
        if (payload.empty()) {
            result.dropped_empty++;
            continue;
        }
        auto& bucket = seen[fnv1a64(payload.data(), payload.size())];
        bool duplicate = false;
        for (const auto& prior : bucket) {
            if (prior == payload) {
                duplicate = true;
                break;
            }
        }
        if (duplicate) {
            result.dropped_duplicates++;
            continue;
        }
        bucket.push_back(std::move(payload));
        result.flows.push_back(std::move(flow));
    }
    return result;
}

}  // namespace dmlite::traffic
