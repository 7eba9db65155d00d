#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "dmlite/flow.hpp"

namespace dmlite::traffic {

using MacAddr = std::array<std::uint8_t, 6>;

// Seeded keyed bijection over the addresses observed in one corpus run.
// Identical inputs always rewrite to identical outputs; distinct inputs never
// collide.
struct SanitizationMap {
    std::uint64_t seed = 0;
    std::map<std::uint32_t, std::uint32_t> ip_map;
    std::map<MacAddr, MacAddr> mac_map;

    std::uint32_t map_ip(std::uint32_t ip);
    MacAddr map_mac(const MacAddr& mac);

private:
    std::map<std::uint32_t, bool> used_ips_;
    std::map<MacAddr, bool> used_macs_;
};

struct SanitizeOptions {
    std::uint64_t seed = 0;
    bool include_headers = true;  // payload definition used for empty/dedup checks
};

struct SanitizeResult {
    std::vector<TrafficFlow> flows;
    SanitizationMap map;
    std::uint64_t dropped_empty = 0;
    std::uint64_t dropped_duplicates = 0;
};

// Rewrites MAC and IP addresses through the seeded bijection, fixes up the
// IPv4 header checksum, then removes empty-payload flows and byte-identical
// duplicates (first occurrence wins).
SanitizeResult sanitize_corpus(std::vector<TrafficFlow> flows, const SanitizeOptions& options);

}  // namespace dmlite::traffic
