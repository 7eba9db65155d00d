#include "dmlite/synth.hpp"

#include <cstdio>
#include <filesystem>

#include "dmlite/common.hpp"
#include "dmlite/packet_build.hpp"
#include "dmlite/rng.hpp"

namespace fs = std::filesystem;

namespace dmlite::traffic {

namespace {

struct ClassTemplate {
    std::string name;
    std::uint8_t protocol;  // 6 tcp, 17 udp
    std::uint16_t server_port;
    int center;   // payload byte distribution center
    int period;   // sawtooth period of the payload pattern
};

ClassTemplate template_for(std::size_t index) {
    static const ClassTemplate presets[] = {
        {"bulk_ftp", 6, 21, 24, 5},     {"dns_like", 17, 53, 56, 7},
        {"iot_mqtt", 6, 1883, 88, 9},   {"media_rtsp", 17, 554, 120, 11},
        {"web_tls", 6, 443, 152, 6},    {"chat_xmpp", 6, 5222, 184, 8},
        {"mail_smtp", 6, 25, 216, 10},  {"sensor_coap", 17, 5683, 234, 13},
    };
    constexpr std::size_t n = sizeof(presets) / sizeof(presets[0]);
    if (index < n) return presets[index];
    ClassTemplate t = presets[index % n];
    t.name = "class_" + std::to_string(index);
    t.server_port = static_cast<std::uint16_t>(20000 + index);
    t.center = static_cast<int>(16 + (index * 37) % 224);
    return t;
}

std::uint8_t clamp_byte(int v) {
    return static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
}

std::vector<std::uint8_t> motif_bytes(std::size_t class_index) {
    std::vector<std::uint8_t> motif(8);
    for (std::size_t j = 0; j < motif.size(); ++j)
        motif[j] = static_cast<std::uint8_t>((0xd5 + 31 * class_index + 7 * j) & 0xff);
    return motif;
}

std::vector<std::uint8_t> body_bytes(const ClassTemplate& t, std::size_t count, Rng& rng) {
    std::vector<std::uint8_t> body(count);
    for (std::size_t j = 0; j < count; ++j) {
        int wave = static_cast<int>((j % static_cast<std::size_t>(t.period)) * 24 /
                                    static_cast<std::size_t>(t.period)) - 12;
        int noise = static_cast<int>(rng.uniform_int(0, 16)) - 8;
        body[j] = clamp_byte(t.center + wave + noise);
    }
    return body;
}

}  // namespace

std::vector<std::string> synth_corpus(const SynthSpec& spec) {
    if (spec.classes < 2) throw ConfigError("synthetic corpus needs at least 2 classes");
    if (spec.flows_per_class < 1) throw ConfigError("flows per class must be positive");
    fs::create_directories(spec.out_dir);

    constexpr std::size_t kFlowsPerFile = 64;
    std::vector<std::string> class_names;

    for (std::size_t c = 0; c < spec.classes; ++c) {
        ClassTemplate tpl = template_for(c);
        class_names.push_back(tpl.name);
        fs::path class_dir = fs::path(spec.out_dir) / tpl.name;
        fs::create_directories(class_dir);

        std::uint32_t server_ip = (10u << 24) | (200u << 16) |
                                  (static_cast<std::uint32_t>(c) << 8) | 10u;
        MacAddr server_mac{0x02, 0x00, 0x5e, 0x00, static_cast<std::uint8_t>(c), 0x01};

        Capture capture;
        std::size_t file_index = 0;
        for (std::size_t f = 0; f < spec.flows_per_class; ++f) {
            Rng rng = Rng::derive(spec.seed, (c << 32) | f);

            std::uint32_t client_ip = (10u << 24) | (static_cast<std::uint32_t>(c + 1) << 16) |
                                      (static_cast<std::uint32_t>(f / 250 + 1) << 8) |
                                      static_cast<std::uint32_t>(1 + f % 250);
            MacAddr client_mac{0x02, 0x00, 0x10, static_cast<std::uint8_t>(c),
                               static_cast<std::uint8_t>(f >> 8), static_cast<std::uint8_t>(f)};
            auto src_port = static_cast<std::uint16_t>(40000 + (f * 7) % 20000);

            std::size_t n_packets = 3 + rng.uniform_int(0, 4);
            for (std::size_t p = 0; p < n_packets; ++p) {
                PacketSpec ps;
                ps.src_mac = client_mac;
                ps.dst_mac = server_mac;
                ps.src_ip = client_ip;
                ps.dst_ip = server_ip;
                ps.src_port = src_port;
                ps.dst_port = tpl.server_port;
                ps.protocol = tpl.protocol;
                ps.ts_sec = static_cast<std::uint32_t>(1700000000u + f);
                ps.ts_usec = static_cast<std::uint32_t>(1000 * p + c);
                if (p == 0) {
                    // Protocol-like handshake: motif plus a short fixed block.
                    ps.payload = motif_bytes(c);
                    auto status = body_bytes(tpl, 24, rng);
                    ps.payload.insert(ps.payload.end(), status.begin(), status.end());
                } else {
                    std::size_t size = 80 + rng.uniform_int(0, 160);
                    ps.payload = body_bytes(tpl, size, rng);
                }
                capture.packets.push_back(build_packet(ps));
            }

            bool last_flow = f + 1 == spec.flows_per_class;
            if ((f + 1) % kFlowsPerFile == 0 || last_flow) {
                char name[32];
                std::snprintf(name, sizeof(name), "capture_%02zu.pcap", file_index++);
                write_pcap((class_dir / name).string(), capture);
                capture.packets.clear();
            }
        }
    }
    return class_names;
}

}  // namespace dmlite::traffic
