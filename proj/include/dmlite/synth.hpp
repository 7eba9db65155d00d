#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dmlite::traffic {

struct SynthSpec {
    std::size_t classes = 4;
    std::size_t flows_per_class = 200;
    std::uint64_t seed = 7;
    std::string out_dir;
};

// Emits a labeled corpus of capture files under <out_dir>/<class_name>/.
// Each class follows a distinct byte template: a protocol-like header motif,
// its own payload byte distribution, and a class-specific port/protocol mix,
// plus seeded noise. Deterministic for a fixed spec.
std::vector<std::string> synth_corpus(const SynthSpec& spec);

}  // namespace dmlite::traffic
