#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dmlite/image.hpp"

namespace dmlite::traffic {

struct DatasetConfig {
    std::size_t byte_length = 784;  // L = w*h, w = h
    double split_ratio = 0.8;
    std::uint64_t seed = 0;
    bool bidirectional = false;
    bool include_headers = true;
};

struct ClassCount {
    std::string name;
    std::size_t train = 0;
    std::size_t test = 0;
};

struct DatasetReport {
    std::vector<ClassCount> classes;
    std::vector<std::string> dropped_classes;
    std::uint64_t flows_total = 0;
    std::uint64_t dropped_empty = 0;
    std::uint64_t dropped_duplicates = 0;
    std::uint64_t skipped_non_ip = 0;
    std::uint64_t skipped_ipv6 = 0;
    std::uint64_t skipped_other = 0;
};

// Walks <corpus_root>/<class_name>/*.pcap, assembles and sanitizes flows,
// renders traffic images, and returns a stratified (train, test) split.
// Class names are the subdirectory names, sorted lexicographically.
std::pair<LabeledImageSet, LabeledImageSet> build_dataset(const std::string& corpus_root,
                                                          const DatasetConfig& config,
                                                          DatasetReport* report = nullptr);

// On-disk layout produced by the preprocess stage: train-images.idx,
// train-labels.idx, test-images.idx, test-labels.idx, meta.json.
void save_dataset(const std::string& out_dir, const LabeledImageSet& train,
                  const LabeledImageSet& test, const DatasetReport& report,
                  const DatasetConfig& config);
std::pair<LabeledImageSet, LabeledImageSet> load_dataset(const std::string& dir);

}  // namespace dmlite::traffic
