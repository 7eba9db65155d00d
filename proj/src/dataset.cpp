#include "dmlite/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include "json.hpp"

#include "dmlite/common.hpp"
#include "dmlite/flow.hpp"
#include "dmlite/idx.hpp"
#include "dmlite/rng.hpp"
#include "dmlite/sanitize.hpp"

namespace fs = std::filesystem;

namespace dmlite::traffic {

namespace {

std::uint32_t side_from_length(std::size_t length) {
    auto side = static_cast<std::uint32_t>(std::lround(std::sqrt(static_cast<double>(length))));
    if (static_cast<std::size_t>(side) * side != length)
        throw ConfigError("byte length " + std::to_string(length) + " is not a perfect square");
    return side;
}

}  // namespace

std::pair<LabeledImageSet, LabeledImageSet> build_dataset(const std::string& corpus_root,
                                                          const DatasetConfig& config,
                                                          DatasetReport* report) {
    if (!fs::is_directory(corpus_root))
        throw ConfigError("corpus root is not a directory: " + corpus_root);
    std::uint32_t side = side_from_length(config.byte_length);

    std::vector<std::string> class_dirs;
    for (const auto& entry : fs::directory_iterator(corpus_root)) {
        if (entry.is_directory()) class_dirs.push_back(entry.path().filename().string());
    }
    std::sort(class_dirs.begin(), class_dirs.end());
    if (class_dirs.size() < 2)
        throw ConfigError("corpus needs at least 2 class subdirectories, found " +
                          std::to_string(class_dirs.size()));

    DatasetReport local_report;
    DatasetReport& rep = report ? *report : local_report;

    std::vector<TrafficFlow> all_flows;
    for (const std::string& class_name : class_dirs) {
        std::vector<std::string> files;
        for (const auto& entry : fs::directory_iterator(fs::path(corpus_root) / class_name)) {
            if (entry.is_regular_file() && entry.path().extension() == ".pcap")
                files.push_back(entry.path().string());
        }
        std::sort(files.begin(), files.end());
        for (const std::string& file : files) {
            Capture capture = parse_pcap(file);
            SplitResult split = split_flows(capture, config.bidirectional);
            rep.skipped_non_ip += split.skipped_non_ip;
            rep.skipped_ipv6 += split.skipped_ipv6;
            rep.skipped_other += split.skipped_other;
            for (TrafficFlow& flow : split.flows) {
                flow.label = class_name;
                all_flows.push_back(std::move(flow));
            }
        }
    }
    rep.flows_total = all_flows.size();

    SanitizeOptions sanitize_options;
    sanitize_options.seed = config.seed;
    sanitize_options.include_headers = config.include_headers;
    SanitizeResult sanitized = sanitize_corpus(std::move(all_flows), sanitize_options);
    rep.dropped_empty = sanitized.dropped_empty;
    rep.dropped_duplicates = sanitized.dropped_duplicates;

    // Images grouped per class; classes that lost all flows are dropped.
    std::map<std::string, std::vector<std::vector<std::uint8_t>>> by_class;
    for (const TrafficFlow& flow : sanitized.flows) {
        by_class[flow.label].push_back(
            uniform_length(flow.payload(config.include_headers), config.byte_length));
    }
    std::vector<std::string> class_names;
    for (const std::string& name : class_dirs) {
        auto it = by_class.find(name);
        if (it == by_class.end() || it->second.empty()) {
            rep.dropped_classes.push_back(name);
            log_line("warning: class '" + name + "' has no usable flows and was dropped");
        } else {
            class_names.push_back(name);
        }
    }
    if (class_names.size() < 2)
        throw ConfigError("fewer than 2 classes have usable flows");

    LabeledImageSet train, test;
    train.width = test.width = side;
    train.height = test.height = side;
    train.class_names = test.class_names = class_names;
    train.split_tag = "train";
    test.split_tag = "test";

    for (std::size_t c = 0; c < class_names.size(); ++c) {
        auto& samples = by_class[class_names[c]];
        std::vector<std::size_t> order(samples.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        Rng rng = Rng::derive(config.seed, 0x5914ull + c);
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng.uniform_int(0, i - 1)]);

        auto n_train = static_cast<std::size_t>(
            std::lround(config.split_ratio * static_cast<double>(samples.size())));
        n_train = std::min(n_train, samples.size());

        std::vector<std::size_t> train_idx(order.begin(),
                                           order.begin() + static_cast<std::ptrdiff_t>(n_train));
        std::vector<std::size_t> test_idx(order.begin() + static_cast<std::ptrdiff_t>(n_train),
                                          order.end());
        std::sort(train_idx.begin(), train_idx.end());
        std::sort(test_idx.begin(), test_idx.end());

        auto emit = [&](const std::vector<std::size_t>& idx, LabeledImageSet& set) {
            for (std::size_t i : idx) {
                TrafficImage image = to_image(samples[i], side, side);
                image.label = static_cast<std::uint8_t>(c);
                set.images.push_back(std::move(image));
            }
        };
        emit(train_idx, train);
        emit(test_idx, test);
        rep.classes.push_back(ClassCount{class_names[c], train_idx.size(), test_idx.size()});
    }
    return {std::move(train), std::move(test)};
}

namespace {

IdxImages to_idx(const LabeledImageSet& set) {
    IdxImages idx;
    idx.count = static_cast<std::uint32_t>(set.images.size());
    idx.height = set.height;
    idx.width = set.width;
    idx.pixels.reserve(static_cast<std::size_t>(idx.count) * idx.height * idx.width);
    for (const TrafficImage& image : set.images)
        idx.pixels.insert(idx.pixels.end(), image.pixels.begin(), image.pixels.end());
    return idx;
}

std::vector<std::uint8_t> labels_of(const LabeledImageSet& set) {
    std::vector<std::uint8_t> labels;
    labels.reserve(set.images.size());
    for (const TrafficImage& image : set.images) labels.push_back(image.label);
    return labels;
}

LabeledImageSet from_idx(const IdxImages& idx, const std::vector<std::uint8_t>& labels,
                         const std::vector<std::string>& class_names, const std::string& tag) {
    if (idx.count != labels.size())
        throw FormatError("image count " + std::to_string(idx.count) +
                          " does not match label count " + std::to_string(labels.size()));
    LabeledImageSet set;
    set.width = idx.width;
    set.height = idx.height;
    set.class_names = class_names;
    set.split_tag = tag;
    std::size_t pixels_per_image = static_cast<std::size_t>(idx.height) * idx.width;
    for (std::uint32_t i = 0; i < idx.count; ++i) {
        TrafficImage image;
        image.width = idx.width;
        image.height = idx.height;
        image.label = labels[i];
        auto begin = idx.pixels.begin() + static_cast<std::ptrdiff_t>(i * pixels_per_image);
        image.pixels.assign(begin, begin + static_cast<std::ptrdiff_t>(pixels_per_image));
        if (image.label >= class_names.size())
            throw FormatError("label " + std::to_string(image.label) + " out of range");
        set.images.push_back(std::move(image));
    }
    return set;
}

}  // namespace

void save_dataset(const std::string& out_dir, const LabeledImageSet& train,
                  const LabeledImageSet& test, const DatasetReport& report,
                  const DatasetConfig& config) {
    fs::create_directories(out_dir);
    fs::path dir(out_dir);
    write_idx_images((dir / "train-images.idx").string(), to_idx(train));
    write_idx_labels((dir / "train-labels.idx").string(), labels_of(train));
    write_idx_images((dir / "test-images.idx").string(), to_idx(test));
    write_idx_labels((dir / "test-labels.idx").string(), labels_of(test));

    nlohmann::json meta;
    meta["class_names"] = train.class_names;
    meta["width"] = train.width;
    meta["height"] = train.height;
    meta["split_ratio"] = config.split_ratio;
    meta["seed"] = config.seed;
    meta["include_headers"] = config.include_headers;
    meta["bidirectional"] = config.bidirectional;
    meta["dropped_classes"] = report.dropped_classes;
    meta["counts"] = nlohmann::json::object();
    for (const ClassCount& count : report.classes) {
        meta["counts"][count.name] = {{"train", count.train}, {"test", count.test}};
    }
    meta["flows_total"] = report.flows_total;
    meta["dropped_empty"] = report.dropped_empty;
    meta["dropped_duplicates"] = report.dropped_duplicates;
    meta["skipped_non_ip"] = report.skipped_non_ip;
    meta["skipped_ipv6"] = report.skipped_ipv6;
    meta["skipped_other"] = report.skipped_other;
    std::ofstream out(dir / "meta.json");
    if (!out) throw IoError("cannot create " + (dir / "meta.json").string());
    out << meta.dump(2) << "\n";
}

std::pair<LabeledImageSet, LabeledImageSet> load_dataset(const std::string& dir_str) {
    fs::path dir(dir_str);
    std::ifstream meta_in(dir / "meta.json");
    if (!meta_in) throw ConfigError("dataset directory missing meta.json: " + dir_str);
    nlohmann::json meta = nlohmann::json::parse(meta_in);
    std::vector<std::string> class_names = meta.at("class_names").get<std::vector<std::string>>();

    auto train = from_idx(read_idx_images((dir / "train-images.idx").string()),
                          read_idx_labels((dir / "train-labels.idx").string()), class_names,
                          "train");
    auto test = from_idx(read_idx_images((dir / "test-images.idx").string()),
                         read_idx_labels((dir / "test-labels.idx").string()), class_names, "test");
    return {std::move(train), std::move(test)};
}

}  // namespace dmlite::traffic
