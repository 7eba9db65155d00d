#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace dmlite {

inline constexpr const char* kVersion = "0.1.0";

// Error hierarchy. ConfigError maps to CLI exit code 2, everything else to 1.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

class FormatError : public Error {
public:
    explicit FormatError(const std::string& msg) : Error(msg) {}
};

class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

// Process-wide log sink. Stage code reports progress and warnings through
// this; the C API routes it to the caller's callback, tests may capture it.
using LogSink = std::function<void(const std::string&)>;

void set_log_sink(LogSink sink);
void log_line(const std::string& line);

// FNV-1a 64-bit, used for input digests in run manifests.
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t fnv1a64_file(const std::string& path);

}  // namespace dmlite
