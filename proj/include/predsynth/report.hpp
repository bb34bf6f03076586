#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace predsynth {

/// One named block of key-value results; serialized as an INI-like record.
struct ReportRecord {
    std::string name;
    bool pass = true;
    std::vector<std::pair<std::string, std::string>> fields;

    void add(std::string key, std::string value);
    void add(std::string key, const char* value);
    void add(std::string key, double value);
    void add(std::string key, std::uint64_t value);
    void add(std::string key, int value);
    void add(std::string key, bool value);
};

struct Report {
    std::vector<ReportRecord> records;

    bool all_pass() const;
    std::string to_text() const;
};

} // namespace predsynth
