#include "predsynth/report.hpp"

#include <sstream>

#include "predsynth/numeric.hpp"

namespace predsynth {

void ReportRecord::add(std::string key, std::string value) {
    fields.emplace_back(std::move(key), std::move(value));
}

void ReportRecord::add(std::string key, const char* value) {
    fields.emplace_back(std::move(key), std::string(value));
}

void ReportRecord::add(std::string key, double value) {
    fields.emplace_back(std::move(key), format_g17(value));
}

void ReportRecord::add(std::string key, std::uint64_t value) {
    fields.emplace_back(std::move(key), std::to_string(value));
}

void ReportRecord::add(std::string key, int value) {
    fields.emplace_back(std::move(key), std::to_string(value));
}

void ReportRecord::add(std::string key, bool value) {
    fields.emplace_back(std::move(key), value ? "true" : "false");
}

bool Report::all_pass() const {
    for (const auto& r : records) {
        if (!r.pass) return false;
    }
    return true;
}

std::string Report::to_text() const {
    std::ostringstream out;
    for (const auto& r : records) {
        out << '[' << r.name << "]\n";
        out << "pass = " << (r.pass ? "true" : "false") << '\n';
        for (const auto& [key, value] : r.fields) {
            out << key << " = " << value << '\n';
        }
        out << '\n';
    }
    return out.str();
}

} // namespace predsynth
