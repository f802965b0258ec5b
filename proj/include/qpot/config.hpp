#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qpot {

// Flat key=value configuration with [section] headers; a key inside
// [section] is addressed as "section.key". Lines starting with # or ; are
// comments; later duplicates win.
class Config {
public:
    Config() = default;

    static Config parse_file(const std::string& path);
    static Config parse_text(const std::string& text);

    [[nodiscard]] bool has(const std::string& key) const;
    [[nodiscard]] std::string get_string(const std::string& key,
                                         const std::string& fallback) const;
    [[nodiscard]] std::string require_string(const std::string& key) const;
    [[nodiscard]] double get_double(const std::string& key, double fallback) const;
    [[nodiscard]] int get_int(const std::string& key, int fallback) const;
    [[nodiscard]] std::uint64_t get_u64(const std::string& key,
                                        std::uint64_t fallback) const;
    [[nodiscard]] bool get_bool(const std::string& key, bool fallback) const;
    // Comma-separated list of reals.
    [[nodiscard]] std::vector<double> get_doubles(const std::string& key,
                                                  const std::vector<double>& fallback) const;

    // Raw text as parsed, for digesting.
    [[nodiscard]] const std::string& source_text() const { return text_; }
    [[nodiscard]] const std::map<std::string, std::string>& entries() const {
        return entries_;
    }

private:
    std::string text_;
    std::map<std::string, std::string> entries_;
};

}  // namespace qpot
