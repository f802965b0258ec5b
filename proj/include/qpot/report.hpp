#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace qpot {

struct Verdict {
    std::string name;  // names the invariant being tested
    bool pass = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double tol = 0.0;
};

struct RunReport {
    std::string command;
    std::string config_digest;
    nlohmann::ordered_json results = nlohmann::ordered_json::object();
    std::vector<Verdict> verdicts;
    std::uint64_t seed = 0;
    double wall_time_s = 0.0;

    void add_verdict(const std::string& name, bool pass, double lhs, double rhs,
                     double tol);
    [[nodiscard]] bool all_pass() const;
    // Field order is fixed; reruns with the same config and seed are
    // bit-identical except for wall_time_s.
    [[nodiscard]] nlohmann::ordered_json to_json() const;
    void save(const std::string& path) const;
};

// 64-bit FNV-1a of the raw config text, as 16 hex digits.
std::string fnv1a_digest(const std::string& data);

}  // namespace qpot
