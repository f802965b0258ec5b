#include "qpot/report.hpp"

#include <cstdio>
#include <fstream>

#include "qpot/errors.hpp"
#include "qpot/version.hpp"

namespace qpot {

void RunReport::add_verdict(const std::string& name, bool pass, double lhs,
                            double rhs, double tol) {
    verdicts.push_back({name, pass, lhs, rhs, tol});
}

bool RunReport::all_pass() const {
    for (const auto& v : verdicts)
        if (!v.pass) return false;
    return true;
}

nlohmann::ordered_json RunReport::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["config_digest"] = config_digest;
    j["results"] = results;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& v : verdicts) {
        nlohmann::ordered_json jv;
        jv["name"] = v.name;
        jv["pass"] = v.pass;
        jv["lhs"] = v.lhs;
        jv["rhs"] = v.rhs;
        jv["tol"] = v.tol;
        arr.push_back(jv);
    }
    j["verdicts"] = arr;
    j["seed"] = seed;
    j["version"] = version_string;
    j["wall_time_s"] = wall_time_s;
    return j;
}

void RunReport::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write report to " + path);
    out << to_json().dump(2) << "\n";
}

std::string fnv1a_digest(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace qpot
