#pragma once

#include <cstdio>
#include <string>

#include <json.hpp>

#include "verify.hpp"

namespace rotwell {

// Shortest-round-trip decimals are what nlohmann emits for doubles; CSV uses
// a fixed 17-significant-digit format. Both are locale-free and byte-stable
// across runs with the same configuration.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline nlohmann::ordered_json config_to_json(const RunConfig& rc) {
    return nlohmann::ordered_json{{"L", rc.L},
                                  {"phi", rc.phi},
                                  {"nmax", rc.nmax},
                                  {"tol", rc.tol},
                                  {"quad_order", rc.quad_order},
                                  {"quad_panels", rc.quad_panels}};
}

inline nlohmann::ordered_json report_to_json(const VerificationReport& report) {
    nlohmann::ordered_json suites = nlohmann::ordered_json::array();
    for (const auto& suite : report.suites) {
        nlohmann::ordered_json checks = nlohmann::ordered_json::array();
        for (const auto& c : suite.checks) {
            checks.push_back(nlohmann::ordered_json{{"id", c.id},
                                                    {"anchor", c.anchor},
                                                    {"value", c.value},
                                                    {"target", c.target},
                                                    {"tol", c.tol},
                                                    {"pass", c.pass}});
        }
        suites.push_back(nlohmann::ordered_json{{"name", suite.name}, {"checks", checks}});
    }
    return nlohmann::ordered_json{
        {"config", config_to_json(report.config)},
        {"suites", suites},
        {"summary",
         nlohmann::ordered_json{{"checks_passed", report.checks_passed()},
                                {"checks_failed", report.checks_failed()},
                                {"pass", report.all_pass()}}}};
}

inline std::string report_to_json_string(const VerificationReport& report) {
    return report_to_json(report).dump(2) + "\n";
}

inline std::string report_to_csv(const VerificationReport& report) {
    std::string out = "suite,check_id,anchor,value,target,tol,pass\n";
    for (const auto& suite : report.suites)
        for (const auto& c : suite.checks) {
            out += suite.name;
            out += ',';
            out += c.id;
            out += ",\"";
            out += c.anchor;
            out += "\",";
            out += format_double(c.value);
            out += ',';
            out += format_double(c.target);
            out += ',';
            out += format_double(c.tol);
            out += ',';
            out += c.pass ? "true" : "false";
            out += '\n';
        }
    return out;
}

}  // namespace rotwell
