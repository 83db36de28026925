#include "stablelp/report.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace slp {

CheckRecord& SuiteReport::add(const std::string& name, bool pass, double value,
                              double tolerance, const std::string& detail) {
    checks.push_back({name, pass ? "pass" : "fail", value, tolerance, 0.0, detail});
    return checks.back();
}

CheckRecord& SuiteReport::log(const std::string& name, double value, const std::string& detail) {
    checks.push_back({name, "logged", value, 0.0, 0.0, detail});
    return checks.back();
}

bool SuiteReport::all_pass() const { return fail_count() == 0; }

std::size_t SuiteReport::fail_count() const {
    std::size_t n = 0;
    for (const auto& c : checks)
        if (c.status == "fail") ++n;
    return n;
}

std::string config_hash(const std::string& canonical) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string report_to_json(const SuiteReport& report) {
    nlohmann::json j;
    j["version"] = report.version;
    j["config_hash"] = report.config_hash;
    j["fail_count"] = report.fail_count();
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : report.checks) {
        nlohmann::json rec;
        rec["name"] = c.name;
        rec["status"] = c.status;
        rec["value"] = c.value;
        rec["tolerance"] = c.tolerance;
        rec["runtime_s"] = c.runtime_s;
        if (!c.detail.empty()) rec["detail"] = c.detail;
        arr.push_back(std::move(rec));
    }
    j["checks"] = std::move(arr);
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

}  // namespace slp
