#pragma once

#include <string>
#include <vector>

namespace slp {

struct CheckRecord {
    std::string name;
    std::string status;  ///< "pass", "fail", or "logged"
    double value = 0.0;
    double tolerance = 0.0;
    double runtime_s = 0.0;
    std::string detail;
};

struct SuiteReport {
    std::string version = "1.0.0";
    std::string config_hash;
    std::vector<CheckRecord> checks;

    CheckRecord& add(const std::string& name, bool pass, double value, double tolerance,
                     const std::string& detail = "");
    CheckRecord& log(const std::string& name, double value, const std::string& detail = "");
    bool all_pass() const;  ///< no "fail" records
    std::size_t fail_count() const;
};

/// FNV-1a of a canonical config string; recorded so identical configs can be
/// recognized across runs.
std::string config_hash(const std::string& canonical);

/// JSON with keys sorted (nlohmann object ordering), UTF-8.
std::string report_to_json(const SuiteReport& report);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace slp
