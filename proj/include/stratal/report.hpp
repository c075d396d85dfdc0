#ifndef STRATAL_REPORT_HPP
#define STRATAL_REPORT_HPP

#include <json.hpp>

#include <string>
#include <vector>

namespace stratal {

/// Two-part command report: free-form human lines plus a machine-readable
/// JSON document that is byte-identical across reruns with the same inputs
/// and seed (no timing inside the JSON).
struct ReportDoc {
    std::string command;
    std::vector<std::string> human;
    nlohmann::ordered_json machine;
    long elapsed_ms = 0;

    void line(const std::string& text) { human.push_back(text); }

    /// Print to stdout; when STRATAL_REPORT_DIR is set, also write the
    /// machine section to <dir>/<command>-<digest>.json.
    void emit() const;
};

}  // namespace stratal

#endif
