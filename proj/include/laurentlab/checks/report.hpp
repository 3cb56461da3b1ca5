#pragma once

#include <json.hpp>

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace laurentlab::checks {

enum class Status { pass, fail, skipped };

std::string to_string(Status s);

/// Outcome of one check on one subject. A fail always carries a witness.
struct VerificationRecord {
    std::string check_id;
    std::string subject;
    Status status = Status::pass;
    std::optional<std::string> witness;
    std::string note;
    std::chrono::duration<double> elapsed{0};

    static VerificationRecord passed(std::string check_id, std::string subject, std::string note = {});
    static VerificationRecord failed(std::string check_id, std::string subject, std::string witness, std::string note = {});
    static VerificationRecord skipped(std::string check_id, std::string subject, std::string note);

    bool ok() const noexcept { return status != Status::fail; }
};

struct Summary {
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::size_t skipped = 0;
};

struct SuiteReport {
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    std::vector<VerificationRecord> records;

    Summary summary() const;
    bool all_passed() const { return summary().fail == 0; }
    void add(VerificationRecord r) { records.push_back(std::move(r)); }
    void append(const SuiteReport& other);
};

/// Toolkit version written into reports.
const char* version();

/// Stable key order; elapsed times only appear under "timing" when asked for,
/// so two runs of one config agree byte for byte without them.
nlohmann::ordered_json to_json(const SuiteReport& report, bool with_timing = true);
std::string to_markdown(const SuiteReport& report);

} // namespace laurentlab::checks
