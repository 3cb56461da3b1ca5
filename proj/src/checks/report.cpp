#include "laurentlab/checks/report.hpp"

#include <sstream>
#include <stdexcept>

#ifndef LAURENTLAB_VERSION
#define LAURENTLAB_VERSION "0.0.0"
#endif

namespace laurentlab::checks {

std::string to_string(Status s)
{
    switch (s) {
    case Status::pass:
        return "pass";
    case Status::fail:
        return "fail";
    case Status::skipped:
        return "skipped";
    }
    return "unknown";
}

VerificationRecord VerificationRecord::passed(std::string check_id, std::string subject, std::string note)
{
    VerificationRecord r;
    r.check_id = std::move(check_id);
    r.subject = std::move(subject);
    r.status = Status::pass;
    r.note = std::move(note);
    return r;
}

VerificationRecord VerificationRecord::failed(std::string check_id, std::string subject, std::string witness,
                                              std::string note)
{
    if (witness.empty()) {
        throw std::invalid_argument("a failed record needs a witness");
    }
    VerificationRecord r;
    r.check_id = std::move(check_id);
    r.subject = std::move(subject);
    r.status = Status::fail;
    r.witness = std::move(witness);
    r.note = std::move(note);
    return r;
}

VerificationRecord VerificationRecord::skipped(std::string check_id, std::string subject, std::string note)
{
    VerificationRecord r;
    r.check_id = std::move(check_id);
    r.subject = std::move(subject);
    r.status = Status::skipped;
    r.note = std::move(note);
    return r;
}

Summary SuiteReport::summary() const
{
    Summary s;
    for (const auto& r : records) {
        switch (r.status) {
        case Status::pass:
            ++s.pass;
            break;
        case Status::fail:
            ++s.fail;
            break;
        case Status::skipped:
            ++s.skipped;
            break;
        }
    }
    return s;
}

void SuiteReport::append(const SuiteReport& other)
{
    records.insert(records.end(), other.records.begin(), other.records.end());
}

const char* version()
{
    return LAURENTLAB_VERSION;
}

nlohmann::ordered_json to_json(const SuiteReport& report, bool with_timing)
{
    using nlohmann::ordered_json;
    Summary s = report.summary();
    ordered_json j;
    j["schema"] = 1;
    j["version"] = version();
    j["config"] = report.config;
    j["summary"] = {{"records", report.records.size()}, {"pass", s.pass}, {"fail", s.fail}, {"skipped", s.skipped}};
    ordered_json records = ordered_json::array();
    ordered_json timing = ordered_json::array();
    for (const auto& r : report.records) {
        ordered_json e;
        e["check"] = r.check_id;
        e["subject"] = r.subject;
        e["status"] = to_string(r.status);
        if (r.witness) {
            e["witness"] = *r.witness;
        }
        if (!r.note.empty()) {
            e["note"] = r.note;
        }
        records.push_back(std::move(e));
        timing.push_back(r.elapsed.count());
    }
    j["records"] = std::move(records);
    if (with_timing) {
        j["timing"] = {{"unit", "s"}, {"elapsed", std::move(timing)}};
    }
    return j;
}

namespace {

std::string cell(const std::string& s, std::size_t limit = 120)
{
    std::string out;
    for (char c : s) {
        if (c == '|') {
            out += "\\|";
        } else if (c == '\n') {
            out += ' ';
        } else {
            out += c;
        }
    }
    if (out.size() > limit) {
        out = out.substr(0, limit) + " ...";
    }
    return out;
}

} // namespace

std::string to_markdown(const SuiteReport& report)
{
    Summary s = report.summary();
    std::ostringstream os;
    os << "# Verification report\n\n";
    os << "version " << version() << ", schema 1\n\n";
    os << "config: `" << report.config.dump() << "`\n\n";
    os << "| pass | fail | skipped |\n|---:|---:|---:|\n";
    os << "| " << s.pass << " | " << s.fail << " | " << s.skipped << " |\n\n";
    os << "| check | subject | status | witness / note |\n|---|---|---|---|\n";
    for (const auto& r : report.records) {
        std::string extra = r.witness ? *r.witness : r.note;
        os << "| " << cell(r.check_id) << " | " << cell(r.subject) << " | " << to_string(r.status) << " | "
           << cell(extra) << " |\n";
    }
    return os.str();
}

} // namespace laurentlab::checks
