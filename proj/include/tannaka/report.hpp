#pragma once

#include <sstream>
#include <string>
#include <vector>

namespace tannaka {

enum class CheckStatus { Pass, Fail, Skip };

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        default: return "skip";
    }
}

struct CheckEntry {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string witness; // serialized coordinate tuple, empty when passing
    std::string anchor;  // stable identifier of the identity being checked
};

// Structured pass/fail ledger.  A report never claims more than its scope
// note says; enumeration-bounded checks set scope accordingly.
struct Report {
    std::string scope = "presented scale";
    std::vector<CheckEntry> entries;

    void add(std::string name, bool ok, std::string anchor, std::string witness = {}) {
        entries.push_back({std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail,
                           ok ? std::string{} : std::move(witness), std::move(anchor)});
    }

    void pass(std::string name, std::string anchor) {
        entries.push_back({std::move(name), CheckStatus::Pass, {}, std::move(anchor)});
    }

    void fail(std::string name, std::string anchor, std::string witness = {}) {
        entries.push_back({std::move(name), CheckStatus::Fail, std::move(witness), std::move(anchor)});
    }

    void skip(std::string name, std::string anchor, std::string why = {}) {
        entries.push_back({std::move(name), CheckStatus::Skip, std::move(why), std::move(anchor)});
    }

    void absorb(const Report& sub, const std::string& prefix) {
        for (const auto& e : sub.entries)
            entries.push_back({prefix + "." + e.name, e.status, e.witness, e.anchor});
    }

    bool passed() const {
        for (const auto& e : entries)
            if (e.status == CheckStatus::Fail) return false;
        return true;
    }

    std::size_t fail_count() const {
        std::size_t n = 0;
        for (const auto& e : entries)
            if (e.status == CheckStatus::Fail) ++n;
        return n;
    }

    std::string summary() const {
        std::ostringstream os;
        os << "scope: " << scope << "\n";
        for (const auto& e : entries) {
            os << "[" << to_string(e.status) << "] " << e.name;
            if (!e.witness.empty()) os << "  -- " << e.witness;
            os << "\n";
        }
        os << (passed() ? "ALL CHECKS PASSED" : "FAILURES PRESENT") << "\n";
        return os.str();
    }
};

} // namespace tannaka
