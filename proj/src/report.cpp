#include "klein/report.hpp"

#include <algorithm>

namespace klein {

Check& VerificationReport::add(std::string name, bool pass, Json measured, Json tolerance, std::string note) {
    checks_.push_back({std::move(name), pass, std::move(measured), std::move(tolerance), std::move(note)});
    return checks_.back();
}

void VerificationReport::merge(const VerificationReport& other) {
    for (const Check& c : other.checks()) {
        Check copy = c;
        copy.name = other.suite() + "." + c.name;
        checks_.push_back(std::move(copy));
    }
}

bool VerificationReport::passed() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
}

const Check* VerificationReport::find(const std::string& name) const {
    auto it = std::find_if(checks_.begin(), checks_.end(), [&](const Check& c) { return c.name == name; });
    return it == checks_.end() ? nullptr : &*it;
}

Json VerificationReport::to_json() const {
    Json j;
    j["suite"] = suite_;
    Json checks = Json::array();
    for (const Check& c : checks_) {
        Json entry;
        entry["name"] = c.name;
        entry["pass"] = c.pass;
        entry["measured"] = c.measured;
        entry["tolerance"] = c.tolerance;
        if (!c.note.empty()) entry["note"] = c.note;
        checks.push_back(std::move(entry));
    }
    j["checks"] = std::move(checks);
    j["status"] = passed() ? "pass" : "fail";
    return j;
}

}  // namespace klein
