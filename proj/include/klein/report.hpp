#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace klein {

using Json = nlohmann::ordered_json;

struct Check {
    std::string name;
    bool pass = false;
    Json measured = Json::object();
    Json tolerance = nullptr;
    std::string note;
};

/// Named list of pass/fail checks with their measured values. Serializes
/// with a fixed field order so identical runs give identical bytes.
class VerificationReport {
public:
    explicit VerificationReport(std::string suite) : suite_(std::move(suite)) {}

    Check& add(std::string name, bool pass, Json measured = Json::object(), Json tolerance = nullptr,
               std::string note = {});
    void merge(const VerificationReport& other);

    const std::string& suite() const { return suite_; }
    const std::vector<Check>& checks() const { return checks_; }
    bool passed() const;
    /// Null if there is no check with that name.
    const Check* find(const std::string& name) const;

    Json to_json() const;

private:
    std::string suite_;
    std::vector<Check> checks_;
};

}  // namespace klein
