#pragma once

#include <string>
#include <vector>

namespace msf {

struct CheckRecord {
    std::string name;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
    double seconds = 0.0;
};

struct VerificationReport {
    int schema = 1;
    std::string config_digest;
    std::vector<CheckRecord> checks;

    bool pass() const;
    std::string to_json() const;
    void add(const std::string& name, double residual, double tol, double seconds);
};

std::string hex_digest(const std::string& payload);

} // namespace msf
