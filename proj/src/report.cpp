#include "msf/report.hpp"

#include <cstdint>
#include <cstdio>

namespace msf {

bool VerificationReport::pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

void VerificationReport::add(const std::string& name, double residual, double tol,
                             double seconds) {
    checks.push_back({name, residual, tol, residual <= tol, seconds});
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string VerificationReport::to_json() const {
    std::string out = "{\"schema\":1,\"config_digest\":\"" + config_digest + "\",\"checks\":[";
    bool first = true;
    for (const auto& c : checks) {
        if (!first) out += ",";
        first = false;
        out += "{\"name\":\"" + c.name + "\",\"residual\":" + fmt_double(c.residual) +
               ",\"tol\":" + fmt_double(c.tol) + ",\"pass\":" + (c.pass ? "true" : "false") +
               ",\"seconds\":" + fmt_double(c.seconds) + "}";
    }
    out += "],\"pass\":";
    out += pass() ? "true" : "false";
    out += "}";
    return out;
}

std::string hex_digest(const std::string& payload) {
    std::uint64_t h = 1469598103934665603ULL;
    for (char ch : payload) {
        h ^= std::uint64_t((unsigned char)ch);
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

} // namespace msf
