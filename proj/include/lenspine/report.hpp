// Structured run reports for the CLI: named pass/fail checks, inputs and
// outputs, JSON or human-readable text.
#pragma once

#include <chrono>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include <lenspine/bounds.hpp>
#include <lenspine/flipdist.hpp>

namespace lenspine {

using Json = nlohmann::json;

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct RunReport {
    std::string command;
    Json inputs = Json::object();
    Json outputs = Json::object();
    std::vector<Check> checks;
    double elapsed_ms = 0;

    void check(const std::string& name, bool pass, const std::string& detail = "") {
        checks.push_back({name, pass, detail});
    }

    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    Json to_json() const {
        Json j;
        j["command"] = command;
        j["inputs"] = inputs;
        j["outputs"] = outputs;
        j["checks"] = Json::array();
        for (const auto& c : checks) {
            Json cj = {{"name", c.name}, {"pass", c.pass}};
            if (!c.detail.empty()) cj["detail"] = c.detail;
            j["checks"].push_back(cj);
        }
        j["ok"] = ok();
        j["elapsed_ms"] = elapsed_ms;
        return j;
    }

    void print_text(std::ostream& os) const {
        for (const auto& [key, value] : outputs.items())
            os << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
               << "\n";
        for (const auto& c : checks)
            os << "[" << (c.pass ? "ok" : "FAIL") << "] " << c.name
               << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
    }
};

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

inline Json to_json(const FlipSequence& seq) {
    Json flips = Json::array();
    for (const auto& d : seq.flips) flips.push_back(std::to_string(d.a) + "-" + std::to_string(d.b));
    return {{"length", seq.length()}, {"flips", flips}};
}

inline Json to_json(const BoundCertificate& cert) {
    Json j;
    j["p"] = cert.p;
    j["q"] = cert.q;
    j["q_normalized"] = cert.q_normalized;
    j["mirrored"] = cert.mirrored;
    Json coeffs = Json::array(), remainders = Json::array(), convergents = Json::array();
    for (const auto& n : cert.trace.coefficients) coeffs.push_back(n.convert_to<long long>());
    for (const auto& r : cert.trace.remainders) remainders.push_back(r.convert_to<long long>());
    for (const auto& c : cert.trace.convergents_num) convergents.push_back(c.convert_to<long long>());
    j["coefficients"] = coeffs;
    j["remainders"] = remainders;
    j["convergent_numerators"] = convergents;
    j["profile"] = cert.profile.counts;
    j["partial_sum_ok"] = cert.partial_sum_ok;
    j["per_group_bound"] = cert.per_group_bound;
    j["per_group_destroyed"] = cert.per_group_destroyed;
    j["per_group_ok"] = cert.per_group_ok;
    j["bound_value"] = cert.bound_value;
    j["target"] = cert.target;
    j["extremal"] = cert.extremal;
    j["destroyed_total"] = cert.destroyed_total;
    return j;
}

} // namespace lenspine
