#pragma once

// Structured run reports: one record per computed case, with a fixed-width
// human rendering and a JSON-lines machine rendering whose parse is an exact
// (bit-for-bit) inverse of the serialization.

#include <cmath>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace conmod {

struct RunReport {
    std::string name;
    double value = 0.0;                      // modulus or capacity
    std::optional<double> ring_modulus;      // 2 pi / capacity, ring cases only
    std::optional<double> reciprocal_error;  // |M * M' - 1|
    std::optional<double> reference;         // closed form or frozen table value
    std::optional<double> deviation;         // |value - reference|
    std::optional<double> tolerance;         // declared per-case bound on deviation
    bool certified = true;                   // false: reference route unproven
    int dofs = 0;                            // total dofs (skeleton + condensed)
    int elements = 0;
    int p = 0;
    double alpha = 0.0;
    int nu = 0;
    double wall_time = 0.0;  // seconds

    // A case fails only by exceeding its declared tolerance.
    bool within_tolerance() const {
        return !(deviation && tolerance && *deviation > *tolerance);
    }
};

inline void finish_report(RunReport& r) {
    if (r.reference) r.deviation = std::abs(r.value - *r.reference);
}

// --- machine format: one JSON object per line -------------------------------

inline std::string to_machine(const RunReport& r) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["value"] = r.value;
    if (r.ring_modulus) j["ring_modulus"] = *r.ring_modulus;
    if (r.reciprocal_error) j["reciprocal_error"] = *r.reciprocal_error;
    if (r.reference) j["reference"] = *r.reference;
    if (r.deviation) j["deviation"] = *r.deviation;
    if (r.tolerance) j["tolerance"] = *r.tolerance;
    if (!r.certified) j["certified"] = false;
    j["dofs"] = r.dofs;
    j["elements"] = r.elements;
    j["p"] = r.p;
    j["alpha"] = r.alpha;
    j["nu"] = r.nu;
    j["wall_time"] = r.wall_time;
    return j.dump();
}

inline RunReport from_machine(const std::string& line) {
    nlohmann::json j = nlohmann::json::parse(line);
    RunReport r;
    r.name = j.at("name").get<std::string>();
    r.value = j.at("value").get<double>();
    if (j.contains("ring_modulus")) r.ring_modulus = j["ring_modulus"].get<double>();
    if (j.contains("reciprocal_error")) r.reciprocal_error = j["reciprocal_error"].get<double>();
    if (j.contains("reference")) r.reference = j["reference"].get<double>();
    if (j.contains("deviation")) r.deviation = j["deviation"].get<double>();
    if (j.contains("tolerance")) r.tolerance = j["tolerance"].get<double>();
    if (j.contains("certified")) r.certified = j["certified"].get<bool>();
    r.dofs = j.at("dofs").get<int>();
    r.elements = j.at("elements").get<int>();
    r.p = j.at("p").get<int>();
    r.alpha = j.at("alpha").get<double>();
    r.nu = j.at("nu").get<int>();
    r.wall_time = j.at("wall_time").get<double>();
    return r;
}

// --- human format ------------------------------------------------------------

inline std::string human_header() {
    std::ostringstream os;
    os << std::left << std::setw(34) << "case" << std::right << std::setw(20) << "value"
       << std::setw(11) << "recip.err" << std::setw(11) << "deviation" << std::setw(8) << "dofs"
       << std::setw(5) << "p" << std::setw(4) << "nu" << std::setw(9) << "time[s]";
    return os.str();
}

inline std::string to_human(const RunReport& r) {
    std::ostringstream os;
    os << std::left << std::setw(34) << r.name << std::right << std::setw(20)
       << std::setprecision(16) << r.value;
    auto sci = [&os](const std::optional<double>& v) {
        if (v)
            os << std::setw(11) << std::setprecision(2) << std::scientific << *v
               << std::defaultfloat;
        else
            os << std::setw(11) << "-";
    };
    sci(r.reciprocal_error);
    sci(r.deviation);
    os << std::setw(8) << r.dofs << std::setw(5) << r.p << std::setw(4) << r.nu << std::setw(9)
       << std::setprecision(2) << std::fixed << r.wall_time << std::defaultfloat;
    if (r.ring_modulus) os << "  ring modulus " << std::setprecision(16) << *r.ring_modulus;
    if (!r.certified) os << "  [unverified reference]";
    if (r.deviation && r.tolerance) os << (r.within_tolerance() ? "  ok" : "  TOLERANCE EXCEEDED");
    return os.str();
}

}  // namespace conmod
