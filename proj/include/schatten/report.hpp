#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace schatten {

// Common result record emitted by every estimator path.
struct EstimateReport {
    double value = 0.0;
    double claimed_bound = 0.0;
    std::string estimator;  // "exact" | "dqc1" | "walker" | ...
    std::string mode;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    double wallclock_ms = 0.0;
    std::map<std::string, double> parameters;  // full provenance (eps, eta, ...)
    std::optional<double> truth;
    std::optional<bool> pass;  // |value - truth| <= claimed_bound, iff truth known

    void set_truth(double t) {
        truth = t;
        pass = std::abs(value - t) <= claimed_bound;
    }

    nlohmann::json to_json() const {
        nlohmann::json j{{"value", value},
                         {"claimed_bound", claimed_bound},
                         {"estimator", estimator},
                         {"mode", mode},
                         {"shots", shots},
                         {"seed", seed},
                         {"wallclock_ms", wallclock_ms},
                         {"parameters", parameters}};
        if (truth) j["truth"] = *truth;
        if (pass) j["pass"] = *pass;
        return j;
    }
};

}  // namespace schatten
