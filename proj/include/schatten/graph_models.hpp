#pragma once

#include <optional>
#include <random>

#include <nlohmann/json.hpp>

#include "schatten/hamiltonian.hpp"

namespace schatten {

// Expected-degree random graph model: edge (i,j) present independently with
// probability w_i w_j / sum(w).
struct DegreeModel {
    std::vector<double> weights;
    std::optional<double> beta;  // power-law exponent, when applicable
    bool strict = false;         // reject (vs clip) pair probabilities > 1

    double max_weight() const;       // d
    double mean_weight() const;      // d_bar
    double second_order_degree() const;  // d_tilde = sum(w^2)/sum(w)
    void validate() const;           // strict mode: all pair probabilities <= 1
};

struct SampleStats {
    std::uint64_t clipped_pairs = 0;  // pair probabilities clipped to 1
};

SparseHermitian chung_lu_sample(const DegreeModel& model, std::mt19937_64& rng,
                                SampleStats* stats = nullptr);

// Rank-based power-law weights w_i = c (i + i0)^(-1/(beta-1)), with (c, i0)
// solved so that max weight = d and mean weight = d_bar.
DegreeModel power_law_weights(int n, double beta, double d, double d_bar);

// Largest adjacency eigenvalue; power iteration on A + shift*I for large N.
double largest_eigenvalue(const SparseHermitian& a, double rel_tol = 1e-6,
                          int max_iter = 10000);

struct RegimeReport {
    double mean_lambda_max = 0.0;
    double predicted = 0.0;  // max(sqrt(d), d_tilde)
    double ratio = 0.0;
    double d = 0.0;
    double d_tilde = 0.0;
    // which precondition holds: "d_tilde" (d_tilde > sqrt(d) ln N),
    // "sqrt_d" (sqrt(d) > d_tilde ln^2 N), or "neither"
    std::string regime;
    int samples = 0;
};

RegimeReport eigenvalue_regime_check(const DegreeModel& model, int samples,
                                     std::mt19937_64& rng);

struct AdvantageReport {
    double quantum_bound = 0.0;    // eps * ||A||^p (per unit eps)
    double classical_bound = 0.0;  // eps * d^p * ||A||_max^p (per unit eps)
    double ratio = 0.0;            // (||A|| / (d ||A||_max))^p
    double norm = 0.0;
    int d = 0;
    int p = 0;
};

AdvantageReport accuracy_advantage_report(const SparseHermitian& a, int p);

// Model spec: {"N", "beta", "d", "d_bar"} or {"weights": [...]}.
nlohmann::json degree_model_to_json(const DegreeModel& model);
DegreeModel degree_model_from_json(const nlohmann::json& j);

}  // namespace schatten
