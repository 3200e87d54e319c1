#include "schatten/graph_models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace schatten {

double DegreeModel::max_weight() const {
    return weights.empty() ? 0.0 : *std::max_element(weights.begin(), weights.end());
}

double DegreeModel::mean_weight() const {
    if (weights.empty()) return 0.0;
    return std::accumulate(weights.begin(), weights.end(), 0.0) /
           static_cast<double>(weights.size());
}

double DegreeModel::second_order_degree() const {
    double s = 0.0, s2 = 0.0;
    for (double w : weights) {
        s += w;
        s2 += w * w;
    }
    return s > 0.0 ? s2 / s : 0.0;
}

void DegreeModel::validate() const {
    if (weights.empty()) throw InvalidModel("DegreeModel: empty weight sequence");
    for (double w : weights)
        if (!(w >= 0.0)) throw InvalidModel("DegreeModel: negative weight");
    if (strict) {
        const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
        const double d = max_weight();
        if (sum > 0.0 && d * d / sum > 1.0)
            throw InvalidModel("DegreeModel: pair probability exceeds 1");
    }
}

SparseHermitian chung_lu_sample(const DegreeModel& model, std::mt19937_64& rng,
                                SampleStats* stats) {
    model.validate();
    const int n = static_cast<int>(model.weights.size());
    const double sum = std::accumulate(model.weights.begin(), model.weights.end(), 0.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<SparseHermitian::Row> rows(n);
    std::uint64_t clipped = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double p = sum > 0.0 ? model.weights[i] * model.weights[j] / sum : 0.0;
            if (p > 1.0) {
                p = 1.0;
                ++clipped;
            }
            if (unif(rng) < p) {
                rows[i].emplace_back(j, Cx(1.0, 0.0));
                rows[j].emplace_back(i, Cx(1.0, 0.0));
            }
        }
    }
    if (stats) stats->clipped_pairs = clipped;
    return SparseHermitian(n, std::move(rows), MatrixClass::ZeroOne);
}

namespace {

// Mean weight of the rank sequence d * ((i + i0)/i0)^(-1/(beta-1)); increases
// monotonically in i0 from d/N toward d.
double rank_mean(int n, double alpha, double d, double i0) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::pow(1.0 + static_cast<double>(i) / i0, -alpha);
    return d * s / static_cast<double>(n);
}

}  // namespace

DegreeModel power_law_weights(int n, double beta, double d, double d_bar) {
    if (n < 1) throw InputError("power_law_weights: N must be >= 1");
    if (beta <= 2.0)
        throw InfeasibleParameters("power_law_weights: beta must exceed 2");
    if (d < d_bar || d_bar <= 0.0)
        throw InfeasibleParameters("power_law_weights: need d >= d_bar > 0");
    const double alpha = 1.0 / (beta - 1.0);
    // Bisect log(i0); the achievable mean range is (d/N, d).
    double lo = -60.0, hi = 60.0;
    if (rank_mean(n, alpha, d, std::exp(lo)) > d_bar ||
        rank_mean(n, alpha, d, std::exp(hi)) < d_bar)
        throw InfeasibleParameters("power_law_weights: (d, d_bar) targets unreachable");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (rank_mean(n, alpha, d, std::exp(mid)) < d_bar ? lo : hi) = mid;
    }
    const double i0 = std::exp(0.5 * (lo + hi));
    const double c = d * std::pow(i0, alpha);
    DegreeModel model;
    model.beta = beta;
    model.weights.resize(n);
    for (int i = 0; i < n; ++i)
        model.weights[i] = c * std::pow(static_cast<double>(i) + i0, -alpha);
    return model;
}

double largest_eigenvalue(const SparseHermitian& a, double rel_tol, int max_iter) {
    const int n = a.dim();
    if (n == 0) return 0.0;
    // Shift so the algebraically largest eigenvalue dominates in magnitude.
    const double shift = a.sparsity() * a.max_entry() + 1.0;
    std::mt19937_64 rng(0x5EEDu);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    RealVec v(n);
    for (int i = 0; i < n; ++i) v[i] = unif(rng);
    v.normalize();
    RealVec av(n);
    double lambda = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        for (int i = 0; i < n; ++i) {
            double acc = shift * v[i];
            for (const auto& [j, w] : a.row(i)) acc += w.real() * v[j];
            av[i] = acc;
        }
        const double next = v.dot(av);  // Rayleigh quotient of A + shift*I
        const double norm = av.norm();
        if (norm == 0.0) return -shift;  // v happens to span the -shift eigenspace
        v = av / norm;
        if (it > 0 && std::abs(next - lambda) <= rel_tol * std::max(1.0, std::abs(next))) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return lambda - shift;
}

RegimeReport eigenvalue_regime_check(const DegreeModel& model, int samples,
                                     std::mt19937_64& rng) {
    if (samples < 1) throw InputError("eigenvalue_regime_check: need samples >= 1");
    model.validate();
    RegimeReport rep;
    rep.samples = samples;
    rep.d = model.max_weight();
    rep.d_tilde = model.second_order_degree();
    const double ln_n = std::log(static_cast<double>(model.weights.size()));
    const double sqrt_d = std::sqrt(rep.d);
    if (rep.d_tilde > sqrt_d * ln_n)
        rep.regime = "d_tilde";
    else if (sqrt_d > rep.d_tilde * ln_n * ln_n)
        rep.regime = "sqrt_d";
    else
        rep.regime = "neither";
    rep.predicted = std::max(sqrt_d, rep.d_tilde);
    double acc = 0.0;
    for (int s = 0; s < samples; ++s) {
        std::mt19937_64 sub(rng());
        acc += largest_eigenvalue(chung_lu_sample(model, sub));
    }
    rep.mean_lambda_max = acc / samples;
    rep.ratio = rep.predicted > 0.0 ? rep.mean_lambda_max / rep.predicted : 0.0;
    return rep;
}

AdvantageReport accuracy_advantage_report(const SparseHermitian& a, int p) {
    if (p < 1) throw InputError("accuracy_advantage_report: need p >= 1");
    AdvantageReport rep;
    rep.p = p;
    rep.d = a.sparsity();
    const double lam_max = largest_eigenvalue(a);
    // spectral norm = max(lambda_max, -lambda_min); flip the sign to reach the
    // bottom of the spectrum with the same iteration
    std::vector<SparseHermitian::Row> neg_rows(a.rows().begin(), a.rows().end());
    for (auto& row : neg_rows)
        for (auto& [j, w] : row) w = -w;
    SparseHermitian neg(a.dim(), std::move(neg_rows),
                        a.matrix_class() == MatrixClass::ZeroOne ? MatrixClass::SignedUnit
                                                                 : a.matrix_class());
    rep.norm = std::max({0.0, lam_max, largest_eigenvalue(neg)});
    rep.quantum_bound = std::pow(rep.norm, p);
    rep.classical_bound = std::pow(rep.d * a.max_entry(), p);
    rep.ratio = rep.classical_bound > 0.0 ? rep.quantum_bound / rep.classical_bound : 0.0;
    return rep;
}

using nlohmann::json;

json degree_model_to_json(const DegreeModel& model) {
    json j{{"weights", model.weights}};
    if (model.beta) j["beta"] = *model.beta;
    return j;
}

DegreeModel degree_model_from_json(const json& j) {
    DegreeModel model;
    try {
        if (j.contains("weights")) {
            model.weights = j.at("weights").get<std::vector<double>>();
            if (j.contains("beta")) model.beta = j.at("beta").get<double>();
        } else {
            model = power_law_weights(j.at("N").get<int>(), j.at("beta").get<double>(),
                                      j.at("d").get<double>(), j.at("d_bar").get<double>());
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("degree model json: ") + e.what());
    }
    model.validate();
    return model;
}

}  // namespace schatten
