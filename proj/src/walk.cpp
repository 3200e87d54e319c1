#include "schatten/walk.hpp"

#include <chrono>
#include <cmath>

namespace schatten {

namespace {

void require_real_symmetric(const SparseHermitian& a) {
    for (const auto& row : a.rows())
        for (const auto& [j, v] : row)
            if (std::abs(v.imag()) > 1e-12)
                throw InputError("walk estimator: matrix must be real symmetric");
}

double edge_weight(const SparseHermitian& a, int u, int rank) {
    return a.row(u)[rank].second.real();
}

int edge_target(const SparseHermitian& a, int u, int rank) {
    return a.row(u)[rank].first;
}

// Follow a candidate digit sequence; returns the walk weight (product of edge
// weights) if realisable, and sets ok accordingly.
double follow_candidate(const SparseHermitian& a, int j, const std::vector<int>& digits,
                        bool& ok, int& end) {
    int v = j;
    double weight = 1.0;
    for (int digit : digits) {
        if (digit >= a.degree(v)) {
            ok = false;
            return 0.0;
        }
        weight *= edge_weight(a, v, digit);
        v = edge_target(a, v, digit);
    }
    ok = true;
    end = v;
    return weight;
}

double walk_value(MatrixClass cls, bool closed, double weight) {
    if (!closed) return 0.0;
    switch (cls) {
        case MatrixClass::ZeroOne: return 1.0;
        case MatrixClass::SignedUnit: return weight < 0.0 ? -1.0 : 1.0;  // parity
        case MatrixClass::WeightedReal: return weight;
    }
    return 0.0;
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(seed * 0x9E3779B97F4A7C15ULL + index + 1);
}

}  // namespace

std::string to_string(WalkMode m) {
    return m == WalkMode::Literal ? "literal" : "corrected";
}

WalkPlan plan_samples(int p, double eps, double eps_prime, double fail_prob,
                      MatrixClass cls, WalkMode mode) {
    if (eps <= 0.0 || eps >= 1.0 || eps_prime <= 0.0 || eps_prime >= 1.0)
        throw InputError("plan_samples: eps, eps' must lie in (0, 1)");
    if (fail_prob <= 0.0 || fail_prob >= 1.0)
        throw InputError("plan_samples: fail_prob must lie in (0, 1)");
    WalkPlan plan;
    plan.p = p;
    plan.eps = eps;
    plan.eps_prime = eps_prime;
    plan.fail_prob = fail_prob;
    plan.cls = cls;
    plan.mode = mode;
    const double l = std::log(2.0 / fail_prob);
    plan.k = static_cast<std::uint64_t>(std::ceil(l / (2.0 * eps * eps)));
    const double kp_denom =
        cls == MatrixClass::SignedUnit ? eps_prime * eps_prime : 2.0 * eps_prime * eps_prime;
    plan.k_prime = static_cast<std::uint64_t>(std::ceil(l / kp_denom));
    return plan;
}

double count_walks_estimate(const SparseHermitian& a, int j, int p, std::uint64_t k,
                            std::mt19937_64& rng) {
    require_real_symmetric(a);
    if (p == 0) return 1.0;
    const int d = a.sparsity();
    if (d == 0) return 0.0;
    std::uniform_int_distribution<int> digit(0, d - 1);
    std::vector<int> digits(p);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < k; ++i) {
        for (int& x : digits) x = digit(rng);
        bool ok = false;
        int end = 0;
        follow_candidate(a, j, digits, ok, end);
        if (ok) ++hits;
    }
    return std::pow(static_cast<double>(d), p) * static_cast<double>(hits) /
           static_cast<double>(k);
}

double count_walks_exhaustive(const SparseHermitian& a, int j, int p) {
    require_real_symmetric(a);
    if (p == 0) return 1.0;
    const int d = a.sparsity();
    if (d == 0) return 0.0;
    std::uint64_t total = 1;
    for (int i = 0; i < p; ++i) total *= static_cast<std::uint64_t>(d);
    std::vector<int> digits(p, 0);
    std::uint64_t hits = 0;
    for (std::uint64_t c = 0; c < total; ++c) {
        std::uint64_t rem = c;
        for (int i = 0; i < p; ++i) {
            digits[i] = static_cast<int>(rem % d);
            rem /= d;
        }
        bool ok = false;
        int end = 0;
        follow_candidate(a, j, digits, ok, end);
        if (ok) ++hits;
    }
    return static_cast<double>(hits);
}

double return_weight_estimate(const SparseHermitian& a, int j, int p, std::uint64_t k_prime,
                              std::mt19937_64& rng, MatrixClass cls, WalkMode mode) {
    require_real_symmetric(a);
    if (p == 0) return 1.0;  // empty walk is closed
    if (a.degree(j) == 0) return 0.0;
    const int d = a.sparsity();
    std::uniform_int_distribution<int> digit(0, d - 1);
    std::vector<int> digits(p);
    double acc = 0.0;
    // cap rejection attempts; realisable walks exist whenever degree(j) > 0
    const std::uint64_t max_attempts = k_prime * 100000ULL + 1000ULL;
    std::uint64_t attempts = 0;
    for (std::uint64_t i = 0; i < k_prime; ++i) {
        if (mode == WalkMode::Corrected) {
            bool ok = false;
            int end = 0;
            double weight = 0.0;
            do {
                if (++attempts > max_attempts)
                    throw Error("return_weight_estimate: rejection sampling stalled");
                for (int& x : digits) x = digit(rng);
                weight = follow_candidate(a, j, digits, ok, end);
            } while (!ok);
            acc += walk_value(cls, end == j, weight);
        } else {
            int v = j;
            double weight = 1.0;
            bool stuck = false;
            for (int step = 0; step < p; ++step) {
                const int deg = a.degree(v);
                if (deg == 0) {
                    stuck = true;
                    break;
                }
                std::uniform_int_distribution<int> pick(0, deg - 1);
                const int r = pick(rng);
                weight *= edge_weight(a, v, r);
                v = edge_target(a, v, r);
            }
            acc += walk_value(cls, !stuck && v == j, weight);
        }
    }
    return acc / static_cast<double>(k_prime);
}

double return_weight_exhaustive(const SparseHermitian& a, int j, int p, MatrixClass cls) {
    require_real_symmetric(a);
    if (p == 0) return 1.0;
    const int d = a.sparsity();
    if (d == 0 || a.degree(j) == 0) return 0.0;
    std::uint64_t total = 1;
    for (int i = 0; i < p; ++i) total *= static_cast<std::uint64_t>(d);
    std::vector<int> digits(p, 0);
    double acc = 0.0;
    std::uint64_t realisable = 0;
    for (std::uint64_t c = 0; c < total; ++c) {
        std::uint64_t rem = c;
        for (int i = 0; i < p; ++i) {
            digits[i] = static_cast<int>(rem % d);
            rem /= d;
        }
        bool ok = false;
        int end = 0;
        const double weight = follow_candidate(a, j, digits, ok, end);
        if (!ok) continue;
        ++realisable;
        acc += walk_value(cls, end == j, weight);
    }
    return realisable == 0 ? 0.0 : acc / static_cast<double>(realisable);
}

DiagonalEstimate diagonal_estimate(const SparseHermitian& a, int j, const WalkPlan& plan,
                                   std::uint64_t seed) {
    DiagonalEstimate est;
    est.j = j;
    est.plan = plan;
    est.plan.d = a.sparsity();
    est.seed = seed;
    est.isolated = a.degree(j) == 0;
    const double scale =
        std::pow(static_cast<double>(a.sparsity()), plan.p) * std::pow(a.max_entry(), plan.p);
    est.bound = plan.delta() * scale;
    if (plan.p == 0) {
        est.value = 1.0;
        return est;
    }
    if (est.isolated) {
        est.value = 0.0;
        return est;
    }
    if (plan.exhaustive) {
        est.value = count_walks_exhaustive(a, j, plan.p) *
                    return_weight_exhaustive(a, j, plan.p, plan.cls);
        return est;
    }
    std::mt19937_64 rng_x = substream(seed, 2 * static_cast<std::uint64_t>(j));
    std::mt19937_64 rng_y = substream(seed, 2 * static_cast<std::uint64_t>(j) + 1);
    const double x_bar = count_walks_estimate(a, j, plan.p, plan.k, rng_x);
    const double y_bar =
        return_weight_estimate(a, j, plan.p, plan.k_prime, rng_y, plan.cls, plan.mode);
    est.value = x_bar * y_bar;
    return est;
}

std::uint64_t plan_vertex_samples(double delta, double fail_prob) {
    return static_cast<std::uint64_t>(
        std::ceil(2.0 * std::log(2.0 / fail_prob) / (delta * delta)));
}

EstimateReport trace_power_estimate(const SparseHermitian& a, const WalkPlan& plan,
                                    std::uint64_t k_double_prime, std::uint64_t seed) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    if (k_double_prime < 1) throw InputError("trace_power_estimate: need k'' >= 1");
    std::mt19937_64 vertex_rng = substream(seed, 0xFFFF0000ULL);
    std::uniform_int_distribution<int> pick(0, a.dim() - 1);
    double acc = 0.0;
    for (std::uint64_t i = 0; i < k_double_prime; ++i) {
        const int j = pick(vertex_rng);
        acc += diagonal_estimate(a, j, plan, seed + 1 + i).value;
    }
    EstimateReport rep;
    rep.estimator = "walker";
    rep.mode = to_string(plan.mode);
    rep.seed = seed;
    rep.value = acc / static_cast<double>(k_double_prime);
    rep.claimed_bound = plan.delta() * std::pow(static_cast<double>(a.sparsity()), plan.p) *
                        std::pow(a.max_entry(), plan.p);
    rep.shots = k_double_prime;
    rep.parameters = {{"p", static_cast<double>(plan.p)},
                      {"k", static_cast<double>(plan.k)},
                      {"k_prime", static_cast<double>(plan.k_prime)},
                      {"k_double_prime", static_cast<double>(k_double_prime)},
                      {"eps", plan.eps},
                      {"eps_prime", plan.eps_prime},
                      {"fail_prob", plan.fail_prob},
                      {"delta", plan.delta()},
                      {"mode", plan.mode == WalkMode::Corrected ? 1.0 : 0.0}};
    rep.wallclock_ms =
        std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    return rep;
}

}  // namespace schatten
