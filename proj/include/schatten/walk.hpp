#pragma once

#include <random>

#include "schatten/hamiltonian.hpp"
#include "schatten/report.hpp"

namespace schatten {

// Literal: step-2 walks pick uniformly among actual neighbors (the procedure
// as written; biased for irregular graphs). Corrected: step-2 walks are drawn
// uniformly from the realisable walks via rejection from the candidate
// generator, which makes X*Y target (A^p)_jj exactly. Corrected is the
// default for accuracy claims.
enum class WalkMode { Literal, Corrected };

std::string to_string(WalkMode m);

struct WalkPlan {
    int p = 1;
    std::uint64_t k = 0;        // candidate-walk samples
    std::uint64_t k_prime = 0;  // return-walk samples
    double eps = 0.1;
    double eps_prime = 0.1;
    double fail_prob = 0.05;
    int d = 0;
    MatrixClass cls = MatrixClass::ZeroOne;
    WalkMode mode = WalkMode::Corrected;
    bool exhaustive = false;

    double delta() const { return eps + eps_prime + eps * eps_prime; }
};

// Minimal k, k' from the Hoeffding bounds. SignedUnit return variables span
// [-1, 1], which loosens the exponent and doubles k'.
WalkPlan plan_samples(int p, double eps, double eps_prime, double fail_prob,
                      MatrixClass cls, WalkMode mode = WalkMode::Corrected);

// X: estimate of W_p, the number of length-p walks leaving vertex j, as
// d^p * (realisable fraction of k uniform candidate digit sequences).
double count_walks_estimate(const SparseHermitian& a, int j, int p, std::uint64_t k,
                            std::mt19937_64& rng);
// Exact W_p by enumerating all d^p candidates.
double count_walks_exhaustive(const SparseHermitian& a, int j, int p);

// Y: walk return weight. ZeroOne: closed indicator; SignedUnit: +/-1 by the
// parity of -1 edges when closed; WeightedReal: product of edge weights when
// closed; 0 otherwise.
double return_weight_estimate(const SparseHermitian& a, int j, int p, std::uint64_t k_prime,
                              std::mt19937_64& rng, MatrixClass cls,
                              WalkMode mode = WalkMode::Corrected);
// Exact E[Y] over all realisable walks (uniform), by enumeration.
double return_weight_exhaustive(const SparseHermitian& a, int j, int p, MatrixClass cls);

struct DiagonalEstimate {
    int j = 0;
    double value = 0.0;
    double bound = 0.0;  // delta * d^p * ||A||_max^p
    WalkPlan plan;
    std::uint64_t seed = 0;
    bool isolated = false;
};

DiagonalEstimate diagonal_estimate(const SparseHermitian& a, int j, const WalkPlan& plan,
                                   std::uint64_t seed);

// Mean of diagonal_estimate over k'' uniformly random vertices; estimates
// Tr(A^p)/N.
EstimateReport trace_power_estimate(const SparseHermitian& a, const WalkPlan& plan,
                                    std::uint64_t k_double_prime, std::uint64_t seed);

// k'' >= ceil(2 ln(2/fail_prob) / delta^2)
std::uint64_t plan_vertex_samples(double delta, double fail_prob);

}  // namespace schatten
