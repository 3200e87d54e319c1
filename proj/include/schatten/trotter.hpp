#pragma once

#include "schatten/hamiltonian.hpp"

namespace schatten {

struct TrotterPlan {
    double t = 1.0;
    double delta = 0.0;   // target operator-norm accuracy
    std::uint64_t steps = 1;  // r >= ceil(C m^3 t^2 zeta^2 / delta)
    double constant_C = 1.0;
    double zeta = 0.0;    // max_j ||A_j||
    int m = 0;
    double tau = 0.0;     // t * sum_j ||A_j||
};

// Step count from the first-order product-formula bound, with calibrated C.
TrotterPlan plan_trotter(const LogLocalHamiltonian& h, double t, double delta,
                         const Config& cfg = {});

// V = (prod_j e^{i A_j t/r})^r, each factor by exact exponentiation of the
// embedded local block.
Mat trotter_unitary(const LogLocalHamiltonian& h, const TrotterPlan& plan,
                    const Config& cfg = {});

// Exact operator-norm distance ||V - e^{iAt}|| (largest singular value).
double certify_simulation(const LogLocalHamiltonian& h, const Mat& v, double t,
                          const Config& cfg = {});

// Exact e^{iAt} via eigendecomposition of the assembled dense matrix.
Mat exact_exponential(const LogLocalHamiltonian& h, double t, const Config& cfg = {});
Mat exact_exponential(const Mat& a, double t);

// Smallest C (doubling from 1) for which every fixture certifies within its
// delta; the calibration protocol behind the default Config::trotter_C.
double calibrate_trotter_constant(const std::vector<LogLocalHamiltonian>& fixtures,
                                  double t, const std::vector<double>& deltas,
                                  const Config& cfg = {});

}  // namespace schatten
