#pragma once

#include <functional>
#include <limits>
#include <string>

#include "schatten/hamiltonian.hpp"

namespace schatten {

// Named scalar function f: [-b, b] -> [-1, 1] with known Lipschitz constant K
// and sup-norm f_max. The trace-estimation machinery evaluates f on eigenvalue
// estimates, so K and f_max feed directly into the claimed error bounds.
struct SpectralFunction {
    std::string name;
    std::function<double(double)> eval;
    double interval_b = kPi;  // I = [-b, b]
    double lipschitz = 1.0;   // K
    double f_max = 1.0;

    double operator()(double x) const { return eval(x); }
    double clamp(double x) const {
        return std::max(-interval_b, std::min(interval_b, x));
    }
};

// f(x) = x^p on [-b, b]; K = p b^(p-1), f_max = b^p.
SpectralFunction make_pow(int p, double b);
// f(x) = |x|^p on [-b, b]; same constants.
SpectralFunction make_abs_pow(int p, double b);
// Normalized variants mapping into [-1, 1]: f(x) = x^p / b^p etc., K = p / b.
SpectralFunction make_pow_normalized(int p, double b);
SpectralFunction make_abs_pow_normalized(int p, double b);

struct SpectrumReport {
    RealVec eigenvalues;   // sorted ascending
    double norm = 0.0;     // ||A|| = max |lambda|
    double min_abs_eig = 0.0;
    double condition = std::numeric_limits<double>::infinity();
    bool condition_finite = false;
};

SpectrumReport spectrum(const Mat& a, const Config& cfg = {});

// sum_j f(lambda_j) / dim
double trace_f(const Mat& a, const SpectralFunction& f, const Config& cfg = {});

// (sum_j |lambda_j|^p / dim)^(1/p), p real >= 1
double schatten_p_norm(const Mat& a, double p, const Config& cfg = {});

// Tr(|A|) / N for a real symmetric adjacency matrix
double graph_energy(const SparseHermitian& a, const Config& cfg = {});

// Exact Tr(A^p)/2^n via the m^p term expansion over local blocks; never
// materializes the 2^n-dimensional matrix.
double trace_power_exact_local(const LogLocalHamiltonian& h, int p,
                               std::uint64_t work_budget = 1'000'000,
                               const Config& cfg = {});

// Relative-error bracket for recovering ||A||_p from a trace estimate with
// additive error eps * ||A||^p.
struct PthRootErrorReport {
    double best_factor = 1.0;   // (1 + eps)^(1/p)
    double worst_factor = 1.0;  // (1 + eps * kappa^p)^(1/p)
    double eps_for_target = 0.0;  // eps' = ((1+delta)^p - 1) / kappa^p
};

PthRootErrorReport pth_root_error_report(double trace_est, double eps, double p,
                                         const SpectrumReport& spec,
                                         double target_delta = 0.0);

}  // namespace schatten
