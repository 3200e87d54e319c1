#include "schatten/exact_oracle.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace schatten {

SpectralFunction make_pow(int p, double b) {
    return {"pow_" + std::to_string(p),
            [p](double x) { return std::pow(x, p); },
            b, p * std::pow(b, p - 1), std::pow(b, p)};
}

SpectralFunction make_abs_pow(int p, double b) {
    return {"abs_pow_" + std::to_string(p),
            [p](double x) { return std::pow(std::abs(x), p); },
            b, p * std::pow(b, p - 1), std::pow(b, p)};
}

SpectralFunction make_pow_normalized(int p, double b) {
    const double bp = std::pow(b, p);
    return {"pow_" + std::to_string(p) + "_norm",
            [p, bp](double x) { return std::pow(x, p) / bp; },
            b, p / b, 1.0};
}

SpectralFunction make_abs_pow_normalized(int p, double b) {
    const double bp = std::pow(b, p);
    return {"abs_pow_" + std::to_string(p) + "_norm",
            [p, bp](double x) { return std::pow(std::abs(x), p) / bp; },
            b, p / b, 1.0};
}

SpectrumReport spectrum(const Mat& a, const Config& cfg) {
    if (a.rows() > (Eigen::Index(1) << cfg.n_dense_max))
        throw DimensionTooLarge("spectrum: matrix too large for dense eigensolver");
    if (herm_residual(a) > cfg.tol_herm)
        throw NotHermitian("spectrum: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> es(a);
    if (es.info() != Eigen::Success)
        throw EigensolverFailure("spectrum: eigensolver did not converge");
    SpectrumReport r;
    r.eigenvalues = es.eigenvalues();
    std::sort(r.eigenvalues.data(), r.eigenvalues.data() + r.eigenvalues.size());
    r.norm = r.eigenvalues.cwiseAbs().maxCoeff();
    r.min_abs_eig = r.eigenvalues.cwiseAbs().minCoeff();
    if (r.min_abs_eig > 0.0) {
        r.condition = r.norm / r.min_abs_eig;
        r.condition_finite = true;
    }
    return r;
}

double trace_f(const Mat& a, const SpectralFunction& f, const Config& cfg) {
    SpectrumReport s = spectrum(a, cfg);
    const double slack = 1e-9 * std::max(1.0, f.interval_b);
    if (s.norm > f.interval_b + slack)
        throw SpectrumOutsideInterval("trace_f: spectrum exceeds the function interval");
    double acc = 0.0;
    for (Eigen::Index j = 0; j < s.eigenvalues.size(); ++j)
        acc += f(s.eigenvalues[j]);
    return acc / static_cast<double>(a.rows());
}

double schatten_p_norm(const Mat& a, double p, const Config& cfg) {
    if (p < 1.0) throw InputError("schatten_p_norm: p must be >= 1");
    SpectrumReport s = spectrum(a, cfg);
    double acc = 0.0;
    for (Eigen::Index j = 0; j < s.eigenvalues.size(); ++j)
        acc += std::pow(std::abs(s.eigenvalues[j]), p);
    return std::pow(acc / static_cast<double>(a.rows()), 1.0 / p);
}

double graph_energy(const SparseHermitian& a, const Config& cfg) {
    Mat m = a.dense();
    if (m.imag().cwiseAbs().maxCoeff() > cfg.tol_herm)
        throw InputError("graph_energy: adjacency matrix must be real symmetric");
    SpectrumReport s = spectrum(m, cfg);
    return s.eigenvalues.cwiseAbs().sum() / static_cast<double>(a.dim());
}

namespace {

// Re-index a term onto the (sorted) union support.
Mat embed_on_support(const LocalTerm& term, const std::vector<int>& support) {
    LocalTerm local;
    local.matrix = term.matrix;
    for (int q : term.qubits) {
        auto it = std::lower_bound(support.begin(), support.end(), q);
        local.qubits.push_back(static_cast<int>(it - support.begin()));
    }
    return embed_term(local, static_cast<int>(support.size()));
}

}  // namespace

double trace_power_exact_local(const LogLocalHamiltonian& h, int p,
                               std::uint64_t work_budget, const Config& cfg) {
    h.validate(cfg);
    if (p < 0) throw InputError("trace_power_exact_local: p must be >= 0");
    if (p == 0) return 1.0;  // Tr(I)/2^n
    const std::uint64_t m = h.terms.size();
    std::uint64_t tuples = 1;
    for (int i = 0; i < p; ++i) {
        if (tuples > work_budget / m)
            throw WorkBudgetExceeded("trace_power_exact_local: m^p exceeds work budget");
        tuples *= m;
    }
    double acc = 0.0;
    std::vector<std::uint64_t> idx(p, 0);
    for (std::uint64_t t = 0; t < tuples; ++t) {
        std::uint64_t rem = t;
        std::vector<int> support;
        for (int i = 0; i < p; ++i) {
            idx[i] = rem % m;
            rem /= m;
            for (int q : h.terms[idx[i]].qubits) support.push_back(q);
        }
        std::sort(support.begin(), support.end());
        support.erase(std::unique(support.begin(), support.end()), support.end());
        Mat prod = embed_on_support(h.terms[idx[0]], support);
        for (int i = 1; i < p; ++i)
            prod = prod * embed_on_support(h.terms[idx[i]], support);
        // weight 2^(n - |support|) of identity factors, then divide by 2^n
        acc += prod.trace().real() / std::ldexp(1.0, static_cast<int>(support.size()));
    }
    return acc;
}

PthRootErrorReport pth_root_error_report(double trace_est, double eps, double p,
                                         const SpectrumReport& spec,
                                         double target_delta) {
    if (trace_est <= 0.0)
        throw InputError("pth_root_error_report: trace estimate must be positive");
    if (!spec.condition_finite)
        throw ConditionInfinite("pth_root_error_report: zero eigenvalue, bracket undefined");
    PthRootErrorReport r;
    const double kp = std::pow(spec.condition, p);
    r.best_factor = std::pow(1.0 + eps, 1.0 / p);
    r.worst_factor = std::pow(1.0 + eps * kp, 1.0 / p);
    if (target_delta > 0.0)
        r.eps_for_target = (std::pow(1.0 + target_delta, p) - 1.0) / kp;
    return r;
}

}  // namespace schatten
