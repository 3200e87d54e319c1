#include "schatten/trotter.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace schatten {

Mat exact_exponential(const Mat& a, double t) {
    Eigen::SelfAdjointEigenSolver<Mat> es(a);
    if (es.info() != Eigen::Success)
        throw EigensolverFailure("exact_exponential: eigensolver did not converge");
    Vec phases(a.rows());
    for (Eigen::Index j = 0; j < a.rows(); ++j)
        phases[j] = std::exp(Cx{0.0, es.eigenvalues()[j] * t});
    Mat v = es.eigenvectors().cast<Cx>();
    return v * phases.asDiagonal() * v.adjoint();
}

Mat exact_exponential(const LogLocalHamiltonian& h, double t, const Config& cfg) {
    return exact_exponential(assemble_dense(h, cfg), t);
}

TrotterPlan plan_trotter(const LogLocalHamiltonian& h, double t, double delta,
                         const Config& cfg) {
    if (delta <= 0.0 || delta > 1.0)
        throw InputError("plan_trotter: delta must be in (0, 1]");
    h.validate(cfg);
    TrotterPlan plan;
    plan.t = t;
    plan.delta = delta;
    plan.constant_C = cfg.trotter_C;
    plan.zeta = h.term_norm_bound();
    plan.m = static_cast<int>(h.terms.size());
    plan.tau = std::abs(t) * h.norm_bound();
    const double m3 = std::pow(static_cast<double>(plan.m), 3);
    const double bound = plan.constant_C * m3 * t * t * plan.zeta * plan.zeta / delta;
    plan.steps = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(bound)));
    return plan;
}

Mat trotter_unitary(const LogLocalHamiltonian& h, const TrotterPlan& plan,
                    const Config& cfg) {
    if (h.n > cfg.n_dense_max)
        throw DimensionTooLarge("trotter_unitary: n exceeds n_dense_max");
    const double dt = plan.t / static_cast<double>(plan.steps);
    const Eigen::Index dim = Eigen::Index(1) << h.n;
    Mat step = Mat::Identity(dim, dim);
    for (const auto& term : h.terms) {
        LocalTerm factor;
        factor.qubits = term.qubits;
        factor.matrix = exact_exponential(term.matrix, dt);
        step = step * embed_term(factor, h.n);
    }
    return mat_power(step, plan.steps);
}

double certify_simulation(const LogLocalHamiltonian& h, const Mat& v, double t,
                          const Config& cfg) {
    Mat diff = v - exact_exponential(h, t, cfg);
    Eigen::JacobiSVD<Mat> svd(diff);
    return svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
}

double calibrate_trotter_constant(const std::vector<LogLocalHamiltonian>& fixtures,
                                  double t, const std::vector<double>& deltas,
                                  const Config& cfg) {
    Config local = cfg;
    for (double c = 1.0; c <= 1024.0; c *= 2.0) {
        local.trotter_C = c;
        bool ok = true;
        for (const auto& h : fixtures) {
            for (double delta : deltas) {
                TrotterPlan plan = plan_trotter(h, t, delta, local);
                if (certify_simulation(h, trotter_unitary(h, plan, local), t, local) > delta) {
                    ok = false;
                    break;
                }
            }
            if (!ok) break;
        }
        if (ok) return c;
    }
    throw Error("calibrate_trotter_constant: no C <= 1024 certifies all fixtures");
}

}  // namespace schatten
