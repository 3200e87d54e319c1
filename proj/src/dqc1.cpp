#include "schatten/dqc1.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

namespace schatten {

namespace {

int ceil_log2(double x) {
    // guard against representation jitter at exact powers of two
    return static_cast<int>(std::ceil(std::log2(x) - 1e-6));
}

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

// Eigenphases of a unitary as fractions theta in [0, 1).
RealVec eigenphases(const Mat& v) {
    Eigen::ComplexEigenSolver<Mat> es(v);
    if (es.info() != Eigen::Success)
        throw EigensolverFailure("eigenphases: eigensolver did not converge");
    RealVec theta(v.rows());
    for (Eigen::Index j = 0; j < v.rows(); ++j) {
        double t = std::arg(es.eigenvalues()[j]) / (2.0 * kPi);
        if (t < 0.0) t += 1.0;
        if (t >= 1.0) t -= 1.0;
        theta[j] = t;
    }
    return theta;
}

double clamp_unit(double x) { return std::max(-1.0, std::min(1.0, x)); }

// |gamma_{k|j}|^2: probability that phase estimation reports register value k
// when the true eigenphase is theta. Dirichlet-kernel closed form.
class PhaseKernel {
  public:
    PhaseKernel(double theta, std::uint64_t n_reg) : theta_(theta), n_(n_reg) {
        const double z = theta * static_cast<double>(n_);
        const double fz = z - std::floor(z);
        numerator_ = std::sin(kPi * fz);
        numerator_ *= numerator_;
        exact_ = numerator_ < 1e-22;
        exact_k_ = static_cast<std::uint64_t>(std::llround(z)) % n_;
    }

    bool exact() const { return exact_; }
    std::uint64_t exact_k() const { return exact_k_; }

    double operator()(std::uint64_t k) const {
        if (exact_) return k == exact_k_ ? 1.0 : 0.0;
        const double delta = theta_ - static_cast<double>(k) / static_cast<double>(n_);
        const double s = std::sin(kPi * delta);
        return numerator_ / (static_cast<double>(n_) * static_cast<double>(n_) * s * s);
    }

  private:
    double theta_;
    std::uint64_t n_;
    double numerator_ = 0.0;
    bool exact_ = false;
    std::uint64_t exact_k_ = 0;
};

}  // namespace

double phase_unwrap(std::uint64_t x, int a) {
    const double n_reg = std::ldexp(1.0, a);
    const double half = std::ldexp(1.0, a - 1);
    const double v = 2.0 * kPi * static_cast<double>(x) / n_reg;
    return static_cast<double>(x) <= half ? v : v - 2.0 * kPi;
}

int PhaseEstimationBudget::ancilla_count(double eta, double varphi) {
    return ceil_log2(1.0 / eta) + ceil_log2(2.0 + 1.0 / (2.0 * varphi));
}

PhaseEstimationBudget PhaseEstimationBudget::from_eps(double eps) {
    if (eps <= 0.0) throw InputError("PhaseEstimationBudget: eps must be positive");
    PhaseEstimationBudget b;
    b.eps = eps;
    const double slack = 1.0 - 1e-9;
    b.eta = eps / (8.0 * kPi) * slack;
    b.varphi = eps / 8.0 * slack;
    b.delta_sim = eps / (2.0 * kPi);
    b.a = ancilla_count(b.eta, b.varphi);
    b.validate();
    return b;
}

void PhaseEstimationBudget::validate() const {
    if (!(eta > 0.0 && eta < eps / (8.0 * kPi)))
        throw BudgetInfeasible("budget: eta must satisfy 0 < eta < eps/(8 pi)");
    if (!(varphi > 0.0 && varphi < eps / 8.0))
        throw BudgetInfeasible("budget: varphi must satisfy 0 < varphi < eps/8");
    if (!(delta_sim > 0.0 && delta_sim <= eps / (2.0 * kPi) + 1e-15))
        throw BudgetInfeasible("budget: delta_sim must satisfy delta <= eps/(2 pi)");
    if (a != ancilla_count(eta, varphi))
        throw BudgetInfeasible("budget: a does not match the ancilla formula");
}

std::string to_string(ReadoutMode m) {
    return m == ReadoutMode::ExactSubmatrix ? "exact_submatrix" : "sampled";
}

std::pair<double, double> dqc1_trace_estimate_exact(const Mat& u) {
    if (!is_unitary(u, 1e-9)) throw InputError("dqc1_trace_estimate: input not unitary");
    const Eigen::Index dim = u.rows();
    const Eigen::Index d2 = 2 * dim;
    Mat ctrl_u = Mat::Identity(d2, d2);
    ctrl_u.block(dim, dim, dim, dim) = u;
    const Cx inv_sqrt2{1.0 / std::sqrt(2.0), 0.0};
    Mat hc = Mat::Zero(d2, d2);
    hc.block(0, 0, dim, dim) = inv_sqrt2 * Mat::Identity(dim, dim);
    hc.block(0, dim, dim, dim) = inv_sqrt2 * Mat::Identity(dim, dim);
    hc.block(dim, 0, dim, dim) = inv_sqrt2 * Mat::Identity(dim, dim);
    hc.block(dim, dim, dim, dim) = -inv_sqrt2 * Mat::Identity(dim, dim);

    auto run = [&](Cx c0, Cx c1) {
        Mat rho = Mat::Zero(d2, d2);
        const double w = 1.0 / static_cast<double>(dim);
        rho.block(0, 0, dim, dim) = c0 * std::conj(c0) * w * Mat::Identity(dim, dim);
        rho.block(0, dim, dim, dim) = c0 * std::conj(c1) * w * Mat::Identity(dim, dim);
        rho.block(dim, 0, dim, dim) = c1 * std::conj(c0) * w * Mat::Identity(dim, dim);
        rho.block(dim, dim, dim, dim) = c1 * std::conj(c1) * w * Mat::Identity(dim, dim);
        Mat out = hc * ctrl_u * rho * ctrl_u.adjoint() * hc.adjoint();
        return out.block(0, 0, dim, dim).trace().real();  // Pr(measure 0)
    };

    const double p0_re = run(inv_sqrt2, inv_sqrt2);
    const double p0_im = run(inv_sqrt2, Cx{0.0, -1.0} * inv_sqrt2);
    return {2.0 * p0_re - 1.0, 2.0 * p0_im - 1.0};
}

std::pair<double, double> dqc1_trace_estimate(const Mat& u, std::uint64_t shots,
                                              std::uint64_t seed) {
    if (shots < 1) throw InputError("dqc1_trace_estimate: shots must be >= 1");
    auto [re, im] = dqc1_trace_estimate_exact(u);
    const double p0_re = 0.5 + 0.5 * re;
    const double p0_im = 0.5 + 0.5 * im;
    std::mt19937_64 rng(seed);
    std::binomial_distribution<std::uint64_t> bre(shots, p0_re);
    std::binomial_distribution<std::uint64_t> bim(shots, p0_im);
    const double f_re = static_cast<double>(bre(rng)) / static_cast<double>(shots);
    const double f_im = static_cast<double>(bim(rng)) / static_cast<double>(shots);
    return {2.0 * f_re - 1.0, 2.0 * f_im - 1.0};
}

DQC1Program build_trace_f_circuit(const LogLocalHamiltonian& h, const SpectralFunction& f,
                                  const PhaseEstimationBudget& budget, const Config& cfg) {
    budget.validate();
    if (f.f_max > 1.0 + 1e-9)
        throw InputError("build_trace_f_circuit: f must map into [-1, 1]");
    const Mat a_dense = assemble_dense(h, cfg);
    if (operator_norm(a_dense, cfg) > kPi - 0.1)
        throw SpectrumOutOfRange("build_trace_f_circuit: require ||A|| <= pi - 0.1; pre-scale A");
    DQC1Program prog;
    prog.n_sys = h.n;
    prog.n_anc = budget.a;
    if (budget.a > cfg.a_max(h.n))
        throw BudgetInfeasible("build_trace_f_circuit: ancilla count " +
                               std::to_string(budget.a) + " exceeds a_max = " +
                               std::to_string(cfg.a_max(h.n)));
    prog.budget = budget;
    prog.f = f;
    prog.plan = plan_trotter(h, 1.0, budget.delta_sim, cfg);
    prog.v = trotter_unitary(h, prog.plan, cfg);
    prog.zeta_readout = budget.eps / 2.0;
    // Hoeffding on the +/-1 readout indicator at accuracy zeta/2, fail prob 5%
    const double zeta_half = prog.zeta_readout / 2.0;
    prog.shot_count = static_cast<std::uint64_t>(
        std::ceil(2.0 * std::log(2.0 / 0.05) / (zeta_half * zeta_half)));
    return prog;
}

Mat DQC1Program::dense_unitary(const Config& cfg) const {
    const int total = n_sys + 1 + n_anc;
    if (total > cfg.n_dense_max + 2)
        throw DimensionTooLarge("dense_unitary: composite register too large");
    const Eigen::Index dsys = Eigen::Index(1) << n_sys;
    const Eigen::Index n_reg = Eigen::Index(1) << n_anc;
    const Eigen::Index dse = dsys * n_reg;

    // PE on system (x) estimate: (I (x) QFT^dag) . (sum_k V^k (x) |k><k|) . (I (x) H^a)
    Mat qft(n_reg, n_reg);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n_reg));
    for (Eigen::Index w = 0; w < n_reg; ++w)
        for (Eigen::Index k = 0; k < n_reg; ++k)
            qft(w, k) = inv_sqrt_n * std::exp(Cx{0.0, 2.0 * kPi * double(w) * double(k) / double(n_reg)});
    Mat h2(2, 2);
    h2 << 1, 1, 1, -1;
    h2 *= 1.0 / std::sqrt(2.0);
    Mat hada = Mat::Ones(1, 1);
    for (int i = 0; i < n_anc; ++i) hada = kron(hada, h2);

    Mat cv = Mat::Zero(dse, dse);
    Mat vk = Mat::Identity(dsys, dsys);
    for (Eigen::Index k = 0; k < n_reg; ++k) {
        for (Eigen::Index s = 0; s < dsys; ++s)
            for (Eigen::Index t = 0; t < dsys; ++t)
                cv(s * n_reg + k, t * n_reg + k) = vk(s, t);
        if (k + 1 < n_reg) vk = vk * v;
    }
    Mat pe_se = kron(Mat::Identity(dsys, dsys), qft.adjoint()) * cv *
                kron(Mat::Identity(dsys, dsys), hada);

    // lift to system (x) clean (x) estimate
    const Eigen::Index dim = dsys * 2 * n_reg;
    Mat pe = Mat::Zero(dim, dim);
    for (Eigen::Index s = 0; s < dsys; ++s)
        for (Eigen::Index k = 0; k < n_reg; ++k)
            for (Eigen::Index t = 0; t < dsys; ++t)
                for (Eigen::Index l = 0; l < n_reg; ++l) {
                    const Cx val = pe_se(s * n_reg + k, t * n_reg + l);
                    if (val == Cx{0.0, 0.0}) continue;
                    for (Eigen::Index b = 0; b < 2; ++b)
                        pe((s * 2 + b) * n_reg + k, (t * 2 + b) * n_reg + l) = val;
                }

    Vec rot(dim);
    for (Eigen::Index s = 0; s < dsys; ++s)
        for (Eigen::Index b = 0; b < 2; ++b)
            for (Eigen::Index k = 0; k < n_reg; ++k) {
                const double fk = clamp_unit(f(f.clamp(phase_unwrap(k, n_anc))));
                const double angle = std::acos(fk);
                rot[(s * 2 + b) * n_reg + k] = std::exp(Cx{0.0, b == 0 ? angle : -angle});
            }

    return pe.adjoint() * rot.asDiagonal() * pe;
}

Cx submatrix_trace_dense(const Mat& u_tilde, int n_sys, int a) {
    const Eigen::Index dsys = Eigen::Index(1) << n_sys;
    const Eigen::Index n_reg = Eigen::Index(1) << a;
    Cx acc{0.0, 0.0};
    for (Eigen::Index s = 0; s < dsys; ++s)
        for (Eigen::Index b = 0; b < 2; ++b)
            acc += u_tilde((s * 2 + b) * n_reg, (s * 2 + b) * n_reg);
    return acc;
}

double submatrix_trace_normalized(const Mat& v, const SpectralFunction& f, int a) {
    const std::uint64_t n_reg = std::uint64_t(1) << a;
    const RealVec theta = eigenphases(v);

    std::vector<double> fvals;
    const bool tabulate = n_reg <= (std::uint64_t(1) << 22);
    if (tabulate) {
        fvals.resize(n_reg);
        for (std::uint64_t k = 0; k < n_reg; ++k)
            fvals[k] = clamp_unit(f(f.clamp(phase_unwrap(k, a))));
    }

    double acc = 0.0;
    for (Eigen::Index j = 0; j < theta.size(); ++j) {
        PhaseKernel kernel(theta[j], n_reg);
        if (kernel.exact()) {
            const std::uint64_t k = kernel.exact_k();
            acc += tabulate ? fvals[k] : clamp_unit(f(f.clamp(phase_unwrap(k, a))));
            continue;
        }
        double sj = 0.0;
        for (std::uint64_t k = 0; k < n_reg; ++k) {
            const double fk = tabulate ? fvals[k] : clamp_unit(f(f.clamp(phase_unwrap(k, a))));
            sj += kernel(k) * fk;
        }
        acc += sj;
    }
    return acc / static_cast<double>(v.rows());
}

namespace {

// <0_est| (final estimate-register state) per system eigenvector:
// c0(j) = sum_k |gamma_{k|j}|^2 e^{i arccos f(phi(k))}. The readout statistics
// of the clean control qubit depend only on this overlap.
std::vector<Cx> clean_overlaps(const Mat& v, const SpectralFunction& f, int a) {
    const std::uint64_t n_reg = std::uint64_t(1) << a;
    const RealVec theta = eigenphases(v);
    std::vector<Cx> c0(theta.size());
    for (Eigen::Index j = 0; j < theta.size(); ++j) {
        PhaseKernel kernel(theta[j], n_reg);
        Cx acc{0.0, 0.0};
        if (kernel.exact()) {
            const double fk = clamp_unit(f(f.clamp(phase_unwrap(kernel.exact_k(), a))));
            acc = std::exp(Cx{0.0, std::acos(fk)});
        } else {
            for (std::uint64_t k = 0; k < n_reg; ++k) {
                const double fk = clamp_unit(f(f.clamp(phase_unwrap(k, a))));
                acc += kernel(k) * std::exp(Cx{0.0, std::acos(fk)});
            }
        }
        c0[j] = acc;
    }
    return c0;
}

}  // namespace

EstimateReport run_trace_f(const LogLocalHamiltonian& h, const SpectralFunction& f,
                           double eps, ReadoutMode mode, std::uint64_t seed,
                           const Config& cfg) {
    if (eps < cfg.eps_min)
        throw InputError("run_trace_f: eps below configured minimum");
    const double t0 = now_ms();
    const PhaseEstimationBudget budget = PhaseEstimationBudget::from_eps(eps);
    DQC1Program prog = build_trace_f_circuit(h, f, budget, cfg);

    EstimateReport rep;
    rep.estimator = "dqc1";
    rep.mode = to_string(mode);
    rep.seed = seed;
    rep.claimed_bound = eps * (f.lipschitz + 1.0) / 2.0;

    if (mode == ReadoutMode::ExactSubmatrix) {
        rep.value = submatrix_trace_normalized(prog.v, f, prog.n_anc);
    } else {
        const std::vector<Cx> c0 = clean_overlaps(prog.v, f, prog.n_anc);
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const std::uint64_t dsys = std::uint64_t(1) << h.n;
        std::int64_t acc = 0;
        for (std::uint64_t s = 0; s < prog.shot_count; ++s) {
            const std::uint64_t j = rng() % dsys;
            const bool b = (rng() & 1u) != 0;
            const Cx c = b ? std::conj(c0[j]) : c0[j];
            const double p_plus = std::norm(Cx{1.0, 0.0} + c) / 4.0;
            const double p_minus = std::norm(Cx{1.0, 0.0} - c) / 4.0;
            const double u = unif(rng);
            if (u < p_plus)
                acc += 1;  // control 0, estimate register back at |0>
            else if (u < p_plus + p_minus)
                acc -= 1;  // control 1, estimate register back at |0>
        }
        rep.shots = prog.shot_count;
        rep.value = static_cast<double>(acc) / static_cast<double>(prog.shot_count);
    }

    rep.parameters = {{"eps", eps},
                      {"eta", budget.eta},
                      {"varphi", budget.varphi},
                      {"a", static_cast<double>(budget.a)},
                      {"delta_sim", budget.delta_sim},
                      {"r", static_cast<double>(prog.plan.steps)},
                      {"C", prog.plan.constant_C},
                      {"K", f.lipschitz},
                      {"f_max", f.f_max},
                      {"bound_exact_part", eps * (2.0 * f.lipschitz + 1.0) / 4.0}};
    rep.wallclock_ms = now_ms() - t0;
    return rep;
}

EstimateReport estimate_schatten_trace(const LogLocalHamiltonian& h, int p, double eps,
                                       ReadoutMode mode, PowerKind kind,
                                       std::uint64_t seed, const Config& cfg) {
    if (p < 1) throw InputError("estimate_schatten_trace: p must be >= 1");
    if (eps < cfg.eps_min)
        throw InputError("estimate_schatten_trace: eps below configured minimum");
    const double b = operator_norm(assemble_dense(h, cfg), cfg);
    if (b < 1e-14) {
        EstimateReport rep;
        rep.estimator = "dqc1";
        rep.mode = to_string(mode);
        rep.value = 0.0;
        rep.claimed_bound = 0.0;
        rep.parameters = {{"p", static_cast<double>(p)}, {"eps", eps}, {"norm", 0.0}};
        return rep;
    }
    const SpectralFunction fbar = kind == PowerKind::AbsPower
                                      ? make_abs_pow_normalized(p, b)
                                      : make_pow_normalized(p, b);
    const double eps_inner = eps / (static_cast<double>(p) / b + 1.0);
    Config inner_cfg = cfg;
    inner_cfg.eps_min = std::min(cfg.eps_min, eps_inner);
    EstimateReport rep = run_trace_f(h, fbar, eps_inner, mode, seed, inner_cfg);
    const double bp = std::pow(b, p);
    rep.value *= bp;
    rep.claimed_bound *= bp;  // = eps * ||A||^p / 2
    rep.parameters["p"] = static_cast<double>(p);
    rep.parameters["norm"] = b;
    rep.parameters["eps_outer"] = eps;
    return rep;
}

AncillaAudit audit_clean_qubits(const DQC1Program& program, const Config& cfg) {
    AncillaAudit audit;
    audit.a = program.n_anc;
    audit.formula_bound =
        PhaseEstimationBudget::ancilla_count(program.budget.eta, program.budget.varphi);
    audit.a_max = cfg.a_max(program.n_sys);
    audit.pass = audit.a <= audit.a_max && audit.a == audit.formula_bound;
    return audit;
}

}  // namespace schatten
