#include <doctest.h>

#include "schatten/dqc1.hpp"
#include "test_util.hpp"

using namespace schatten;
using namespace testutil;

TEST_SUITE("dqc1") {

TEST_CASE("phase_unwrap follows the piecewise definition") {
    CHECK(phase_unwrap(0, 3) == doctest::Approx(0.0));
    CHECK(phase_unwrap(1, 3) == doctest::Approx(kPi / 4.0));
    CHECK(phase_unwrap(4, 3) == doctest::Approx(kPi));       // x = 2^(a-1) -> +pi
    CHECK(phase_unwrap(5, 3) == doctest::Approx(-3.0 * kPi / 4.0));
    CHECK(phase_unwrap(7, 3) == doctest::Approx(-kPi / 4.0));
}

TEST_CASE("baseline trace estimate, exact mode") {
    auto [re_i, im_i] = dqc1_trace_estimate_exact(Mat::Identity(4, 4));
    CHECK(re_i == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(im_i == doctest::Approx(0.0).epsilon(1e-12));
    auto [re_z, im_z] = dqc1_trace_estimate_exact(pauli_z().cast<Cx>());
    CHECK(re_z == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(im_z == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("baseline trace estimate matches Tr(U)/2^n to 1e-12 on random unitaries") {
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 5; ++trial) {
        Mat u = random_unitary(8, rng);
        auto [re, im] = dqc1_trace_estimate_exact(u);
        const Cx tr = u.trace() / 8.0;
        CHECK(re == doctest::Approx(tr.real()).epsilon(0).scale(1.0).epsilon(1e-12));
        CHECK(im == doctest::Approx(tr.imag()).epsilon(1e-12));
    }
    CHECK_THROWS_AS(dqc1_trace_estimate_exact(2.0 * Mat::Identity(2, 2)), InputError);
}

TEST_CASE("sampled baseline concentrates at the 1/sqrt(shots) rate") {
    std::mt19937_64 rng(109);
    Mat u = random_unitary(8, rng);
    const Cx tr = u.trace() / 8.0;
    const std::uint64_t shots = 100000;
    int fails = 0;
    for (int seed = 0; seed < 100; ++seed) {
        auto [re, im] = dqc1_trace_estimate(u, shots, seed);
        // std of 2*freq-1 is <= 1/sqrt(shots); 3 sigma test per component
        const double tol = 3.0 / std::sqrt(static_cast<double>(shots));
        if (std::abs(re - tr.real()) > tol || std::abs(im - tr.imag()) > tol) ++fails;
    }
    CHECK(fails <= 5);
}

TEST_CASE("ancilla formula (Eq. 3 style count)") {
    CHECK(PhaseEstimationBudget::ancilla_count(1.0 / 8.0, 1.0 / 8.0) == 6);
    CHECK(PhaseEstimationBudget::ancilla_count(1.0 / 2.0, 1.0 / 2.0) == 3);
}

TEST_CASE("budget construction and monotonicity in 1/eps") {
    PhaseEstimationBudget b = PhaseEstimationBudget::from_eps(0.1);
    CHECK(b.eta < 0.1 / (8.0 * kPi));
    CHECK(b.varphi < 0.1 / 8.0);
    CHECK(b.delta_sim == doctest::Approx(0.1 / (2.0 * kPi)));
    CHECK(b.a == PhaseEstimationBudget::ancilla_count(b.eta, b.varphi));
    PhaseEstimationBudget half = PhaseEstimationBudget::from_eps(0.05);
    CHECK(half.a >= b.a);
    CHECK_THROWS_AS(PhaseEstimationBudget::from_eps(0.0), InputError);

    PhaseEstimationBudget bad = b;
    bad.eta = 1.0;
    CHECK_THROWS_AS(bad.validate(), BudgetInfeasible);
    bad = b;
    bad.a += 1;
    CHECK_THROWS_AS(bad.validate(), BudgetInfeasible);
}

TEST_CASE("build_trace_f_circuit preconditions") {
    LogLocalHamiltonian h;
    h.n = 1;
    h.terms.push_back({{0}, kPi * pauli_z()});  // norm pi > pi - 0.1
    PhaseEstimationBudget budget = PhaseEstimationBudget::from_eps(0.2);
    SpectralFunction f = make_pow_normalized(1, kPi);
    CHECK_THROWS_AS(build_trace_f_circuit(h, f, budget), SpectrumOutOfRange);

    h.terms[0].matrix = 0.5 * pauli_z();
    SpectralFunction big = make_pow(2, 2.0);  // f_max = 4 > 1
    CHECK_THROWS_AS(build_trace_f_circuit(h, big, budget), InputError);

    Config tight;
    tight.anc_c = 0.0;
    tight.anc_const = 3;  // a_max = 3 < budget.a
    CHECK_THROWS_AS(build_trace_f_circuit(h, f, budget, tight), BudgetInfeasible);

    DQC1Program prog = build_trace_f_circuit(h, f, budget);
    CHECK(prog.n_anc == budget.a);
    CHECK(prog.zeta_readout == doctest::Approx(0.1));
    AncillaAudit audit = audit_clean_qubits(prog);
    CHECK(audit.pass);
    CHECK(audit.a == audit.formula_bound);
}

TEST_CASE("exact-PE fixture: clean-qubit eigenvalue pairing per eigenvector") {
    // A = (pi/2) Z: eigenphases +/- 0.25, exactly representable with a = 2
    DQC1Program prog;
    prog.n_sys = 1;
    prog.n_anc = 2;
    prog.v = exact_exponential(Mat(0.5 * kPi * pauli_z()), 1.0);
    prog.f = {"lin", [](double x) { return x / kPi; }, kPi, 1.0 / kPi, 1.0};
    Mat u = prog.dense_unitary();
    CHECK(unitary_residual(u) <= 1e-9);

    // basis order: system (x) clean (x) estimate; est register value 0
    auto block = [&](int s) {
        Mat b(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) b(i, j) = u((s * 2 + i) * 4, (s * 2 + j) * 4);
        return b;
    };
    for (int s = 0; s < 2; ++s) {
        const double lambda = s == 0 ? kPi / 2.0 : -kPi / 2.0;
        const double angle = std::acos(lambda / kPi);
        Eigen::ComplexEigenSolver<Mat> es(block(s));
        REQUIRE(es.info() == Eigen::Success);
        std::vector<double> args = {std::arg(es.eigenvalues()[0]),
                                    std::arg(es.eigenvalues()[1])};
        std::sort(args.begin(), args.end());
        CHECK(args[0] == doctest::Approx(-angle).epsilon(1e-9));
        CHECK(args[1] == doctest::Approx(angle).epsilon(1e-9));
    }
}

TEST_CASE("constant f: submatrix trace hits 2*2^n (f=1) and 0 (f=0)") {
    std::mt19937_64 rng(113);
    DQC1Program prog;
    prog.n_sys = 2;
    prog.n_anc = 3;
    prog.v = random_unitary(4, rng);
    prog.f = {"one", [](double) { return 1.0; }, kPi, 0.0, 1.0};
    Cx tr1 = submatrix_trace_dense(prog.dense_unitary(), 2, 3);
    CHECK(tr1.real() == doctest::Approx(2.0 * 4.0).epsilon(1e-9));
    CHECK(std::abs(tr1.imag()) <= 1e-9);
    prog.f = {"zero", [](double) { return 0.0; }, kPi, 0.0, 1.0};
    Cx tr0 = submatrix_trace_dense(prog.dense_unitary(), 2, 3);
    CHECK(std::abs(tr0) <= 1e-9);
}

TEST_CASE("spectral submatrix trace matches the dense composite circuit") {
    std::mt19937_64 rng(127);
    for (int trial = 0; trial < 4; ++trial) {
        DQC1Program prog;
        prog.n_sys = 2;
        prog.n_anc = 3;
        prog.v = random_unitary(4, rng);
        prog.f = make_abs_pow_normalized(2, kPi);
        const Cx dense = submatrix_trace_dense(prog.dense_unitary(), 2, 3);
        const double spectral = submatrix_trace_normalized(prog.v, prog.f, 3);
        // Tr(U') = 2 sum_j sum_k |gamma|^2 f; normalized path divides by 2*2^n
        CHECK(dense.real() / (2.0 * 4.0) == doctest::Approx(spectral).epsilon(1e-8));
        CHECK(std::abs(dense.imag()) <= 1e-9);  // sine terms cancel
    }
}

TEST_CASE("Eq. (1) ablation: Trotterized vs exact simulation unitary") {
    std::mt19937_64 rng(131);
    for (double eps : {0.2, 0.1}) {
        LogLocalHamiltonian h = random_log_local(3, 3, rng);
        PhaseEstimationBudget budget = PhaseEstimationBudget::from_eps(eps);
        SpectralFunction f = make_abs_pow_normalized(2, kPi);
        DQC1Program prog = build_trace_f_circuit(h, f, budget);
        Mat v_exact = exact_exponential(h, 1.0);
        const double with_trotter = submatrix_trace_normalized(prog.v, f, prog.n_anc);
        const double with_exact = submatrix_trace_normalized(v_exact, f, prog.n_anc);
        // simulation error moves each eigenphase by <= pi delta / 2
        CHECK(std::abs(with_trotter - with_exact) <=
              f.lipschitz * kPi * budget.delta_sim / 2.0 + 1e-9);
    }
}

TEST_CASE("Eq. (5) ablation: PE term with perfect simulation") {
    std::mt19937_64 rng(137);
    for (double eps : {0.2, 0.1}) {
        LogLocalHamiltonian h = random_log_local(3, 2, rng);
        PhaseEstimationBudget budget = PhaseEstimationBudget::from_eps(eps);
        SpectralFunction f = make_abs_pow_normalized(2, kPi);
        Mat v_exact = exact_exponential(h, 1.0);
        const double pe_value = submatrix_trace_normalized(v_exact, f, budget.a);
        const double direct = trace_f(assemble_dense(h), f);
        CHECK(std::abs(pe_value - direct) <= eps * (f.lipschitz + 1.0) / 2.0);
    }
}

TEST_CASE("run_trace_f exact mode: Z Hamiltonian against the oracle") {
    LogLocalHamiltonian h;
    h.n = 1;
    h.terms.push_back({{0}, pauli_z()});
    for (int p : {1, 2, 3}) {
        SpectralFunction f = make_abs_pow_normalized(p, kPi);
        EstimateReport rep = run_trace_f(h, f, 0.1, ReadoutMode::ExactSubmatrix);
        const double truth = trace_f(assemble_dense(h), f);
        CHECK(std::abs(rep.value - truth) <= rep.claimed_bound);
        CHECK(rep.claimed_bound == doctest::Approx(0.1 * (f.lipschitz + 1.0) / 2.0));
    }
}

TEST_CASE("run_trace_f: constant function recovered within bound") {
    LogLocalHamiltonian h;
    h.n = 2;
    h.terms.push_back({{0}, 1e-13 * pauli_z()});  // effectively zero Hamiltonian
    SpectralFunction f = {"const", [](double) { return 0.7; }, kPi, 0.0, 1.0};
    EstimateReport rep = run_trace_f(h, f, 0.1, ReadoutMode::ExactSubmatrix);
    CHECK(std::abs(rep.value - 0.7) <= rep.claimed_bound);
    CHECK_THROWS_AS(run_trace_f(h, f, 1e-6, ReadoutMode::ExactSubmatrix), InputError);
}

TEST_CASE("run_trace_f exact mode meets the bound on random 4-qubit fixtures") {
    std::mt19937_64 rng(139);
    for (double eps : {0.2, 0.1, 0.05}) {
        LogLocalHamiltonian h = random_log_local(4, 3, rng);
        SpectralFunction f = make_pow_normalized(2, kPi);
        EstimateReport rep = run_trace_f(h, f, eps, ReadoutMode::ExactSubmatrix);
        const double truth = trace_f(assemble_dense(h), f);
        CHECK(std::abs(rep.value - truth) <= eps * (f.lipschitz + 1.0) / 2.0);
        CHECK(rep.parameters.at("a") <= Config{}.a_max(4));
    }
}

TEST_CASE("run_trace_f sampled mode stays within the claimed bound") {
    std::mt19937_64 rng(149);
    LogLocalHamiltonian h = random_log_local(2, 2, rng);
    SpectralFunction f = make_abs_pow_normalized(2, kPi);
    const double truth = trace_f(assemble_dense(h), f);
    int fails = 0;
    for (int seed = 0; seed < 10; ++seed) {
        EstimateReport rep = run_trace_f(h, f, 0.2, ReadoutMode::Sampled, seed);
        CHECK(rep.shots > 0);
        if (std::abs(rep.value - truth) > rep.claimed_bound) ++fails;
    }
    CHECK(fails <= 1);
}

TEST_CASE("estimate_schatten_trace: {0.5 Z}, p=2") {
    LogLocalHamiltonian h;
    h.n = 1;
    h.terms.push_back({{0}, 0.5 * pauli_z()});
    EstimateReport rep = estimate_schatten_trace(h, 2, 0.1);
    CHECK(std::abs(rep.value - 0.25) <= 0.1 * 0.25);
    CHECK(rep.claimed_bound <= 0.1 * 0.25 / 2.0 + 1e-12);
}

TEST_CASE("estimate_schatten_trace: p=1 single-edge graph energy") {
    LogLocalHamiltonian h;
    h.n = 1;
    h.terms.push_back({{0}, pauli_x()});
    EstimateReport rep = estimate_schatten_trace(h, 1, 0.1);
    CHECK(std::abs(rep.value - 1.0) <= 0.1);
}

TEST_CASE("estimate_schatten_trace: odd power, signed vs absolute differ") {
    std::mt19937_64 rng(151);
    LogLocalHamiltonian h = random_log_local(4, 3, rng);
    SpectrumReport s = spectrum(assemble_dense(h));
    double t_abs = 0.0, t_pow = 0.0;
    for (Eigen::Index j = 0; j < s.eigenvalues.size(); ++j) {
        t_abs += std::pow(std::abs(s.eigenvalues[j]), 3);
        t_pow += std::pow(s.eigenvalues[j], 3);
    }
    t_abs /= 16.0;
    t_pow /= 16.0;
    REQUIRE(std::abs(t_abs - t_pow) > 0.05);  // asymmetric spectrum
    EstimateReport abs_rep =
        estimate_schatten_trace(h, 3, 0.1, ReadoutMode::ExactSubmatrix, PowerKind::AbsPower);
    EstimateReport pow_rep =
        estimate_schatten_trace(h, 3, 0.1, ReadoutMode::ExactSubmatrix, PowerKind::Power);
    CHECK(std::abs(abs_rep.value - t_abs) <= abs_rep.claimed_bound);
    CHECK(std::abs(pow_rep.value - t_pow) <= pow_rep.claimed_bound);
    CHECK(std::abs(abs_rep.value - pow_rep.value) > 0.05 / 2.0);
}

TEST_CASE("estimate_schatten_trace handles the zero Hamiltonian") {
    LogLocalHamiltonian h;
    h.n = 1;
    h.terms.push_back({{0}, Mat::Zero(2, 2)});
    EstimateReport rep = estimate_schatten_trace(h, 2, 0.1);
    CHECK(rep.value == 0.0);
    CHECK_THROWS_AS(estimate_schatten_trace(h, 0, 0.1), InputError);
}

}  // TEST_SUITE
