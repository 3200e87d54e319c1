#pragma once

#include <utility>

#include "schatten/exact_oracle.hpp"
#include "schatten/report.hpp"
#include "schatten/trotter.hpp"

namespace schatten {

// Parameter budget for the phase-estimation stage of the trace-f circuit.
// eta: eigenphase accuracy, varphi: per-eigenvector failure probability,
// a: ancilla count, delta_sim: Hamiltonian-simulation accuracy.
struct PhaseEstimationBudget {
    double eps = 0.1;
    double eta = 0.0;
    double varphi = 0.0;
    double delta_sim = 0.0;
    int a = 0;

    // eta < eps/(8 pi), varphi < eps/8, delta_sim <= eps/(2 pi),
    // a = ceil(log2(1/eta)) + ceil(log2(2 + 1/(2 varphi))).
    static PhaseEstimationBudget from_eps(double eps);
    static int ancilla_count(double eta, double varphi);
    void validate() const;
};

// One-clean-qubit program: phase estimation on the Trotterized e^{iA},
// controlled phase rotations through arccos(f), then the inverse PE.
// The composite unitary acts on system (n_sys) + clean rotation target (1)
// + estimate register (n_anc) qubits, in that significance order.
struct DQC1Program {
    int n_sys = 0;
    int n_anc = 0;
    Mat v;  // simulation unitary on the system register
    TrotterPlan plan;
    PhaseEstimationBudget budget;
    SpectralFunction f;
    double zeta_readout = 0.0;
    std::uint64_t shot_count = 0;

    // Materializes the composite unitary densely; only feasible for small
    // ancilla counts.
    Mat dense_unitary(const Config& cfg = {}) const;
};

// phi(x): estimate-register value -> phase in [-pi, pi] (x <= 2^(a-1) maps to
// the nonnegative branch).
double phase_unwrap(std::uint64_t x, int a);

// Baseline DQC1 normalized-trace estimation of a unitary. The exact variant
// evaluates the measurement probabilities analytically; the sampled variant
// draws Bernoulli shots from them.
std::pair<double, double> dqc1_trace_estimate_exact(const Mat& u);
std::pair<double, double> dqc1_trace_estimate(const Mat& u, std::uint64_t shots,
                                              std::uint64_t seed);

enum class ReadoutMode { ExactSubmatrix, Sampled };

std::string to_string(ReadoutMode m);

DQC1Program build_trace_f_circuit(const LogLocalHamiltonian& h, const SpectralFunction& f,
                                  const PhaseEstimationBudget& budget,
                                  const Config& cfg = {});

// Tr(U')/2^(n+1) for the composite circuit built on an arbitrary simulation
// unitary; equals the estimate of sum_j f(lambda_j)/2^n. Computed spectrally
// from the eigenphases of v, so it scales to large ancilla registers.
double submatrix_trace_normalized(const Mat& v, const SpectralFunction& f, int a);

// Same quantity from the dense composite unitary, by summing the diagonal
// over the estimate-register-zero block. Cross-checks the spectral path.
Cx submatrix_trace_dense(const Mat& u_tilde, int n_sys, int a);

EstimateReport run_trace_f(const LogLocalHamiltonian& h, const SpectralFunction& f,
                           double eps, ReadoutMode mode, std::uint64_t seed = 0,
                           const Config& cfg = {});

enum class PowerKind { AbsPower, Power };

// Tr(|A|^p)/2^n (or Tr(A^p)/2^n for PowerKind::Power) to accuracy
// eps * ||A||^p, via the normalized-function rescaling.
EstimateReport estimate_schatten_trace(const LogLocalHamiltonian& h, int p, double eps,
                                       ReadoutMode mode = ReadoutMode::ExactSubmatrix,
                                       PowerKind kind = PowerKind::AbsPower,
                                       std::uint64_t seed = 0, const Config& cfg = {});

struct AncillaAudit {
    int a = 0;
    int formula_bound = 0;
    int a_max = 0;
    bool pass = false;
};

AncillaAudit audit_clean_qubits(const DQC1Program& program, const Config& cfg = {});

}  // namespace schatten
