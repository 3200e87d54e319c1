#pragma once

#include "schatten/dqc1.hpp"
#include "schatten/hamiltonian.hpp"
#include "schatten/report.hpp"

namespace schatten {

struct Gate {
    std::vector<int> qubits;
    Mat matrix;  // unitary block on the listed qubits
};

// Circuit U = U_{M-1} ... U_1 U_0 on n qubits. The clock construction needs M
// to be a power of two; pad_to_power_of_two appends identity gates.
struct GateSequence {
    int n = 0;
    std::vector<Gate> gates;

    int size() const { return static_cast<int>(gates.size()); }
    bool size_is_power_of_two() const;
    void validate(const Config& cfg = {}) const;
    GateSequence padded_to_power_of_two() const;
    // U_{M-1} ... U_0 as a dense 2^n unitary
    Mat circuit_unitary(const Config& cfg = {}) const;
};

struct ClockHamiltonian {
    Mat base;  // Hermitian, on n + log2(M) qubits, ||base|| <= 1
    int m_gates = 0;
    int n = 0;
    int clock_qubits = 0;
};

// W = sum_l |l+1 mod M><l| (x) U_l on clock (x) system registers.
Mat build_clock_unitary(const GateSequence& seq, const Config& cfg = {});

// A = (W + W^dag)/2
ClockHamiltonian clock_hamiltonian(const GateSequence& seq, const Config& cfg = {});

struct HardnessIdentity {
    // (2^M Tr(A^M) / 2^(n + log2 M) - binom(M, M/2)) / 2; the central binomial
    // subtraction removes the identity-word contribution of (W + W^dag)^M,
    // which is nonzero for even M.
    double lhs = 0.0;
    double rhs = 0.0;  // Re Tr(U_{M-1}...U_0) / 2^n
    double residual = 0.0;
};

HardnessIdentity hardness_identity_check(const GateSequence& seq, const Config& cfg = {});

// End-to-end: clock Hamiltonian -> DQC1 trace-power estimate -> rescale back
// to Re Tr(U)/2^n.
EstimateReport reduction_pipeline(const GateSequence& seq, double eps,
                                  ReadoutMode mode = ReadoutMode::ExactSubmatrix,
                                  std::uint64_t seed = 0, const Config& cfg = {});

// Gate sequence JSON: {"n": int, "gates": [{"qubits": [int], "matrix": ...}]}
nlohmann::json gate_sequence_to_json(const GateSequence& seq);
GateSequence gate_sequence_from_json(const nlohmann::json& j, const Config& cfg = {});
GateSequence load_gate_sequence(const std::string& path, const Config& cfg = {});

}  // namespace schatten
