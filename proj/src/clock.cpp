#include "schatten/clock.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "schatten/exact_oracle.hpp"
#include "schatten/io.hpp"

namespace schatten {

bool GateSequence::size_is_power_of_two() const {
    const int m = size();
    return m > 0 && (m & (m - 1)) == 0;
}

void GateSequence::validate(const Config& cfg) const {
    if (n < 1) throw InputError("GateSequence: n must be >= 1");
    if (gates.empty()) throw InputError("GateSequence: no gates");
    for (const auto& g : gates) {
        std::set<int> seen(g.qubits.begin(), g.qubits.end());
        if (seen.size() != g.qubits.size() || g.qubits.empty())
            throw InputError("GateSequence: bad qubit list");
        if (*seen.begin() < 0 || *seen.rbegin() >= n)
            throw InputError("GateSequence: qubit index out of range");
        const Eigen::Index dim = Eigen::Index(1) << g.qubits.size();
        if (g.matrix.rows() != dim || g.matrix.cols() != dim)
            throw InputError("GateSequence: gate dimension mismatch");
        if (unitary_residual(g.matrix) > cfg.tol_unitary)
            throw InputError("GateSequence: gate block is not unitary");
    }
}

GateSequence GateSequence::padded_to_power_of_two() const {
    GateSequence out = *this;
    int target = 1;
    while (target < size()) target *= 2;
    while (out.size() < target)
        out.gates.push_back(Gate{{0}, Mat::Identity(2, 2)});
    return out;
}

namespace {

Mat embed_gate(const Gate& g, int n) {
    LocalTerm t;
    t.qubits = g.qubits;
    t.matrix = g.matrix;
    return embed_term(t, n);
}

int log2_exact(int m) {
    int k = 0;
    while ((1 << k) < m) ++k;
    return k;
}

}  // namespace

Mat GateSequence::circuit_unitary(const Config& cfg) const {
    validate(cfg);
    const Eigen::Index dim = Eigen::Index(1) << n;
    Mat u = Mat::Identity(dim, dim);
    for (const auto& g : gates) u = embed_gate(g, n) * u;  // U_{M-1} ... U_0
    return u;
}

Mat build_clock_unitary(const GateSequence& seq_in, const Config& cfg) {
    GateSequence seq = seq_in.padded_to_power_of_two();
    seq.validate(cfg);
    const int m = seq.size();
    const int clock_qubits = log2_exact(m);
    if (seq.n + clock_qubits > cfg.n_dense_max)
        throw DimensionTooLarge("build_clock_unitary: clock register exceeds dense scale");
    const Eigen::Index dsys = Eigen::Index(1) << seq.n;
    const Eigen::Index dim = static_cast<Eigen::Index>(m) * dsys;
    Mat w = Mat::Zero(dim, dim);
    for (int l = 0; l < m; ++l) {
        const int next = (l + 1) % m;
        w.block(static_cast<Eigen::Index>(next) * dsys, static_cast<Eigen::Index>(l) * dsys,
                dsys, dsys) = embed_gate(seq.gates[l], seq.n);
    }
    return w;
}

ClockHamiltonian clock_hamiltonian(const GateSequence& seq_in, const Config& cfg) {
    GateSequence seq = seq_in.padded_to_power_of_two();
    Mat w = build_clock_unitary(seq, cfg);
    ClockHamiltonian ch;
    ch.base = 0.5 * (w + w.adjoint());
    ch.m_gates = seq.size();
    ch.n = seq.n;
    ch.clock_qubits = log2_exact(seq.size());
    return ch;
}

// (W + W^dag)^M expands into words that all reduce to powers of W (W is
// unitary). Partial shifts W^k, k not a multiple of M, are traceless, but the
// central binomial term (equal counts of W and W^dag) reduces to the identity
// and contributes binom(M, M/2) Tr(I) for even M. Subtracting it leaves
// 2 Re Tr(W^M) / 2^M = 2 M Re Tr(U) / 2^M.
double central_binomial_term(int m) {
    if (m % 2 != 0) return 0.0;
    double c = 1.0;
    for (int i = 1; i <= m / 2; ++i) c *= static_cast<double>(m / 2 + i) / i;
    return c;
}

HardnessIdentity hardness_identity_check(const GateSequence& seq_in, const Config& cfg) {
    GateSequence seq = seq_in.padded_to_power_of_two();
    const int m = seq.size();
    ClockHamiltonian ch = clock_hamiltonian(seq, cfg);
    SpectrumReport spec = spectrum(ch.base, cfg);
    double tr_am = 0.0;
    for (Eigen::Index j = 0; j < spec.eigenvalues.size(); ++j)
        tr_am += std::pow(spec.eigenvalues[j], m);
    const double dim = std::ldexp(1.0, ch.n + ch.clock_qubits);
    HardnessIdentity id;
    id.lhs = 0.5 * (std::ldexp(tr_am / dim, m) - central_binomial_term(m));
    id.rhs = seq.circuit_unitary(cfg).trace().real() / std::ldexp(1.0, seq.n);
    id.residual = std::abs(id.lhs - id.rhs);
    return id;
}

EstimateReport reduction_pipeline(const GateSequence& seq_in, double eps, ReadoutMode mode,
                                  std::uint64_t seed, const Config& cfg) {
    GateSequence seq = seq_in.padded_to_power_of_two();
    const int m = seq.size();
    ClockHamiltonian ch = clock_hamiltonian(seq, cfg);
    const int n_tot = ch.n + ch.clock_qubits;

    LogLocalHamiltonian h;
    h.n = n_tot;
    h.terms.push_back(LocalTerm{[&] {
                                    std::vector<int> q(n_tot);
                                    for (int i = 0; i < n_tot; ++i) q[i] = i;
                                    return q;
                                }(),
                                ch.base});
    Config clock_cfg = cfg;
    clock_cfg.locality_c = std::max(cfg.locality_c, 4.0);  // whole-register term

    const double norm = operator_norm(ch.base, cfg);
    // Rescale the trace-power accuracy so that multiplying back by 2^M leaves
    // at most eps of error: eps_q * ||A||^M * 2^M / 2 <= eps.
    const double eps_q = 2.0 * eps / std::pow(2.0 * std::max(norm, 1e-12), m);
    Config inner_cfg = clock_cfg;
    inner_cfg.eps_min = std::min(inner_cfg.eps_min, eps_q);

    EstimateReport rep =
        estimate_schatten_trace(h, m, eps_q, mode, PowerKind::Power, seed, inner_cfg);
    rep.value = 0.5 * (std::ldexp(rep.value, m) - central_binomial_term(m));
    rep.claimed_bound = std::ldexp(rep.claimed_bound, m - 1);
    rep.parameters["M"] = static_cast<double>(m);
    rep.parameters["eps_target"] = eps;
    rep.set_truth(seq.circuit_unitary(cfg).trace().real() / std::ldexp(1.0, seq.n));
    return rep;
}

using nlohmann::json;

json gate_sequence_to_json(const GateSequence& seq) {
    json gates = json::array();
    for (const auto& g : seq.gates)
        gates.push_back({{"qubits", g.qubits}, {"matrix", matrix_to_json(g.matrix)}});
    return json{{"n", seq.n}, {"gates", std::move(gates)}};
}

GateSequence gate_sequence_from_json(const json& j, const Config& cfg) {
    GateSequence seq;
    try {
        seq.n = j.at("n").get<int>();
        for (const auto& gj : j.at("gates")) {
            Gate g;
            g.qubits = gj.at("qubits").get<std::vector<int>>();
            g.matrix = matrix_from_json(gj.at("matrix"));
            seq.gates.push_back(std::move(g));
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("gate sequence json: ") + e.what());
    }
    seq.validate(cfg);
    return seq;
}

GateSequence load_gate_sequence(const std::string& path, const Config& cfg) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
    return gate_sequence_from_json(j, cfg);
}

}  // namespace schatten
