#include <doctest.h>

#include "schatten/clock.hpp"
#include "schatten/exact_oracle.hpp"
#include "test_util.hpp"

using namespace schatten;
using namespace testutil;

namespace {

Mat rot2(double angle) {
    Mat m(2, 2);
    m << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return m;
}

GateSequence random_real_circuit(int n, int m_gates, std::mt19937_64& rng) {
    GateSequence seq;
    seq.n = n;
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    for (int l = 0; l < m_gates; ++l) {
        Gate g;
        g.qubits = {static_cast<int>(rng() % n)};
        g.matrix = rot2(ang(rng));
        if (rng() % 3 == 0) g.matrix = g.matrix * pauli_z().real().cast<Cx>();
        seq.gates.push_back(std::move(g));
    }
    return seq;
}

}  // namespace

TEST_SUITE("clock") {

TEST_CASE("padding to a power of two with identity gates") {
    GateSequence seq;
    seq.n = 1;
    for (int i = 0; i < 3; ++i) seq.gates.push_back({{0}, Mat::Identity(2, 2)});
    CHECK_FALSE(seq.size_is_power_of_two());
    GateSequence padded = seq.padded_to_power_of_two();
    CHECK(padded.size() == 4);
    CHECK(padded.size_is_power_of_two());
    CHECK((padded.circuit_unitary() - seq.circuit_unitary()).cwiseAbs().maxCoeff() <=
          1e-12);
}

TEST_CASE("W for identity gates: W^2 blocks are the identity") {
    GateSequence seq;
    seq.n = 1;
    seq.gates.push_back({{0}, Mat::Identity(2, 2)});
    seq.gates.push_back({{0}, Mat::Identity(2, 2)});
    Mat w = build_clock_unitary(seq);
    CHECK(is_unitary(w));
    Mat w2 = w * w;
    CHECK((w2 - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("W for (X, X): W^2 blocks equal X X = I") {
    GateSequence seq;
    seq.n = 1;
    seq.gates.push_back({{0}, pauli_x()});
    seq.gates.push_back({{0}, pauli_x()});
    Mat w2 = build_clock_unitary(seq) * build_clock_unitary(seq);
    CHECK((w2 - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("Tr(W^M) = M Tr(U) on random single-qubit circuits") {
    std::mt19937_64 rng(157);
    for (int trial = 0; trial < 5; ++trial) {
        GateSequence seq;
        seq.n = 1;
        for (int l = 0; l < 4; ++l)
            seq.gates.push_back({{0}, random_unitary(2, rng)});
        Mat w = build_clock_unitary(seq);
        Mat wm = mat_power(w, 4);
        const Cx tr_u = seq.circuit_unitary().trace();
        CHECK(std::abs(wm.trace() - 4.0 * tr_u) <= 1e-9);
    }
}

TEST_CASE("clock Hamiltonian of the identity circuit has circulant spectrum") {
    GateSequence seq;
    seq.n = 1;
    for (int i = 0; i < 4; ++i) seq.gates.push_back({{0}, Mat::Identity(2, 2)});
    ClockHamiltonian ch = clock_hamiltonian(seq);
    CHECK(ch.clock_qubits == 2);
    SpectrumReport s = spectrum(ch.base);
    // eigenvalues cos(2 pi l / M), each with system multiplicity 2
    std::vector<double> expect;
    for (int l = 0; l < 4; ++l)
        for (int rep = 0; rep < 2; ++rep) expect.push_back(std::cos(2.0 * kPi * l / 4.0));
    std::sort(expect.begin(), expect.end());
    for (Eigen::Index j = 0; j < s.eigenvalues.size(); ++j)
        CHECK(s.eigenvalues[j] == doctest::Approx(expect[j]).epsilon(1e-10));
}

TEST_CASE("||A|| <= 1 and Hermiticity for random circuits") {
    std::mt19937_64 rng(163);
    for (int trial = 0; trial < 10; ++trial) {
        GateSequence seq = random_real_circuit(2, 4, rng);
        ClockHamiltonian ch = clock_hamiltonian(seq);
        CHECK(herm_residual(ch.base) <= 1e-12);
        CHECK(operator_norm(ch.base) <= 1.0 + 1e-10);
    }
}

TEST_CASE("hardness identity: identity circuit, n=1, M=2") {
    GateSequence seq;
    seq.n = 1;
    seq.gates.push_back({{0}, Mat::Identity(2, 2)});
    seq.gates.push_back({{0}, Mat::Identity(2, 2)});
    HardnessIdentity id = hardness_identity_check(seq);
    CHECK(id.lhs == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(id.rhs == doctest::Approx(1.0));
    CHECK(id.residual <= 1e-8);
}

TEST_CASE("hardness identity: traceless circuit (X padded with I)") {
    GateSequence seq;
    seq.n = 1;
    seq.gates.push_back({{0}, pauli_x()});
    seq.gates.push_back({{0}, Mat::Identity(2, 2)});
    HardnessIdentity id = hardness_identity_check(seq);
    CHECK(id.rhs == doctest::Approx(0.0));
    CHECK(id.residual <= 1e-8);
}

TEST_CASE("hardness identity on random real circuits, M in {2,4,8}") {
    std::mt19937_64 rng(167);
    for (int m : {2, 4, 8}) {
        for (int trial = 0; trial < 10; ++trial) {
            GateSequence seq = random_real_circuit(2, m, rng);
            HardnessIdentity id = hardness_identity_check(seq);
            CHECK(id.residual <= 1e-8);
        }
    }
}

TEST_CASE("padding preserves the identity (M -> 2M)") {
    std::mt19937_64 rng(173);
    GateSequence seq = random_real_circuit(2, 2, rng);
    HardnessIdentity before = hardness_identity_check(seq);
    GateSequence padded = seq;
    padded.gates.push_back({{0}, Mat::Identity(2, 2)});  // pads to M = 4
    HardnessIdentity after = hardness_identity_check(padded);
    CHECK(before.rhs == doctest::Approx(after.rhs).epsilon(1e-10));
    CHECK(after.residual <= 1e-8);
}

TEST_CASE("reduction pipeline: identity circuit") {
    GateSequence seq;
    seq.n = 1;
    seq.gates.push_back({{0}, Mat::Identity(2, 2)});
    seq.gates.push_back({{0}, Mat::Identity(2, 2)});
    EstimateReport rep = reduction_pipeline(seq, 0.2);
    REQUIRE(rep.truth.has_value());
    CHECK(*rep.truth == doctest::Approx(1.0));
    CHECK(std::abs(rep.value - 1.0) <= 0.2);
}

TEST_CASE("reduction pipeline: trace-zero and rotation circuits") {
    GateSequence seq;
    seq.n = 1;
    seq.gates.push_back({{0}, pauli_x()});
    seq.gates.push_back({{0}, Mat::Identity(2, 2)});
    EstimateReport rep = reduction_pipeline(seq, 0.2);
    CHECK(std::abs(rep.value - 0.0) <= 0.2);

    GateSequence rot;
    rot.n = 1;
    rot.gates.push_back({{0}, rot2(0.7)});
    rot.gates.push_back({{0}, rot2(-0.2)});
    EstimateReport rep2 = reduction_pipeline(rot, 0.2);
    const double truth = rot.circuit_unitary().trace().real() / 2.0;
    CHECK(std::abs(rep2.value - truth) <= 0.2);
    CHECK(rep2.pass.has_value());
    CHECK(*rep2.pass);
}

TEST_CASE("gate sequence json round-trip") {
    std::mt19937_64 rng(179);
    GateSequence seq = random_real_circuit(2, 3, rng);
    GateSequence back = gate_sequence_from_json(gate_sequence_to_json(seq));
    CHECK(back.n == seq.n);
    CHECK((back.circuit_unitary() - seq.circuit_unitary()).cwiseAbs().maxCoeff() <= 1e-12);
    nlohmann::json bad = gate_sequence_to_json(seq);
    bad["gates"][0]["matrix"][0][0] = nlohmann::json::array({5.0, 0.0});
    CHECK_THROWS_AS(gate_sequence_from_json(bad), InputError);
}

TEST_CASE("gate sequence validation") {
    GateSequence seq;
    seq.n = 1;
    CHECK_THROWS_AS(seq.validate(), InputError);  // no gates
    seq.gates.push_back({{0, 0}, Mat::Identity(4, 4)});
    CHECK_THROWS_AS(seq.validate(), InputError);  // duplicate qubits
    seq.gates[0] = {{0}, 2.0 * Mat::Identity(2, 2)};
    CHECK_THROWS_AS(seq.validate(), InputError);  // not unitary
}

}  // TEST_SUITE
