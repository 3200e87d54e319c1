#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "schatten/io.hpp"
#include "test_util.hpp"

using namespace schatten;
using namespace testutil;

TEST_SUITE("io") {

TEST_CASE("matrix json round-trip") {
    std::mt19937_64 rng(5);
    Mat m = random_hermitian(4, rng);
    Mat back = matrix_from_json(matrix_to_json(m));
    CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("matrix json rejects malformed input") {
    CHECK_THROWS_AS(matrix_from_json(nlohmann::json::array()), InputError);
    CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse("[[1,2],[3]]")), InputError);
    CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse("[[[1,0],[0,0]],[[0,0]]]")),
                    InputError);
}

TEST_CASE("hamiltonian json round-trip preserves assembly") {
    std::mt19937_64 rng(31);
    LogLocalHamiltonian h = random_log_local(3, 2, rng);
    LogLocalHamiltonian back = hamiltonian_from_json(hamiltonian_to_json(h));
    CHECK(back.n == h.n);
    CHECK((assemble_dense(back) - assemble_dense(h)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("hamiltonian file round-trip") {
    std::mt19937_64 rng(37);
    LogLocalHamiltonian h = random_log_local(2, 2, rng);
    const std::string path = "io_test_ham.json";
    save_hamiltonian(h, path);
    LogLocalHamiltonian back = load_hamiltonian(path);
    CHECK((assemble_dense(back) - assemble_dense(h)).cwiseAbs().maxCoeff() <= 1e-15);
    std::remove(path.c_str());
}

TEST_CASE("load_hamiltonian diagnostics") {
    CHECK_THROWS_AS(load_hamiltonian("does_not_exist.json"), InputError);
    const std::string path = "io_test_bad.json";
    {
        std::ofstream out(path);
        out << "{\"n\": 1}";  // missing terms
    }
    CHECK_THROWS_WITH_AS(load_hamiltonian(path),
                         doctest::Contains("hamiltonian json"), InputError);
    std::remove(path.c_str());
}

TEST_CASE("sparse text round-trip") {
    SparseHermitian a = cycle_graph(6);
    std::stringstream ss;
    write_sparse_text(a, ss);
    SparseHermitian back = read_sparse_text(ss);
    CHECK(back.dim() == 6);
    CHECK(back.sparsity() == 2);
    CHECK(back.matrix_class() == MatrixClass::ZeroOne);
    CHECK((back.dense() - a.dense()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sparse text round-trip with complex off-diagonals") {
    std::mt19937_64 rng(41);
    Mat m = random_hermitian(5, rng);
    SparseHermitian a = sparse_from_dense(m);
    std::stringstream ss;
    ss.precision(17);
    write_sparse_text(a, ss);
    SparseHermitian back = read_sparse_text(ss);
    CHECK((back.dense() - m).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("sparse text error diagnostics carry line numbers") {
    std::stringstream bad1("2 1 zero_one\n0 1 1 0\n0 x\n");
    CHECK_THROWS_WITH_AS(read_sparse_text(bad1), doctest::Contains("line 3"), InputError);
    std::stringstream bad2("2 1 zero_one\n1 0 1 0\n");  // lower triangle
    CHECK_THROWS_AS(read_sparse_text(bad2), InputError);
    std::stringstream bad3("");
    CHECK_THROWS_AS(read_sparse_text(bad3), InputError);
    std::stringstream bad4("2 0 zero_one\n0 1 1 0\n");  // sparsity exceeded
    CHECK_THROWS_AS(read_sparse_text(bad4), InputError);
}

TEST_CASE("gate sequence json round-trip") {
    // exercised via clock tests too; here just the schema basics
    std::stringstream ss;
    ss << R"({"n": 1, "gates": [{"qubits": [0], "matrix": [[[0,0],[1,0]],[[1,0],[0,0]]]}]})";
    nlohmann::json j;
    ss >> j;
    CHECK(j.at("gates").size() == 1);
}

}  // TEST_SUITE
