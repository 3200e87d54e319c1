#pragma once

#include <utility>
#include <vector>

#include "schatten/common.hpp"

namespace schatten {

// One Hermitian term acting on an ordered subset of qubits. Qubit 0 is the
// most significant bit of the computational-basis index; this convention is
// fixed here and obeyed everywhere.
struct LocalTerm {
    std::vector<int> qubits;  // distinct, 0-based
    Mat matrix;               // 2^k x 2^k, k = qubits.size()

    int locality() const { return static_cast<int>(qubits.size()); }
    void validate(int n, const Config& cfg) const;
};

// A = sum_j A_j, each A_j supported on O(log n) qubits.
struct LogLocalHamiltonian {
    int n = 0;
    std::vector<LocalTerm> terms;

    void validate(const Config& cfg = {}) const;
    // zeta = max_j ||A_j||
    double term_norm_bound() const;
    // sum_j ||A_j|| >= ||A|| by the triangle inequality
    double norm_bound() const;
};

enum class MatrixClass { ZeroOne, SignedUnit, WeightedReal };

std::string to_string(MatrixClass c);
MatrixClass matrix_class_from_string(const std::string& s);

// Explicit d-sparse Hermitian matrix, row-indexed nonzeros. Doubles as a
// weighted-graph adjacency matrix.
class SparseHermitian {
  public:
    using Row = std::vector<std::pair<int, Cx>>;

    SparseHermitian() = default;
    // Validates conjugate symmetry of the entry set.
    SparseHermitian(int dim, std::vector<Row> rows, MatrixClass cls);

    int dim() const { return dim_; }
    int sparsity() const { return d_; }                 // max nonzeros per row
    double max_entry() const { return max_entry_; }     // ||A||_max
    MatrixClass matrix_class() const { return class_; }
    const std::vector<Row>& rows() const { return rows_; }
    const Row& row(int i) const { return rows_[i]; }

    Cx entry(int i, int j) const;
    int degree(int i) const { return static_cast<int>(rows_[i].size()); }

    Mat dense() const;

  private:
    int dim_ = 0;
    int d_ = 0;
    double max_entry_ = 0.0;
    MatrixClass class_ = MatrixClass::WeightedReal;
    std::vector<Row> rows_;
};

// Embeds `term` into the full 2^n-dimensional space (identity elsewhere).
Mat embed_term(const LocalTerm& term, int n);

Mat assemble_dense(const LogLocalHamiltonian& h, const Config& cfg = {});

// Exact by default; entries with |a_ij| <= threshold are dropped.
SparseHermitian sparse_from_dense(const Mat& m, double threshold = 0.0,
                                  const Config& cfg = {});

// max_j |lambda_j| via eigendecomposition of a Hermitian matrix.
double operator_norm(const Mat& m, const Config& cfg = {});

MatrixClass classify_entries(const Mat& m, double tol = 1e-12);

}  // namespace schatten
