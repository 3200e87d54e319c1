#include "schatten/hamiltonian.hpp"

#include <algorithm>
#include <set>

#include <Eigen/Eigenvalues>

namespace schatten {

void LocalTerm::validate(int n, const Config& cfg) const {
    const int k = locality();
    if (k == 0) throw InputError("LocalTerm: empty qubit list");
    std::set<int> seen(qubits.begin(), qubits.end());
    if (static_cast<int>(seen.size()) != k)
        throw InputError("LocalTerm: duplicate qubit indices");
    if (*seen.begin() < 0 || *seen.rbegin() >= n)
        throw InputError("LocalTerm: qubit index out of range");
    const Eigen::Index dim = Eigen::Index(1) << k;
    if (matrix.rows() != dim || matrix.cols() != dim)
        throw InputError("LocalTerm: matrix dimension does not match qubit count");
    if (herm_residual(matrix) > cfg.tol_herm)
        throw NotHermitian("LocalTerm: matrix is not Hermitian");
    if (k > cfg.k_max(n))
        throw InputError("LocalTerm: locality " + std::to_string(k) +
                         " exceeds log-local cap " + std::to_string(cfg.k_max(n)));
}

void LogLocalHamiltonian::validate(const Config& cfg) const {
    if (n < 1) throw InputError("LogLocalHamiltonian: n must be >= 1");
    if (terms.empty()) throw InputError("LogLocalHamiltonian: no terms");
    for (const auto& t : terms) t.validate(n, cfg);
}

double LogLocalHamiltonian::term_norm_bound() const {
    double zeta = 0.0;
    for (const auto& t : terms) zeta = std::max(zeta, operator_norm(t.matrix));
    return zeta;
}

double LogLocalHamiltonian::norm_bound() const {
    double s = 0.0;
    for (const auto& t : terms) s += operator_norm(t.matrix);
    return s;
}

std::string to_string(MatrixClass c) {
    switch (c) {
        case MatrixClass::ZeroOne: return "zero_one";
        case MatrixClass::SignedUnit: return "signed_unit";
        case MatrixClass::WeightedReal: return "weighted_real";
    }
    return "weighted_real";
}

MatrixClass matrix_class_from_string(const std::string& s) {
    if (s == "zero_one") return MatrixClass::ZeroOne;
    if (s == "signed_unit") return MatrixClass::SignedUnit;
    if (s == "weighted_real") return MatrixClass::WeightedReal;
    throw InputError("unknown matrix class: " + s);
}

SparseHermitian::SparseHermitian(int dim, std::vector<Row> rows, MatrixClass cls)
    : dim_(dim), class_(cls), rows_(std::move(rows)) {
    if (static_cast<int>(rows_.size()) != dim_)
        throw InputError("SparseHermitian: row count mismatch");
    for (auto& r : rows_)
        std::sort(r.begin(), r.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    for (int i = 0; i < dim_; ++i) {
        int prev = -1;
        for (const auto& [j, v] : rows_[i]) {
            if (j < 0 || j >= dim_) throw InputError("SparseHermitian: column out of range");
            if (j == prev) throw InputError("SparseHermitian: duplicate column in row");
            prev = j;
            max_entry_ = std::max(max_entry_, std::abs(v));
            if (std::abs(v - std::conj(entry(j, i))) > 1e-12)
                throw NotHermitian("SparseHermitian: conjugate symmetry violated");
            switch (class_) {
                case MatrixClass::ZeroOne:
                    if (std::abs(v - 1.0) > 1e-12)
                        throw InputError("SparseHermitian: zero_one entry not in {0,1}");
                    break;
                case MatrixClass::SignedUnit:
                    if (std::abs(std::abs(v) - 1.0) > 1e-12 || std::abs(v.imag()) > 1e-12)
                        throw InputError("SparseHermitian: signed_unit entry not in {-1,0,1}");
                    break;
                case MatrixClass::WeightedReal:
                    break;
            }
        }
        d_ = std::max(d_, static_cast<int>(rows_[i].size()));
    }
}

Cx SparseHermitian::entry(int i, int j) const {
    const Row& r = rows_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const auto& e, int col) { return e.first < col; });
    if (it != r.end() && it->first == j) return it->second;
    return Cx{0.0, 0.0};
}

Mat SparseHermitian::dense() const {
    Mat m = Mat::Zero(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
        for (const auto& [j, v] : rows_[i]) m(i, j) = v;
    return m;
}

namespace {

// Scatter the k bits of `sub` into the positions given by `qubits` (qubit q
// occupies significance n-1-q) and the bits of `rest` into the remaining
// positions, preserving order.
std::uint64_t interleave(std::uint64_t sub, std::uint64_t rest,
                         const std::vector<int>& qubits, int n) {
    std::uint64_t idx = 0;
    const int k = static_cast<int>(qubits.size());
    std::uint64_t support_mask = 0;
    for (int q : qubits) support_mask |= std::uint64_t(1) << (n - 1 - q);
    for (int i = 0; i < k; ++i) {
        if ((sub >> (k - 1 - i)) & 1u) idx |= std::uint64_t(1) << (n - 1 - qubits[i]);
    }
    int rest_bit = n - k - 1;
    for (int pos = n - 1; pos >= 0; --pos) {
        if (support_mask & (std::uint64_t(1) << pos)) continue;
        if ((rest >> rest_bit) & 1u) idx |= std::uint64_t(1) << pos;
        --rest_bit;
    }
    return idx;
}

}  // namespace

Mat embed_term(const LocalTerm& term, int n) {
    const int k = term.locality();
    const std::uint64_t sub_dim = std::uint64_t(1) << k;
    const std::uint64_t rest_dim = std::uint64_t(1) << (n - k);
    const Eigen::Index dim = Eigen::Index(1) << n;
    Mat out = Mat::Zero(dim, dim);
    for (std::uint64_t r = 0; r < rest_dim; ++r) {
        for (std::uint64_t s = 0; s < sub_dim; ++s) {
            const std::uint64_t row = interleave(s, r, term.qubits, n);
            for (std::uint64_t t = 0; t < sub_dim; ++t) {
                const Cx v = term.matrix(s, t);
                if (v == Cx{0.0, 0.0}) continue;
                out(row, interleave(t, r, term.qubits, n)) = v;
            }
        }
    }
    return out;
}

Mat assemble_dense(const LogLocalHamiltonian& h, const Config& cfg) {
    h.validate(cfg);
    if (h.n > cfg.n_dense_max)
        throw DimensionTooLarge("assemble_dense: n = " + std::to_string(h.n) +
                                " exceeds n_dense_max = " + std::to_string(cfg.n_dense_max));
    const Eigen::Index dim = Eigen::Index(1) << h.n;
    Mat out = Mat::Zero(dim, dim);
    for (const auto& t : h.terms) out += embed_term(t, h.n);
    return out;
}

SparseHermitian sparse_from_dense(const Mat& m, double threshold, const Config& cfg) {
    if (herm_residual(m) > cfg.tol_herm)
        throw NotHermitian("sparse_from_dense: input is not Hermitian");
    const int dim = static_cast<int>(m.rows());
    std::vector<SparseHermitian::Row> rows(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (std::abs(m(i, j)) > threshold) rows[i].emplace_back(j, m(i, j));
    return SparseHermitian(dim, std::move(rows), classify_entries(m));
}

double operator_norm(const Mat& m, const Config& cfg) {
    if (m.rows() > (Eigen::Index(1) << cfg.n_dense_max))
        throw DimensionTooLarge("operator_norm: matrix too large for dense path");
    Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw EigensolverFailure("operator_norm: eigensolver did not converge");
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

MatrixClass classify_entries(const Mat& m, double tol) {
    bool zero_one = true, signed_unit = true;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const Cx v = m(i, j);
            if (std::abs(v.imag()) > tol) return MatrixClass::WeightedReal;
            const double re = v.real();
            const bool is_zero = std::abs(re) <= tol;
            if (!is_zero && std::abs(re - 1.0) > tol) zero_one = false;
            if (!is_zero && std::abs(std::abs(re) - 1.0) > tol) signed_unit = false;
            if (!zero_one && !signed_unit) return MatrixClass::WeightedReal;
        }
    }
    if (zero_one) return MatrixClass::ZeroOne;
    return MatrixClass::SignedUnit;
}

}  // namespace schatten
