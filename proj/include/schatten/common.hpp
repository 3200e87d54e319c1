#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <cmath>
#include <cstdint>

#include <Eigen/Dense>

namespace schatten {

using Cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;

constexpr double kPi = 3.14159265358979323846;

// Global tolerances and desk-scale limits. One instance is usually enough;
// tests override individual fields.
struct Config {
    int n_dense_max = 12;           // largest qubit count we materialize densely
    double tol_herm = 1e-12;        // max-norm Hermiticity tolerance
    double tol_unitary = 1e-10;     // ||U U^dag - I||_max tolerance
    double locality_c = 2.0;        // k_max = ceil(locality_c * log2(n)), log-local cap
    double trotter_C = 1.0;         // calibrated constant in the step-count bound
    double eps_min = 1e-4;          // smallest accepted accuracy target
    // Ancilla audit: a_max(n_sys) = ceil(anc_c * log2(n_sys + 2)) + anc_const.
    double anc_c = 2.0;
    int anc_const = 16;

    int k_max(int n) const {
        double l = std::log2(static_cast<double>(std::max(n, 2)));
        return std::max(1, static_cast<int>(std::ceil(locality_c * l)));
    }
    int a_max(int n_sys) const {
        double l = std::log2(static_cast<double>(n_sys + 2));
        return static_cast<int>(std::ceil(anc_c * l)) + anc_const;
    }
};

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define SCHATTEN_DEFINE_ERROR(Name)                  \
    struct Name : Error {                            \
        using Error::Error;                          \
    }

SCHATTEN_DEFINE_ERROR(DimensionTooLarge);
SCHATTEN_DEFINE_ERROR(NotHermitian);
SCHATTEN_DEFINE_ERROR(EigensolverFailure);
SCHATTEN_DEFINE_ERROR(SpectrumOutsideInterval);
SCHATTEN_DEFINE_ERROR(WorkBudgetExceeded);
SCHATTEN_DEFINE_ERROR(ConditionInfinite);
SCHATTEN_DEFINE_ERROR(BudgetInfeasible);
SCHATTEN_DEFINE_ERROR(SpectrumOutOfRange);
SCHATTEN_DEFINE_ERROR(InvalidModel);
SCHATTEN_DEFINE_ERROR(InfeasibleParameters);
SCHATTEN_DEFINE_ERROR(ConfigError);
SCHATTEN_DEFINE_ERROR(InputError);

#undef SCHATTEN_DEFINE_ERROR

inline double herm_residual(const Mat& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Mat& m, double tol = 1e-12) {
    return m.rows() == m.cols() && herm_residual(m) <= tol;
}

inline double unitary_residual(const Mat& u) {
    Mat g = u.adjoint() * u;
    g.diagonal().array() -= 1.0;
    return g.cwiseAbs().maxCoeff();
}

inline bool is_unitary(const Mat& u, double tol = 1e-10) {
    return u.rows() == u.cols() && unitary_residual(u) <= tol;
}

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// B^e by binary exponentiation; e >= 0.
inline Mat mat_power(Mat base, std::uint64_t e) {
    Mat acc = Mat::Identity(base.rows(), base.cols());
    while (e > 0) {
        if (e & 1u) acc = acc * base;
        e >>= 1u;
        if (e > 0) base = base * base;
    }
    return acc;
}

}  // namespace schatten
