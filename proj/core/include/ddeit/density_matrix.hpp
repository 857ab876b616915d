#pragma once

#include <Eigen/Dense>

#include "ddeit/params.hpp"

namespace ddeit {

using Matrix4c = Eigen::Matrix4cd;
using Vector16c = Eigen::Matrix<Complex, 16, 1>;
using Matrix16c = Eigen::Matrix<Complex, 16, 16>;

/// 4x4 density matrix in the rotating frame, bare-state basis |1>..|4>.
class DensityMatrix {
public:
    DensityMatrix() : m_(Matrix4c::Zero()) {}
    explicit DensityMatrix(const Matrix4c& m) : m_(m) {}

    static DensityMatrix pure(int level);  ///< |level><level|, level in 1..4

    const Matrix4c& matrix() const { return m_; }
    Matrix4c& matrix() { return m_; }

    Complex operator()(int i, int j) const { return m_(i - 1, j - 1); }
    double population(int level) const { return m_(level - 1, level - 1).real(); }
    double trace() const { return m_.trace().real(); }

    /// Largest |rho - rho^dagger| entry.
    double hermiticity_defect() const;
    /// Most negative eigenvalue (0 when spectrum is nonnegative).
    double negativity() const;

    void hermitize() { m_ = 0.5 * (m_ + m_.adjoint()).eval(); }
    void normalize_trace();

    /// Hermitian to 1e-10, trace 1 +- 1e-10, eigenvalues >= -1e-8.
    bool valid_state(double herm_tol = 1e-10, double trace_tol = 1e-10,
                     double eig_tol = 1e-8) const;

    Vector16c vec() const;                       ///< column-stacked
    static DensityMatrix unvec(const Vector16c& v);

private:
    Matrix4c m_;
};

/// Column-stacked index of rho_ij (0-based i, j).
inline int vec_index(int i, int j) { return 4 * j + i; }

}  // namespace ddeit
