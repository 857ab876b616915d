#include "ddeit/density_matrix.hpp"

#include <cmath>

namespace ddeit {

DensityMatrix DensityMatrix::pure(int level) {
    Matrix4c m = Matrix4c::Zero();
    m(level - 1, level - 1) = 1.0;
    return DensityMatrix(m);
}

double DensityMatrix::hermiticity_defect() const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::negativity() const {
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(0.5 * (m_ + m_.adjoint()));
    const double lo = es.eigenvalues().minCoeff();
    return lo < 0 ? lo : 0.0;
}

void DensityMatrix::normalize_trace() {
    const double tr = m_.trace().real();
    if (tr != 0.0) m_ /= tr;
}

bool DensityMatrix::valid_state(double herm_tol, double trace_tol, double eig_tol) const {
    return hermiticity_defect() < herm_tol && std::abs(trace() - 1.0) < trace_tol &&
           negativity() > -eig_tol;
}

Vector16c DensityMatrix::vec() const {
    Vector16c v;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) v(vec_index(i, j)) = m_(i, j);
    return v;
}

DensityMatrix DensityMatrix::unvec(const Vector16c& v) {
    Matrix4c m;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) m(i, j) = v(vec_index(i, j));
    return DensityMatrix(m);
}

}  // namespace ddeit
