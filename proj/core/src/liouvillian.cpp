#include "ddeit/liouvillian.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>

namespace ddeit {

namespace {

constexpr Complex kI{0.0, 1.0};

Matrix4c sigma(int i, int j) {
    Matrix4c m = Matrix4c::Zero();
    m(i, j) = 1.0;
    return m;
}

// vec(A rho B) = (B^T (x) A) vec(rho), column stacking.
Matrix16c kron(const Matrix4c& a, const Matrix4c& b) {
    Matrix16c k;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) k.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
    return k;
}

void add_dissipator(Matrix16c& L, const Matrix4c& A, double rate) {
    if (rate == 0.0) return;
    const Matrix4c AdA = A.adjoint() * A;
    const Matrix4c I = Matrix4c::Identity();
    L += rate * (kron(A.conjugate(), A) - 0.5 * kron(I, AdA) -
                 0.5 * kron(AdA.transpose(), I));
}

}  // namespace

Matrix4c build_hamiltonian(const SystemParams& p) {
    return build_hamiltonian(p, p.delta_p);
}

Matrix4c build_hamiltonian(const SystemParams& p, double delta_p) {
    Matrix4c h = Matrix4c::Zero();
    h(1, 1) = delta_p - p.delta_c;
    h(2, 2) = delta_p - p.delta_s;
    h(3, 3) = delta_p;
    h(0, 3) = 0.5 * p.omega_p;
    h(1, 3) = 0.5 * p.omega_c;
    h(2, 3) = 0.5 * p.omega_s;
    h(3, 0) = std::conj(h(0, 3));
    h(3, 1) = std::conj(h(1, 3));
    h(3, 2) = std::conj(h(2, 3));
    return h;
}

LindbladGenerator::LindbladGenerator(const SystemParams& p, PumpModel pump)
    : LindbladGenerator(p, p.delta_p, pump) {}

LindbladGenerator::LindbladGenerator(const SystemParams& p, double delta_p, PumpModel pump)
    : params_(p), delta_p_(delta_p), pump_(pump) {
    require_valid(p);
    build();
}

void LindbladGenerator::build() {
    const Matrix4c H = build_hamiltonian(params_, delta_p_);
    const Matrix4c I = Matrix4c::Identity();
    L_ = -kI * (kron(I, H) - kron(H.transpose(), I));

    add_dissipator(L_, sigma(0, 3), params_.gamma_41);
    add_dissipator(L_, sigma(1, 3), params_.gamma_42);
    add_dissipator(L_, sigma(2, 3), params_.gamma_43);
    add_dissipator(L_, sigma(1, 1), params_.gamma_phi2);
    add_dissipator(L_, sigma(2, 2), params_.gamma_phi3);
    add_dissipator(L_, sigma(3, 3), params_.gamma_phi4);
    if (params_.pump_rate > 0.0) {
        add_dissipator(L_, sigma(3, 0), params_.pump_rate);
        if (pump_ == PumpModel::bidirectional)
            add_dissipator(L_, sigma(0, 3), params_.pump_rate);
    }
    // Pure coherence decays on rho_14/rho_41 and rho_34/rho_43. These are
    // phenomenological (not of Lindblad form); positivity is checked by the
    // callers that use them.
    if (params_.extra_dephasing_14 > 0.0) {
        L_(vec_index(0, 3), vec_index(0, 3)) -= params_.extra_dephasing_14;
        L_(vec_index(3, 0), vec_index(3, 0)) -= params_.extra_dephasing_14;
    }
    if (params_.extra_dephasing_34 > 0.0) {
        L_(vec_index(2, 3), vec_index(2, 3)) -= params_.extra_dephasing_34;
        L_(vec_index(3, 2), vec_index(3, 2)) -= params_.extra_dephasing_34;
    }
}

DensityMatrix LindbladGenerator::apply(const DensityMatrix& rho) const {
    return DensityMatrix::unvec(L_ * rho.vec());
}

double LindbladGenerator::trace_defect() const {
    // Row of tr(rho') in the vectorized basis must vanish.
    double worst = 0.0;
    for (int col = 0; col < 16; ++col) {
        Complex s = 0.0;
        for (int i = 0; i < 4; ++i) s += L_(vec_index(i, i), col);
        worst = std::max(worst, std::abs(s));
    }
    return worst;
}

SteadyStateResult steady_state(const LindbladGenerator& gen) {
    Matrix16c M = gen.matrix();
    // Replace the rho_11 row with the trace constraint.
    for (int col = 0; col < 16; ++col) M(0, col) = 0.0;
    for (int i = 0; i < 4; ++i) M(0, vec_index(i, i)) = 1.0;
    Vector16c b = Vector16c::Zero();
    b(0) = 1.0;

    Eigen::JacobiSVD<Matrix16c> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cond = sv(0) / sv(sv.size() - 1);
    if (!(sv(sv.size() - 1) > sv(0) * 1e-13))
        throw ModelError("singular-system",
                         "constrained steady-state solve rank-deficient, condition ~ " +
                             std::to_string(cond));

    SteadyStateResult out;
    const Vector16c v = svd.solve(b);
    out.rho = DensityMatrix::unvec(v);
    out.rho.hermitize();
    out.residual = (gen.matrix() * out.rho.vec()).cwiseAbs().maxCoeff();
    out.condition = cond;
    return out;
}

SteadyStateResult steady_state_clamped(const LindbladGenerator& gen,
                                       const std::array<double, 4>& populations) {
    std::array<int, 12> off{};
    std::array<int, 4> diag{};
    int n = 0;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) {
            if (i == j)
                diag[i] = vec_index(i, i);
            else
                off[n++] = vec_index(i, j);
        }

    Eigen::Matrix<Complex, 12, 12> loo;
    Eigen::Matrix<Complex, 12, 4> lod;
    const Matrix16c& L = gen.matrix();
    for (int a = 0; a < 12; ++a) {
        for (int b = 0; b < 12; ++b) loo(a, b) = L(off[a], off[b]);
        for (int b = 0; b < 4; ++b) lod(a, b) = L(off[a], diag[b]);
    }
    Eigen::Vector4cd d;
    for (int i = 0; i < 4; ++i) d(i) = populations[i];

    Eigen::FullPivLU<Eigen::Matrix<Complex, 12, 12>> lu(loo);
    if (!lu.isInvertible())
        throw ModelError("singular-system", "clamped coherence solve singular");
    const Eigen::Matrix<Complex, 12, 1> x = lu.solve(-(lod * d));

    SteadyStateResult out;
    Matrix4c m = Matrix4c::Zero();
    for (int a = 0; a < 12; ++a) m(off[a] % 4, off[a] / 4) = x(a);
    for (int i = 0; i < 4; ++i) m(i, i) = populations[i];
    out.rho = DensityMatrix(m);
    out.rho.hermitize();
    // Residual over the coherence rows only (populations are held).
    const Vector16c full = L * out.rho.vec();
    double res = 0.0;
    for (int a = 0; a < 12; ++a) res = std::max(res, std::abs(full(off[a])));
    out.residual = res;
    out.condition = 1.0 / lu.rcond();
    return out;
}

std::vector<DensityMatrix> time_evolve(const LindbladGenerator& gen,
                                       const DensityMatrix& rho0,
                                       const std::vector<double>& t_grid,
                                       const TimeEvolveOptions& opt) {
    if (t_grid.empty()) return {};
    for (size_t k = 1; k < t_grid.size(); ++k)
        if (!(t_grid[k] > t_grid[k - 1]))
            throw ModelError("invalid-params", "t_grid must be strictly increasing");
    if (!rho0.valid_state(1e-8, 1e-8, 1e-6))
        throw ModelError("invalid-params", "rho0 is not a valid density matrix");

    // Dormand-Prince 5(4) coefficients.
    static const double c2 = 1. / 5, c3 = 3. / 10, c4 = 4. / 5, c5 = 8. / 9;
    static const double a21 = 1. / 5;
    static const double a31 = 3. / 40, a32 = 9. / 40;
    static const double a41 = 44. / 45, a42 = -56. / 15, a43 = 32. / 9;
    static const double a51 = 19372. / 6561, a52 = -25360. / 2187, a53 = 64448. / 6561,
                        a54 = -212. / 729;
    static const double a61 = 9017. / 3168, a62 = -355. / 33, a63 = 46732. / 5247,
                        a64 = 49. / 176, a65 = -5103. / 18656;
    static const double b1 = 35. / 384, b3 = 500. / 1113, b4 = 125. / 192,
                        b5 = -2187. / 6784, b6 = 11. / 84;
    static const double e1 = 71. / 57600, e3 = -71. / 16695, e4 = 71. / 1920,
                        e5 = -17253. / 339200, e6 = 22. / 525, e7 = -1. / 40;

    const Matrix16c& L = gen.matrix();
    auto f = [&L](const Vector16c& y) -> Vector16c { return L * y; };

    std::vector<DensityMatrix> out;
    out.reserve(t_grid.size());

    Vector16c y = rho0.vec();
    double t = t_grid.front();
    out.push_back(rho0);

    const double rate_scale = std::max(L.cwiseAbs().maxCoeff(), 1e-12);
    double h = std::min(0.1 / rate_scale, t_grid.back() - t_grid.front());
    const double h_floor = h * opt.max_step_shrink;
    Vector16c k1 = f(y);

    for (size_t target = 1; target < t_grid.size(); ++target) {
        const double t_end = t_grid[target];
        while (t < t_end) {
            const double hs = std::min(h, t_end - t);
            const Vector16c k2 = f(y + hs * a21 * k1);
            const Vector16c k3 = f(y + hs * (a31 * k1 + a32 * k2));
            const Vector16c k4 = f(y + hs * (a41 * k1 + a42 * k2 + a43 * k3));
            const Vector16c k5 = f(y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            const Vector16c k6 =
                f(y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            const Vector16c y5 =
                y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            const Vector16c k7 = f(y5);
            const Vector16c errv =
                hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            const double sc = opt.abs_tol + opt.rel_tol * std::max(y.cwiseAbs().maxCoeff(),
                                                                   y5.cwiseAbs().maxCoeff());
            const double err = errv.cwiseAbs().maxCoeff() / sc;
            if (err <= 1.0) {
                t += hs;
                y = y5;
                k1 = k7;  // FSAL
            }
            const double fac = std::clamp(0.9 * std::pow(err > 0 ? err : 1e-10, -0.2),
                                          0.2, 5.0);
            h = std::max(hs * fac, 0.0);
            if (h < h_floor)
                throw ModelError("step-failure",
                                 "tolerance unattainable near t = " + std::to_string(t));
        }
        DensityMatrix rho = DensityMatrix::unvec(y);
        rho.hermitize();
        out.push_back(rho);
        (void)c2; (void)c3; (void)c4; (void)c5;
    }
    return out;
}

PopulationReport populations_closed_form(const SystemParams& p,
                                         const std::array<double, 4>& init) {
    const double r = p.pump_rate;
    const double g41 = p.gamma_41, g42 = p.gamma_42, g43 = p.gamma_43;
    const double g4 = p.gamma_41 + p.gamma_42 + p.gamma_43 + p.gamma_phi4;
    // Effective coherence sums; pump touches only levels 1 and 4.
    const double G43 = (g4 + p.gamma_phi3) + r;
    const double G32 = p.gamma_phi3 + r + p.gamma_phi2 + r;
    const double G42 = (g4 + p.gamma_phi2) + r;
    const double oc2 = std::norm(p.omega_c), os2 = std::norm(p.omega_s);
    const double dsc = p.delta_sc(), dc = p.delta_c, ds = p.delta_s;

    const double A = G43 + oc2 * G32 / (G32 * G32 + 4 * dsc * dsc);
    const double A2 = oc2 * dsc / (G32 * G32 + 4 * dsc * dsc) - ds;
    const double den = A * A + 4 * A2 * A2;

    PopulationReport rep;
    rep.X = (os2 * oc2 / ((G42 * G42 + 4 * dc * dc) * (G32 * G32 + 4 * dsc * dsc))) *
            ((A * (4 * ds * dsc + G32 * G42)) / den +
             (A2 * (4 * G32 * dc - G42 * dsc)) / den);
    rep.Y = oc2 * G42 / (G42 * G42 + 4 * dc * dc);
    rep.Z = os2 * A / den;

    const double scale = std::max({std::abs(g41 * rep.Z * rep.Y),
                                   std::abs(g43 * rep.X), std::abs(g43 * rep.Y), 1e-30});
    auto guard = [&](double D) {
        if (std::abs(D) < 1e-12 * scale)
            throw ModelError("degenerate-formula",
                             "population denominator " + std::to_string(D) +
                                 " below 1e-12 * scale");
    };

    if (r > 0.0) {
        const double D = rep.Z * (-r * g42 + 4 * r * rep.Y + g41 * rep.Y) +
                         r * g43 * (rep.Y - rep.X);
        rep.denominator = D;
        guard(D);
        rep.rho11 = rep.Z * rep.Y * (g41 + r) / D;
        rep.rho22 = r * (rep.Z * (rep.Y - g42) - g43 * rep.X) / D;
        rep.rho33 = r * rep.Y * (rep.Z + g43) / D;
        rep.rho44 = r * rep.Z * rep.Y / D;
        rep.rho11_directform = rep.rho11;
    } else {
        const double D = g41 * rep.Z * rep.Y + g43 * (rep.X - rep.Y);
        rep.denominator = D;
        guard(D);
        const double r11_0 = init[0], r22_0 = init[1], r33_0 = init[2];
        rep.rho22 = (g41 * rep.Z * r22_0 +
                     (rep.Z * (rep.Y - g42) - rep.X * g43) * (1.0 - r11_0)) / D +
                    rep.X * g41 * r33_0 / D;
        rep.rho33 = rep.Y * ((rep.Z + g43) * (1.0 - r11_0) + g41 * r33_0) / D;
        rep.rho44 = rep.Z * (1.0 - r11_0) * rep.Y / D;
        rep.rho11_directform = g41 * rep.Z * rep.Y / D;
        // The printed per-population set does not close to unit trace for
        // general initial conditions; rho11 is recovered from the trace.
        rep.rho11 = 1.0 - rep.rho22 - rep.rho33 - rep.rho44;
    }
    return rep;
}

}  // namespace ddeit
