#pragma once

#include <functional>
#include <vector>

#include "ddeit/density_matrix.hpp"
#include "ddeit/params.hpp"

namespace ddeit {

/// Rotating-frame Hamiltonian (hbar = 1, MHz units):
///   H = delta_pc |2><2| + delta_ps |3><3| + delta_p |4><4|
///     + (1/2)(Op |1><4| + Oc |2><4| + Os |3><4| + h.c.)
/// delta_p may be overridden per call (spectrum scans move only the probe).
Matrix4c build_hamiltonian(const SystemParams& p);
Matrix4c build_hamiltonian(const SystemParams& p, double delta_p);

enum class PumpModel {
    bidirectional,  ///< jumps |4><1| and |1><4|, both at rate r (default)
    upward_only     ///< jump |4><1| at rate r
};

/// Lindblad generator acting on the column-stacked density matrix.
/// Channels: radiative decays 4->1,2,3; dephasing of |2>,|3>,|4>; incoherent
/// 1<->4 pump at rate r; plus the phenomenological pure coherence decays on
/// rho_14 and rho_34 (extra_dephasing_14/34), which live outside Lindblad
/// form. The bidirectional pump reproduces the effective-rate replacements
/// gamma_4+2r, gamma_3+r, gamma_2+r, Gamma_34+r exactly.
class LindbladGenerator {
public:
    LindbladGenerator(const SystemParams& p, PumpModel pump = PumpModel::bidirectional);
    LindbladGenerator(const SystemParams& p, double delta_p,
                      PumpModel pump = PumpModel::bidirectional);

    const Matrix16c& matrix() const { return L_; }
    const SystemParams& params() const { return params_; }
    double delta_p() const { return delta_p_; }

    DensityMatrix apply(const DensityMatrix& rho) const;

    /// Worst trace-derivative |tr(L rho)| over basis matrices.
    double trace_defect() const;

private:
    void build();
    SystemParams params_;
    double delta_p_ = 0.0;
    PumpModel pump_;
    Matrix16c L_;
};

struct SteadyStateResult {
    DensityMatrix rho;
    double residual = 0.0;   ///< max |L rho| after the solve
    double condition = 0.0;  ///< condition estimate of the constrained system
};

/// Solve L rho = 0 with one row replaced by the trace constraint. Errors with
/// "singular-system" when the constrained solve is rank-deficient beyond the
/// trace null vector.
SteadyStateResult steady_state(const LindbladGenerator& gen);

/// Coherence-only steady state with the diagonal held at `populations`
/// (default 0.5, 0, 0.5, 0). Solves the 12 off-diagonal components of
/// L rho = 0 given the clamped diagonal.
SteadyStateResult steady_state_clamped(
    const LindbladGenerator& gen,
    const std::array<double, 4>& populations = {0.5, 0.0, 0.5, 0.0});

struct TimeEvolveOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    double max_step_shrink = 1e-8;  ///< step-failure below h0 * this
};

/// Adaptive Dormand-Prince 5(4) integration of rho' = L rho, sampled on
/// t_grid (increasing, starts at the time of rho0). Errors with
/// "step-failure" when the tolerance is unattainable.
std::vector<DensityMatrix> time_evolve(const LindbladGenerator& gen,
                                       const DensityMatrix& rho0,
                                       const std::vector<double>& t_grid,
                                       const TimeEvolveOptions& opt = {});

/// Closed-form steady populations for omega_p ~ 0 (drive hierarchy
/// Oc >> Os >> Op). X, Y, Z are the printed intermediates; with pump_rate
/// r > 0 the effective-rate replacements are applied inside them.
struct PopulationReport {
    double rho11 = 0.0, rho22 = 0.0, rho33 = 0.0, rho44 = 0.0;
    double X = 0.0, Y = 0.0, Z = 0.0;
    double denominator = 0.0;      ///< gamma_41*Z*Y + gamma_43*(X - Y)
    double rho11_directform = 0.0; ///< the standalone rho11 expression (r = 0)
};

/// r = 0 variant consumes the initial populations (population trapping);
/// r > 0 ignores them. Errors with "degenerate-formula" when the shared
/// denominator is near zero/negative or a population leaves [0, 1].
PopulationReport populations_closed_form(
    const SystemParams& p, const std::array<double, 4>& initial_populations = {1, 0, 0, 0});

}  // namespace ddeit
