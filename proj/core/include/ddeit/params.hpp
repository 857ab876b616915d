#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Shared unit convention: every rate, Rabi frequency, detuning and Doppler
// width in this library is expressed in one unit (MHz). No 2*pi factors
// appear anywhere in the core.

namespace ddeit {

using Complex = std::complex<double>;

class ModelError : public std::runtime_error {
public:
    explicit ModelError(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// Tripod-atom drive and relaxation parameters. |4> is the excited state,
/// |1>,|2>,|3> the lower states coupled by the probe, coupling and signal
/// fields respectively.
struct SystemParams {
    Complex omega_p{0.0, 0.0};  ///< probe Rabi frequency
    Complex omega_c{0.0, 0.0};  ///< coupling Rabi frequency
    Complex omega_s{0.0, 0.0};  ///< signal Rabi frequency

    double delta_p = 0.0;  ///< probe detuning (omega_41 - omega_p)
    double delta_c = 0.0;  ///< coupling detuning (omega_42 - omega_c)
    double delta_s = 0.0;  ///< signal detuning (omega_43 - omega_s)

    double gamma_41 = 0.0;  ///< radiative decay |4> -> |1>
    double gamma_42 = 0.0;  ///< radiative decay |4> -> |2>
    double gamma_43 = 0.0;  ///< radiative decay |4> -> |3>

    double gamma_phi2 = 0.0;  ///< dephasing of |2>
    double gamma_phi3 = 0.0;  ///< dephasing of |3>
    double gamma_phi4 = 0.0;  ///< dephasing of |4>

    // Phenomenological per-coherence dephasing additions (Doppler-proxy study).
    double extra_dephasing_14 = 0.0;
    double extra_dephasing_34 = 0.0;

    double pump_rate = 0.0;  ///< incoherent 1<->4 pump rate r
    double eta = 1.0;        ///< susceptibility prefactor N|d14|^2/(eps0*hbar)

    // The excited-state linewidth quoted without a channel split; overrides
    // the channel sum in the closed-form susceptibility paths only. The
    // Lindblad generator always uses the channel rates (trace preservation).
    std::optional<double> gamma4_override;

    double delta_pc() const { return delta_p - delta_c; }
    double delta_ps() const { return delta_p - delta_s; }
    double delta_sc() const { return delta_s - delta_c; }
};

/// Effective decay rates entering the susceptibility expressions. When
/// pump_rate r > 0 the per-coherence replacements are applied:
/// gamma_4 -> gamma_4 + 2r, gamma_3 -> gamma_3 + r, gamma_2 -> gamma_2 + r,
/// Gamma_34 -> Gamma_34 + r (and Gamma_42 -> Gamma_42 + r; Gamma_32 is
/// untouched, the pump acts only on levels 1 and 4).
struct DerivedRates {
    double gamma_4 = 0.0;  ///< rho_14 coherence decay (x2)
    double gamma_2 = 0.0;  ///< rho_12 coherence decay (x2)
    double gamma_3 = 0.0;  ///< rho_13 coherence decay (x2)
    double Gamma_32 = 0.0;
    double Gamma_42 = 0.0;
    double Gamma_43 = 0.0;
    double delta_pc = 0.0;
    double delta_ps = 0.0;
    double delta_sc = 0.0;
};

DerivedRates derive_rates(const SystemParams& p);

struct ConditionCheck {
    std::string name;
    double lhs = 0.0;       ///< strength side of the inequality
    double rhs = 0.0;       ///< broadening side
    double ratio = 0.0;     ///< lhs / rhs (inf when rhs == 0)
    bool satisfied = false; ///< ratio > 10 for ">>" conditions, > 1 for ">"
};

/// The operating-regime inequalities attached to analytic results:
/// |Oc|^2 >> g2*g4, |Os|^2 >> g3*g4, WL^2 >> g4^2, |Oc|^2 > g2*WL,
/// |Os|^2 > g3*WL. WL <= 0 skips the Doppler entries.
std::vector<ConditionCheck> regime_conditions(const SystemParams& p, double wl = 0.0);

struct ValidationReport {
    std::vector<std::string> errors;    ///< invariant violations
    std::vector<std::string> warnings;  ///< soft regime notes
    bool ok() const { return errors.empty(); }
};

/// Invariant checks (rates nonnegative, finite fields, some decay path) plus
/// soft warnings (e.g. omega_c = 0 means the first window is absent).
ValidationReport validate(const SystemParams& p, double wl = 0.0);

/// Throwing wrapper around validate().
void require_valid(const SystemParams& p);

}  // namespace ddeit
