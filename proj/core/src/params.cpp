#include "ddeit/params.hpp"

#include <cmath>
#include <limits>

namespace ddeit {

namespace {

bool finite(double x) { return std::isfinite(x); }
bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

DerivedRates derive_rates(const SystemParams& p) {
    if (p.gamma_41 < 0 || p.gamma_42 < 0 || p.gamma_43 < 0 || p.gamma_phi2 < 0 ||
        p.gamma_phi3 < 0 || p.gamma_phi4 < 0 || p.pump_rate < 0 ||
        p.extra_dephasing_14 < 0 || p.extra_dephasing_34 < 0)
        throw ModelError("invalid-params", "negative rate");

    DerivedRates d;
    const double g4_base =
        p.gamma4_override.value_or(p.gamma_41 + p.gamma_42 + p.gamma_43 + p.gamma_phi4);
    const double r = p.pump_rate;
    d.gamma_4 = g4_base + 2.0 * r;
    d.gamma_2 = p.gamma_phi2 + r;
    d.gamma_3 = p.gamma_phi3 + r;
    // Coherence half-sums; the pump touches only levels 1 and 4, so Gamma_32
    // is unshifted while the level-4 pairs gain the reverse-pump loss r.
    d.Gamma_32 = p.gamma_phi3 + p.gamma_phi2;
    d.Gamma_42 = g4_base + p.gamma_phi2 + r;
    d.Gamma_43 = g4_base + p.gamma_phi3 + r;
    d.delta_pc = p.delta_pc();
    d.delta_ps = p.delta_ps();
    d.delta_sc = p.delta_sc();
    return d;
}

std::vector<ConditionCheck> regime_conditions(const SystemParams& p, double wl) {
    const DerivedRates d = derive_rates(p);
    const double oc2 = std::norm(p.omega_c);
    const double os2 = std::norm(p.omega_s);
    auto mk = [](std::string name, double lhs, double rhs, double margin) {
        ConditionCheck c;
        c.name = std::move(name);
        c.lhs = lhs;
        c.rhs = rhs;
        c.ratio = rhs > 0 ? lhs / rhs : std::numeric_limits<double>::infinity();
        c.satisfied = c.ratio > margin;
        return c;
    };
    std::vector<ConditionCheck> v;
    v.push_back(mk("|Oc|^2 >> g2*g4", oc2, d.gamma_2 * d.gamma_4, 10.0));
    v.push_back(mk("|Os|^2 >> g3*g4", os2, d.gamma_3 * d.gamma_4, 10.0));
    if (wl > 0.0) {
        v.push_back(mk("WL^2 >> g4^2", wl * wl, d.gamma_4 * d.gamma_4, 10.0));
        v.push_back(mk("|Oc|^2 > g2*WL", oc2, d.gamma_2 * wl, 1.0));
        v.push_back(mk("|Os|^2 > g3*WL", os2, d.gamma_3 * wl, 1.0));
    }
    return v;
}

ValidationReport validate(const SystemParams& p, double wl) {
    ValidationReport rep;
    auto err = [&rep](const std::string& m) { rep.errors.push_back(m); };

    for (auto [v, name] : {std::pair{p.gamma_41, "gamma_41"}, {p.gamma_42, "gamma_42"},
                           {p.gamma_43, "gamma_43"}, {p.gamma_phi2, "gamma_phi2"},
                           {p.gamma_phi3, "gamma_phi3"}, {p.gamma_phi4, "gamma_phi4"},
                           {p.extra_dephasing_14, "extra_dephasing_14"},
                           {p.extra_dephasing_34, "extra_dephasing_34"},
                           {p.pump_rate, "pump_rate"}}) {
        if (v < 0) err(std::string(name) + " negative");
        if (!finite(v)) err(std::string(name) + " not finite");
    }
    if (p.gamma_41 <= 0 && p.gamma_42 <= 0 && p.gamma_43 <= 0 &&
        !(p.gamma4_override && *p.gamma4_override > 0))
        err("no radiative decay channel (all gamma_4x zero)");
    if (p.gamma4_override && *p.gamma4_override < 0) err("gamma4_override negative");
    for (auto [v, name] : {std::pair{p.delta_p, "delta_p"}, {p.delta_c, "delta_c"},
                           {p.delta_s, "delta_s"}})
        if (!finite(v)) err(std::string(name) + " not finite");
    for (auto [z, name] : {std::pair{p.omega_p, "omega_p"}, {p.omega_c, "omega_c"},
                           {p.omega_s, "omega_s"}})
        if (!finite(z)) err(std::string(name) + " not finite");
    if (p.eta <= 0 || !finite(p.eta)) err("eta must be positive and finite");

    if (std::norm(p.omega_c) == 0.0)
        rep.warnings.push_back("omega_c = 0: first transparency window absent");
    if (std::norm(p.omega_s) == 0.0)
        rep.warnings.push_back("omega_s = 0: second transparency window absent");
    else if (p.delta_s == p.delta_c)
        rep.warnings.push_back("delta_s = delta_c: windows coincide");

    if (rep.ok()) {
        for (const auto& c : regime_conditions(p, wl))
            if (!c.satisfied)
                rep.warnings.push_back("condition not met: " + c.name);
    }
    return rep;
}

void require_valid(const SystemParams& p) {
    const auto rep = validate(p);
    if (!rep.ok()) throw ModelError("invalid-params", rep.errors.front());
}

}  // namespace ddeit
