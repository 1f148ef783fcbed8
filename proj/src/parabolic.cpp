#include "cim/parabolic.hpp"

#include <cmath>
#include <numbers>

namespace cim {

ParabolicFlow::ParabolicFlow(ParabolicConfig cfg)
    : cfg_(std::move(cfg)), transform_(std::size_t(cfg_.n_modes)) {
    if (cfg_.n_modes < 1) throw std::invalid_argument("ParabolicFlow: n_modes must be >= 1");
    if (cfg_.dt <= 0.0) throw std::invalid_argument("ParabolicFlow: dt must be > 0");
    if (cfg_.f.n_modes() != std::size_t(cfg_.n_modes))
        throw std::invalid_argument("ParabolicFlow: forcing mode count mismatch");
    decay_.resize(cfg_.n_modes);
    weight_.resize(cfg_.n_modes);
    for (int n = 1; n <= cfg_.n_modes; ++n) {
        const double lam = eigenvalue(n);
        decay_[n - 1] = std::exp(-lam * cfg_.dt);
        weight_[n - 1] = -std::expm1(-lam * cfg_.dt) / lam;
    }
}

SpectralField ParabolicFlow::rhs(const SpectralField& u) const {
    SpectralField r = transform_.reaction(u, cfg_.use_modified_nonlinearity, cfg_.delta);
    for (std::size_t i = 0; i < r.n_modes(); ++i) r[i] += cfg_.f[i];
    return r;
}

SpectralField ParabolicFlow::step(const SpectralField& u) const {
    const SpectralField N = rhs(u);
    SpectralField r(u.n_modes());
    for (std::size_t i = 0; i < u.n_modes(); ++i)
        r[i] = decay_[i] * u[i] + weight_[i] * N[i];
    return r;
}

SpectralField ParabolicFlow::advance(SpectralField u, double T) const {
    const long steps = std::lround(T / cfg_.dt);
    for (long k = 0; k < steps; ++k) {
        u = step(u);
        if (!u.finite()) throw IntegrationError(double(k + 1) * cfg_.dt);
    }
    return u;
}

TrajectoryRecord ParabolicFlow::evolve(const SpectralField& u0, double T,
                                       int record_every) const {
    if (T < 0.0) throw std::invalid_argument("evolve: T must be >= 0");
    if (record_every < 1) record_every = 1;
    const long steps = std::lround(T / cfg_.dt);
    TrajectoryRecord rec;
    auto push = [&](double t, const SpectralField& u) {
        rec.times.push_back(t);
        rec.states.push_back(u);
        rec.l2.push_back(norm_hs(u, 0.0));
        rec.h1.push_back(norm_hs(u, 1.0));
        rec.lyap.push_back(lyapunov(u, cfg_.f));
    };
    SpectralField u = u0;
    push(0.0, u);
    for (long k = 1; k <= steps; ++k) {
        u = step(u);
        if (!u.finite()) throw IntegrationError(double(k) * cfg_.dt);
        if (k % record_every == 0 || k == steps) push(double(k) * cfg_.dt, u);
    }
    return rec;
}

double lyapunov(const SpectralField& u, const SpectralField& f) {
    const double h1 = norm_hs(u, 1.0);
    const double l2 = norm_hs(u, 0.0);
    return h1 * h1 + 0.5 * l4_norm4(u) - l2 * l2 - 2.0 * inner(f, u);
}

SpectralField extension_E(const SpectralField& u, const SpectralField& f) {
    SpectralField r = cubic(u);
    for (std::size_t i = 0; i < u.n_modes(); ++i) {
        const double lam = eigenvalue(int(i) + 1);
        r[i] = f[i] - lam * u[i] - r[i] + u[i];
    }
    return r;
}

AuditReport check_L2_decay(const TrajectoryRecord& rec, const SpectralField& u0,
                           const SpectralField& f, double slack) {
    const double p0 = norm_hs(u0, 0.0);
    const double fn = norm_hs(f, 0.0);
    const double cst = 0.5 * (fn * fn + 9.0 * std::numbers::pi / 8.0);
    AuditReport rep;
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
        const double t = rec.times[i];
        const double bound = std::exp(-2.0 * t) * p0 * p0 + cst * (1.0 - std::exp(-2.0 * t));
        const double viol = rec.l2[i] * rec.l2[i] - bound;
        if (viol > rep.max_violation) {
            rep.max_violation = viol;
            rep.worst_time = t;
        }
    }
    rep.passed = rep.max_violation <= slack;
    return rep;
}

AuditReport check_lyapunov_monotone(const TrajectoryRecord& rec, double tol_per_step) {
    AuditReport rep;
    for (std::size_t i = 1; i < rec.times.size(); ++i) {
        const double rise = rec.lyap[i] - rec.lyap[i - 1];
        if (rise > rep.max_violation) {
            rep.max_violation = rise;
            rep.worst_time = rec.times[i];
        }
    }
    rep.passed = rep.max_violation <= tol_per_step;
    return rep;
}

AuditReport check_H1_absorbing(const TrajectoryRecord& rec, const SpectralField& u0,
                               const SpectralField& f, double slack) {
    const double fn = norm_hs(f, 0.0);
    const double u0n = norm_hs(u0, 0.0);
    const double C = 2.0 * (2.0 * fn * fn + u0n * u0n + 3.0 * std::sqrt(std::numbers::pi));
    AuditReport rep;
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
        if (rec.times[i] < std::log(2.0)) continue;
        const double viol = rec.h1[i] * rec.h1[i] - 2.0 * C;
        if (viol > rep.max_violation) {
            rep.max_violation = viol;
            rep.worst_time = rec.times[i];
        }
    }
    rep.passed = rep.max_violation <= slack;
    return rep;
}

double entry_time_parabolic(double u0_h3_norm, double rho, double C, double c,
                            bool already_inside) {
    if (rho * rho <= C / c) throw std::domain_error("entry_time_parabolic: rho^2 <= C/c");
    if (already_inside) return 0.0;
    const double num = u0_h3_norm * u0_h3_norm - 1.0;
    const double den = rho * rho - C / c;
    if (num <= den) return 0.0;  // log argument <= 1
    return std::log(num / den) / c;
}

}  // namespace cim
