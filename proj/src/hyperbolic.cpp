#include "cim/hyperbolic.hpp"

#include <cmath>

namespace cim {

namespace {

double sinch(double x) {  // sinh(x)/x
    if (std::fabs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sinh(x) / x;
}

double sinc(double x) {  // sin(x)/x
    if (std::fabs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

}  // namespace

ModePropagator mode_propagator(double lambda, double eps, double dt) {
    if (eps <= 0.0) throw std::domain_error("mode_propagator: eps must be > 0");
    const double b = 1.0 / eps;       // damping
    const double c = lambda / eps;    // stiffness
    const double m = -0.5 * b;
    const double disc = 0.25 * b * b - c;

    ModePropagator p{};
    if (disc > 0.0 && std::sqrt(disc) * dt > 20.0) {
        // Widely separated real rates; slow root evaluated without cancellation.
        const double mu_slow = -2.0 * c / (b + std::sqrt(b * b - 4.0 * c));
        const double mu_fast = -b - mu_slow;
        const double e1 = std::exp(mu_slow * dt);
        const double e2 = std::exp(mu_fast * dt);
        const double den = mu_slow - mu_fast;
        p.e00 = (mu_slow * e2 - mu_fast * e1) / den;
        p.e01 = (e1 - e2) / den;
        p.e10 = -c * p.e01;
        p.e11 = (mu_slow * e1 - mu_fast * e2) / den;
    } else if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        const double em = std::exp(m * dt);
        const double ch = std::cosh(s * dt);
        const double sh = dt * sinch(s * dt);
        p.e00 = em * (ch - m * sh);
        p.e01 = em * sh;
        p.e10 = -c * em * sh;
        p.e11 = em * (ch + m * sh);
    } else {
        const double s = std::sqrt(-disc);
        const double em = std::exp(m * dt);
        const double cs = std::cos(s * dt);
        const double sn = dt * sinc(s * dt);
        p.e00 = em * (cs - m * sn);
        p.e01 = em * sn;
        p.e10 = -c * em * sn;
        p.e11 = em * (cs + m * sn);
    }
    p.phi_u = (1.0 - p.e11 - p.e01 / eps) / lambda;
    p.phi_v = p.e01 / eps;
    return p;
}

HyperbolicFlow::HyperbolicFlow(HyperbolicConfig cfg)
    : cfg_(std::move(cfg)), transform_(std::size_t(cfg_.n_modes)) {
    if (cfg_.eps <= 0.0 || cfg_.eps > 1.0)
        throw std::invalid_argument("HyperbolicFlow: eps must be in (0,1]");
    if (cfg_.n_modes < 1) throw std::invalid_argument("HyperbolicFlow: n_modes must be >= 1");
    if (cfg_.dt <= 0.0) throw std::invalid_argument("HyperbolicFlow: dt must be > 0");
    if (cfg_.f.n_modes() != std::size_t(cfg_.n_modes))
        throw std::invalid_argument("HyperbolicFlow: forcing mode count mismatch");
    dt_ = cfg_.eps < 1e-3 ? 0.5 * cfg_.dt : cfg_.dt;
    props_.reserve(cfg_.n_modes);
    for (int n = 1; n <= cfg_.n_modes; ++n)
        props_.push_back(mode_propagator(eigenvalue(n), cfg_.eps, dt_));
}

ProductState HyperbolicFlow::linear_step(const ProductState& x, const SpectralField& source) const {
    ProductState r(SpectralField(x.n_modes()), SpectralField(x.n_modes()));
    for (std::size_t i = 0; i < x.n_modes(); ++i) {
        const ModePropagator& p = props_[i];
        r.u[i] = p.e00 * x.u[i] + p.e01 * x.v[i] + p.phi_u * source[i];
        r.v[i] = p.e10 * x.u[i] + p.e11 * x.v[i] + p.phi_v * source[i];
    }
    return r;
}

ProductState HyperbolicFlow::step(const ProductState& x) const {
    SpectralField N = transform_.reaction(x.u, cfg_.use_modified_nonlinearity, cfg_.delta);
    for (std::size_t i = 0; i < N.n_modes(); ++i) N[i] += cfg_.f[i];
    return linear_step(x, N);
}

ProductState HyperbolicFlow::advance(ProductState x, double T) const {
    const long steps = std::lround(T / dt_);
    for (long k = 0; k < steps; ++k) {
        x = step(x);
        if (!x.u.finite() || !x.v.finite()) throw IntegrationError(double(k + 1) * dt_);
    }
    return x;
}

ProductTrajectory HyperbolicFlow::evolve(const ProductState& x0, double T,
                                         int record_every) const {
    if (T < 0.0) throw std::invalid_argument("evolve: T must be >= 0");
    if (record_every < 1) record_every = 1;
    const long steps = std::lround(T / dt_);
    ProductTrajectory rec;
    rec.times.push_back(0.0);
    rec.states.push_back(x0);
    ProductState x = x0;
    for (long k = 1; k <= steps; ++k) {
        x = step(x);
        if (!x.u.finite() || !x.v.finite()) throw IntegrationError(double(k) * dt_);
        if (k % record_every == 0 || k == steps) {
            rec.times.push_back(double(k) * dt_);
            rec.states.push_back(x);
        }
    }
    return rec;
}

DecomposedTrajectory HyperbolicFlow::evolve_decomposed(const ProductState& x0, double T,
                                                       int record_every) const {
    if (T < 0.0) throw std::invalid_argument("evolve_decomposed: T must be >= 0");
    if (record_every < 1) record_every = 1;
    const long steps = std::lround(T / dt_);
    const std::size_t n = x0.n_modes();

    ProductState v = x0;
    ProductState w{SpectralField(n), SpectralField(n)};
    ProductState u = x0;

    DecomposedTrajectory rec;
    auto push = [&](double t) {
        rec.times.push_back(t);
        rec.v_states.push_back(v);
        rec.w_states.push_back(w);
        rec.u_states.push_back(u);
    };
    push(0.0);
    for (long k = 1; k <= steps; ++k) {
        // v-problem: eps v_tt + v_t - Dv + v^3 = 0.
        SpectralField Nv = -transform_.cubic(v.u);
        // w-problem source: f + v^3 - g(v+w), zero initial data.
        SpectralField sum_u = v.u + w.u;
        SpectralField Nw =
            transform_.reaction(sum_u, cfg_.use_modified_nonlinearity, cfg_.delta);
        SpectralField cub_v = transform_.cubic(v.u);
        for (std::size_t i = 0; i < n; ++i) Nw[i] += cfg_.f[i] + cub_v[i];
        SpectralField Nu = transform_.reaction(u.u, cfg_.use_modified_nonlinearity, cfg_.delta);
        for (std::size_t i = 0; i < n; ++i) Nu[i] += cfg_.f[i];

        v = linear_step(v, Nv);
        w = linear_step(w, Nw);
        u = linear_step(u, Nu);
        if (!v.u.finite() || !w.u.finite() || !u.u.finite())
            throw IntegrationError(double(k) * dt_);
        if (k % record_every == 0 || k == steps) push(double(k) * dt_);
    }
    return rec;
}

double norm_N3(const ProductState& x, double eps) {
    if (eps <= 0.0 || eps > 1.0) throw std::domain_error("norm_N3: eps must be in (0,1]");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.n_modes(); ++i) {
        const double lam = eigenvalue(int(i) + 1);
        const double l2 = lam * lam;
        acc += eps * l2 * x.v[i] * x.v[i];
        acc += eps * l2 * x.v[i] * x.u[i];
        acc += 0.5 * l2 * x.u[i] * x.u[i];
        acc += l2 * lam * x.u[i] * x.u[i];
    }
    return acc;
}

double entry_time_hyperbolic(double N3_at_0, double rho, double C3) {
    if (rho * rho <= 10.0 * C3) throw std::domain_error("entry_time_hyperbolic: rho^2 <= 10 C3");
    if (N3_at_0 <= 5.0 * C3) return 0.0;
    const double arg = 2.0 * (N3_at_0 - 5.0 * C3) / (rho * rho - 10.0 * C3);
    if (arg <= 1.0) return 0.0;
    return 5.0 * std::log(arg);
}

}  // namespace cim
