#include "cim/robustness.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cim {

ProductState lift(const SpectralField& u, const SpectralField& f) {
    return {u, extension_E(u, f)};
}

ManifoldCloud lift_cloud(const ManifoldCloud& cloud, const SpectralField& f) {
    ManifoldCloud out;
    out.product = true;
    out.provenance = cloud.provenance;
    out.points.reserve(cloud.points.size());
    for (const ProductState& p : cloud.points) out.points.push_back(lift(p.u, f));
    return out;
}

double semidist(const ManifoldCloud& U, const ManifoldCloud& V, int k, double eps) {
    if (U.points.empty() || V.points.empty())
        throw std::domain_error("semidist: empty cloud");
    if (U.points.front().n_modes() != V.points.front().n_modes())
        throw std::invalid_argument("semidist: mode-count mismatch");
    double sup = 0.0;
    for (const ProductState& x : U.points) {
        double best = std::numeric_limits<double>::infinity();
        for (const ProductState& y : V.points)
            best = std::min(best, norm_xeps(x - y, k, eps));
        sup = std::max(sup, best);
    }
    return sup;
}

HausdorffReport symdist(const ManifoldCloud& U, const ManifoldCloud& V, int k, double eps) {
    HausdorffReport r;
    r.k = k;
    r.eps = eps;
    r.d_uv = semidist(U, V, k, eps);
    r.d_vu = semidist(V, U, k, eps);
    r.dist = std::max(r.d_uv, r.d_vu);
    return r;
}

SingularLimitReport run_singular_limit(const ProductState& x0, double eps, double window_start,
                                       double window_end, const ParabolicConfig& pcfg) {
    if (eps <= 0.0 || eps > 1.0)
        throw std::domain_error("run_singular_limit: eps must be in (0,1]");
    if (window_end < window_start)
        throw std::invalid_argument("run_singular_limit: bad window");

    HyperbolicConfig hcfg;
    hcfg.eps = eps;
    hcfg.f = pcfg.f;
    hcfg.n_modes = pcfg.n_modes;
    hcfg.dt = pcfg.dt;
    hcfg.use_modified_nonlinearity = pcfg.use_modified_nonlinearity;
    hcfg.delta = pcfg.delta;

    const ParabolicFlow pflow(pcfg);
    const HyperbolicFlow hflow(hcfg);
    const long sub = std::lround(pcfg.dt / hflow.dt());  // 1, or 2 below eps = 1e-3

    SingularLimitReport rep;
    rep.eps = eps;
    rep.window_start = window_start;
    rep.window_end = window_end;

    ProductState x = x0;
    SpectralField p = x0.u;
    const long steps = std::lround(window_end / pcfg.dt);
    for (long k = 0; k <= steps; ++k) {
        const double t = double(k) * pcfg.dt;
        if (t >= window_start) {
            const ProductState lifted = lift(p, pcfg.f);
            const double d = norm_xeps(x - lifted, 1, eps);
            rep.times.push_back(t);
            rep.norms.push_back(d);
            rep.sup_t_norm = std::max(rep.sup_t_norm, d);
        }
        if (k == steps) break;
        p = pflow.step(p);
        for (long s = 0; s < sub; ++s) x = hflow.step(x);
        if (!p.finite() || !x.u.finite()) throw IntegrationError(t + pcfg.dt);
    }
    return rep;
}

PowerFit fit_power_law(const std::vector<double>& eps_values,
                       const std::vector<double>& distances) {
    if (eps_values.size() != distances.size() || eps_values.size() < 2)
        throw std::invalid_argument("fit_power_law: need matching vectors, length >= 2");
    const std::size_t n = eps_values.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (eps_values[i] <= 0.0 || distances[i] <= 0.0)
            throw std::domain_error("fit_power_law: values must be positive");
        const double x = std::log(eps_values[i]);
        const double y = std::log(distances[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    const double dn = double(n);
    const double cov = sxy - sx * sy / dn;
    const double varx = sxx - sx * sx / dn;
    const double vary = syy - sy * sy / dn;
    PowerFit f;
    f.phi = cov / varx;
    f.Lambda = std::exp((sy - f.phi * sx) / dn);
    f.r_squared = vary == 0.0 ? 1.0 : (cov * cov) / (varx * vary);
    return f;
}

ManifoldCloud build_parabolic_manifold(const PipelineConfig& cfg) {
    ParabolicConfig pcfg{cfg.f, cfg.n_modes, cfg.dt, cfg.use_modified_nonlinearity, cfg.delta};
    auto grid = low_mode_grid(cfg.n_star, cfg.n_modes, cfg.grid_halfwidth,
                              cfg.grid_points_per_axis, cfg.grid_cap, cfg.seed);
    GraphSample g = fit_graph_parabolic(grid, cfg.fit, pcfg);
    ManifoldCloud omega = build_omega_K(g, cfg.windows, pcfg);
    return build_compact_manifold(omega, cfg.windows, pcfg);
}

ManifoldCloud build_hyperbolic_manifold(double eps, const PipelineConfig& cfg) {
    HyperbolicConfig hcfg{eps,    cfg.f,   cfg.n_modes,
                          cfg.dt, cfg.use_modified_nonlinearity, cfg.delta};
    auto grid = low_mode_grid_product(cfg.n_star, cfg.n_modes, cfg.grid_halfwidth,
                                      cfg.grid_points_per_axis, cfg.grid_cap, cfg.seed);
    GraphSample g = fit_graph_hyperbolic(grid, cfg.fit, hcfg);
    ManifoldCloud omega = build_omega_K(g, cfg.windows, hcfg);
    return build_compact_manifold(omega, cfg.windows, hcfg);
}

RobustnessFit sweep_eps(const ManifoldCloud& parabolic_manifold,
                        const std::vector<double>& eps_list, const PipelineConfig& cfg) {
    if (eps_list.size() < 3)
        throw std::invalid_argument("sweep_eps: need at least 3 eps values");
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (eps_list[i] >= eps_list[i - 1])
            throw std::invalid_argument("sweep_eps: eps_list must be strictly decreasing");

    RobustnessFit out;
    for (double eps : eps_list) {
        ManifoldCloud m_eps = build_hyperbolic_manifold(eps, cfg);
        ManifoldCloud lifted = lift_cloud(parabolic_manifold, cfg.f);
        HausdorffReport h = symdist(m_eps, lifted, 1, eps);
        out.eps_values.push_back(eps);
        out.d_uv.push_back(h.d_uv);
        out.d_vu.push_back(h.d_vu);
        out.distances.push_back(h.dist);
    }
    out.fit = fit_power_law(out.eps_values, out.distances);
    return out;
}

double tail_sum(int N) {
    if (N < 1) throw std::domain_error("tail_sum: N must be >= 1");
    double s = 0.0;
    long n = N + 1;
    while (n < 1000) {
        s += 1.0 / (double(n) * double(n));
        ++n;
    }
    // trigamma asymptotic at z = n; remainder well below 1e-12.
    const double z = double(n);
    const double z2 = z * z;
    s += 1.0 / z + 1.0 / (2.0 * z2) + 1.0 / (6.0 * z2 * z) - 1.0 / (30.0 * z2 * z2 * z) +
         1.0 / (42.0 * z2 * z2 * z2 * z);
    return s;
}

TailAudit check_tail_bound(const GraphSample& graph, int N) {
    if (N < 1) throw std::domain_error("check_tail_bound: N must be >= 1");
    const double tail = tail_sum(N);
    TailAudit a;
    auto check_field = [&](const SpectralField& m) {
        if (int(m.n_modes()) < N) return;
        const double lhs = norm_hs(project_Q(m, N), 1.0);
        const double rhs = norm_hs(m, 3.0) * tail;
        const double margin = lhs - rhs;
        a.worst_margin = std::max(a.worst_margin, margin);
        if (margin > 1e-12 * (1.0 + rhs)) a.passed = false;
        ++a.checked;
    };
    for (std::size_t i = 0; i < graph.size(); ++i) {
        if (!graph.converged[i]) continue;
        check_field(graph.values[i].u);
        if (graph.product) check_field(graph.values[i].v);
    }
    return a;
}

}  // namespace cim
