#include "cim/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace cim {

std::size_t GraphSample::n_converged() const {
    return std::size_t(std::count(converged.begin(), converged.end(), char(1)));
}

WindowTimes default_windows(double tau3, int i3_points, double t_horizon, int t_grid_size) {
    if (i3_points < 1) throw std::invalid_argument("default_windows: i3_points must be >= 1");
    WindowTimes w;
    for (int j = 0; j < 3; ++j) w.c[j] = std::log(double(j + 2));
    w.tau3 = tau3;
    w.t_horizon = t_horizon;
    w.t_grid_size = t_grid_size;
    if (tau3 == 0.0 || i3_points == 1)
        w.I3_grid.assign(1, tau3);
    else
        for (int k = 0; k < i3_points; ++k)
            w.I3_grid.push_back(tau3 + tau3 * double(k) / double(i3_points - 1));
    return w;
}

namespace {

std::vector<std::vector<double>> axis_tuples(int n_axes, double halfwidth, int points_per_axis,
                                             std::size_t cap, std::uint64_t seed) {
    if (n_axes < 1 || points_per_axis < 1)
        throw std::invalid_argument("grid: bad dimensions");
    std::vector<double> axis(points_per_axis);
    for (int i = 0; i < points_per_axis; ++i)
        axis[i] = points_per_axis == 1
                      ? 0.0
                      : -halfwidth + 2.0 * halfwidth * double(i) / double(points_per_axis - 1);

    double total_d = std::pow(double(points_per_axis), double(n_axes));
    std::vector<std::vector<double>> tuples;
    if (total_d <= double(cap)) {
        const std::size_t total = std::size_t(std::llround(total_d));
        tuples.reserve(total);
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::vector<double> t(n_axes);
            std::size_t rem = idx;
            for (int a = 0; a < n_axes; ++a) {
                t[a] = axis[rem % points_per_axis];
                rem /= points_per_axis;
            }
            tuples.push_back(std::move(t));
        }
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> pick(0, points_per_axis - 1);
        tuples.reserve(cap);
        for (std::size_t k = 0; k < cap; ++k) {
            std::vector<double> t(n_axes);
            for (int a = 0; a < n_axes; ++a) t[a] = axis[pick(rng)];
            tuples.push_back(std::move(t));
        }
    }
    return tuples;
}

}  // namespace

std::vector<SpectralField> low_mode_grid(int n_low, int n_modes, double halfwidth,
                                         int points_per_axis, std::size_t cap,
                                         std::uint64_t seed) {
    if (n_low > n_modes) throw std::invalid_argument("low_mode_grid: n_low > n_modes");
    auto tuples = axis_tuples(n_low, halfwidth, points_per_axis, cap, seed);
    std::vector<SpectralField> grid;
    grid.reserve(tuples.size());
    for (const auto& t : tuples) {
        SpectralField f{std::size_t(n_modes)};
        for (int a = 0; a < n_low; ++a) f[std::size_t(a)] = t[std::size_t(a)];
        grid.push_back(std::move(f));
    }
    return grid;
}

std::vector<ProductState> low_mode_grid_product(int n_low, int n_modes, double halfwidth,
                                                int points_per_axis, std::size_t cap,
                                                std::uint64_t seed) {
    if (n_low > n_modes) throw std::invalid_argument("low_mode_grid_product: n_low > n_modes");
    auto tuples = axis_tuples(2 * n_low, halfwidth, points_per_axis, cap, seed);
    std::vector<ProductState> grid;
    grid.reserve(tuples.size());
    for (const auto& t : tuples) {
        SpectralField u{std::size_t(n_modes)}, v{std::size_t(n_modes)};
        for (int a = 0; a < n_low; ++a) {
            u[std::size_t(a)] = t[std::size_t(a)];
            v[std::size_t(a)] = t[std::size_t(n_low + a)];
        }
        grid.emplace_back(std::move(u), std::move(v));
    }
    return grid;
}

GraphSample fit_graph_parabolic(const std::vector<SpectralField>& xi_grid,
                                const GraphFitParams& fit, const ParabolicConfig& cfg) {
    if (fit.T_relax <= 0.0) throw std::invalid_argument("fit_graph: T_relax must be > 0");
    const ParabolicFlow flow(cfg);
    int n_low = 0;
    GraphSample g;
    g.product = false;
    for (const SpectralField& xi : xi_grid) {
        for (std::size_t i = 0; i < xi.n_modes(); ++i)
            if (xi[i] != 0.0) n_low = std::max(n_low, int(i) + 1);
    }
    if (n_low == 0) n_low = 1;
    g.n_low = n_low;
    for (const SpectralField& xi : xi_grid) {
        SpectralField q(xi.n_modes());
        double resid = 0.0;
        bool ok = false;
        for (int it = 0; it < fit.max_iter; ++it) {
            SpectralField next = project_Q(flow.advance(xi + q, fit.T_relax), n_low);
            resid = norm_hs(next - q, 1.0);
            q = next;
            if (resid < fit.tol) {
                ok = true;
                break;
            }
        }
        g.xi.emplace_back(xi, SpectralField(xi.n_modes()));
        g.values.emplace_back(q, SpectralField(xi.n_modes()));
        g.converged.push_back(ok ? 1 : 0);
        g.residual.push_back(resid);
    }
    return g;
}

GraphSample fit_graph_hyperbolic(const std::vector<ProductState>& xi_grid,
                                 const GraphFitParams& fit, const HyperbolicConfig& cfg) {
    if (fit.T_relax <= 0.0) throw std::invalid_argument("fit_graph: T_relax must be > 0");
    const HyperbolicFlow flow(cfg);
    int n_low = 0;
    for (const ProductState& xi : xi_grid)
        for (std::size_t i = 0; i < xi.n_modes(); ++i)
            if (xi.u[i] != 0.0 || xi.v[i] != 0.0) n_low = std::max(n_low, int(i) + 1);
    if (n_low == 0) n_low = 1;
    GraphSample g;
    g.product = true;
    g.n_low = n_low;
    for (const ProductState& xi : xi_grid) {
        ProductState q(SpectralField(xi.n_modes()), SpectralField(xi.n_modes()));
        double resid = 0.0;
        bool ok = false;
        for (int it = 0; it < fit.max_iter; ++it) {
            ProductState out = flow.advance(xi + q, fit.T_relax);
            ProductState next(project_Q(out.u, n_low), project_Q(out.v, n_low));
            resid = norm_xeps(next - q, 1, cfg.eps);
            q = next;
            if (resid < fit.tol) {
                ok = true;
                break;
            }
        }
        g.xi.push_back(xi);
        g.values.push_back(q);
        g.converged.push_back(ok ? 1 : 0);
        g.residual.push_back(resid);
    }
    return g;
}

ManifoldCloud graph_cloud(const GraphSample& graph) {
    ManifoldCloud c;
    c.product = graph.product;
    for (std::size_t i = 0; i < graph.size(); ++i) {
        if (!graph.converged[i]) continue;
        c.points.push_back(graph.xi[i] + graph.values[i]);
        c.provenance.push_back({0.0, 0.0});
    }
    return c;
}

namespace {

std::vector<double> window_grid(double start, double horizon, int size) {
    std::vector<double> g;
    if (size < 1) size = 1;
    for (int k = 0; k < size; ++k)
        g.push_back(size == 1 ? start + horizon
                              : start + horizon * double(k) / double(size - 1));
    return g;
}

}  // namespace

ManifoldCloud build_omega_K(const GraphSample& graph, const WindowTimes& windows,
                            const ParabolicConfig& cfg) {
    ManifoldCloud c0 = graph_cloud(graph);
    if (c0.points.empty()) throw std::invalid_argument("build_omega_K: empty graph cloud");
    const ParabolicFlow flow(cfg);
    // K_p = S_p; the c_0 and c_1 windows contribute their endpoint slice.
    std::vector<SpectralField> pts;
    pts.reserve(c0.points.size());
    for (const ProductState& p : c0.points) pts.push_back(p.u);
    for (int j = 0; j < 2; ++j)
        for (SpectralField& p : pts) p = flow.advance(std::move(p), windows.c[j] + windows.t_horizon);

    ManifoldCloud out;
    out.product = false;
    const auto tgrid = window_grid(windows.c[2], windows.t_horizon, windows.t_grid_size);
    for (const SpectralField& p : pts) {
        SpectralField cur = flow.advance(p, tgrid.front());
        out.points.emplace_back(cur, SpectralField(cur.n_modes()));
        out.provenance.push_back({0.0, tgrid.front()});
        for (std::size_t k = 1; k < tgrid.size(); ++k) {
            cur = flow.advance(std::move(cur), tgrid[k] - tgrid[k - 1]);
            out.points.emplace_back(cur, SpectralField(cur.n_modes()));
            out.provenance.push_back({0.0, tgrid[k]});
        }
    }
    return out;
}

ManifoldCloud build_omega_K(const GraphSample& graph, const WindowTimes& windows,
                            const HyperbolicConfig& cfg) {
    ManifoldCloud c0 = graph_cloud(graph);
    if (c0.points.empty()) throw std::invalid_argument("build_omega_K: empty graph cloud");
    const HyperbolicFlow flow(cfg);
    // K_eps(t) x = (w(t), w_t(t)) of the decomposition started at x.
    auto K_endpoint = [&](const ProductState& x, double t) {
        DecomposedTrajectory d = flow.evolve_decomposed(x, t, 1 << 30);
        return d.w_states.back();
    };
    std::vector<ProductState> pts = c0.points;
    for (int j = 0; j < 2; ++j)
        for (ProductState& p : pts) p = K_endpoint(p, windows.c[j] + windows.t_horizon);

    ManifoldCloud out;
    out.product = true;
    const auto tgrid = window_grid(windows.c[2], windows.t_horizon, windows.t_grid_size);
    for (const ProductState& p : pts) {
        // One decomposed run per point; capture the w-component at grid times.
        const double dt = flow.dt();
        const long total = std::lround(tgrid.back() / dt);
        std::vector<long> marks;
        for (double t : tgrid) marks.push_back(std::lround(t / dt));
        DecomposedTrajectory d = flow.evolve_decomposed(p, double(total) * dt, 1);
        for (std::size_t k = 0; k < tgrid.size(); ++k) {
            const std::size_t idx = std::size_t(std::min<long>(marks[k], long(d.w_states.size()) - 1));
            out.points.push_back(d.w_states[idx]);
            out.provenance.push_back({0.0, tgrid[k]});
        }
    }
    return out;
}

ManifoldCloud build_compact_manifold(const ManifoldCloud& omega_cloud,
                                     const WindowTimes& windows, const ParabolicConfig& cfg) {
    if (windows.I3_grid.empty())
        throw std::invalid_argument("build_compact_manifold: empty I3 grid");
    const ParabolicFlow flow(cfg);
    ManifoldCloud out;
    out.product = false;
    for (double tau : windows.I3_grid)
        for (std::size_t i = 0; i < omega_cloud.points.size(); ++i) {
            SpectralField p = flow.advance(omega_cloud.points[i].u, tau);
            out.points.emplace_back(p, SpectralField(p.n_modes()));
            out.provenance.push_back({tau, omega_cloud.provenance[i][1]});
        }
    return out;
}

ManifoldCloud build_compact_manifold(const ManifoldCloud& omega_cloud,
                                     const WindowTimes& windows, const HyperbolicConfig& cfg) {
    if (windows.I3_grid.empty())
        throw std::invalid_argument("build_compact_manifold: empty I3 grid");
    const HyperbolicFlow flow(cfg);
    ManifoldCloud out;
    out.product = true;
    for (double tau : windows.I3_grid)
        for (std::size_t i = 0; i < omega_cloud.points.size(); ++i) {
            out.points.push_back(flow.advance(omega_cloud.points[i], tau));
            out.provenance.push_back({tau, omega_cloud.provenance[i][1]});
        }
    return out;
}

WindowTimes apply_compatibility(const GapCertificate& cert, const WindowTimes& parabolic,
                                const WindowTimes& hyperbolic) {
    WindowTimes w;
    for (int j = 0; j < 3; ++j) w.c[j] = std::max(parabolic.c[j], hyperbolic.c[j]);
    w.tau3 = std::max(parabolic.tau3, hyperbolic.tau3);
    w.t_horizon = std::max(parabolic.t_horizon, hyperbolic.t_horizon);
    w.t_grid_size = std::max(parabolic.t_grid_size, hyperbolic.t_grid_size);
    const int i3 = std::max(int(parabolic.I3_grid.size()), int(hyperbolic.I3_grid.size()));
    w.I3_grid.clear();
    for (int k = 0; k < i3; ++k)
        w.I3_grid.push_back(i3 == 1 || w.tau3 == 0.0
                                ? w.tau3
                                : w.tau3 + w.tau3 * double(k) / double(i3 - 1));
    if (w.tau3 == 0.0) w.I3_grid.assign(1, 0.0);
    w.n_star = std::max(cert.n_star_parabolic,
                        cert.n_star_hyperbolic.value_or(cert.n_star_parabolic));
    return w;
}

}  // namespace cim
