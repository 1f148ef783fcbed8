#ifndef CIM_MANIFOLD_HPP
#define CIM_MANIFOLD_HPP

#include "cim/gap.hpp"
#include "cim/hyperbolic.hpp"
#include "cim/parabolic.hpp"

#include <array>
#include <cstdint>
#include <vector>

// Numerical graph sampler for inertial manifolds and the finite
// approximations of the omega^K sets and the compact manifolds.

namespace cim {

// Sampled graph xi -> m(xi). Parabolic samples carry zero velocity slots
// (product = false); hyperbolic samples are genuine product pairs.
struct GraphSample {
    int n_low = 0;
    bool product = false;
    std::vector<ProductState> xi;
    std::vector<ProductState> values;
    std::vector<char> converged;
    std::vector<double> residual;

    std::size_t size() const { return xi.size(); }
    std::size_t n_converged() const;
};

struct ManifoldCloud {
    bool product = false;
    std::vector<ProductState> points;
    std::vector<std::array<double, 2>> provenance;  // (tau, t) that generated the point

    std::size_t size() const { return points.size(); }
};

struct WindowTimes {
    std::array<double, 3> c{0.0, 0.0, 0.0};  // window starts c_0, c_1, c_2
    double tau3 = 0.0;
    std::vector<double> I3_grid;  // tau samples in [tau3, 2 tau3]
    double t_horizon = 10.0;
    int t_grid_size = 16;
    int n_star = 0;
};

struct GraphFitParams {
    double T_relax = 1.0;
    double tol = 1e-7;
    int max_iter = 200;
};

// c_j = ln(j+2) defaults; I3 grid sampled uniformly over [tau3, 2 tau3]
// (the single point {tau3} when tau3 = 0 and i3_points = 1).
WindowTimes default_windows(double tau3, int i3_points, double t_horizon, int t_grid_size);

// Uniform tensor grid on [-a, a]^{n_low} embedded in n_modes coefficients;
// grids beyond `cap` points are subsampled deterministically from `seed`.
std::vector<SpectralField> low_mode_grid(int n_low, int n_modes, double halfwidth,
                                         int points_per_axis, std::size_t cap,
                                         std::uint64_t seed);
std::vector<ProductState> low_mode_grid_product(int n_low, int n_modes, double halfwidth,
                                                int points_per_axis, std::size_t cap,
                                                std::uint64_t seed);

// Re-anchored relaxation: q <- Q_{n_low} S(T_relax)(xi + q), low modes pinned
// back to xi each pass; stops when successive q differ by < tol in H^1
// (X^eps_1 for the hyperbolic sampler).
GraphSample fit_graph_parabolic(const std::vector<SpectralField>& xi_grid,
                                const GraphFitParams& fit, const ParabolicConfig& cfg);
GraphSample fit_graph_hyperbolic(const std::vector<ProductState>& xi_grid,
                                 const GraphFitParams& fit, const HyperbolicConfig& cfg);

ManifoldCloud graph_cloud(const GraphSample& graph);  // converged points only

// Finite omega^K approximation: the graph cloud is pushed through the c_0
// and c_1 windows (endpoint slice), then the whole t-grid over
// [c_2, c_2 + t_horizon] is kept. Parabolic K = S_p; hyperbolic K is the
// w-component map of the decomposed flow.
ManifoldCloud build_omega_K(const GraphSample& graph, const WindowTimes& windows,
                            const ParabolicConfig& cfg);
ManifoldCloud build_omega_K(const GraphSample& graph, const WindowTimes& windows,
                            const HyperbolicConfig& cfg);

// Union over tau in I3_grid of S(tau) applied to the omega cloud.
ManifoldCloud build_compact_manifold(const ManifoldCloud& omega_cloud,
                                     const WindowTimes& windows, const ParabolicConfig& cfg);
ManifoldCloud build_compact_manifold(const ManifoldCloud& omega_cloud,
                                     const WindowTimes& windows, const HyperbolicConfig& cfg);

// Componentwise maxima of the two window sets; N* = max(N_p*, N_eps*).
WindowTimes apply_compatibility(const GapCertificate& cert, const WindowTimes& parabolic,
                                const WindowTimes& hyperbolic);

}  // namespace cim

#endif
