#ifndef CIM_ROBUSTNESS_HPP
#define CIM_ROBUSTNESS_HPP

#include "cim/manifold.hpp"

#include <cstdint>
#include <vector>

// Lift map, eps-weighted Hausdorff semidistances, the singular-limit
// experiment, the eps-sweep with power-law fitting, and the tail-sum
// weak-robustness audit.

namespace cim {

struct HausdorffReport {
    double d_uv = 0.0;
    double d_vu = 0.0;
    double dist = 0.0;
    int k = 1;
    double eps = 0.0;
};

// u -> (u, E u).
ProductState lift(const SpectralField& u, const SpectralField& f);
ManifoldCloud lift_cloud(const ManifoldCloud& cloud, const SpectralField& f);

// Brute-force sup-inf over the clouds under |.|_{X^eps_k}.
double semidist(const ManifoldCloud& U, const ManifoldCloud& V, int k, double eps);
HausdorffReport symdist(const ManifoldCloud& U, const ManifoldCloud& V, int k, double eps);

struct SingularLimitReport {
    double eps = 0.0;
    double sup_t_norm = 0.0;
    double window_start = 0.0;
    double window_end = 0.0;
    std::vector<double> times;
    std::vector<double> norms;
};

// Co-integrates S_eps from x0 and S_p from the u-component, and evaluates
// |S_eps(t) x0 - L S_p(t) u0|_{X^eps_1} on the window grid.
SingularLimitReport run_singular_limit(const ProductState& x0, double eps, double window_start,
                                       double window_end, const ParabolicConfig& pcfg);

struct PowerFit {
    double Lambda = 0.0;
    double phi = 0.0;
    double r_squared = 0.0;
};

// OLS in log-log space: log d = phi log eps + log Lambda.
PowerFit fit_power_law(const std::vector<double>& eps_values,
                       const std::vector<double>& distances);

struct RobustnessFit {
    std::vector<double> eps_values;
    std::vector<double> d_uv;
    std::vector<double> d_vu;
    std::vector<double> distances;
    PowerFit fit;
};

// Everything the per-eps pipeline needs besides eps itself.
struct PipelineConfig {
    double delta = 1.5;
    SpectralField f;
    int n_modes = 16;
    double dt = 1e-3;
    bool use_modified_nonlinearity = false;
    int n_star = 4;
    double grid_halfwidth = 1.5;
    int grid_points_per_axis = 3;
    std::size_t grid_cap = 729;
    GraphFitParams fit;
    WindowTimes windows;
    std::uint64_t seed = 1;
};

ManifoldCloud build_parabolic_manifold(const PipelineConfig& cfg);
ManifoldCloud build_hyperbolic_manifold(double eps, const PipelineConfig& cfg);

// For each eps: build the hyperbolic compact manifold, lift the parabolic
// one, take the symmetric Hausdorff distance in X^eps_1, then fit.
RobustnessFit sweep_eps(const ManifoldCloud& parabolic_manifold,
                        const std::vector<double>& eps_list, const PipelineConfig& cfg);

// sum_{n > N} n^{-2}, within 1e-12.
double tail_sum(int N);

struct TailAudit {
    bool passed = true;
    double worst_margin = -1.0;  // max over samples of lhs - rhs (<= 0 passes)
    std::size_t checked = 0;
};

// |Q_N m(chi)|_1 <= |m(chi)|_3 tail_sum(N) on every converged sample.
TailAudit check_tail_bound(const GraphSample& graph, int N);

}  // namespace cim

#endif
