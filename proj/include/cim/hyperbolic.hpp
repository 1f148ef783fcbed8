#ifndef CIM_HYPERBOLIC_HPP
#define CIM_HYPERBOLIC_HPP

#include "cim/parabolic.hpp"
#include "cim/spectral.hpp"

#include <vector>

// Galerkin integration of eps u_tt + u_t - u_xx + u^3 - u = f in product
// state space, and the v/w decomposition of the semiflow.

namespace cim {

struct HyperbolicConfig {
    double eps = 1.0;
    SpectralField f;
    int n_modes = 32;
    double dt = 1e-3;
    bool use_modified_nonlinearity = false;
    double delta = 1.5;
};

struct ProductTrajectory {
    std::vector<double> times;
    std::vector<ProductState> states;
};

struct DecomposedTrajectory {
    std::vector<double> times;
    std::vector<ProductState> v_states;
    std::vector<ProductState> w_states;
    std::vector<ProductState> u_states;  // directly integrated full solution
};

// Per-mode 2x2 exponential of the linear block, plus the exact
// variation-of-constants weights for a constant nonlinear source.
struct ModePropagator {
    double e00, e01, e10, e11;  // exp(dt B_n)
    double phi_u, phi_v;        // B_n^{-1} (exp(dt B_n) - I) applied to (0, 1/eps)
};

ModePropagator mode_propagator(double lambda, double eps, double dt);

class HyperbolicFlow {
  public:
    explicit HyperbolicFlow(HyperbolicConfig cfg);

    const HyperbolicConfig& config() const { return cfg_; }
    // dt is halved below eps = 1e-3 to resolve the velocity transient.
    double dt() const { return dt_; }

    ProductState step(const ProductState& x) const;
    ProductState advance(ProductState x, double T) const;
    ProductTrajectory evolve(const ProductState& x0, double T, int record_every = 1) const;

    // Co-integrates the v-problem (zero forcing, pure cubic, data x0), the
    // w-problem (source f + v^3 - g(v+w), zero data), and the full problem.
    DecomposedTrajectory evolve_decomposed(const ProductState& x0, double T,
                                           int record_every = 1) const;

  private:
    ProductState linear_step(const ProductState& x, const SpectralField& source) const;

    HyperbolicConfig cfg_;
    double dt_;
    SineTransform transform_;
    std::vector<ModePropagator> props_;
};

// N3 = eps |Dw_t|^2 + eps <Dw_t, Dw> + 1/2 |Dw|^2 + |grad Dw|^2, all spectral.
double norm_N3(const ProductState& x, double eps);

// tau = 5 ln( 2 (N3(0) - 5 C3) / (rho^2 - 10 C3) ), clipped below at zero.
double entry_time_hyperbolic(double N3_at_0, double rho, double C3);

}  // namespace cim

#endif
