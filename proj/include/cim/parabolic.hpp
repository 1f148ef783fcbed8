#ifndef CIM_PARABOLIC_HPP
#define CIM_PARABOLIC_HPP

#include "cim/spectral.hpp"

#include <stdexcept>
#include <vector>

// Galerkin integration of p_t - p_xx + p^3 - p = f with Dirichlet
// conditions on (0,pi), plus the runtime inequality auditors.

namespace cim {

struct IntegrationError : std::runtime_error {
    double time;
    explicit IntegrationError(double t)
        : std::runtime_error("non-finite state at t = " + std::to_string(t)), time(t) {}
};

struct ParabolicConfig {
    SpectralField f;
    int n_modes = 32;
    double dt = 1e-3;
    bool use_modified_nonlinearity = false;
    double delta = 1.5;
};

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<SpectralField> states;
    std::vector<double> l2;
    std::vector<double> h1;
    std::vector<double> lyap;
};

struct AuditReport {
    bool passed = true;
    double max_violation = 0.0;
    double worst_time = 0.0;
};

// Exponential Euler with the exact diagonal heat propagator. The linear +u
// term rides in the nonlinearity, matching the mild-solution splitting.
class ParabolicFlow {
  public:
    explicit ParabolicFlow(ParabolicConfig cfg);

    const ParabolicConfig& config() const { return cfg_; }

    SpectralField rhs(const SpectralField& u) const;  // f - u^3 + u (cutoff optional)
    SpectralField step(const SpectralField& u) const;
    SpectralField advance(SpectralField u, double T) const;
    TrajectoryRecord evolve(const SpectralField& u0, double T, int record_every = 1) const;

  private:
    ParabolicConfig cfg_;
    SineTransform transform_;
    Vec decay_;   // e^{-lambda_n dt}
    Vec weight_;  // (1 - e^{-lambda_n dt}) / lambda_n
};

// V(u) = |grad u|^2 + 1/2 |u|_4^4 - |u|^2 - 2 <f, u>.
double lyapunov(const SpectralField& u, const SpectralField& f);

// E u = f + u_xx - u^3 + u (spectral Laplacian, dealiased cube).
SpectralField extension_E(const SpectralField& u, const SpectralField& f);

// |p(t)|^2 <= e^{-2t} |p0|^2 + 1/2 (|f|^2 + 9 pi / 8)(1 - e^{-2t}).
AuditReport check_L2_decay(const TrajectoryRecord& rec, const SpectralField& u0,
                           const SpectralField& f, double slack = 1e-6);

// Lyapunov value nonincreasing along the record, per-step tolerance.
AuditReport check_lyapunov_monotone(const TrajectoryRecord& rec, double tol_per_step);

// |u(t)|_1^2 <= 2C for t >= ln 2 with C = 2 (2|f|^2 + |u0|^2 + 3 sqrt(pi)).
AuditReport check_H1_absorbing(const TrajectoryRecord& rec, const SpectralField& u0,
                               const SpectralField& f, double slack = 1e-6);

// Logarithmic entry time into the H^3 ball, clipped below at zero.
double entry_time_parabolic(double u0_h3_norm, double rho, double C, double c,
                            bool already_inside = false);

}  // namespace cim

#endif
