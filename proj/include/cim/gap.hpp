#ifndef CIM_GAP_HPP
#define CIM_GAP_HPP

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

// Spectral-gap certification for -d^2/dx^2 on (0,pi) against the cutoff
// nonlinearity, and for the damped-wave relaxation family.

namespace cim {

struct GapMargin {
    std::string condition;
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
};

struct GapCertificate {
    double delta = 0.0;
    double ell = 0.0;
    int n_star_parabolic = 0;
    double eps = 0.0;
    std::optional<int> n_star_hyperbolic;
    double eps_s_estimate = 0.0;
    bool eps_s_found = false;
    std::vector<GapMargin> margins;
};

// ell = 1 + 3 (2 delta - 1)^2; delta must be > 1.
double lipschitz_constant(double delta);

// Smallest N with lambda_{N+1} - lambda_N > 4 ell and lambda_{N+1} > 2 ell,
// equivalently the smallest integer exceeding 24 delta (delta - 1) + 15/2.
int parabolic_min_dim(double delta);

// Roots alpha +/- sqrt(alpha^2 - lambda_j) with alpha = 1/(2 sqrt(eps)).
std::pair<std::complex<double>, std::complex<double>> hyperbolic_eigenvalues(double eps, int j);

// Slow-branch real part in original (unrescaled) time: 2 alpha Re(mu_j^-).
double slow_branch_rate(double eps, int j);

// Check the gap conditions for the damped-wave operator at (delta, eps),
// scanning N = 1..n_max on the slow branch. Absence of a qualifying N is
// encoded in the certificate, not an error.
GapCertificate certify(double delta, double eps, int n_max);

// Largest eps in (0, 1/4] (within tol) for which certify finds a qualifying
// N; bisection. Returns 0 when none is found above tol.
double eps_s_search(double delta, int n_max, double tol = 1e-6);

}  // namespace cim

#endif
