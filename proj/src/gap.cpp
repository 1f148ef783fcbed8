#include "cim/gap.hpp"

#include "cim/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace cim {

double lipschitz_constant(double delta) {
    if (delta <= 1.0) throw std::domain_error("lipschitz_constant: delta must be > 1");
    const double s = 2.0 * delta - 1.0;
    return 1.0 + 3.0 * s * s;
}

int parabolic_min_dim(double delta) {
    const double ell = lipschitz_constant(delta);
    // Raw gap inequalities with lambda_n = n^2.
    int n_raw = 0;
    for (int n = 1; n <= 100000; ++n) {
        const double gap = eigenvalue(n + 1) - eigenvalue(n);
        if (gap > 4.0 * ell && eigenvalue(n + 1) > 2.0 * ell) {
            n_raw = n;
            break;
        }
    }
    if (n_raw == 0) throw std::runtime_error("parabolic_min_dim: no qualifying N");
    const int n_formula = int(std::floor(24.0 * delta * (delta - 1.0) + 7.5)) + 1;
    if (n_formula != n_raw)
        throw std::logic_error("parabolic_min_dim: formula and raw inequalities disagree");
    return n_raw;
}

std::pair<std::complex<double>, std::complex<double>> hyperbolic_eigenvalues(double eps, int j) {
    if (eps <= 0.0) throw std::domain_error("hyperbolic_eigenvalues: eps must be > 0");
    if (j < 1) throw std::domain_error("hyperbolic_eigenvalues: j must be >= 1");
    const double alpha = 0.5 / std::sqrt(eps);
    const double disc = alpha * alpha - eigenvalue(j);
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        return {std::complex<double>(alpha + s, 0.0), std::complex<double>(alpha - s, 0.0)};
    }
    const double s = std::sqrt(-disc);
    return {std::complex<double>(alpha, s), std::complex<double>(alpha, -s)};
}

double slow_branch_rate(double eps, int j) {
    const double alpha = 0.5 / std::sqrt(eps);
    const double lam = eigenvalue(j);
    const double disc = alpha * alpha - lam;
    if (disc < 0.0) return 2.0 * alpha * alpha;  // complex pair, Re = alpha
    // alpha - sqrt(alpha^2 - lam) without cancellation, times 2 alpha.
    return 2.0 * alpha * lam / (alpha + std::sqrt(disc));
}

GapCertificate certify(double delta, double eps, int n_max) {
    if (delta <= 1.0) throw std::domain_error("certify: delta must be > 1");
    if (eps <= 0.0 || eps > 1.0) throw std::domain_error("certify: eps must be in (0,1]");
    if (n_max < 1) throw std::domain_error("certify: n_max must be >= 1");

    GapCertificate cert;
    cert.delta = delta;
    cert.ell = lipschitz_constant(delta);
    cert.n_star_parabolic = parabolic_min_dim(delta);
    cert.eps = eps;

    // The time-rescaled roots alpha +/- sqrt(alpha^2 - lambda_j) are sqrt(eps)
    // times the decay rates of the unrescaled equation; all comparisons here
    // are made in original time (factor 2 alpha = 1/sqrt(eps)).
    for (int n = 1; n <= n_max; ++n) {
        const double lo = slow_branch_rate(eps, n);
        const double hi = slow_branch_rate(eps, n + 1);
        GapMargin m1{"sgc1(N=" + std::to_string(n) + ")", hi - lo, 4.0 * cert.ell, false};
        m1.satisfied = m1.lhs > m1.rhs;
        GapMargin m2{"sgc2(N=" + std::to_string(n) + ")", hi, 2.0 * cert.ell, false};
        m2.satisfied = m2.lhs > m2.rhs;
        cert.margins.push_back(m1);
        cert.margins.push_back(m2);
        if (m1.satisfied && m2.satisfied && !cert.n_star_hyperbolic)
            cert.n_star_hyperbolic = n;
    }
    return cert;
}

double eps_s_search(double delta, int n_max, double tol) {
    if (tol <= 0.0) throw std::domain_error("eps_s_search: tol must be > 0");
    auto ok = [&](double eps) { return certify(delta, eps, n_max).n_star_hyperbolic.has_value(); };
    double hi = 0.25;
    if (ok(hi)) return hi;
    // The qualifying set is a union of per-N intervals, so certification is
    // not monotone in eps. Geometric scan for the highest passing point
    // first, then bisect against the next failure above it.
    double lo = 0.0;
    for (double e = hi / 1.02; e > tol; e /= 1.02) {
        if (ok(e)) {
            lo = e;
            hi = e * 1.02;
            break;
        }
    }
    if (lo == 0.0) return 0.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace cim
