#include "cim/spectral.hpp"

#include <cmath>
#include <map>
#include <numbers>

namespace cim {

SpectralField SpectralField::basis(std::size_t n_modes, std::size_t n, double amp) {
    if (n < 1 || n > n_modes) throw std::out_of_range("basis index out of range");
    SpectralField f(n_modes);
    f.coeffs[n - 1] = amp;
    return f;
}

bool SpectralField::finite() const {
    for (double c : coeffs)
        if (!std::isfinite(c)) return false;
    return true;
}

static void check_same(std::size_t a, std::size_t b) {
    if (a != b) throw std::invalid_argument("mode-count mismatch");
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
    check_same(a.n_modes(), b.n_modes());
    SpectralField r(a.n_modes());
    for (std::size_t i = 0; i < r.n_modes(); ++i) r[i] = a[i] + b[i];
    return r;
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
    check_same(a.n_modes(), b.n_modes());
    SpectralField r(a.n_modes());
    for (std::size_t i = 0; i < r.n_modes(); ++i) r[i] = a[i] - b[i];
    return r;
}

SpectralField operator*(double s, const SpectralField& a) {
    SpectralField r(a.n_modes());
    for (std::size_t i = 0; i < r.n_modes(); ++i) r[i] = s * a[i];
    return r;
}

SpectralField operator-(const SpectralField& a) { return -1.0 * a; }

ProductState::ProductState(SpectralField u_, SpectralField v_)
    : u(std::move(u_)), v(std::move(v_)) {
    check_same(u.n_modes(), v.n_modes());
}

ProductState operator+(const ProductState& a, const ProductState& b) {
    return {a.u + b.u, a.v + b.v};
}

ProductState operator-(const ProductState& a, const ProductState& b) {
    return {a.u - b.u, a.v - b.v};
}

double eigenvalue(int n) {
    if (n < 1) throw std::domain_error("eigenvalue: n must be >= 1");
    return double(n) * double(n);
}

double inner(const SpectralField& a, const SpectralField& b) {
    check_same(a.n_modes(), b.n_modes());
    double s = 0.0;
    for (std::size_t i = 0; i < a.n_modes(); ++i) s += a[i] * b[i];
    return s;
}

double norm_hs(const SpectralField& u, double s) {
    if (s < 0.0) throw std::domain_error("norm_hs: s must be >= 0");
    double acc = 0.0;
    for (std::size_t i = 0; i < u.n_modes(); ++i) {
        const double lam = eigenvalue(int(i) + 1);
        acc += std::pow(lam, s) * u[i] * u[i];
    }
    return std::sqrt(acc);
}

double norm_xeps(const ProductState& x, int k, double eps) {
    if (k < 1 || k > 3) throw std::domain_error("norm_xeps: k must be in {1,2,3}");
    if (eps < 0.0 || eps > 1.0) throw std::domain_error("norm_xeps: eps must be in [0,1]");
    const double a = norm_hs(x.u, double(k));
    const double b = norm_hs(x.v, double(k - 1));
    return std::sqrt(a * a + eps * b * b);
}

SpectralField project_P(const SpectralField& u, int N) {
    if (N < 1 || std::size_t(N) > u.n_modes())
        throw std::out_of_range("project_P: N out of range");
    SpectralField r(u.n_modes());
    for (int i = 0; i < N; ++i) r[i] = u[i];
    return r;
}

SpectralField project_Q(const SpectralField& u, int N) {
    if (N < 1 || std::size_t(N) > u.n_modes())
        throw std::out_of_range("project_Q: N out of range");
    SpectralField r(u.n_modes());
    for (std::size_t i = std::size_t(N); i < u.n_modes(); ++i) r[i] = u[i];
    return r;
}

double gamma_cutoff(double r, double delta) {
    if (delta <= 1.0) throw std::domain_error("gamma_cutoff: delta must be > 1");
    const double a = std::fabs(r);
    if (a <= delta) return r;
    const double sat = delta + (delta - 1.0) * std::tanh((a - delta) / (delta - 1.0));
    return r < 0.0 ? -sat : sat;
}

SineTransform::SineTransform(std::size_t n_modes) : n_modes_(n_modes) {
    if (n_modes < 1) throw std::invalid_argument("SineTransform: n_modes must be >= 1");
    n_grid_ = 2 * n_modes + 1;
    const double pi = std::numbers::pi;
    weight_ = pi / double(n_grid_ + 1);
    table_.resize(n_modes_ * n_grid_);
    for (std::size_t n = 1; n <= n_modes_; ++n)
        for (std::size_t j = 1; j <= n_grid_; ++j)
            table_[(n - 1) * n_grid_ + (j - 1)] = std::sin(double(n) * double(j) * weight_);
}

void SineTransform::synthesize(const Vec& coeffs, Vec& grid) const {
    const double norm = std::sqrt(2.0 / std::numbers::pi);
    grid.assign(n_grid_, 0.0);
    for (std::size_t n = 0; n < n_modes_; ++n) {
        const double c = norm * coeffs[n];
        if (c == 0.0) continue;
        const double* row = &table_[n * n_grid_];
        for (std::size_t j = 0; j < n_grid_; ++j) grid[j] += c * row[j];
    }
}

void SineTransform::analyze(const Vec& grid, Vec& coeffs) const {
    const double norm = std::sqrt(2.0 / std::numbers::pi) * weight_;
    coeffs.assign(n_modes_, 0.0);
    for (std::size_t n = 0; n < n_modes_; ++n) {
        const double* row = &table_[n * n_grid_];
        double s = 0.0;
        for (std::size_t j = 0; j < n_grid_; ++j) s += grid[j] * row[j];
        coeffs[n] = norm * s;
    }
}

SpectralField SineTransform::cubic(const SpectralField& u) const {
    check_same(u.n_modes(), n_modes_);
    Vec grid;
    synthesize(u.coeffs, grid);
    for (double& g : grid) g = g * g * g;
    SpectralField r(n_modes_);
    analyze(grid, r.coeffs);
    return r;
}

SpectralField SineTransform::gamma_apply(const SpectralField& u, double delta) const {
    check_same(u.n_modes(), n_modes_);
    Vec grid;
    synthesize(u.coeffs, grid);
    for (double& g : grid) g = gamma_cutoff(g, delta);
    SpectralField r(n_modes_);
    analyze(grid, r.coeffs);
    return r;
}

double SineTransform::l4_norm4(const SpectralField& u) const {
    check_same(u.n_modes(), n_modes_);
    Vec grid;
    synthesize(u.coeffs, grid);
    double s = 0.0;
    for (double g : grid) {
        const double g2 = g * g;
        s += g2 * g2;
    }
    return weight_ * s;  // endpoints vanish; composite trapezoid
}

SpectralField SineTransform::reaction(const SpectralField& u, bool modified, double delta) const {
    check_same(u.n_modes(), n_modes_);
    Vec grid;
    synthesize(u.coeffs, grid);
    for (double& g : grid) {
        const double y = modified ? gamma_cutoff(g, delta) : g;
        g = -y * y * y + y;
    }
    SpectralField r(n_modes_);
    analyze(grid, r.coeffs);
    return r;
}

const SineTransform& sine_transform(std::size_t n_modes) {
    thread_local std::map<std::size_t, SineTransform> cache;
    auto it = cache.find(n_modes);
    if (it == cache.end()) it = cache.emplace(n_modes, SineTransform(n_modes)).first;
    return it->second;
}

SpectralField cubic(const SpectralField& u) { return sine_transform(u.n_modes()).cubic(u); }

SpectralField gamma_apply(const SpectralField& u, double delta) {
    return sine_transform(u.n_modes()).gamma_apply(u, delta);
}

double l4_norm4(const SpectralField& u) { return sine_transform(u.n_modes()).l4_norm4(u); }

}  // namespace cim
