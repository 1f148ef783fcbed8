#ifndef CIM_SPECTRAL_HPP
#define CIM_SPECTRAL_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

// Sine-spectral representation on (0,pi). Fields are coefficient vectors
// against the orthonormal basis w_n(x) = sqrt(2/pi) sin(n x), n = 1..N.
// Eigenvalues of -d^2/dx^2 with Dirichlet conditions are lambda_n = n^2.

namespace cim {

using Vec = std::vector<double>;

struct SpectralField {
    Vec coeffs;  // coeffs[n-1] multiplies w_n

    SpectralField() = default;
    explicit SpectralField(std::size_t n_modes) : coeffs(n_modes, 0.0) {}
    explicit SpectralField(Vec c) : coeffs(std::move(c)) {}

    std::size_t n_modes() const { return coeffs.size(); }
    double& operator[](std::size_t i) { return coeffs[i]; }
    double operator[](std::size_t i) const { return coeffs[i]; }

    // Unit coefficient in slot n (1-based), scaled by amp.
    static SpectralField basis(std::size_t n_modes, std::size_t n, double amp = 1.0);

    bool finite() const;
};

SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(double s, const SpectralField& a);
SpectralField operator-(const SpectralField& a);

// Pair (u, u_t); element of X_k = H_k x H_{k-1}.
struct ProductState {
    SpectralField u;
    SpectralField v;

    ProductState() = default;
    ProductState(SpectralField u_, SpectralField v_);
    std::size_t n_modes() const { return u.n_modes(); }
};

ProductState operator+(const ProductState& a, const ProductState& b);
ProductState operator-(const ProductState& a, const ProductState& b);

double eigenvalue(int n);  // lambda_n = n^2

// L2 inner product of coefficient vectors (orthonormal basis).
double inner(const SpectralField& a, const SpectralField& b);

// H_s norm: sqrt(sum_n lambda_n^s c_n^2).
double norm_hs(const SpectralField& u, double s);

// eps-weighted product norm: sqrt(|u|_k^2 + eps |v|_{k-1}^2), k in {1,2,3}.
double norm_xeps(const ProductState& x, int k, double eps);

// P keeps modes 1..N, Q = I - P. N must lie in [1, n_modes].
SpectralField project_P(const SpectralField& u, int N);
SpectralField project_Q(const SpectralField& u, int N);

// Saturating cutoff: identity on [-delta, delta], tanh saturation beyond,
// |gamma| <= 2 delta - 1 and |gamma'| <= 1 everywhere. Requires delta > 1.
double gamma_cutoff(double r, double delta);

// Dense sine synthesis/analysis on a uniform interior grid of 2 n_modes + 1
// points (2 n_modes + 2 subintervals). This padding keeps the projection of
// a cubed band-limited field alias-free and makes the quartic quadrature
// exact for band-limited inputs.
class SineTransform {
  public:
    explicit SineTransform(std::size_t n_modes);

    std::size_t n_modes() const { return n_modes_; }
    std::size_t n_grid() const { return n_grid_; }
    double quad_weight() const { return weight_; }

    void synthesize(const Vec& coeffs, Vec& grid) const;
    void analyze(const Vec& grid, Vec& coeffs) const;

    SpectralField cubic(const SpectralField& u) const;
    SpectralField gamma_apply(const SpectralField& u, double delta) const;
    double l4_norm4(const SpectralField& u) const;

    // Coefficients of -gamma(u)^3 + gamma(u) (or -u^3 + u when delta <= 0
    // is passed as "unmodified").
    SpectralField reaction(const SpectralField& u, bool modified, double delta) const;

  private:
    std::size_t n_modes_;
    std::size_t n_grid_;
    double weight_;
    Vec table_;  // sin(n x_j), row-major over grid points
};

// Convenience wrappers; cache one transform per n_modes per thread.
const SineTransform& sine_transform(std::size_t n_modes);
SpectralField cubic(const SpectralField& u);
SpectralField gamma_apply(const SpectralField& u, double delta);
double l4_norm4(const SpectralField& u);

}  // namespace cim

#endif
