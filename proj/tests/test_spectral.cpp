#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cim/spectral.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace cim;
using std::numbers::pi;

namespace {

// Independent oracle: evaluate u(x) = sum c_n sqrt(2/pi) sin(n x) pointwise
// and integrate with composite Simpson on a grid unrelated to the transform's.
double eval_field(const SpectralField& u, double x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < u.n_modes(); ++i)
        acc += u[i] * std::sqrt(2.0 / pi) * std::sin(double(i + 1) * x);
    return acc;
}

template <class F>
double simpson(F f, int panels) {
    const double h = pi / (2 * panels);
    double acc = f(0.0) + f(pi);
    for (int j = 1; j < 2 * panels; ++j) acc += (j % 2 ? 4.0 : 2.0) * f(j * h);
    return acc * h / 3.0;
}

SpectralField random_field(std::mt19937_64& rng, std::size_t n_modes, double scale = 1.0) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    SpectralField u(n_modes);
    for (std::size_t i = 0; i < n_modes; ++i) u[i] = scale * unit(rng);
    return u;
}

}  // namespace

TEST_CASE("eigenvalues and basis") {
    CHECK(eigenvalue(1) == 1.0);
    CHECK(eigenvalue(7) == 49.0);
    SpectralField w2 = SpectralField::basis(8, 2, 3.0);
    CHECK(w2[1] == 3.0);
    CHECK(w2[0] == 0.0);
    CHECK(w2.n_modes() == 8);
}

TEST_CASE("norms: Parseval against quadrature oracle") {
    std::mt19937_64 rng(101);
    for (int rep = 0; rep < 5; ++rep) {
        SpectralField u = random_field(rng, 6);
        const double quad = simpson([&](double x) { return eval_field(u, x) * eval_field(u, x); },
                                    2000);
        CHECK(norm_hs(u, 0.0) == doctest::Approx(std::sqrt(quad)).epsilon(1e-10));
        // H^1 seminorm oracle: integrate u'^2.
        auto du = [&](double x) {
            double acc = 0.0;
            for (std::size_t i = 0; i < u.n_modes(); ++i)
                acc += u[i] * std::sqrt(2.0 / pi) * double(i + 1) * std::cos(double(i + 1) * x);
            return acc;
        };
        const double quad1 = simpson([&](double x) { return du(x) * du(x); }, 2000);
        CHECK(norm_hs(u, 1.0) == doctest::Approx(std::sqrt(quad1)).epsilon(1e-10));
    }
}

TEST_CASE("norm ordering (Poincare with lambda_1 = 1)") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        SpectralField u = random_field(rng, 12);
        CHECK(norm_hs(u, 0.0) <= norm_hs(u, 1.0) + 1e-14);
        CHECK(norm_hs(u, 1.0) <= norm_hs(u, 2.0) + 1e-14);
        CHECK(norm_hs(u, 2.0) <= norm_hs(u, 3.0) + 1e-14);
    }
}

TEST_CASE("product norm") {
    ProductState x{SpectralField::basis(4, 1), SpectralField::basis(4, 1, 2.0)};
    // |u|_1 = 1, |v|_0 = 2: sqrt(1 + 4 eps).
    CHECK(norm_xeps(x, 1, 0.25) == doctest::Approx(std::sqrt(2.0)));
    CHECK(norm_xeps(x, 1, 1.0) == doctest::Approx(std::sqrt(5.0)));
    // k = 3: |u|_3 = 1, |v|_2 = 2.
    CHECK(norm_xeps(x, 3, 1.0) == doctest::Approx(std::sqrt(5.0)));
    CHECK_THROWS_AS((void)norm_xeps(x, 4, 1.0), std::domain_error);
}

TEST_CASE("projections split orthogonally") {
    std::mt19937_64 rng(11);
    SpectralField u = random_field(rng, 10);
    for (int N = 1; N <= 10; ++N) {
        SpectralField p = project_P(u, N), q = project_Q(u, N);
        for (std::size_t i = 0; i < 10; ++i) CHECK(p[i] + q[i] == u[i]);
        CHECK(inner(p, q) == 0.0);
        CHECK(norm_hs(p, 0.0) * norm_hs(p, 0.0) + norm_hs(q, 0.0) * norm_hs(q, 0.0) ==
              doctest::Approx(norm_hs(u, 0.0) * norm_hs(u, 0.0)));
    }
    CHECK_THROWS_AS((void)project_P(u, 0), std::out_of_range);
    CHECK_THROWS_AS((void)project_Q(u, 11), std::out_of_range);
}

TEST_CASE("gamma cutoff shape") {
    const double delta = 1.5;
    CHECK(gamma_cutoff(0.7, delta) == 0.7);
    CHECK(gamma_cutoff(-1.5, delta) == -1.5);
    CHECK(gamma_cutoff(100.0, delta) <= 2.0 * delta - 1.0);  // saturates in doubles
    CHECK(gamma_cutoff(-100.0, delta) >= -(2.0 * delta - 1.0));
    CHECK(gamma_cutoff(5.0, delta) < 2.0 * delta - 1.0);
    CHECK(gamma_cutoff(-5.0, delta) > -(2.0 * delta - 1.0));
    // odd symmetry
    for (double r : {0.3, 1.49, 1.51, 2.0, 5.0})
        CHECK(gamma_cutoff(-r, delta) == doctest::Approx(-gamma_cutoff(r, delta)));
    // Lipschitz-1: finite differences never exceed 1, and the branch joins
    // continuously with matching slope at r = delta.
    for (double r = -4.0; r < 4.0; r += 0.001) {
        const double d = gamma_cutoff(r + 1e-6, delta) - gamma_cutoff(r, delta);
        CHECK(std::abs(d) <= 1e-6 * (1.0 + 1e-9));
    }
    CHECK(gamma_cutoff(delta + 1e-9, delta) == doctest::Approx(delta).epsilon(1e-8));
    CHECK_THROWS_AS((void)gamma_cutoff(0.0, 1.0), std::domain_error);
}

TEST_CASE("cubic product against quadrature oracle") {
    std::mt19937_64 rng(23);
    for (std::size_t n_modes : {3u, 8u, 17u}) {
        SpectralField u = random_field(rng, n_modes, 0.8);
        SpectralField c = cubic(u);
        CHECK(c.n_modes() == n_modes);
        for (std::size_t m = 1; m <= n_modes; ++m) {
            const double want = simpson(
                [&](double x) {
                    const double ux = eval_field(u, x);
                    return ux * ux * ux * std::sqrt(2.0 / pi) * std::sin(double(m) * x);
                },
                4000);
            CHECK(c[m - 1] == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("quartic norm exact for band-limited fields") {
    std::mt19937_64 rng(29);
    SpectralField u = random_field(rng, 9, 0.7);
    const double want = simpson([&](double x) { return std::pow(eval_field(u, x), 4); }, 6000);
    CHECK(l4_norm4(u) == doctest::Approx(want).epsilon(1e-10));
    // single mode closed form: int (c sqrt(2/pi) sin x)^4 = c^4 (4/pi^2)(3 pi/8)
    SpectralField w1 = SpectralField::basis(4, 1, 2.0);
    CHECK(l4_norm4(w1) == doctest::Approx(16.0 * (4.0 / (pi * pi)) * 3.0 * pi / 8.0));
}

TEST_CASE("gamma_apply: identity inside the linear range") {
    // For data with sup-norm below delta the cutoff is the identity, and the
    // grid evaluation reproduces the coefficients exactly.
    std::mt19937_64 rng(31);
    SpectralField u = random_field(rng, 6, 0.1);  // sup norm well below 1.5
    SpectralField g = gamma_apply(u, 1.5);
    for (std::size_t i = 0; i < 6; ++i) CHECK(g[i] == doctest::Approx(u[i]).epsilon(1e-12));
}

TEST_CASE("gamma_apply converges to the pointwise composition under refinement") {
    // gamma(u) is not band-limited, so the grid projection carries quadrature
    // error; embedding the same field in a finer transform must reduce it.
    std::mt19937_64 rng(33);
    SpectralField u6 = random_field(rng, 6, 2.0);
    auto oracle = [&](std::size_t m) {
        return simpson(
            [&](double x) {
                return gamma_cutoff(eval_field(u6, x), 1.5) * std::sqrt(2.0 / pi) *
                       std::sin(double(m) * x);
            },
            6000);
    };
    SpectralField u64(64), u256(256);
    for (std::size_t i = 0; i < 6; ++i) u64[i] = u256[i] = u6[i];
    SpectralField coarse = sine_transform(64).gamma_apply(u64, 1.5);
    SpectralField fine = sine_transform(256).gamma_apply(u256, 1.5);
    double err_coarse = 0.0, err_fine = 0.0;
    for (std::size_t m = 1; m <= 6; ++m) {
        err_coarse = std::max(err_coarse, std::abs(coarse[m - 1] - oracle(m)));
        err_fine = std::max(err_fine, std::abs(fine[m - 1] - oracle(m)));
    }
    CHECK(err_coarse <= 2e-3);
    CHECK(err_fine <= 1e-4);
    CHECK(err_fine <= 0.5 * err_coarse);
}

TEST_CASE("reaction assembles -y^3 + y") {
    std::mt19937_64 rng(37);
    SpectralField u = random_field(rng, 8, 0.5);
    SpectralField r = sine_transform(8).reaction(u, false, 1.5);
    SpectralField c = cubic(u);
    for (std::size_t i = 0; i < 8; ++i) CHECK(r[i] == doctest::Approx(u[i] - c[i]).epsilon(1e-13));
    // small data: modified and unmodified coincide (gamma = id inside [-delta, delta])
    SpectralField rm = sine_transform(8).reaction(u, true, 1.5);
    for (std::size_t i = 0; i < 8; ++i) CHECK(rm[i] == doctest::Approx(r[i]).epsilon(1e-10));
}

TEST_CASE("transform round trip") {
    std::mt19937_64 rng(41);
    const SineTransform& st = sine_transform(16);
    SpectralField u = random_field(rng, 16);
    Vec grid, back;
    st.synthesize(u.coeffs, grid);
    st.analyze(grid, back);
    for (std::size_t i = 0; i < 16; ++i) CHECK(back[i] == doctest::Approx(u[i]).epsilon(1e-12));
}
