#include <doctest.h>

#include <numbers>
#include <sstream>

#include "numrad/errors.hpp"
#include "numrad/numrange.hpp"
#include "numrad/sampler.hpp"
#include "numrad/transforms.hpp"
#include "support/oracles.hpp"

using namespace numrad;

namespace {

ComplexMatrix fam(BaseFamily f, int n, std::uint64_t seed) { return sample({Family{f}, n, seed}); }

ComplexMatrix shift2() {
    ComplexMatrix t = ComplexMatrix::Zero(2, 2);
    t(0, 1) = 1.0;
    return t;
}

} // namespace

TEST_CASE("shift matrix: omega 1/2, norm 1, spectral radius 0") {
    const ComplexMatrix t = shift2();
    CHECK(numradius(t) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(operator_norm(t) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(spectral_radius(t) < 1e-12);
}

TEST_CASE("omega of traceless 2x2 matrices matches the ellipse closed form") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    for (int k = 0; k < 200; ++k) {
        const double a = g(rng);
        const Complex c(g(rng), g(rng));
        ComplexMatrix t(2, 2);
        t << a, c, 0.0, -a;
        const double expect = oracle::omega_traceless_2x2(a, c);
        const AngleSweep s = numerical_radius(t);
        CHECK(s.omega == doctest::Approx(expect).epsilon(1e-12));
        CHECK(s.omega_upper >= expect - 1e-12);
    }
}

TEST_CASE("omega of normal matrices is the largest eigenvalue modulus") {
    for (int n = 1; n <= 8; ++n) {
        const ComplexMatrix t = fam(BaseFamily::normal_diag, n, 40 + n);
        CHECK(numradius(t) == doctest::Approx(t.diagonal().cwiseAbs().maxCoeff()).epsilon(1e-12));
    }
}

TEST_CASE("omega of Hermitian matrices is the operator norm") {
    for (int n = 1; n <= 8; ++n) {
        const ComplexMatrix t = fam(BaseFamily::hermitian, n, 60 + n);
        CHECK(numradius(t) == doctest::Approx(operator_norm(t)).epsilon(1e-12));
    }
}

TEST_CASE("sweep omega lies in the dense-grid bracket") {
    for (int k = 0; k < 40; ++k) {
        const ComplexMatrix t = fam(BaseFamily::ginibre, 2 + k % 6, 1000 + k);
        const oracle::OmegaBracket b = oracle::dense_grid_omega(t);
        const AngleSweep s = numerical_radius(t, SweepOptions{32, 1, 1e-12, 1024});
        CHECK(s.omega >= b.lower - 1e-12 * b.lower);
        CHECK(s.omega <= b.upper + 1e-12 * b.upper);
        CHECK(s.omega <= s.omega_upper);
        CHECK(s.omega_upper <= b.upper + 1e-9);
    }
}

TEST_CASE("coarse grids agree with the default grid after refinement") {
    for (int k = 0; k < 60; ++k) {
        const ComplexMatrix t = fam(BaseFamily::ginibre, 2 + k % 7, 2000 + k);
        const double reference = numradius(t);
        for (int grid : {8, 16, 32}) {
            const double w = numradius(t, SweepOptions{grid, 1, 1e-12, 1024});
            CHECK(std::abs(w - reference) <= 1e-11 * std::max(1.0, reference));
        }
    }
}

TEST_CASE("refinement passes 0 reports the coarse maximum only") {
    const ComplexMatrix t = fam(BaseFamily::ginibre, 4, 77);
    const AngleSweep s = numerical_radius(t, SweepOptions{16, 0, 1e-12, 1024});
    CHECK(s.omega == doctest::Approx(*std::max_element(s.g_values.begin(), s.g_values.end())));
    CHECK(s.evaluations == 17);
}

TEST_CASE("circular numerical range: exact omega even when the budget runs out") {
    const ComplexMatrix t = fam(BaseFamily::shift, 5, 0);
    const AngleSweep s = numerical_radius(t);
    CHECK(s.omega == doctest::Approx(std::cos(std::numbers::pi / 6)).epsilon(1e-12));
    CHECK(s.omega_upper >= s.omega);
    CHECK(s.omega_upper - s.omega < 1e-4);
}

TEST_CASE("numerical radius properties") {
    for (int k = 0; k < 30; ++k) {
        const int n = 2 + k % 5;
        const ComplexMatrix t = fam(BaseFamily::ginibre, n, 3000 + k);
        const double w = numradius(t);
        const double nt = operator_norm(t);
        const double tol = 1e-10 * std::max(1.0, nt);
        // norm equivalence
        CHECK(0.5 * nt <= w + tol);
        CHECK(w <= nt + tol);
        CHECK(spectral_radius(t) <= w + tol);
        // homogeneity, adjoint and unitary invariance
        CHECK(numradius(Complex(-2.0, 1.5) * t) == doctest::Approx(2.5 * w).epsilon(1e-10));
        CHECK(numradius(ComplexMatrix(t.adjoint())) == doctest::Approx(w).epsilon(1e-10));
        const ComplexMatrix u = fam(BaseFamily::unitary, n, 4000 + k);
        CHECK(numradius(ComplexMatrix(u.adjoint() * t * u)) == doctest::Approx(w).epsilon(1e-10));
        // power inequality
        CHECK(numradius(ComplexMatrix(t * t)) <= w * w + tol * w);
        // triangle inequality
        const ComplexMatrix s = fam(BaseFamily::ginibre, n, 5000 + k);
        CHECK(numradius(ComplexMatrix(t + s)) <= w + numradius(s) + tol);
    }
}

TEST_CASE("sup over theta of ||Re e^{i theta} T|| equals omega") {
    const ComplexMatrix t = fam(BaseFamily::ginibre, 4, 12);
    double best = 0.0;
    for (int k = 0; k < 2048; ++k) {
        const double th = 2.0 * std::numbers::pi * k / 2048;
        best = std::max(best, operator_norm(real_part(rotate(t, th))));
    }
    const double w = numradius(t);
    CHECK(best <= w + 1e-12);
    CHECK(best >= w * std::cos(std::numbers::pi / 2048) - 1e-12);
}

TEST_CASE("fov oracle is a lower bound that nearly attains omega") {
    for (int k = 0; k < 20; ++k) {
        const ComplexMatrix t = fam(BaseFamily::ginibre, 4, 6000 + k);
        const double w = numradius(t);
        const double o = fov_oracle(t);
        CHECK(o <= w + 1e-9);
        CHECK(w - o <= 1e-6 * w);
    }
}

TEST_CASE("sample_rotation and CSV export") {
    ComplexMatrix one(1, 1);
    one(0, 0) = 1.0;
    const AngleSweep s = sample_rotation(one, 4);
    REQUIRE(s.g_values.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) CHECK(s.g_values[k] == doctest::Approx(std::cos(s.thetas[k])));

    std::ostringstream out;
    write_sweep_csv(out, sample_rotation(shift2(), 3));
    const std::string text = out.str();
    CHECK(text.rfind("theta,g\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 5);
    CHECK(text.find("# omega=") != std::string::npos);
}

TEST_CASE("invalid sweep options and inputs are rejected") {
    const ComplexMatrix t = shift2();
    CHECK_THROWS_AS(numerical_radius(t, SweepOptions{3, 1, 1e-12, 10}), DomainError);
    CHECK_THROWS_AS(numerical_radius(t, SweepOptions{16, -1, 1e-12, 10}), DomainError);
    CHECK_THROWS_AS(sample_rotation(t, 0), DomainError);
    CHECK_THROWS_AS(numradius(ComplexMatrix(2, 3)), DimensionMismatch);
}

TEST_CASE("zero matrix has zero numerical radius") {
    const AngleSweep s = numerical_radius(ComplexMatrix::Zero(3, 3));
    CHECK(s.omega == 0.0);
    CHECK(s.omega_upper == 0.0);
}

TEST_CASE("small anchors") {
    ComplexMatrix a(2, 2);
    a << 0, 2, 1, 0;
    CHECK(numradius(a) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(fov_oracle(a) == doctest::Approx(1.5).epsilon(1e-9));
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = -4.0;
    CHECK(numradius(d) == doctest::Approx(4.0).epsilon(1e-14));
    ComplexMatrix h(2, 2);
    h << 2, 0, 0, 5;
    CHECK(rotated_real_norm(h, 0.0) == doctest::Approx(5.0));
    CHECK(rotated_real_norm(shift2(), 1.234) == doctest::Approx(0.5));
}
