#include <doctest.h>

#include <cmath>

#include "bekenstein/chiralnet.hpp"
#include "bekenstein/random.hpp"

using namespace bk;

TEST_SUITE("chiralnet") {

TEST_CASE("log-Gaussian transform against direct quadrature") {
    // p = 2^(k/2 - 21) on a grid wide enough for the basis; p = 0.5, 2, 8 at k = 40, 44, 48.
    // references from an mpmath contour integral
    LatticeChiralModel m = build_model(89, std::ldexp(0.5, -20), std::ldexp(8.0, 20), 129, 1.0 / 16.0);
    cvec f = loggauss_transform(m, 0.3, 0.5);
    struct Ref {
        int j;
        cplx v;
    };
    for (Ref r : {Ref{40, {0.98973848669014212, 1.3764585656294274}}, Ref{44, {-0.63582765929358001, 0.064285675098512876}},
                  Ref{48, {0.012595075692944344, 0.010277161316668818}}}) {
        CHECK(m.p(r.j) == doctest::Approx(std::pow(2.0, r.j / 2.0 - 21.0)));
        cplx got = f(r.j) / m.sqrtw(r.j);
        CHECK(std::abs(got - r.v) < 1e-10);
    }
}

TEST_CASE("spline Gram symbol against direct quadrature") {
    SplineLattice lat;
    cmat g = lat.gram({0}, {0, 1, 3}, [](double) { return 1.0; });
    CHECK(g(0, 0).real() == doctest::Approx(1.4257627311057701).epsilon(1e-11));
    CHECK(std::abs(g(0, 0).imag()) < 1e-14);
    CHECK(g(0, 1).real() == doctest::Approx(0.15000736078502104).epsilon(1e-10));
    CHECK(g(0, 1).imag() == doctest::Approx(1.0690141668465269).epsilon(1e-10));
    CHECK(g(0, 2).real() == doctest::Approx(-0.15538657629839004).epsilon(1e-10));
    cmat e = lat.gram({0}, {0}, [](double p) { return p; });
    CHECK(e(0, 0).real() == doctest::Approx(33.51032163826972).epsilon(1e-10));
}

TEST_CASE("tube damping constant") {
    CHECK(tube_damping(1.0, 0.1) == doctest::Approx(0.7265425280053609).epsilon(1e-15));
    CHECK_THROWS_AS(tube_damping(1.0, 0.25), input_error);
    CHECK_THROWS_AS(tube_damping(0.0, 0.1), input_error);
}

TEST_CASE("energy projections split the norm") {
    LatticeChiralModel m = chiral_model(64);
    auto g = stream(31, 0, 0);
    for (int k = 0; k < 5; ++k) {
        cvec v = gaussian_cvec(g, m.n);
        double p = eplus_norm(m, v), q = eminus_norm(m, v);
        CHECK(p * p + q * q == doctest::Approx(v.squaredNorm()).epsilon(1e-12));
    }
}

TEST_CASE("half-line modular flow converges to dilations") {
    double prev = 1.0;
    for (int n : {64, 128, 256}) {
        DilationResidual d = halfline_dilation_residual(chiral_model(n));
        CHECK(d.max_residual < prev);
        prev = d.max_residual;
    }
    CHECK(prev < 1e-3);
    CHECK(tol_for(128) == doctest::Approx(2.0 * halfline_dilation_residual(chiral_model(128)).max_residual));
}

TEST_CASE("translations and dilations satisfy the Borchers relation") {
    LatticeChiralModel m = chiral_model(256);
    CHECK(verify_commutation(m, 1.0, 0.2).residual < 1e-6);
}

TEST_CASE("half-line damping inequalities") {
    LatticeChiralModel m = chiral_model(128);
    HalfLineSubspace h0 = half_line_subspace(m, NetRegion::right(0.0));
    const double tol = tol_for(128);
    for (int s = 0; s < 4; ++s)
        for (const Margin& mg : verify_halfline_damping(m, h0, 1.0, 0.1, random_halfline_vector(h0, s), tol)) CHECK(mg.pass());
}

TEST_CASE("interval subspaces") {
    CHECK_THROWS_AS(interval_subspace(NetRegion::interval(0.0, 0.3)), config_error);
    IntervalSubspace b = interval_subspace(NetRegion::interval(-0.5, 0.25));
    CHECK(b.dim() >= 8);
    CHECK(is_standard(b.subspace.subspace()).standard);
    const double tol = tol_for(128);
    for (double a : {0.05, 0.2}) CHECK(verify_tube_damping_operator(b, b.damping(tube_damping(0.5, a)), a, tol).pass());
    IntervalSubspace full = interval_subspace(NetRegion::interval(-0.5, 0.5));
    CHECK(verify_log_energy_operator(full, 0.5, tol).pass());

    auto g = stream(32, 0, 0);
    rvec c = gaussian_rvec(g, full.dim());
    CoherentBound cb = coherent_entropy_bound(full, full.coords * c.cast<cplx>(), tol);
    CHECK(cb.ratio <= 1.0 + tol);
    CHECK(cb.entropy >= 0.0);
    // complex combinations are outside H(B)
    CHECK_THROWS_AS(coherent_entropy_bound(full, full.coords * gaussian_cvec(g, full.dim()), tol), precondition_error);
    CHECK(energy_infimum_sweep(full, c, 8, 1, tol).pass());
}

TEST_CASE("net structure") {
    NetChecks nc = net_checks(0.5);
    CHECK(nc.isotony < 1e-10);
    CHECK(nc.covariance < 1e-8);
    CHECK(nc.locality < 1e-10);
}

TEST_CASE("alpha route approaches 2 pi R") {
    Margin m = alpha_route(1.0, {0.2, 0.1, 0.01, 0.001});
    CHECK(m.pass());
}
}
