#include <doctest.h>

#include <cmath>

#include "bekenstein/generators.hpp"
#include "bekenstein/random.hpp"
#include "bekenstein/stdsubspace.hpp"

using namespace bk;

TEST_SUITE("stdsubspace") {

TEST_CASE("real line in C is standard with trivial modular data") {
    cvec one(1);
    one << 1.0;
    StandardSubspace h(RealSubspace::make({one}));
    const ModularData& md = h.modular();
    CHECK(md.spectrum.size() == 1);
    CHECK(md.spectrum(0) == doctest::Approx(1.0));
    cvec v(1);
    v << cplx(0.3, 0.7);
    CHECK(std::abs(md.j.apply(v)(0) - std::conj(v(0))) < 1e-14);
}

TEST_CASE("modular spectrum against a direct realification") {
    // reference from numpy: S realified as the map h -> h, ih -> -ih, Delta = S^T S
    cvec h1(2), h2(2);
    h1 << 1.0, 0.3;
    h2 << cplx(0, 0.5), 1.0;
    StandardSubspace h(RealSubspace::make({h1, h2}));
    const rvec& sp = h.modular().spectrum;
    REQUIRE(sp.size() == 2);
    CHECK(sp(0) == doctest::Approx(0.38576878506811907).epsilon(1e-12));
    CHECK(sp(1) == doctest::Approx(2.5922263249563295).epsilon(1e-12));
    CHECK(sp(0) * sp(1) == doctest::Approx(1.0));
}

TEST_CASE("subspaces that are not standard are rejected") {
    cvec a(2), b(2);
    a << 1.0, 0.0;
    b << cplx(0, 1), 0.0;
    // H contains a complex line, so H cap iH != 0
    CHECK_FALSE(is_standard(RealSubspace::make({a, b})).standard);
    CHECK_FALSE(is_standard(RealSubspace::make({a})).standard);  // not cyclic in C^2
}

TEST_CASE("Tomita identities on random subspaces") {
    for (int i = 0; i < 30; ++i) {
        auto g = stream(11, 0, i);
        int n = 1 + i % 6;
        RealSubspace hr = random_standard(g, n);
        StandardSubspace h(hr);
        const ModularData& md = h.modular();
        const cmat id = cmat::Identity(n, n);
        CHECK(opnorm(md.j.compose(md.j) - id) < 1e-10);
        CHECK(opnorm(md.s.c - md.j.c * md.delta_pow(0.5).conjugate()) < 1e-9 * std::max(1.0, opnorm(md.s.c)));
        RealSubspace hp = symplectic_complement(hr);
        CHECK(subspace_distance(hr.mapped(md.j), hp) < 1e-9);
        for (double t : {-1.0, 0.4}) CHECK(subspace_distance(hr.mapped(md.delta_it(t)), hr) < 1e-8);
        // spectrum symmetric under lambda -> 1/lambda
        rvec sp = md.spectrum;
        for (int k = 0; k < sp.size(); ++k) CHECK(sp(k) * sp(sp.size() - 1 - k) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("contraction family on nested pairs") {
    for (int i = 0; i < 20; ++i) {
        auto g = stream(12, 0, i);
        int n = 2 + i % 5;
        StandardSubspace h(random_standard(g, n));
        RealSubspace k = random_inner(g, h.subspace(), 1 + i % (n - 1));
        for (cplx z : {cplx(0, 0), cplx(1.0, -0.5), cplx(-2.0, -0.25)}) CHECK(opnorm(contraction_family(h, k, z)) <= 1.0 + 1e-8);
        InclusionReport rep = inclusion_inequalities(h, k, {0.0, 0.25, 0.5, 1.0});
        for (double m : rep.power_margin) CHECK(m >= -1e-9);
        CHECK(rep.log_margin >= -1e-9);
    }
}

TEST_CASE("a non-nested pair breaks the inclusion inequality") {
    // K not inside H: the contraction family should exceed 1 somewhere in the strip
    auto g = stream(13, 0, 0);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        StandardSubspace h(random_standard(g, 3));
        StandardSubspace k(random_standard(g, 3));
        worst = std::max(worst, opnorm(contraction_family(h.modular(), k.modular(), cplx(0, -0.5))));
    }
    CHECK(worst > 1.0 + 1e-3);
    cvec a(2);
    a << 1.0, 0.0;
    StandardSubspace h(random_standard(g, 2));
    CHECK_THROWS(check_contained(h.subspace(), RealSubspace::make({cvec::Ones(2) * cplx(0, 1), a})));
}

TEST_CASE("log density bound") {
    for (int i = 0; i < 50; ++i) {
        auto g = stream(14, 0, i);
        int n = 1 + i % 6;
        StandardSubspace h(random_standard(g, n));
        EntropyDensityBound b = entropy_density_bound(gaussian_cvec(g, n), h);
        CHECK(b.lhs <= b.rhs + 1e-10);
    }
    // Delta = 1: log 1 = 0 against ||xi||^2 / e
    cvec h1(1);
    h1 << 1.0;
    StandardSubspace triv(RealSubspace::make({h1}));
    cvec xi(1);
    xi << 1.0;
    EntropyDensityBound b = entropy_density_bound(xi, triv);
    CHECK(b.lhs == doctest::Approx(0.0));
    CHECK(b.rhs == doctest::Approx(std::exp(-1.0)));
}
}
