#include <doctest.h>

#include <cmath>

#include "bekenstein/generators.hpp"
#include "bekenstein/modular_entropy.hpp"
#include "bekenstein/random.hpp"

using namespace bk;

namespace {
double trace_formula(const DensityMatrix& phi, const DensityMatrix& omega) {
    return (phi.matrix() * (phi.log_on_support() - omega.log_on_support())).trace().real();
}
} // namespace

TEST_SUITE("entropy") {

TEST_CASE("commuting pair has the classical value") {
    DensityMatrix phi = DensityMatrix::diag((rvec(2) << 0.7, 0.3).finished());
    DensityMatrix omega = DensityMatrix::diag((rvec(2) << 0.5, 0.5).finished());
    const double kl = 0.08228287850505178;
    CHECK(relative_entropy(phi, omega).value() == doctest::Approx(kl).epsilon(1e-12));
    StandardFormAlgebra alg(2);
    CHECK(uhlmann_entropy(phi, omega, alg.vec(phi.sqrt())) == doctest::Approx(kl).epsilon(1e-6));
    CHECK(cocycle_entropy(phi, omega) == doctest::Approx(kl).epsilon(1e-6));
    CHECK(cocycle_calibration() == -1.0);
}

TEST_CASE("non-commuting pair against a scipy logm reference") {
    cmat p(2, 2), o(2, 2);
    p << 0.6, cplx(0.2, 0.1), cplx(0.2, -0.1), 0.4;
    o << 0.5, -0.1, -0.1, 0.5;
    DensityMatrix phi(p), omega(o);
    const double ref = 0.22683466828890161;
    CHECK(relative_entropy(phi, omega).value() == doctest::Approx(ref).epsilon(1e-12));
    StandardFormAlgebra alg(2);
    CHECK(uhlmann_entropy(phi, omega, alg.vec(phi.sqrt())) == doctest::Approx(ref).epsilon(1e-6));
    CHECK(cocycle_entropy(phi, omega) == doctest::Approx(ref).epsilon(1e-6));
}

TEST_CASE("support mismatch gives +inf") {
    DensityMatrix phi = DensityMatrix::diag((rvec(2) << 0.5, 0.5).finished());
    DensityMatrix omega = DensityMatrix::diag((rvec(2) << 1.0, 0.0).finished());
    CHECK(relative_entropy(phi, omega).tag() == ExtendedReal::Tag::plus_infinity);
    StandardFormAlgebra alg(2);
    CHECK(std::isinf(uhlmann_entropy(phi, omega, alg.vec(phi.sqrt()))));
}

TEST_CASE("density matrix validation") {
    cmat bad(2, 2);
    bad << 0.6, 0, 0, 0.6;
    CHECK_THROWS_AS(DensityMatrix{bad}, input_error);
    bad << 1.2, 0, 0, -0.2;
    CHECK_THROWS_AS(DensityMatrix{bad}, input_error);
}

TEST_CASE("random pairs: routes agree, positivity, representative independence") {
    for (int i = 0; i < 25; ++i) {
        auto g = stream(21, 0, i);
        int n = 2 + i % 3;
        DensityMatrix phi = random_density(g, n), omega = random_density(g, n);
        StandardFormAlgebra alg(n);
        double tr = trace_formula(phi, omega);
        double s = relative_entropy(phi, omega).value();
        CHECK(s == doctest::Approx(tr).epsilon(1e-9));
        CHECK(s >= -1e-12);
        CHECK(std::abs(uhlmann_entropy(phi, omega, alg.vec(phi.sqrt())) - tr) < 1e-5);
        CHECK(std::abs(cocycle_entropy(phi, omega) - tr) < 1e-5);
        cvec other = alg.vec(phi.sqrt() * random_unitary(g, n));
        CHECK(relative_entropy(phi, omega, other).value() == doctest::Approx(s).epsilon(1e-9));
    }
}

TEST_CASE("restriction to a factor lowers the entropy") {
    for (int i = 0; i < 25; ++i) {
        auto g = stream(22, 0, i);
        DensityMatrix phi = random_density(g, 4), omega = random_density(g, 4);
        double full = relative_entropy(phi, omega).value();
        double part = relative_entropy(partial_trace_second(phi, 2, 2), partial_trace_second(omega, 2, 2)).value();
        CHECK(part <= full + 1e-10);
    }
}

TEST_CASE("cocycle is unitary and implements the flow") {
    auto g = stream(23, 0, 0);
    DensityMatrix phi = random_density(g, 3), omega = random_density(g, 3);
    for (double s : {-1.0, 0.3, 2.0}) {
        cmat u = connes_cocycle(phi, omega, s).u;
        CHECK((u.adjoint() * u - cmat::Identity(3, 3)).norm() < 1e-10);
    }
    cmat a = gaussian_cmat(g, 3, 3);
    cmat b = modular_automorphism(omega, 0.7, modular_automorphism(omega, -0.7, a));
    CHECK((a - b).norm() < 1e-10);
}

TEST_CASE("localized vectors recover the isometry") {
    for (int i = 0; i < 20; ++i) {
        auto g = stream(24, 0, i);
        int n = 2 + i % 3;
        DensityMatrix omega = random_density(g, n);
        cmat v = random_unitary(g, n);
        StandardFormAlgebra alg(n);
        cvec xi = alg.left(v) * alg.vacuum(omega);
        LocalizedIsometry li = localized_isometry(xi, alg, omega);
        REQUIRE(li.ok);
        CHECK((li.v - v).norm() < 1e-9);
        cmat rp = v * omega.matrix() * v.adjoint();
        DensityMatrix phi(0.5 * (rp + rp.adjoint()));
        CHECK(vector_state_entropy(xi, alg, omega) == doctest::Approx(trace_formula(phi, omega)).epsilon(1e-9));
    }
    // a vector whose commutant state differs from omega is not of the form v Omega
    auto g = stream(25, 0, 0);
    DensityMatrix omega = random_density(g, 2);
    StandardFormAlgebra alg(2);
    cvec xi = alg.vec(random_density(g, 2).sqrt());
    CHECK_FALSE(localized_isometry(xi, alg, omega).ok);
    CHECK_THROWS_AS(vector_state_entropy(xi, alg, omega), precondition_error);
}
}
