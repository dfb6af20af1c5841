#include <doctest.h>

#include <cmath>

#include "bekenstein/formcalc.hpp"
#include "bekenstein/generators.hpp"
#include "bekenstein/random.hpp"

using namespace bk;

namespace {
cmat mat2(cplx a, cplx b, cplx c, cplx d) {
    cmat m(2, 2);
    m << a, b, c, d;
    return m;
}
} // namespace

TEST_SUITE("formcalc") {

TEST_CASE("kernel integral reproduces log") {
    for (double lam : {0.1, 0.37, 1.0, 2.5, 10.0}) CHECK(kernel_log(lam) == doctest::Approx(std::log(lam)).epsilon(1e-12));
    CHECK(std::abs(kernel_log(1.0)) < 1e-15);
}

TEST_CASE("log form against a scipy logm reference") {
    // values frozen from scipy.linalg.logm on the same matrices
    HermitianOperator a(mat2(2.0, cplx(0, 1), cplx(0, -1), 3.0));
    cvec xi(2);
    xi << 1.0, cplx(0, 1);
    xi /= std::sqrt(2.0);
    const double ref = 0.37431001525304586;
    CHECK(quad_form_log(xi, a).value() == doctest::Approx(ref).epsilon(1e-13));
    CHECK(log_via_kernel(xi, a) == doctest::Approx(ref).epsilon(1e-10));
    CHECK(log_limit(xi, a) == doctest::Approx(ref).epsilon(1e-8));

    cmat m(3, 3);
    m << 4, 1, 0, 1, 2, 0.5, 0, 0.5, 0.25;
    cvec x(3);
    x << 1, -2, 0.5;
    CHECK(quad_form_log(x, HermitianOperator(m)).value() == doctest::Approx(-0.7722654171986583).epsilon(1e-12));
}

TEST_CASE("extended values on the kernel") {
    HermitianOperator a = HermitianOperator::diag((rvec(2) << 1.0, 0.0).finished());
    cvec xi(2);
    xi << 0.0, 1.0;
    CHECK(quad_form_log(xi, a).tag() == ExtendedReal::Tag::minus_infinity);
    cvec on(2);
    on << 1.0, 0.0;
    CHECK(quad_form_log(on, a).value() == doctest::Approx(0.0));
    CHECK_THROWS_AS(log_via_kernel(xi, a), domain_error);
    CHECK_THROWS_AS(log_limit(xi, a), domain_error);
}

TEST_CASE("non-hermitian input is rejected") {
    CHECK_THROWS_AS(HermitianOperator(mat2(1.0, 2.0, 0.0, 1.0)), input_error);
}

TEST_CASE("log is operator monotone on random ordered pairs") {
    for (int i = 0; i < 60; ++i) {
        auto g = stream(5, 0, i);
        int n = 1 + i % 6;
        auto [a, b] = random_ordered_pair(g, n, 1 + i % n);
        CHECK(form_order_leq(a, b));
        CHECK(check_log_monotone(a, b, false).margin >= -1e-9);
    }
}

TEST_CASE("square does not preserve the order") {
    // a classical counterexample: A <= B but A^2 is not <= B^2
    cmat a(2, 2), b(2, 2);
    a << 1, 1, 1, 1;
    b << 2, 1, 1, 1;
    CHECK(form_order_leq(HermitianOperator(a), HermitianOperator(b)));
    CHECK_FALSE(form_order_leq(HermitianOperator(a * a), HermitianOperator(b * b)));
}

TEST_CASE("three routes agree on random instances") {
    for (int i = 0; i < 40; ++i) {
        auto g = stream(6, 0, i);
        int n = 1 + i % 8;
        HermitianOperator a = random_pd(g, n);
        cvec xi = gaussian_cvec(g, n);
        double s = quad_form_log(xi, a).value();
        CHECK(std::abs(log_via_kernel(xi, a) - s) < 1e-8 * (1 + xi.squaredNorm()));
        CHECK(std::abs(log_limit(xi, a) - s) < 1e-6 * (1 + xi.squaredNorm()));
    }
}
}
