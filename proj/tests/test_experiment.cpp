#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "bekenstein/errors.hpp"
#include "bekenstein/experiment.hpp"
#include "bekenstein/interchange.hpp"
#include "bekenstein/generators.hpp"
#include "bekenstein/random.hpp"

using namespace bk;

namespace {
std::string csv_of(const RunResult& r) {
    std::ostringstream os;
    write_csv(os, r.records);
    return os.str();
}
} // namespace

TEST_SUITE("experiment") {

TEST_CASE("pass iff margin >= -tol") {
    CHECK(make_record("s", 1, 0, 0, 0, "q", 0, 0, -1e-9, 1e-9).pass);
    CHECK_FALSE(make_record("s", 1, 0, 0, 0, "q", 0, 0, -2e-9, 1e-9).pass);
    CHECK_FALSE(make_record("s", 1, 0, 0, 0, "q", 0, 0, std::nan(""), 1.0).pass);
}

TEST_CASE("csv layout") {
    ExperimentRecord r = make_record("formcalc", 3, 0.5, 0.1, 7, "x", 1.0 / 3.0, 2.0, 0.25, 1e-8);
    CHECK(csv_row(r) == "formcalc,3,0.5,0.10000000000000001,7,x,0.33333333333333331,2,0.25,1e-08,true,0");
    std::string h = csv_header();
    CHECK(h.find("schema 1") != std::string::npos);
    CHECK(h.find("suite,N,R,alpha,sample_id,quantity,lhs,rhs,margin,tol,pass,wall_time_ms") != std::string::npos);
}

TEST_CASE("config validation") {
    ExperimentConfig c;
    c.suite = "nope";
    CHECK_THROWS_AS(resolved(c, "verify"), config_error);
    c.suite = "formcalc";
    c.alpha = {0.25};
    CHECK_THROWS_AS(resolved(c, "verify"), config_error);
    c.alpha = {0.1};
    c.n = {64};
    CHECK_THROWS_AS(resolved(c, "converge"), config_error);
    c.n = {};
    ExperimentConfig d = resolved(c, "converge");
    CHECK(d.n == std::vector<int>{64, 128, 256, 512});
}

TEST_CASE("formcalc defaults") {
    RunResult r = run_verify(ExperimentConfig{});
    CHECK(r.records.size() >= 700);
    CHECK(r.failures == 0);
    CHECK(exit_status(r) == 0);
}

TEST_CASE("bound-sweep row count is the cartesian product") {
    ExperimentConfig c;
    c.suite = "bound-sweep";
    c.n = {64, 128};
    c.r = {0.5, 1.0};
    c.alpha = {0.05, 0.1, 0.2};
    c.samples = 3;
    RunResult r = run_verify(c);
    CHECK(r.records.size() == 2 * 2 * 3 * 3);
    CHECK(r.failures == 0);
}

TEST_CASE("output does not depend on the worker count") {
    ExperimentConfig c;
    c.suite = "stdsubspace";
    c.samples = 12;
    setenv("BEKENSTEIN_WORKERS", "1", 1);
    std::string a = csv_of(run_verify(c));
    setenv("BEKENSTEIN_WORKERS", "4", 1);
    std::string b = csv_of(run_verify(c));
    unsetenv("BEKENSTEIN_WORKERS");
    CHECK(a == b);
    c.seed += 1;
    CHECK(csv_of(run_verify(c)) != a);
}

TEST_CASE("constant residuals fail the convergence check") {
    ExperimentConfig c;
    c.n = {64, 128, 256};
    c.inject_constant = 0.01;
    ConvergenceReport rep = run_convergence(c);
    CHECK_FALSE(rep.decreasing);
    CHECK(exit_status(rep.result) == 1);
}

TEST_CASE("slope fit") {
    CHECK(loglog_slope({1, 2, 4, 8}, {1, 0.25, 0.0625, 0.015625}) == doctest::Approx(-2.0));
}

TEST_CASE("json round trip of modular data") {
    auto g = stream(41, 0, 0);
    StandardSubspace h(random_standard(g, 3));
    json j = to_json(h.modular());
    ModularData md = modular_data_from_json(json::parse(j.dump()));
    CHECK((md.delta.matrix() - h.modular().delta.matrix()).norm() < 1e-12);
    CHECK((md.j.c - h.modular().j.c).norm() == 0.0);
    RealSubspace r = real_subspace_from_json(to_json(h.subspace()));
    CHECK(subspace_distance(r, h.subspace()) < 1e-14);
    json z = to_json((cvec(1) << cplx(1.5, -2.0)).finished());
    CHECK(z.dump() == "[[1.5,-2.0]]");
    CHECK_THROWS(cmat_from_json(json::parse("[[1,2],[3]]")));
}
}
