#include "bekenstein/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <memory>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "bekenstein/chiralnet.hpp"
#include "bekenstein/generators.hpp"
#include "bekenstein/random.hpp"

namespace bk {

// ---- records and output ----

ExperimentRecord make_record(std::string suite, int n, double r, double alpha, int sample, std::string quantity,
                             double lhs, double rhs, double margin, double tol) {
    ExperimentRecord e;
    e.suite = std::move(suite);
    e.n = n;
    e.r = r;
    e.alpha = alpha;
    e.sample_id = sample;
    e.quantity = std::move(quantity);
    e.lhs = lhs;
    e.rhs = rhs;
    e.margin = margin;
    e.tol = tol;
    e.pass = margin >= -tol;  // false for NaN
    return e;
}

static std::string num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_header() {
    return "# bekenstein experiment records, schema " + std::to_string(csv_schema_version) +
           "\nsuite,N,R,alpha,sample_id,quantity,lhs,rhs,margin,tol,pass,wall_time_ms";
}

std::string csv_row(const ExperimentRecord& r) {
    std::ostringstream os;
    os << r.suite << ',' << r.n << ',' << num(r.r) << ',' << num(r.alpha) << ',' << r.sample_id << ','
       << r.quantity << ',' << num(r.lhs) << ',' << num(r.rhs) << ',' << num(r.margin) << ',' << num(r.tol) << ','
       << (r.pass ? "true" : "false") << ',' << num(r.wall_time_ms);
    return os.str();
}

void write_csv(std::ostream& os, const std::vector<ExperimentRecord>& records) {
    os << csv_header() << '\n';
    for (const auto& r : records) os << csv_row(r) << '\n';
}

void write_csv(const std::string& path, const std::vector<ExperimentRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot write " + path);
    write_csv(out, records);
}

static nlohmann::json finite_or_string(double x) {
    if (std::isfinite(x)) return x;
    return num(x);
}

nlohmann::json records_json(const ExperimentConfig& c, const RunResult& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& e : r.records)
        rows.push_back({{"suite", e.suite}, {"N", e.n}, {"R", e.r}, {"alpha", e.alpha}, {"sample_id", e.sample_id},
                        {"quantity", e.quantity}, {"lhs", finite_or_string(e.lhs)}, {"rhs", finite_or_string(e.rhs)},
                        {"margin", finite_or_string(e.margin)}, {"tol", finite_or_string(e.tol)}, {"pass", e.pass},
                        {"wall_time_ms", e.wall_time_ms}});
    return {{"schema", csv_schema_version},
            {"config",
             {{"suite", c.suite}, {"n", c.n}, {"r", c.r}, {"alpha", c.alpha}, {"samples", c.samples}, {"seed", c.seed}}},
            {"summary", {{"records", r.records.size()}, {"failures", r.failures}, {"numerical_errors", r.numerical_errors}}},
            {"notes", r.notes},
            {"records", rows}};
}

int exit_status(const RunResult& r) {
    if (r.numerical_errors > 0) return 3;
    return r.failures > 0 ? 1 : 0;
}

// ---- workers ----

int worker_count() {
    if (const char* env = std::getenv("BEKENSTEIN_WORKERS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1) throw config_error("BEKENSTEIN_WORKERS must be a positive integer");
        return static_cast<int>(std::min(v, 256L));
    }
    unsigned h = std::thread::hardware_concurrency();
    return h ? static_cast<int>(h) : 1;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!first) first = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (first) std::rethrow_exception(first);
}

// ---- configuration ----

const std::vector<std::string>& known_suites() {
    static const std::vector<std::string> s{"formcalc", "stdsubspace", "entropy", "chiralnet", "bound-sweep"};
    return s;
}

ExperimentConfig resolved(const ExperimentConfig& in, const std::string& command) {
    ExperimentConfig c = in;
    if (command == "verify") {
        if (std::find(known_suites().begin(), known_suites().end(), c.suite) == known_suites().end())
            throw config_error("unknown suite '" + c.suite + "'");
    } else if (command == "sweep") {
        c.suite = "bound-sweep";
    } else if (command == "bound") {
        c.suite = "bound";
    } else if (command == "converge") {
        c.suite = "converge";
    } else {
        throw config_error("unknown command '" + command + "'");
    }
    const bool chiral = c.suite == "chiralnet" || c.suite == "converge";
    if (c.n.empty()) c.n = chiral ? std::vector<int>{64, 128, 256, 512} : std::vector<int>{128, 256};
    if (c.r.empty()) c.r = {0.5, 1.0, 2.0};
    if (c.alpha.empty()) c.alpha = {0.05, 0.1, 0.2};
    for (int n : c.n)
        if (n < 8 || n > 4096) throw config_error("grid sizes must lie in [8, 4096]");
    for (double r : c.r)
        if (!(r > 0.0) || r > 8.0) throw config_error("widths R must lie in (0, 8]");
    for (double a : c.alpha)
        if (!(a > 0.0 && a < 0.25)) throw config_error("alpha values must lie strictly inside (0, 1/4)");
    if (c.samples < 0) throw config_error("samples must be >= 1");
    if (command == "converge" && c.n.size() < 3) throw config_error("convergence needs at least 3 grid sizes");
    std::sort(c.n.begin(), c.n.end());
    c.n.erase(std::unique(c.n.begin(), c.n.end()), c.n.end());
    return c;
}

// ---- task execution ----

namespace {

struct Task {
    std::string suite;
    int n = 0;
    double r = 0.0, alpha = 0.0;
    int sample = 0;
    std::string quantity;  // used for the failure record if the body throws
    std::function<std::vector<ExperimentRecord>()> body;
};

RunResult execute(const ExperimentConfig& c, std::vector<Task>& tasks) {
    std::vector<std::vector<ExperimentRecord>> out(tasks.size());
    std::vector<std::string> errors(tasks.size());
    std::vector<char> numerical(tasks.size(), 0);
    parallel_for(tasks.size(), [&](std::size_t i) {
        const Task& t = tasks[i];
        auto t0 = std::chrono::steady_clock::now();
        try {
            out[i] = t.body();
        } catch (const config_error&) {
            throw;
        } catch (const input_error&) {
            throw;
        } catch (const std::exception& e) {
            // numerical trouble becomes a failed record, not a crash
            const double nan = std::nan("");
            out[i] = {make_record(t.suite, t.n, t.r, t.alpha, t.sample, t.quantity, nan, nan, nan, 0.0)};
            errors[i] = t.quantity + " (N=" + std::to_string(t.n) + ", sample " + std::to_string(t.sample) +
                        "): " + e.what();
            numerical[i] = dynamic_cast<const numerical_error*>(&e) != nullptr;
        }
        if (c.timing) {
            double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            for (auto& r : out[i]) r.wall_time_ms = ms;
        }
    });
    RunResult res;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        for (auto& r : out[i]) res.records.push_back(std::move(r));
        if (!errors[i].empty()) res.notes.push_back(errors[i]);
        res.numerical_errors += numerical[i];
    }
    std::stable_sort(res.records.begin(), res.records.end(), [](const auto& a, const auto& b) {
        return std::tie(a.suite, a.n, a.r, a.alpha, a.sample_id, a.quantity) <
               std::tie(b.suite, b.n, b.r, b.alpha, b.sample_id, b.quantity);
    });
    for (const auto& r : res.records) res.failures += !r.pass;
    return res;
}

double rel_diff(double a, double b) { return std::abs(a - b); }

int count_or(int samples, int fallback) { return samples > 0 ? samples : fallback; }

// antilinear A composed with linear L: (A conj)(L) = A conj(L) conj
cmat antilinear_times(const AntilinearOperator& a, const cmat& l) { return a.c * l.conjugate(); }

// ---- formcalc ----

void formcalc_tasks(const ExperimentConfig& c, std::vector<Task>& tasks) {
    const std::string s = "formcalc";
    const int nk = count_or(c.samples, 50);
    for (int i = 0; i < nk; ++i)
        tasks.push_back({s, 1, 0, 0, i, "kernel_identity", [=] {
                             double lam = std::pow(10.0, -1.0 + 2.0 * i / std::max(1, nk - 1));
                             double v = kernel_log(lam);
                             return std::vector{make_record(s, 1, 0, 0, i, "kernel_identity", v, std::log(lam),
                                                            -rel_diff(v, std::log(lam)), 1e-8)};
                         }});
    const int n3 = count_or(c.samples, 200);
    for (int i = 0; i < n3; ++i) {
        const int dim = 1 + i % 8;
        tasks.push_back({s, dim, 0, 0, i, "log_three_way", [=] {
                             auto g = stream(c.seed, 1, i);
                             HermitianOperator a = random_pd(g, dim);
                             cvec xi = gaussian_cvec(g, dim);
                             xi /= xi.norm();
                             double exact = quad_form_log(xi, a).value();
                             double kern = log_via_kernel(xi, a);
                             double lim = log_limit(xi, a);
                             return std::vector{
                                 make_record(s, dim, 0, 0, i, "log_kernel_vs_spectral", kern, exact, -rel_diff(kern, exact), 1e-6),
                                 make_record(s, dim, 0, 0, i, "log_limit_vs_spectral", lim, exact, -rel_diff(lim, exact), 1e-6),
                                 make_record(s, dim, 0, 0, i, "log_limit_vs_kernel", lim, kern, -rel_diff(lim, kern), 1e-6)};
                         }});
    }
    const int nm = count_or(c.samples, 500);
    for (int i = 0; i < nm; ++i) {
        const int dim = 1 + i % 8;
        tasks.push_back({s, dim, 0, 0, i, "log_monotone", [=] {
                             auto g = stream(c.seed, 2, i);
                             auto [a, b] = random_ordered_pair(g, dim, 1 + i % dim);
                             LogMonotoneReport rep = check_log_monotone(a, b, false);
                             return std::vector{make_record(s, dim, 0, 0, i, "log_monotone", 0.0, rep.margin, rep.margin, 1e-9)};
                         }});
    }
}

// ---- stdsubspace ----

std::vector<ExperimentRecord> tomita_records(const std::string& s, int dim, int i, std::uint64_t seed) {
    auto g = stream(seed, 3, i);
    RealSubspace h = random_standard(g, dim);
    StandardSubspace hs(h);
    const ModularData& md = hs.modular();
    const cmat id = cmat::Identity(dim, dim);
    const double sn = std::max(1.0, opnorm(md.s.c));

    double polar = opnorm(md.s.c - antilinear_times(md.j, md.delta_pow(0.5))) / sn;
    double on_basis = 0.0;
    for (int k = 0; k < dim; ++k) on_basis = std::max(on_basis, (md.s.apply(h.basis().col(k)) - h.basis().col(k)).norm());
    double jj = opnorm(md.j.compose(md.j) - id);
    cmat dinv = md.delta_pow(-1.0);
    double jdj = opnorm(antilinear_times(md.j, md.delta.matrix()) * md.j.c.conjugate() - dinv) / opnorm(dinv);

    RealSubspace hp = symplectic_complement(h);
    StandardSubspace hps(hp);
    double adj = opnorm(hps.modular().s.c - md.s.adjoint().c) / sn;
    double duality = subspace_distance(h.mapped(md.j), hp);
    double twice = subspace_distance(symplectic_complement(hp), h);
    double inv = 0.0;
    for (double t : {-2.0, -1.0, -0.3, 0.3, 1.0, 2.0}) inv = std::max(inv, subspace_distance(h.mapped(md.delta_it(t)), h));

    auto rec = [&](const char* q, double v, double tol) { return make_record(s, dim, 0, 0, i, q, v, 0.0, -v, tol); };
    return {rec("polar_identity", polar, 1e-10),  rec("s_fixes_h", on_basis, 1e-10),
            rec("j_involution", jj, 1e-10),       rec("j_delta_j", jdj, 1e-10),
            rec("complement_adjoint", adj, 1e-10), rec("duality", duality, 1e-10),
            rec("double_complement", twice, 1e-10), rec("modular_invariance", inv, 1e-8)};
}

std::vector<ExperimentRecord> contraction_records(const std::string& s, int dim, int i, std::uint64_t seed) {
    auto g = stream(seed, 4, i);
    RealSubspace h = random_standard(g, dim);
    StandardSubspace hs(h);
    RealSubspace k = random_inner(g, h, 1 + i % (dim - 1));
    double worst = 0.0;
    for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b) {
            cplx z(-2.0 + 0.5 * a, -0.5 * b / 8.0);
            worst = std::max(worst, opnorm(contraction_family(hs, k, z)));
        }
    // adjoint relation on a pair of unrelated standard subspaces
    StandardSubspace h2(random_standard(g, dim)), k2(random_standard(g, dim));
    double adj = 0.0;
    for (cplx z : {cplx(0.0, 0.0), cplx(0.7, -0.25), cplx(-1.3, -0.5), cplx(0.2, -0.1), cplx(1.5, -0.4)})
        adj = std::max(adj, contraction_adjoint_residual(h2, k2, z));
    return {make_record(s, dim, 0, 0, i, "contraction_norm", worst, 1.0, 1.0 - worst, 1e-8),
            make_record(s, dim, 0, 0, i, "contraction_adjoint", adj, 0.0, -adj, 1e-8)};
}

std::vector<ExperimentRecord> inclusion_records(const std::string& s, int dim, int i, std::uint64_t seed) {
    auto g = stream(seed, 5, i);
    RealSubspace h = random_standard(g, dim);
    StandardSubspace hs(h);
    RealSubspace k = random_inner(g, h, 1 + i % (dim - 1));
    std::vector<double> grid;
    for (int a = 0; a <= 10; ++a) grid.push_back(0.1 * a);
    InclusionReport rep = inclusion_inequalities(hs, k, grid);
    std::vector<ExperimentRecord> out;
    for (size_t a = 0; a < grid.size(); ++a)
        out.push_back(make_record(s, dim, 0, grid[a], i, "inclusion_power", 0.0, rep.power_margin[a], rep.power_margin[a], 1e-9));
    out.push_back(make_record(s, dim, 0, 0, i, "inclusion_log", 0.0, rep.log_margin, rep.log_margin, 1e-9));
    return out;
}

void stdsubspace_tasks(const ExperimentConfig& c, std::vector<Task>& tasks) {
    const std::string s = "stdsubspace";
    const std::uint64_t seed = c.seed;
    for (int i = 0, n = count_or(c.samples, 200); i < n; ++i) {
        int dim = 1 + i % 6;
        tasks.push_back({s, dim, 0, 0, i, "tomita", [=] { return tomita_records(s, dim, i, seed); }});
    }
    for (int i = 0, n = count_or(c.samples, 100); i < n; ++i) {
        int dim = 2 + i % 5;
        tasks.push_back({s, dim, 0, 0, i, "contraction", [=] { return contraction_records(s, dim, i, seed); }});
    }
    for (int i = 0, n = count_or(c.samples, 200); i < n; ++i) {
        int dim = 2 + i % 5;
        tasks.push_back({s, dim, 0, 0, i, "inclusion", [=] { return inclusion_records(s, dim, i, seed); }});
    }
    for (int i = 0, n = count_or(c.samples, 500); i < n; ++i) {
        int dim = 1 + i % 6;
        tasks.push_back({s, dim, 0, 0, i, "entropy_density", [=] {
                             auto g = stream(seed, 6, i);
                             StandardSubspace hs(random_standard(g, dim));
                             cvec xi = gaussian_cvec(g, dim);
                             EntropyDensityBound b = entropy_density_bound(xi, hs);
                             return std::vector{make_record(s, dim, 0, 0, i, "entropy_density", b.lhs, b.rhs, b.rhs - b.lhs, 1e-10)};
                         }});
    }
}

// ---- entropy ----

double trace_oracle(const DensityMatrix& phi, const DensityMatrix& omega) {
    return (phi.matrix() * (phi.log_on_support() - omega.log_on_support())).trace().real();
}

void entropy_tasks(const ExperimentConfig& c, std::vector<Task>& tasks) {
    const std::string s = "entropy";
    const std::uint64_t seed = c.seed;
    const int ns = count_or(c.samples, 100);
    for (int i = 0; i < ns; ++i) {
        int dim = 2 + i % 3;
        tasks.push_back({s, dim, 0, 0, i, "entropy_agreement", [=] {
                             auto g = stream(seed, 7, i);
                             DensityMatrix phi = random_density(g, dim), omega = random_density(g, dim);
                             StandardFormAlgebra alg(dim);
                             double tr = trace_oracle(phi, omega);
                             double araki = relative_entropy(phi, omega).value();
                             double uhl = uhlmann_entropy(phi, omega, alg.vec(phi.sqrt()));
                             double coc = cocycle_entropy(phi, omega);
                             // another representative: rho^{1/2} u for a unitary u
                             cvec other = alg.vec(phi.sqrt() * random_unitary(g, dim));
                             double araki2 = relative_entropy(phi, omega, other).value();
                             return std::vector{
                                 make_record(s, dim, 0, 0, i, "araki_vs_trace", araki, tr, -std::abs(araki - tr), 1e-8),
                                 make_record(s, dim, 0, 0, i, "uhlmann_vs_trace", uhl, tr, -std::abs(uhl - tr), 1e-5),
                                 make_record(s, dim, 0, 0, i, "cocycle_vs_trace", coc, tr, -std::abs(coc - tr), 1e-5),
                                 make_record(s, dim, 0, 0, i, "positivity", araki, 0.0, araki, 1e-10),
                                 make_record(s, dim, 0, 0, i, "representative", araki2, araki, -std::abs(araki2 - araki), 1e-9)};
                         }});
        tasks.push_back({s, 4, 0, 0, i, "monotonicity", [=] {
                             auto g = stream(seed, 8, i);
                             DensityMatrix phi = random_density(g, 4), omega = random_density(g, 4);
                             double full = relative_entropy(phi, omega).value();
                             double part = relative_entropy(partial_trace_second(phi, 2, 2), partial_trace_second(omega, 2, 2)).value();
                             return std::vector{make_record(s, 4, 0, 0, i, "monotonicity", part, full, full - part, 1e-8)};
                         }});
        tasks.push_back({s, dim, 0, 0, i, "vector_entropy", [=] {
                             auto g = stream(seed, 9, i);
                             DensityMatrix omega = random_density(g, dim);
                             cmat v = random_unitary(g, dim);
                             StandardFormAlgebra alg(dim);
                             cvec omega_vec = alg.vacuum(omega);
                             cvec xi = alg.left(v) * omega_vec;
                             LocalizedIsometry li = localized_isometry(xi, alg, omega);
                             double round = li.ok ? (alg.left(li.v) * omega_vec - xi).norm() : std::nan("");
                             double ent = vector_state_entropy(xi, alg, omega);
                             cmat rp = v * omega.matrix() * v.adjoint();
                             DensityMatrix phi(0.5 * (rp + rp.adjoint()));
                             double tr = trace_oracle(phi, omega);
                             return std::vector{
                                 make_record(s, dim, 0, 0, i, "isometry_roundtrip", round, 0.0, -round, 1e-10),
                                 make_record(s, dim, 0, 0, i, "vector_entropy", ent, tr, -std::abs(ent - tr), 1e-8)};
                         }});
    }
}

// ---- chiral ----

struct ChiralShared {
    std::map<int, LatticeChiralModel> model;
    std::map<int, HalfLineSubspace> h0;
    std::map<int, double> tol;
    std::map<double, IntervalSubspace> full, sub;  // (-R, R) and (-R, R/2)
    std::map<std::pair<double, double>, cmat> damp_full, damp_sub;
    std::map<double, ComplementBand> band;
};

ChiralShared prepare(const ExperimentConfig& c, bool halflines, bool intervals, bool bands) {
    ChiralShared sh;
    if (halflines) {
        for (int n : c.n) {
            sh.model[n];
            sh.h0[n];
            sh.tol[n];
        }
        parallel_for(c.n.size(), [&](std::size_t i) {
            int n = c.n[i];
            sh.tol[n] = tol_for(n);
            sh.model[n] = chiral_model(n);
            sh.h0[n] = half_line_subspace(sh.model[n], NetRegion::right(0.0));
        });
    } else {
        for (int n : c.n) sh.tol[n];
        parallel_for(c.n.size(), [&](std::size_t i) { sh.tol[c.n[i]] = tol_for(c.n[i]); });
    }
    if (intervals) {
        for (double r : c.r) {
            sh.full[r];
            sh.sub[r];
            sh.band[r];
        }
        parallel_for(2 * c.r.size(), [&](std::size_t i) {
            double r = c.r[i / 2];
            if (i % 2 == 0) {
                sh.full[r] = interval_subspace(NetRegion::interval(-r, r));
                if (bands) sh.band[r] = complement_band(sh.full[r]);
            } else {
                sh.sub[r] = interval_subspace(NetRegion::interval(-r, 0.5 * r));
            }
        });
        std::vector<std::pair<double, double>> keys;
        for (double r : c.r)
            for (double a : c.alpha) {
                keys.push_back({r, a});
                sh.damp_full[{r, a}];
                sh.damp_sub[{r, a}];
            }
        parallel_for(2 * keys.size(), [&](std::size_t i) {
            auto key = keys[i / 2];
            double d = tube_damping(key.first, key.second);
            if (i % 2 == 0)
                sh.damp_full[key] = sh.full[key.first].damping(d);
            else
                sh.damp_sub[key] = sh.sub[key.first].damping(d);
        });
    }
    return sh;
}

// one tube damping row; xi a random complex combination of the generators of B
ExperimentRecord tube_damping_row(const std::string& s, const ChiralShared& sh, int n, double r, double a, int i, std::uint64_t seed) {
    const IntervalSubspace& b = sh.sub.at(r);
    auto g = stream(seed, 10, (static_cast<std::uint64_t>(n) << 40) ^ (static_cast<std::uint64_t>(r * 1024) << 24) ^
                                  (static_cast<std::uint64_t>(a * 4096) << 12) ^ i);
    cvec y = b.coords * gaussian_cvec(g, b.dim());
    Margin m = verify_tube_damping(b, sh.damp_sub.at({r, a}), a, y, sh.tol.at(n));
    return make_record(s, n, r, a, i, m.quantity, m.lhs, m.rhs, m.margin, m.tol);
}

std::vector<ExperimentRecord> damping_rows(const std::string& s, const ChiralShared& sh, int n, double r, double a,
                                            int i, std::uint64_t seed) {
    const double tol = sh.tol.at(n);
    std::uint64_t idx = (static_cast<std::uint64_t>(n) << 40) ^ (static_cast<std::uint64_t>(r * 1024) << 24) ^
                        (static_cast<std::uint64_t>(a * 4096) << 12) ^ i;
    std::vector<ExperimentRecord> out{tube_damping_row(s, sh, n, r, a, i, seed)};
    auto g = stream(seed, 11, idx);
    const IntervalSubspace& full = sh.full.at(r);
    Margin f = verify_interval_damping(full, sh.damp_full.at({r, a}), a, full.coords * gaussian_cvec(g, full.dim()), tol);
    out.push_back(make_record(s, n, r, a, i, f.quantity, f.lhs, f.rhs, f.margin, f.tol));
    cvec eta = random_halfline_vector(sh.h0.at(n), seed ^ (idx * 0x9e3779b97f4a7c15ULL));
    for (const Margin& m : verify_halfline_damping(sh.model.at(n), sh.h0.at(n), r, a, eta, tol))
        out.push_back(make_record(s, n, r, a, i, m.quantity, m.lhs, m.rhs, m.margin, m.tol));
    return out;
}

void chiral_tasks(const ExperimentConfig& c, std::vector<Task>& tasks, std::shared_ptr<ChiralShared> sh) {
    const std::string s = "chiralnet";
    const int ns = count_or(c.samples, 10);
    for (int n : c.n) {
        tasks.push_back({s, n, 0, 0, 0, "commutation", [=] {
                             const double tol = sh->tol.at(n);
                             CommutationResidual cr = verify_commutation(sh->model.at(n), 1.0, 0.2);
                             return std::vector{
                                 make_record(s, n, 0, 0, 0, "dilation_tol", tol, 0.0, 0.0, tol),
                                 make_record(s, n, 0, 0, 0, "commutation", cr.residual, 0.0, -cr.residual, tol)};
                         }});
        for (double r : c.r) {
            tasks.push_back({s, n, r, 0, 0, "log_energy_operator", [=] {
                                 const double tol = sh->tol.at(n);
                                 Margin m = verify_log_energy_operator(sh->full.at(r), r, tol);
                                 std::vector<ExperimentRecord> out{make_record(s, n, r, 0, 0, m.quantity, m.lhs, m.rhs, m.margin, tol)};
                                 for (double a : c.alpha) {
                                     Margin o = verify_tube_damping_operator(sh->sub.at(r), sh->damp_sub.at({r, a}), a, tol);
                                     out.push_back(make_record(s, n, r, a, 0, o.quantity, o.lhs, o.rhs, o.margin, tol));
                                 }
                                 return out;
                             }});
            for (double a : c.alpha)
                for (int i = 0; i < ns; ++i)
                    tasks.push_back({s, n, r, a, i, "damping", [=] { return damping_rows(s, *sh, n, r, a, i, c.seed); }});
        }
    }
    for (double r : c.r)
        tasks.push_back({s, 0, r, 0, 0, "net_checks", [=] {
                             NetChecks nc = net_checks(r);
                             return std::vector{
                                 make_record(s, 0, r, 0, 0, "isotony", nc.isotony, 0.0, -nc.isotony, 1e-10),
                                 make_record(s, 0, r, 0, 0, "covariance", nc.covariance, 0.0, -nc.covariance, 1e-8),
                                 make_record(s, 0, r, 0, 0, "locality", nc.locality, 0.0, -nc.locality, 1e-10)};
                         }});
}

} // namespace

RunResult run_verify(const ExperimentConfig& in) {
    ExperimentConfig c = resolved(in, "verify");
    std::vector<Task> tasks;
    if (c.suite == "formcalc") {
        formcalc_tasks(c, tasks);
    } else if (c.suite == "stdsubspace") {
        stdsubspace_tasks(c, tasks);
    } else if (c.suite == "entropy") {
        entropy_tasks(c, tasks);
    } else if (c.suite == "chiralnet") {
        auto sh = std::make_shared<ChiralShared>(prepare(c, true, true, false));
        chiral_tasks(c, tasks, sh);
    } else {
        // bound-sweep: one tube damping row per (N, R, alpha, sample)
        auto sh = std::make_shared<ChiralShared>(prepare(c, false, true, false));
        const int ns = count_or(c.samples, 100);
        for (int n : c.n)
            for (double r : c.r)
                for (double a : c.alpha)
                    for (int i = 0; i < ns; ++i)
                        tasks.push_back({c.suite, n, r, a, i, "tube_damping", [=] {
                                             return std::vector{tube_damping_row("bound-sweep", *sh, n, r, a, i, c.seed)};
                                         }});
    }
    return execute(c, tasks);
}

RunResult run_sweep(const ExperimentConfig& in) {
    ExperimentConfig c = resolved(in, "sweep");
    auto sh = std::make_shared<ChiralShared>(prepare(c, true, true, false));
    std::vector<Task> tasks;
    const int ns = count_or(c.samples, 100);
    for (int n : c.n)
        for (double r : c.r)
            for (double a : c.alpha)
                for (int i = 0; i < ns; ++i)
                    tasks.push_back({c.suite, n, r, a, i, "damping", [=] { return damping_rows("bound-sweep", *sh, n, r, a, i, c.seed); }});
    return execute(c, tasks);
}

RunResult run_bound(const ExperimentConfig& in) {
    ExperimentConfig c = resolved(in, "bound");
    auto sh = std::make_shared<ChiralShared>(prepare(c, false, true, true));
    std::vector<Task> tasks;
    const std::string s = "bound";
    const int ns = count_or(c.samples, 50);
    for (int n : c.n)
        for (double r : c.r) {
            tasks.push_back({s, n, r, 0, 0, "alpha_route", [=] {
                                 std::vector<double> grid;
                                 for (int k = 1; k <= 24; ++k) grid.push_back(0.24 * std::pow(0.6, k - 1));
                                 Margin m = alpha_route(r, grid);
                                 return std::vector{make_record(s, n, r, 0, 0, m.quantity, m.lhs, m.rhs, m.margin, 0.0)};
                             }});
            for (int i = 0; i < ns; ++i)
                tasks.push_back({s, n, r, 0, i, "coherent", [=] {
                                     const IntervalSubspace& b = sh->full.at(r);
                                     const double tol = sh->tol.at(n);
                                     auto g = stream(c.seed, 12, (static_cast<std::uint64_t>(n) << 32) ^
                                                                     (static_cast<std::uint64_t>(r * 1024) << 16) ^ i);
                                     rvec coef = gaussian_rvec(g, b.dim());
                                     CoherentBound cb = coherent_entropy_bound(b, b.coords * coef.cast<cplx>(), tol);
                                     EnergySweep es = energy_infimum_sweep(b, sh->band.at(r), coef, 64, g(), tol);
                                     Margin dp = verify_log_energy(b, r, b.coords * coef.cast<cplx>(), tol);
                                     return std::vector{
                                         make_record(s, n, r, 0, i, "coherent_ratio", cb.ratio, 1.0, 1.0 - cb.ratio, tol),
                                         make_record(s, n, r, 0, i, "log_energy_form", dp.lhs, dp.rhs, dp.margin, tol),
                                         make_record(s, n, r, 0, i, "energy_sweep", es.entropy,
                                                     2.0 * pi * b.radius() * es.energy_min, es.margin, tol)};
                                 }});
        }
    RunResult res = execute(c, tasks);
    res.notes.push_back("energy_sweep rhs is 2 pi R times an upper estimate of the energy infimum, sampled over "
                        "64 perturbations localized in the complement of B");
    return res;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw input_error("slope fit needs matching samples");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) mx += std::log(x[i]), my += std::log(y[i]);
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

ConvergenceReport run_convergence(const ExperimentConfig& in) {
    ExperimentConfig c = resolved(in, "converge");
    ConvergenceReport rep;
    rep.n = c.n;
    rep.residual.assign(c.n.size(), 0.0);
    std::vector<Task> tasks;
    const std::string s = "converge";
    for (std::size_t k = 0; k < c.n.size(); ++k) {
        int n = c.n[k];
        tasks.push_back({s, n, 0, 0, 0, "dilation_residual", [=, &rep] {
                             double res = c.inject_constant > 0 ? c.inject_constant
                                                                : halfline_dilation_residual(chiral_model(n)).max_residual;
                             rep.residual[k] = res;
                             return std::vector{make_record(s, n, 0, 0, 0, "dilation_residual", res, 0.0, -res, 2.0 * res)};
                         }});
    }
    rep.result = execute(c, tasks);
    std::vector<double> xs(c.n.begin(), c.n.end());
    rep.slope = loglog_slope(xs, rep.residual);
    double step = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < rep.residual.size(); ++k)
        step = std::min(step, std::log(rep.residual[k] / rep.residual[k + 1]));
    rep.decreasing = step > 0.0;
    // pass needs slope below -1/2 and every refinement to lower the residual
    rep.result.records.push_back(make_record(s, 0, 0, 0, 0, "loglog_slope", rep.slope, -0.5, -0.5 - rep.slope, 0.0));
    rep.result.records.push_back(make_record(s, 0, 0, 0, 1, "strict_decrease", step, 1e-9, step - 1e-9, 0.0));
    for (std::size_t k = rep.result.records.size() - 2; k < rep.result.records.size(); ++k)
        rep.result.failures += !rep.result.records[k].pass;
    return rep;
}

} // namespace bk
