// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
// usage: acceptance <path to bekenstein cli> <scratch dir>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include "bekenstein/experiment.hpp"

using namespace bk;

namespace {

using clock_type = std::chrono::steady_clock;

struct Tally {
    int count = 0, failed = 0;
    double worst = std::numeric_limits<double>::infinity();  // smallest margin
    double tol = 0.0;
};

std::map<std::string, Tally> tally(const RunResult& r) {
    std::map<std::string, Tally> t;
    for (const auto& e : r.records) {
        Tally& x = t[e.quantity];
        ++x.count;
        x.failed += !e.pass;
        x.worst = std::min(x.worst, std::isnan(e.margin) ? -INFINITY : e.margin);
        x.tol = std::max(x.tol, e.tol);
    }
    return t;
}

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s  %-34s %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
    failures += !ok;
}

// every listed quantity present with the expected count and no failures
void criterion(const std::string& name, const std::map<std::string, Tally>& t,
               const std::vector<std::pair<std::string, int>>& expect, double secs, double limit) {
    bool ok = secs < limit;
    std::ostringstream os;
    for (const auto& [q, n] : expect) {
        auto it = t.find(q);
        int have = it == t.end() ? 0 : it->second.count;
        int bad = it == t.end() ? 0 : it->second.failed;
        ok = ok && have == n && bad == 0;
        os << q << " " << have - bad << "/" << n;
        if (it != t.end()) {
            char buf[64];
            std::snprintf(buf, sizeof buf, " (min margin %.2g, tol %.2g)", it->second.worst, it->second.tol);
            os << buf;
        }
        os << "; ";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f s (limit %.0f s)", secs, limit);
    report(name, ok, os.str() + buf);
}

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: acceptance <cli> <scratch dir>\n");
        return 2;
    }
    const std::string cli = argv[1], dir = argv[2];

    {
        ExperimentConfig c;
        c.suite = "formcalc";
        auto t0 = clock_type::now();
        auto t = tally(run_verify(c));
        double s = seconds_since(t0);
        criterion("kernel identity", t, {{"kernel_identity", 50}}, s, 5);
        criterion("three-way log agreement", t,
                  {{"log_kernel_vs_spectral", 200}, {"log_limit_vs_spectral", 200}, {"log_limit_vs_kernel", 200}}, s, 30);
        criterion("log operator monotone", t, {{"log_monotone", 500}}, s, 600);
    }
    {
        ExperimentConfig c;
        c.suite = "stdsubspace";
        auto t0 = clock_type::now();
        auto t = tally(run_verify(c));
        double s = seconds_since(t0);
        criterion("tomita pipeline", t,
                  {{"polar_identity", 200}, {"s_fixes_h", 200}, {"j_involution", 200}, {"j_delta_j", 200},
                   {"complement_adjoint", 200}, {"duality", 200}, {"modular_invariance", 200}},
                  s, 60);
        criterion("contraction family", t, {{"contraction_norm", 100}, {"contraction_adjoint", 100}}, s, 600);
        criterion("inclusion inequalities", t, {{"inclusion_power", 2200}, {"inclusion_log", 200}}, s, 600);
        criterion("log density bound", t, {{"entropy_density", 500}}, s, 600);
    }
    {
        ExperimentConfig c;
        c.suite = "entropy";
        auto t0 = clock_type::now();
        auto t = tally(run_verify(c));
        double s = seconds_since(t0);
        criterion("relative entropy agreement", t,
                  {{"araki_vs_trace", 100}, {"uhlmann_vs_trace", 100}, {"cocycle_vs_trace", 100}, {"positivity", 100},
                   {"representative", 100}, {"monotonicity", 100}},
                  s, 600);
        criterion("localized vector entropy", t, {{"isometry_roundtrip", 100}, {"vector_entropy", 100}}, s, 600);
    }
    {
        auto t0 = clock_type::now();
        ConvergenceReport rep = run_convergence(ExperimentConfig{});
        double s = seconds_since(t0);
        std::ostringstream os;
        for (size_t k = 0; k < rep.n.size(); ++k) os << "N=" << rep.n[k] << ":" << rep.residual[k] << " ";
        char buf[96];
        std::snprintf(buf, sizeof buf, "slope %.3f; %.1f s (limit 300 s)", rep.slope, s);
        report("half-line modular flow convergence", rep.decreasing && rep.slope < -0.5 && s < 300 && rep.n.size() == 4,
               os.str() + buf);
    }
    double sweep_secs = 0.0;
    {
        ExperimentConfig c;
        c.n = {128, 256};
        c.r = {0.5, 1.0, 2.0};
        c.alpha = {0.05, 0.1, 0.2};
        c.samples = 100;
        auto t0 = clock_type::now();
        auto t = tally(run_sweep(c));
        sweep_secs = seconds_since(t0);
        criterion("damping inequalities", t,
                  {{"tube_damping", 1800}, {"interval_damping", 1800}, {"halfline_eplus", 1800}, {"halfline_eminus", 1800}},
                  sweep_secs, 600);
    }
    {
        ExperimentConfig c;
        c.n = {128, 256};
        c.r = {0.5, 1.0, 2.0};
        c.samples = 50;
        auto t0 = clock_type::now();
        auto t = tally(run_bound(c));
        double s = seconds_since(t0) + sweep_secs;
        criterion("entropy-energy bound", t,
                  {{"coherent_ratio", 300}, {"energy_sweep", 300}, {"log_energy_form", 300}, {"alpha_route", 6}}, s, 600);
    }
    {
        std::string a = dir + "/determinism_a.csv", b = dir + "/determinism_b.csv";
        std::string base = "\"" + cli + "\" verify --suite bound-sweep --n 64,128 --r 0.5,1 --samples 5 --seed 99 --out ";
        int ra = std::system((base + "\"" + a + "\" 2>/dev/null").c_str());
        int rb = std::system(("BEKENSTEIN_WORKERS=2 " + base + "\"" + b + "\" 2>/dev/null").c_str());
        std::string ca = slurp(a), cb = slurp(b);
        bool ok = ra == 0 && rb == 0 && !ca.empty() && ca == cb;
        report("cli determinism", ok, std::to_string(ca.size()) + " bytes, " + (ca == cb ? "identical" : "different"));
    }
    std::printf("%s\n", failures ? "acceptance: FAILED" : "acceptance: all criteria pass");
    return failures ? 1 : 0;
}
