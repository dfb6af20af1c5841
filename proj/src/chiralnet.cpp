#include "bekenstein/chiralnet.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "bekenstein/random.hpp"

namespace bk {

namespace {

double sinc(double x) {
    if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

cmat hermitian_part(const cmat& a) { return 0.5 * (a + a.adjoint()); }

} // namespace

// ---- model ----

cmat LatticeChiralModel::translation(double x) const {
    cvec d(n);
    for (int j = 0; j < n; ++j) d(j) = std::polar(1.0, p(j) * x);
    return d.asDiagonal();
}

cvec LatticeChiralModel::translate(double x, const cvec& v) const {
    cvec r(n);
    for (int j = 0; j < n; ++j) r(j) = std::polar(1.0, p(j) * x) * v(j);
    return r;
}

cmat LatticeChiralModel::energy() const { return p.cast<cplx>().asDiagonal(); }

cmat LatticeChiralModel::dilation(double t) const {
    // periodic band-limited shift by d samples; a function of j - l only
    const double d = 2.0 * pi * t / h;
    const int lo = -n / 2, hi = lo + n;
    cvec kern(2 * n - 1);
    for (int diff = -(n - 1); diff <= n - 1; ++diff) {
        cplx s = 0.0;
        for (int k = lo; k < hi; ++k) s += std::polar(1.0, 2.0 * pi * k * (diff - d) / n);
        kern(diff + n - 1) = s / static_cast<double>(n);
    }
    cmat r(n, n);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) r(j, l) = kern(j - l + n - 1);
    return r;
}

LatticeChiralModel build_model(int n, double p_min, double p_max, int m, double a) {
    if (n < 8 || m < 8) throw input_error("model needs at least 8 modes and 8 positions");
    if (!(p_min > 0.0) || !(p_max > p_min)) throw input_error("momentum range must satisfy 0 < p_min < p_max");
    if (!(a > 0.0)) throw input_error("position spacing must be positive");
    LatticeChiralModel md;
    md.n = n;
    const double lo = std::log(p_min), hi = std::log(p_max);
    md.h = (hi - lo) / (n - 1);
    md.theta = rvec::LinSpaced(n, lo, hi);
    md.p = md.theta.array().exp();
    md.weights = md.p.array().square() * md.h;
    md.sqrtw = md.weights.array().sqrt();
    md.spacing = a;
    md.positions.resize(m);
    for (int i = 0; i < m; ++i) md.positions(i) = (i - 0.5 * (m - 1)) * a;
    md.embed.resize(n, m);
    for (int j = 0; j < n; ++j) {
        double amp = md.sqrtw(j) * a * std::pow(sinc(0.5 * md.p(j) * a), 2);
        for (int i = 0; i < m; ++i) md.embed(j, i) = amp * std::polar(1.0, md.p(j) * md.positions(i));
    }
    // log x ~ -log p: keep 4 e-folds of margin at high p and 8 at low p
    md.u_lo = -hi + 4.0;
    md.u_hi = -lo - 8.0;
    if (md.u_hi - md.u_lo < 2.0 * md.sigma) throw config_error("momentum range too narrow for the half-line basis");
    return md;
}

Refinement refinement(int n) {
    if (n < 8) throw input_error("refinement needs n >= 8");
    Refinement r;
    r.n = n;
    r.window = 20.0 + 5.0 * std::log2(n / 64.0);
    r.p_min = std::exp(-0.5 * r.window - 8.0);
    r.p_max = std::exp(0.5 * r.window + 4.0);
    return r;
}

LatticeChiralModel chiral_model(int n) {
    Refinement r = refinement(n);
    return build_model(n, r.p_min, r.p_max, 129, 1.0 / 16.0);
}

// fhat(p) = i int_0^inf f(ir) e^{-pr} dr after rotating the contour onto the imaginary
// axis; with r = e^v the integrand is entire and decays on both sides, so the
// trapezoid rule in v converges geometrically
cmat loggauss_transforms(const LatticeChiralModel& m, const rvec& us, double sigma) {
    if (us.size() == 0) return cmat(m.n, 0);
    const double hv = sigma / 5.0;
    const double v_lo = us.minCoeff() - 14.0 * sigma;
    const double v_hi = std::min(std::log(200.0 / m.p(0)), us.maxCoeff() + 14.0 * sigma);
    const int nv = std::max(2, static_cast<int>(std::ceil((v_hi - v_lo) / hv)) + 1);
    rmat a(m.n, nv);
    for (int l = 0; l < nv; ++l) {
        double v = v_lo + l * hv, ev = std::exp(v);
        for (int j = 0; j < m.n; ++j) a(j, l) = std::exp(v - m.p(j) * ev);
    }
    cmat k(nv, us.size());
    const double s2 = 2.0 * sigma * sigma;
    for (Eigen::Index i = 0; i < us.size(); ++i)
        for (int l = 0; l < nv; ++l) {
            cplx z(v_lo + l * hv - us(i), 0.5 * pi);
            k(l, i) = std::exp(-z * z / s2);
        }
    cmat f = cplx(0.0, hv) * (a.cast<cplx>() * k);
    return m.sqrtw.cast<cplx>().asDiagonal() * f;
}

cvec loggauss_transform(const LatticeChiralModel& m, double u, double sigma) {
    rvec us(1);
    us << u;
    return loggauss_transforms(m, us, sigma).col(0);
}

std::string NetRegion::str() const {
    std::ostringstream os;
    switch (kind) {
    case RegionKind::half_line_right: os << "(" << a << ", inf)"; break;
    case RegionKind::half_line_left: os << "(-inf, " << a << ")"; break;
    case RegionKind::interval: os << "(" << a << ", " << b << ")"; break;
    }
    return os.str();
}

// ---- half-lines ----

static ModularData complement_data(const ModularData& md) {
    const auto m = md.spectrum.size();
    ModularData c;
    c.span = md.span;
    c.spectrum = md.spectrum.reverse().cwiseInverse();
    c.eigvecs = md.eigvecs.rowwise().reverse();
    cmat dm = c.eigvecs * c.spectrum.cast<cplx>().asDiagonal() * c.eigvecs.adjoint();
    c.delta = HermitianOperator::trusted(hermitian_part(dm), c.spectrum(m - 1));
    c.j = md.j;
    c.s = md.s.adjoint();
    c.condition = md.condition;
    return c;
}

HalfLineSubspace half_line_subspace(const LatticeChiralModel& m, const NetRegion& region) {
    if (region.kind == RegionKind::interval) throw input_error("intervals are built by interval_subspace");
    const int k = static_cast<int>(std::floor((m.u_hi - m.u_lo) / m.sigma + 1e-9)) + 1;
    if (k > m.n) {
        std::ostringstream os;
        os << "half-line basis of " << k << " functions exceeds " << m.n << " modes";
        throw config_error(os.str());
    }
    HalfLineSubspace h;
    h.region = region;
    h.centers = rvec::LinSpaced(k, m.u_lo, m.u_lo + (k - 1) * m.sigma);
    h.basis = m.translation(region.a) * loggauss_transforms(m, h.centers, m.sigma);
    h.real = RealSubspace::from_columns(h.basis);
    h.modular = tomita_in_span(h.real);
    if (region.kind == RegionKind::half_line_left) {
        // H(-inf, a) := H(a, inf)'
        h.basis = h.modular.j.c * h.basis.conjugate();
        h.real = h.real.mapped(h.modular.j);
        h.modular = complement_data(h.modular);
    }
    return h;
}

DilationResidual halfline_dilation_residual(const LatticeChiralModel& m) {
    auto t0 = std::chrono::steady_clock::now();
    HalfLineSubspace h0 = half_line_subspace(m, NetRegion::right(0.0));
    DilationResidual r;
    r.n = m.n;
    r.k = static_cast<int>(h0.centers.size());
    r.delta_min = h0.modular.spectrum(0);
    r.delta_max = h0.modular.spectrum(r.k - 1);
    // smooth envelope over the centers, so the probe is exactly in the span
    rvec cf = (-h0.centers.array().square() / 8.0).exp();
    cvec probe = h0.basis * cf.cast<cplx>();
    const double pn = probe.norm();
    for (int i = 0; i <= 8; ++i) {
        double t = -1.0 + 0.25 * i;
        cvec flowed = h0.modular.apply_pow(cplx(0.0, t), probe);
        // Delta^{it} g_u = g_{u - 2 pi t}
        rvec shifted = h0.centers.array() - 2.0 * pi * t;
        cvec exact = loggauss_transforms(m, shifted, m.sigma) * cf.cast<cplx>();
        r.t.push_back(t);
        r.residual.push_back((flowed - exact).norm() / pn);
        r.max_residual = std::max(r.max_residual, r.residual.back());
    }
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

double tol_for(int n) {
    static std::mutex mu;
    static std::map<int, double> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    double t = 2.0 * halfline_dilation_residual(chiral_model(n)).max_residual;
    cache[n] = t;
    return t;
}

// ---- damping inequalities on half-lines ----

// <v, E+ v> for v extended by zero: E+ keeps the band-limited frequencies kappa <= 0 and is
// Toeplitz on the grid with symbol 1/2 at 0 and 1/(i pi m) at odd m
static double eplus_form(const cvec& v) {
    const auto n = v.size();
    double q = 0.5 * v.squaredNorm();
    for (Eigen::Index m = 1; m < n; m += 2) {
        cplx s = 0.0;
        for (Eigen::Index k = 0; k + m < n; ++k) s += std::conj(v(k + m)) * v(k);
        // entries (j, j-m) carry 1/(i pi m), entries (j-m, j) the conjugate
        q += 2.0 * (s / cplx(0.0, pi * m)).real();
    }
    return q;
}

double eplus_norm(const LatticeChiralModel& m, const cvec& v) {
    if (v.size() != m.n) throw input_error("vector size does not match the model");
    return std::sqrt(std::max(0.0, eplus_form(v)));
}

double eminus_norm(const LatticeChiralModel& m, const cvec& v) {
    if (v.size() != m.n) throw input_error("vector size does not match the model");
    return std::sqrt(std::max(0.0, v.squaredNorm() - eplus_form(v)));
}

double tube_damping(double r, double alpha) {
    if (!(alpha > 0.0 && alpha < 0.25)) throw input_error("alpha must lie in (0, 1/4)");
    if (!(r > 0.0)) throw input_error("radius must be positive");
    return r * std::tan(2.0 * pi * alpha);
}

std::vector<Margin> verify_halfline_damping(const LatticeChiralModel& m, const HalfLineSubspace& h0, double r,
                                             double alpha, const cvec& eta, double tol) {
    if (h0.region.kind != RegionKind::half_line_right || h0.region.a != 0.0)
        throw input_error("expected the half-line (0, inf)");
    const double c = tube_damping(r, alpha);
    cvec e = eta / eta.norm();
    cvec damp = (-c * m.p.array()).exp().cast<cplx>();
    std::vector<Margin> out(2);

    // xi in H(-R, inf)_C; Delta_{-R} = U(-R) Delta_0 U(R)
    cvec xi = m.translate(-r, e);
    out[0].quantity = "halfline_eplus";
    out[0].lhs = eplus_norm(m, damp.cwiseProduct(xi));
    out[0].rhs = h0.modular.apply_pow(cplx(alpha, 0.0), m.translate(r, xi)).norm();

    // xi in H(-inf, R)_C; Delta'_R = U(R) Delta_0^-1 U(-R)
    xi = m.translate(r, e);
    out[1].quantity = "halfline_eminus";
    out[1].lhs = eminus_norm(m, damp.cwiseProduct(xi));
    out[1].rhs = h0.modular.apply_pow(cplx(-alpha, 0.0), m.translate(-r, xi)).norm();

    for (auto& mg : out) {
        mg.margin = mg.rhs - mg.lhs;
        mg.tol = tol;
    }
    return out;
}

cvec random_halfline_vector(const HalfLineSubspace& h0, std::uint64_t seed) {
    const rvec& u = h0.centers;
    const double mid = 0.5 * (u(0) + u(u.size() - 1));
    const double reach = std::max(0.0, 0.5 * (u(u.size() - 1) - u(0)) - 8.0);
    auto g = stream(seed, 0x68616c66, 0);
    cvec cf = cvec::Zero(u.size());
    cvec draw = gaussian_cvec(g, static_cast<int>(u.size()));
    for (Eigen::Index i = 0; i < u.size(); ++i)
        if (std::abs(u(i) - mid) <= reach + 1e-9) cf(i) = draw(i);
    if (cf.norm() == 0.0) cf(u.size() / 2) = 1.0;
    cvec v = h0.basis * cf;
    return v / v.norm();
}

CommutationResidual verify_commutation(const LatticeChiralModel& m, double a, double s) {
    if (!(a > 0.0)) throw input_error("commutation check needs a > 0");
    CommutationResidual r;
    r.a = a;
    r.s = s;
    cmat lhs = m.translation(-a) * m.dilation(s) * m.translation(a) * m.dilation(-s);
    cmat rhs = m.translation(a * (std::exp(-2.0 * pi * s) - 1.0));
    // probes with content well inside the band
    for (double u : {2.0, 3.0, 4.0}) {
        cvec v = loggauss_transform(m, u, m.sigma);
        v /= v.norm();
        r.residual = std::max(r.residual, ((lhs - rhs) * v).norm());
    }
    return r;
}

// ---- intervals ----

cvec SplineLattice::symbol(const std::function<double(double)>& g, int mmax) const {
    using gl = boost::math::quadrature::gauss<double, 16>;
    const double s = a;
    const double pmax = 400.0 / s;
    const double reach = std::max(1, mmax) * a;
    const double width = pi / (2.0 * reach);
    const int panels = static_cast<int>(std::ceil(pmax / width));
    const auto& x = gl::abscissa();
    const auto& w = gl::weights();
    cvec t = cvec::Zero(mmax + 1);
    for (int q = 0; q < panels; ++q) {
        const double lo = q * width, mid = lo + 0.5 * width, half = 0.5 * width;
        for (size_t i = 0; i < x.size(); ++i) {
            for (int sgn : {-1, 1}) {
                double p = mid + sgn * half * x[i];
                double wt = half * w[i] * s * s * std::pow(sinc(0.5 * p * s), 8) * p * g(p);
                if (wt == 0.0) continue;
                cplx z = std::polar(1.0, p * a), ph = 1.0;
                for (int m = 0; m <= mmax; ++m) {
                    t(m) += wt * ph;
                    ph *= z;
                }
            }
        }
    }
    cvec full(2 * mmax + 1);
    for (int m = 0; m <= mmax; ++m) {
        full(mmax + m) = t(m);
        full(mmax - m) = std::conj(t(m));
    }
    return full;
}

cmat SplineLattice::gram(const std::vector<int>& ci, const std::vector<int>& cj,
                         const std::function<double(double)>& g) const {
    int mmax = 0;
    for (int i : ci)
        for (int j : cj) mmax = std::max(mmax, std::abs(j - i));
    cvec t = symbol(g, mmax);
    cmat r(ci.size(), cj.size());
    for (size_t i = 0; i < ci.size(); ++i)
        for (size_t j = 0; j < cj.size(); ++j) r(i, j) = t(mmax + cj[j] - ci[i]);
    return r;
}

std::vector<int> SplineLattice::centers_in(double lo, double hi) const {
    std::vector<int> c;
    const int first = static_cast<int>(std::ceil((lo + 2.0 * a) / a - 1e-9));
    for (int k = first; a * k + 2.0 * a <= hi + 1e-12; ++k) c.push_back(k);
    return c;
}

static cmat compress(const cmat& l, const cmat& g) {
    auto tri = l.triangularView<Eigen::Lower>();
    cmat x = tri.solve(g);
    cmat y = tri.solve(x.adjoint().eval());
    return hermitian_part(y.adjoint());
}

cmat IntervalSubspace::damping(double c) const {
    return compress(chol, lattice.gram(centers, [c](double p) { return std::exp(-2.0 * c * p); }));
}

IntervalSubspace interval_subspace(const NetRegion& region, const SplineLattice& lattice) {
    if (region.kind != RegionKind::interval) throw input_error("interval_subspace needs an interval");
    if (!(region.b > region.a)) throw input_error("interval endpoints must satisfy a < b");
    IntervalSubspace s;
    s.region = region;
    s.lattice = lattice;
    s.centers = lattice.centers_in(region.a, region.b);
    if (s.centers.size() < 8) {
        std::ostringstream os;
        os << "interval " << region.str() << " holds " << s.centers.size()
           << " lattice functions, need at least 8; refine the lattice";
        throw config_error(os.str());
    }
    s.gram = hermitian_part(lattice.gram(s.centers, [](double) { return 1.0; }));
    Eigen::LLT<cmat> llt(s.gram);
    if (llt.info() != Eigen::Success) throw numerical_error("spline Gram matrix is not positive definite", 0.0);
    s.chol = llt.matrixL();
    s.coords = s.chol.adjoint();
    s.energy = compress(s.chol, lattice.gram(s.centers, [](double p) { return p; }));
    try {
        s.subspace = StandardSubspace(RealSubspace::from_columns(s.coords));
    } catch (const numerical_error& e) {
        throw config_error(std::string("region too small: ") + e.what());
    }
    return s;
}

static cvec unit(const cvec& y) {
    double n = y.norm();
    if (!(n > 0.0)) throw input_error("test vector is zero");
    return y / n;
}

Margin verify_tube_damping(const IntervalSubspace& b, const cmat& damp, double alpha, const cvec& y, double tol) {
    if (!(alpha > 0.0 && alpha < 0.25)) throw input_error("alpha must lie in (0, 1/4)");
    cvec v = unit(y);
    Margin m;
    m.quantity = "tube_damping";
    m.rhs = b.subspace.modular().apply_pow(cplx(alpha, 0.0), v).norm();
    m.lhs = std::sqrt(std::max(0.0, v.dot(damp * v).real()));
    m.margin = m.rhs - m.lhs;
    m.tol = tol;
    return m;
}

Margin verify_tube_damping(const IntervalSubspace& b, double r, double alpha, const cvec& y, double tol) {
    return verify_tube_damping(b, b.damping(tube_damping(r, alpha)), alpha, y, tol);
}

Margin verify_tube_damping_operator(const IntervalSubspace& b, const cmat& damp, double alpha, double tol) {
    Margin m;
    m.quantity = "tube_damping_operator";
    m.margin = min_eig(hermitian_part(b.subspace.modular().delta_pow(2.0 * alpha) - damp));
    m.rhs = m.margin;
    m.tol = tol;
    return m;
}

Margin verify_interval_damping(const IntervalSubspace& i, const cmat& damp, double alpha, const cvec& y, double tol) {
    Margin m = verify_tube_damping(i, damp, alpha, y, tol);
    m.quantity = "interval_damping";
    return m;
}

Margin verify_log_energy(const IntervalSubspace& b, double r, const cvec& y, double tol) {
    cvec v = unit(y);
    Margin m;
    m.quantity = "log_energy_form";
    m.lhs = -quad_form_log(v, b.subspace.modular().spectral()).value();
    m.rhs = 2.0 * pi * r * v.dot(b.energy * v).real();
    m.margin = m.rhs - m.lhs;
    m.tol = tol;
    return m;
}

Margin verify_log_energy_operator(const IntervalSubspace& b, double r, double tol) {
    Margin m;
    m.quantity = "log_energy_operator";
    m.margin = min_eig(hermitian_part(2.0 * pi * r * b.energy + b.subspace.modular().log_delta()));
    m.rhs = m.margin;
    m.tol = tol;
    return m;
}

Margin alpha_route(double r, const std::vector<double>& alphas) {
    std::vector<double> a = alphas;
    std::sort(a.begin(), a.end(), std::greater<>());
    Margin m;
    m.quantity = "alpha_route";
    m.lhs = 2.0 * pi * r;
    double worst = std::numeric_limits<double>::infinity(), prev = std::numeric_limits<double>::infinity();
    for (double al : a) {
        double f = tube_damping(r, al) / al;
        worst = std::min(worst, prev - f);  // decreasing as alpha decreases
        worst = std::min(worst, f - m.lhs);  // stays above the limit
        prev = f;
        m.rhs = f;
    }
    m.margin = worst;
    return m;
}

CoherentBound coherent_entropy_bound(const IntervalSubspace& b, const cvec& y, double tol) {
    const double n = y.norm();
    if (!(n > 0.0)) throw input_error("coherent vector is zero");
    double res = b.subspace.subspace().residual(y) / n;
    if (res > 1e-8) {
        std::ostringstream os;
        os << "vector is not in the real subspace of " << b.region.str() << " (residual " << res << ")";
        throw precondition_error(os.str());
    }
    cvec v = y / n;
    CoherentBound c;
    c.entropy = -quad_form_log(v, b.subspace.modular().spectral()).value();
    c.energy = v.dot(b.energy * v).real();
    c.ratio = c.entropy / (2.0 * pi * b.radius() * c.energy);
    c.tol = tol;
    c.ok = c.ratio <= 1.0 + tol;
    return c;
}

ComplementBand complement_band(const IntervalSubspace& b, int per_side) {
    const double a = b.lattice.a;
    ComplementBand band;
    band.centers = b.lattice.centers_in(b.region.a - (per_side + 3) * a, b.region.a);
    std::vector<int> right = b.lattice.centers_in(b.region.b, b.region.b + (per_side + 3) * a);
    band.centers.insert(band.centers.end(), right.begin(), right.end());
    std::vector<int> all = b.centers;
    all.insert(all.end(), band.centers.begin(), band.centers.end());
    band.energy = hermitian_part(b.lattice.gram(all, [](double p) { return p; })).real();
    return band;
}

EnergySweep energy_infimum_sweep(const IntervalSubspace& b, const ComplementBand& band, const rvec& c, int k,
                                 std::uint64_t seed, double tol) {
    if (c.size() != b.dim()) throw input_error("coefficient vector does not match the interval basis");
    if (k < 0) throw input_error("number of perturbations must be non-negative");
    const int kb = b.dim(), kc = static_cast<int>(band.centers.size());
    rvec h = c / std::sqrt(c.dot(b.gram.real() * c));
    EnergySweep r;
    r.tol = tol;
    r.samples = k;
    r.entropy = -quad_form_log(b.coords * h.cast<cplx>(), b.subspace.modular().spectral()).value();
    rvec full = rvec::Zero(kb + kc);
    full.head(kb) = h;
    r.energy0 = full.dot(band.energy * full);
    r.energy_min = r.energy0;
    auto g = stream(seed, 0x656e7267, 0);
    std::uniform_real_distribution<double> scale(0.01, 1.0);
    int lowered = 0;
    for (int i = 0; i < k; ++i) {
        full.tail(kc) = scale(g) * gaussian_rvec(g, kc);
        double e = full.dot(band.energy * full);
        if (e < r.energy0 * (1.0 - 1e-12)) ++lowered;
        r.energy_min = std::min(r.energy_min, e);
    }
    r.margin = 2.0 * pi * b.radius() * r.energy_min - r.entropy;
    std::ostringstream os;
    os << "upper estimate of the infimum from " << k << " complement perturbations; " << lowered
       << " lowered the energy";
    r.note = os.str();
    return r;
}

EnergySweep energy_infimum_sweep(const IntervalSubspace& b, const rvec& c, int k, std::uint64_t seed, double tol) {
    return energy_infimum_sweep(b, complement_band(b), c, k, seed, tol);
}

NetChecks net_checks(double r, const SplineLattice& lattice) {
    NetChecks out;
    IntervalSubspace inner = interval_subspace(NetRegion::interval(-r, r), lattice);
    IntervalSubspace outer = interval_subspace(NetRegion::interval(-2 * r, 2 * r), lattice);
    // each inner generator is one of the outer generators
    std::vector<cvec> gens;
    for (int c : inner.centers) {
        auto it = std::find(outer.centers.begin(), outer.centers.end(), c);
        if (it == outer.centers.end()) throw numerical_error("lattices are not nested", 1.0);
        gens.push_back(outer.coords.col(it - outer.centers.begin()));
    }
    out.isotony = outer.subspace.subspace().containment_residual(RealSubspace::make(gens));

    // translate by three knots
    const double x = 3.0 * lattice.a;
    IntervalSubspace moved = interval_subspace(NetRegion::interval(-r + x, r + x), lattice);
    double d = (moved.gram - inner.gram).norm() / inner.gram.norm();
    d = std::max(d, (moved.subspace.modular().spectrum - inner.subspace.modular().spectrum).cwiseAbs().maxCoeff() /
                        inner.subspace.modular().spectrum.maxCoeff());
    out.covariance = d;

    // (r, 3r) is disjoint from (-r, r)
    std::vector<int> far = lattice.centers_in(r, 3 * r);
    cmat cross = lattice.gram(inner.centers, far, [](double) { return 1.0; });
    out.locality = cross.imag().cwiseAbs().maxCoeff() / inner.gram.diagonal().real().maxCoeff();
    return out;
}

} // namespace bk
