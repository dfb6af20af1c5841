#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bekenstein/stdsubspace.hpp"

namespace bk {

// One-particle space of the chiral U(1) current: functions of p > 0 with measure p dp.
// Components are psi_j = sqrt(w_j) fhat(p_j) on a log-uniform grid, so the inner
// product is the euclidean one.
struct LatticeChiralModel {
    int n = 0;
    rvec theta;    // log p
    rvec p;
    rvec weights;  // p^2 h, the measure p dp in theta
    rvec sqrtw;
    double h = 0.0;
    rvec positions;  // position grid for embed
    double spacing = 0.0;
    cmat embed;  // n x M, hat function at each position -> components

    // log-Gaussian Galerkin family for the half-lines: centers in log x
    double sigma = 0.5;
    double u_lo = 0.0, u_hi = 0.0;

    cmat translation(double x) const;  // U(x), f -> f(. - x)
    cvec translate(double x, const cvec& v) const;
    cmat energy() const;               // P
    // Delta_0^{it}: theta -> theta - 2 pi t by band-limited interpolation
    cmat dilation(double t) const;
};

// 0 < p_min < p_max, n, m >= 8
LatticeChiralModel build_model(int n, double p_min, double p_max, int m, double a);

// the model family used for refinement studies; the log-window grows with n
struct Refinement {
    int n = 0;
    double window = 0.0;  // width of the half-line basis in log x
    double p_min = 0.0, p_max = 0.0;
};
Refinement refinement(int n);
LatticeChiralModel chiral_model(int n);

// fhat(p) for x -> exp(-(log x - u)^2 / (2 sigma^2)), x > 0, on the model grid
cvec loggauss_transform(const LatticeChiralModel& m, double u, double sigma);
cmat loggauss_transforms(const LatticeChiralModel& m, const rvec& us, double sigma);

enum class RegionKind { half_line_right, half_line_left, interval };

struct NetRegion {
    RegionKind kind = RegionKind::interval;
    double a = 0.0, b = 0.0;  // (a, inf), (-inf, a) or (a, b)

    static NetRegion right(double a) { return {RegionKind::half_line_right, a, 0.0}; }
    static NetRegion left(double a) { return {RegionKind::half_line_left, a, 0.0}; }
    static NetRegion interval(double a, double b) { return {RegionKind::interval, a, b}; }
    double width() const { return b - a; }
    std::string str() const;
};

// Half-line subspaces on the grid. H(a, inf) = U(a) H(0, inf); the left half-line is
// the symplectic complement, so Delta' = Delta^-1 on the same span.
struct HalfLineSubspace {
    NetRegion region;
    cmat basis;  // n x k transforms of the generating functions
    rvec centers;
    RealSubspace real;
    ModularData modular;
};
HalfLineSubspace half_line_subspace(const LatticeChiralModel& m, const NetRegion& region);

// Interval subspaces are built in the continuum from cubic B-splines on a knot lattice of
// spacing a. All inner products are Gram matrices computed by quadrature, and the
// subspace lives in C^k through the Cholesky factor of the Gram matrix.
struct SplineLattice {
    double a = 1.0 / 16.0;

    // Toeplitz symbol int s^2 sinc^8(ps/2) e^{i p m a} p g(p) dp for |m| <= mmax
    cvec symbol(const std::function<double(double)>& g, int mmax) const;
    // <f_i, g(P) f_j> for splines centered at a * ci and a * cj
    cmat gram(const std::vector<int>& ci, const std::vector<int>& cj, const std::function<double(double)>& g) const;
    cmat gram(const std::vector<int>& c, const std::function<double(double)>& g) const { return gram(c, c, g); }
    // knot indices of splines supported in [lo, hi]
    std::vector<int> centers_in(double lo, double hi) const;
    double position(int c) const { return a * c; }
};

struct IntervalSubspace {
    NetRegion region;
    SplineLattice lattice;
    std::vector<int> centers;
    cmat gram;       // G = L L^*
    cmat chol;       // L
    cmat coords;     // C = L^*: coefficient vector c -> y = C c in C^k
    cmat energy;     // L^-1 Gram(p) L^-*, the compressed P
    StandardSubspace subspace;

    int dim() const { return static_cast<int>(centers.size()); }
    double radius() const { return 0.5 * region.width(); }
    // compressed e^{-2 c P}
    cmat damping(double c) const;
    cvec from_coefficients(const cvec& c) const { return coords * c; }
};
IntervalSubspace interval_subspace(const NetRegion& region, const SplineLattice& lattice = {});

// half-line dilation residual: numeric Delta^{it} against the exact dilation of the probe
struct DilationResidual {
    int n = 0;
    int k = 0;
    std::vector<double> t;
    std::vector<double> residual;
    double max_residual = 0.0;
    double delta_min = 0.0, delta_max = 0.0;
    double wall_ms = 0.0;
};
DilationResidual halfline_dilation_residual(const LatticeChiralModel& m);
// twice the dilation residual of chiral_model(n); cached
double tol_for(int n);

struct Margin {
    std::string quantity;
    double lhs = 0.0, rhs = 0.0, margin = 0.0, tol = 0.0;
    bool pass() const { return margin >= -tol; }
};

// E+ and E- norms: spectral projections of Delta_(0,inf) for kappa <= 0 and kappa > 0
double eplus_norm(const LatticeChiralModel& m, const cvec& v);
double eminus_norm(const LatticeChiralModel& m, const cvec& v);

// both half-line inequalities for xi = U(-R) eta and xi = U(R) eta, eta in H(0,inf)_C
std::vector<Margin> verify_halfline_damping(const LatticeChiralModel& m, const HalfLineSubspace& h0, double r,
                                             double alpha, const cvec& eta, double tol);
// random eta from interior generators of h0
cvec random_halfline_vector(const HalfLineSubspace& h0, std::uint64_t seed);

struct CommutationResidual {
    double a = 0.0, s = 0.0, residual = 0.0;
};
CommutationResidual verify_commutation(const LatticeChiralModel& m, double a, double s);

// ||Delta_B^alpha xi|| - ||e^{-R tan(2 pi alpha) P} xi|| for unit xi = y in the coordinates of b;
// r is the radius of the tube containing B, damp the compressed e^{-2 R tan(2 pi alpha) P}
Margin verify_tube_damping(const IntervalSubspace& b, const cmat& damp, double alpha, const cvec& y, double tol);
Margin verify_tube_damping(const IntervalSubspace& b, double r, double alpha, const cvec& y, double tol);
// min-eig of Delta_B^{2 alpha} - e^{-2 R tan(2 pi alpha) P} on H(B)_C
Margin verify_tube_damping_operator(const IntervalSubspace& b, const cmat& damp, double alpha, double tol);
// the same norm inequality on the interval (-R, R) itself
Margin verify_interval_damping(const IntervalSubspace& i, const cmat& damp, double alpha, const cvec& y, double tol);
double tube_damping(double r, double alpha);  // R tan(2 pi alpha)

// -(xi, log Delta xi) <= 2 pi R (xi, P xi)
Margin verify_log_energy(const IntervalSubspace& b, double r, const cvec& y, double tol);
// min-eig of 2 pi R P + log Delta_B on H(B)_C
Margin verify_log_energy_operator(const IntervalSubspace& b, double r, double tol);
// R tan(2 pi alpha)/alpha decreases to 2 pi R as alpha -> 0+
Margin alpha_route(double r, const std::vector<double>& alphas);

struct CoherentBound {
    double entropy = 0.0, energy = 0.0, ratio = 0.0, tol = 0.0;
    bool ok = false;
};
// h in the real subspace H(B), in the coordinates of b; throws precondition_error otherwise
CoherentBound coherent_entropy_bound(const IntervalSubspace& b, const cvec& y, double tol);

struct EnergySweep {
    double entropy = 0.0;
    double energy0 = 0.0;  // <h, P h>
    double energy_min = 0.0;  // upper estimate of the infimum over sampled representatives
    double margin = 0.0;   // 2 pi R E_min - S
    double tol = 0.0;
    int samples = 0;
    std::string note;
    bool pass() const { return margin >= -tol; }
};
// splines just outside B on both sides, with the energy Gram of B and the band together
struct ComplementBand {
    std::vector<int> centers;
    rmat energy;  // real part of <f, P g> over B then the band
};
ComplementBand complement_band(const IntervalSubspace& b, int per_side = 17);

// h = sum c_i f_i with real c; perturbations are random real combinations of the band
EnergySweep energy_infimum_sweep(const IntervalSubspace& b, const ComplementBand& band, const rvec& c, int k,
                                 std::uint64_t seed, double tol);
EnergySweep energy_infimum_sweep(const IntervalSubspace& b, const rvec& c, int k, std::uint64_t seed, double tol);

struct NetChecks {
    double isotony = 0.0;     // containment residual of H(-R,R) in H(-2R,2R)
    double covariance = 0.0;  // translated interval vs interval of the translate
    double locality = 0.0;    // max |Im <f, g>| over disjoint supports, relative
};
NetChecks net_checks(double r, const SplineLattice& lattice = {});

} // namespace bk
