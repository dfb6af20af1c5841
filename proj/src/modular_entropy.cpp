#include "bekenstein/modular_entropy.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace bk {

DensityMatrix::DensityMatrix(const cmat& rho) {
    if (rho.rows() != rho.cols() || rho.rows() == 0) throw input_error("density matrix must be square");
    if ((rho - rho.adjoint()).norm() > 1e-12) throw input_error("density matrix is not hermitian");
    rho_ = 0.5 * (rho + rho.adjoint());
    double tr = rho_.trace().real();
    if (std::abs(tr - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "density matrix trace " << tr << " differs from 1";
        throw input_error(os.str());
    }
    min_ev_ = min_eig(rho_);
    if (min_ev_ < -1e-12) throw input_error("density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::diag(const rvec& p) {
    cmat m = cmat::Zero(p.size(), p.size());
    m.diagonal() = p.cast<cplx>();
    return DensityMatrix(m);
}

static SpectralData density_spectrum(const cmat& rho) {
    return spectral(HermitianOperator::trusted(rho, std::max(1e-14, opnorm(rho))));
}

cmat DensityMatrix::power(cplx z) const {
    SpectralData sd = density_spectrum(rho_);
    return sd.apply_on_support_c([z](double x) { return std::exp(z * std::log(x)); });
}

cmat DensityMatrix::log_on_support() const {
    SpectralData sd = density_spectrum(rho_);
    return sd.apply_on_support([](double x) { return std::log(x); });
}

cvec StandardFormAlgebra::vec(const cmat& x) const {
    if (x.rows() != n_ || x.cols() != n_) throw input_error("matrix size does not match the algebra");
    return Eigen::Map<const cvec>(x.data(), n_ * n_);
}

cmat StandardFormAlgebra::unvec(const cvec& xi) const {
    if (xi.size() != n_ * n_) throw input_error("vector size does not match the standard form space");
    return Eigen::Map<const cmat>(xi.data(), n_, n_);
}

static cmat kron(const cmat& a, const cmat& b) {
    cmat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

// column-major vec: vec(a x b) = (b^T (x) a) vec(x)
cmat StandardFormAlgebra::left(const cmat& a) const { return kron(cmat::Identity(n_, n_), a); }
cmat StandardFormAlgebra::right(const cmat& b) const { return kron(b.transpose(), cmat::Identity(n_, n_)); }

cmat StandardFormAlgebra::left_density(const cvec& xi) const {
    cmat x = unvec(xi);
    return x * x.adjoint();
}

cmat StandardFormAlgebra::right_density(const cvec& xi) const {
    cmat x = unvec(xi);
    return x.adjoint() * x;
}

HermitianOperator spatial_derivative(const DensityMatrix& omega, const DensityMatrix& phi_prime, bool require_faithful) {
    if (omega.dim() != phi_prime.dim()) throw input_error("state dimensions differ");
    if (require_faithful && !omega.faithful()) throw precondition_error("omega is not faithful");
    cmat inv = phi_prime.power(cplx(-1.0, 0.0));  // pseudo-inverse on the support of phi'
    cmat d = kron(inv.transpose(), omega.matrix());
    return HermitianOperator(0.5 * (d + d.adjoint()));
}

static void check_representative(const DensityMatrix& phi, const cvec& xi, const StandardFormAlgebra& alg) {
    double r = (alg.left_density(xi) - phi.matrix()).norm();
    if (r > 1e-10) {
        std::ostringstream os;
        os << "vector does not induce phi on M (residual " << r << ")";
        throw input_error(os.str());
    }
}

static DensityMatrix commutant_state(const cvec& xi, const StandardFormAlgebra& alg) {
    cmat r = alg.right_density(xi);
    r /= r.trace().real();
    return DensityMatrix(0.5 * (r + r.adjoint()));
}

ExtendedReal relative_entropy(const DensityMatrix& phi, const DensityMatrix& omega, const cvec& xi) {
    if (phi.dim() != omega.dim()) throw input_error("state dimensions differ");
    StandardFormAlgebra alg(phi.dim());
    check_representative(phi, xi, alg);
    HermitianOperator d = spatial_derivative(omega, commutant_state(xi, alg), false);
    return -quad_form_log(xi, d);
}

ExtendedReal relative_entropy(const DensityMatrix& phi, const DensityMatrix& omega) {
    StandardFormAlgebra alg(phi.dim());
    return relative_entropy(phi, omega, alg.vec(phi.sqrt()));
}

double richardson_limit(const std::vector<double>& t, const std::vector<double>& q, double* residual) {
    // t_k = 10^-k: eliminate the O(t) and O(t^2) terms
    std::vector<double> r1, r2;
    for (size_t k = 0; k + 1 < q.size(); ++k) {
        double ratio = t[k] / t[k + 1];
        r1.push_back((ratio * q[k + 1] - q[k]) / (ratio - 1.0));
    }
    for (size_t k = 0; k + 1 < r1.size(); ++k) {
        double ratio = t[k] / t[k + 1];
        double r = ratio * ratio;
        r2.push_back((r * r1[k + 1] - r1[k]) / (r - 1.0));
    }
    if (r2.size() < 2) throw input_error("extrapolation needs at least four points");
    if (residual) *residual = std::abs(r2.back() - r2[r2.size() - 2]);
    return r2.back();
}

static std::vector<double> geometric_grid() {
    std::vector<double> t;
    for (int k = 1; k <= 6; ++k) t.push_back(std::pow(10.0, -k));
    return t;
}

double uhlmann_entropy(const DensityMatrix& phi, const DensityMatrix& omega, const cvec& xi, ExtrapolationTrace* trace) {
    StandardFormAlgebra alg(phi.dim());
    check_representative(phi, xi, alg);
    HermitianOperator d = spatial_derivative(omega, commutant_state(xi, alg), false);
    SpectralData sd = spectral(d);
    cvec c = sd.eigenvectors.adjoint() * xi;
    double kern = 0.0;
    for (Eigen::Index i = 0; i < c.size(); ++i)
        if (sd.eigenvalues(i) <= sd.eps_support) kern += std::norm(c(i));
    // (xi, Delta^t xi) -> ||e xi||^2 < 1 makes the quotient diverge
    if (kern > 1e-12) return std::numeric_limits<double>::infinity();
    ExtrapolationTrace tr;
    tr.t = geometric_grid();
    for (double t : tr.t) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < c.size(); ++i) {
            if (sd.eigenvalues(i) <= sd.eps_support) continue;
            s += std::norm(c(i)) * std::expm1(t * std::log(sd.eigenvalues(i)));
        }
        tr.quotient.push_back(s / t);
    }
    tr.value = -richardson_limit(tr.t, tr.quotient, &tr.residual);
    if (tr.residual > 1e-4) throw numerical_error("Uhlmann extrapolation did not settle", tr.residual);
    if (trace) *trace = tr;
    return tr.value;
}

CocycleSample connes_cocycle_continued(const DensityMatrix& phi, const DensityMatrix& omega, cplx s) {
    if (!phi.faithful() || !omega.faithful()) throw precondition_error("cocycle needs faithful states");
    if (phi.dim() != omega.dim()) throw input_error("state dimensions differ");
    const cplx i(0, 1);
    // (Dphi:Domega)_s = rho_phi^{is} rho_omega^{-is}; u_s is its adjoint for real s
    CocycleSample cs;
    cs.s = s;
    cs.u = omega.power(i * s) * phi.power(-i * s);
    return cs;
}

CocycleSample connes_cocycle(const DensityMatrix& phi, const DensityMatrix& omega, double s) {
    CocycleSample cs = connes_cocycle_continued(phi, omega, cplx(s, 0.0));
    const auto n = cs.u.rows();
    double r = (cs.u.adjoint() * cs.u - cmat::Identity(n, n)).norm();
    if (r > 1e-10) throw numerical_error("cocycle is not unitary", r);
    return cs;
}

cmat modular_automorphism(const DensityMatrix& omega, double s, const cmat& a) {
    const cplx i(0, 1);
    return omega.power(i * s) * a * omega.power(-i * s);
}

// d/dt phi(u_{-it}) at t = 0+ by extrapolation
static double cocycle_derivative(const DensityMatrix& phi, const DensityMatrix& omega, ExtrapolationTrace* trace) {
    ExtrapolationTrace tr;
    tr.t = geometric_grid();
    for (double t : tr.t) {
        CocycleSample cs = connes_cocycle_continued(phi, omega, cplx(0.0, -t));
        cplx g = (phi.matrix() * cs.u).trace();
        tr.quotient.push_back((g.real() - 1.0) / t);
    }
    tr.value = richardson_limit(tr.t, tr.quotient, &tr.residual);
    if (tr.residual > 1e-4) throw numerical_error("cocycle extrapolation did not settle", tr.residual);
    if (trace) *trace = tr;
    return tr.value;
}

double cocycle_calibration() {
    static const double c = [] {
        // commuting pair with a closed-form entropy
        rvec p(2), q(2);
        p << 0.7, 0.3;
        q << 0.5, 0.5;
        double exact = 0.7 * std::log(0.7 / 0.5) + 0.3 * std::log(0.3 / 0.5);
        double d = cocycle_derivative(DensityMatrix::diag(p), DensityMatrix::diag(q), nullptr);
        return std::abs(d + exact) < std::abs(d - exact) ? -1.0 : 1.0;
    }();
    return c;
}

double cocycle_entropy(const DensityMatrix& phi, const DensityMatrix& omega, ExtrapolationTrace* trace) {
    double d = cocycle_derivative(phi, omega, trace);
    double v = cocycle_calibration() * d;
    if (trace) trace->value = v;
    return v;
}

LocalizedIsometry localized_isometry(const cvec& xi, const StandardFormAlgebra& alg, const DensityMatrix& omega) {
    if (!omega.faithful()) throw precondition_error("vacuum must be cyclic and separating");
    if (omega.dim() != alg.n()) throw input_error("state and algebra sizes differ");
    cmat w = omega.sqrt();
    cmat x = alg.unvec(xi);
    cmat diff = x.adjoint() * x - w.adjoint() * w;
    Eigen::SelfAdjointEigenSolver<cmat> es(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
    LocalizedIsometry r;
    r.discrepancy = es.eigenvalues().cwiseAbs().sum();
    if (r.discrepancy > 1e-10) return r;
    // v x' Omega = x' xi for every x' in M', i.e. v w = x
    r.v = x * omega.power(cplx(-0.5, 0.0));
    r.ok = true;
    return r;
}

double vector_state_entropy(const cvec& xi, const StandardFormAlgebra& alg, const DensityMatrix& omega) {
    LocalizedIsometry li = localized_isometry(xi, alg, omega);
    if (!li.ok) {
        std::ostringstream os;
        os << "vector is not localized: commutant discrepancy " << li.discrepancy;
        throw precondition_error(os.str());
    }
    HermitianOperator d = spatial_derivative(omega, omega);
    return -quad_form_log(xi, d).value();
}

DensityMatrix partial_trace_second(const DensityMatrix& rho, int da, int db) {
    if (rho.dim() != da * db) throw input_error("partial trace dimensions do not match");
    cmat r = cmat::Zero(da, da);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
            for (int k = 0; k < db; ++k) r(i, j) += rho.matrix()(i * db + k, j * db + k);
    return DensityMatrix(0.5 * (r + r.adjoint()));
}

} // namespace bk
