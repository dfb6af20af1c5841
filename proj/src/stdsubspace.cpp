#include "bekenstein/stdsubspace.hpp"

#include <cmath>
#include <sstream>

namespace bk {

rvec realify(const cvec& v) {
    rvec r(2 * v.size());
    r << v.real(), v.imag();
    return r;
}

rmat realify_cols(const cmat& b) {
    rmat r(2 * b.rows(), b.cols());
    r << b.real(), b.imag();
    return r;
}

cvec complexify(const rvec& r) {
    const auto n = r.size() / 2;
    cvec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx(r(i), r(n + i));
    return v;
}

cmat complexify_cols(const rmat& r) {
    const auto n = r.rows() / 2;
    cmat b(n, r.cols());
    b.real() = r.topRows(n);
    b.imag() = r.bottomRows(n);
    return b;
}

rmat AntilinearOperator::realified() const {
    const auto n = c.rows();
    rmat s(2 * n, 2 * n);
    s << c.real(), c.imag(), c.imag(), -c.real();
    return s;
}

AntilinearOperator AntilinearOperator::from_realified(const rmat& s) {
    const auto n = s.rows() / 2;
    cmat c(n, n);
    c.real() = s.topLeftCorner(n, n);
    c.imag() = s.bottomLeftCorner(n, n);
    return {c};
}

// ---- RealSubspace ----

RealSubspace RealSubspace::from_columns(const cmat& b, MakeReport* report, double tol) {
    if (b.cols() == 0 || b.rows() == 0) throw input_error("empty vector list");
    rmat r = realify_cols(b);
    rmat q(r.rows(), 0);
    MakeReport rep;
    rep.given = static_cast<int>(b.cols());
    for (Eigen::Index j = 0; j < r.cols(); ++j) {
        rvec v = r.col(j);
        double n0 = v.norm();
        if (n0 < 1e-300) {
            rep.dropped.push_back(static_cast<int>(j));
            continue;
        }
        // two passes of Gram-Schmidt keep the basis orthonormal to rounding
        for (int pass = 0; pass < 2; ++pass)
            if (q.cols() > 0) v -= q * (q.transpose() * v);
        double n1 = v.norm();
        if (n1 <= tol * n0) {
            rep.dropped.push_back(static_cast<int>(j));
            continue;
        }
        q.conservativeResize(Eigen::NoChange, q.cols() + 1);
        q.col(q.cols() - 1) = v / n1;
    }
    rep.kept = static_cast<int>(q.cols());
    if (report) *report = rep;
    if (q.cols() == 0) throw input_error("all vectors vanish");
    RealSubspace h;
    h.n_ = static_cast<int>(b.rows());
    h.basis_ = complexify_cols(q);
    return h;
}

RealSubspace RealSubspace::make(const std::vector<cvec>& vs, MakeReport* report, double tol) {
    if (vs.empty()) throw input_error("empty vector list");
    cmat b(vs.front().size(), static_cast<Eigen::Index>(vs.size()));
    for (size_t i = 0; i < vs.size(); ++i) {
        if (vs[i].size() != b.rows()) throw input_error("vectors of different dimension");
        b.col(static_cast<Eigen::Index>(i)) = vs[i];
    }
    return from_columns(b, report, tol);
}

RealSubspace RealSubspace::real_canonical(int n) {
    return from_columns(cmat::Identity(n, n));
}

cvec RealSubspace::project(const cvec& v) const {
    if (v.size() != n_) throw input_error("dimension mismatch in projection");
    rmat q = realified();
    return complexify(q * (q.transpose() * realify(v)));
}

double RealSubspace::containment_residual(const RealSubspace& k, cvec* witness) const {
    if (k.ambient_dim() != n_) throw input_error("ambient dimension mismatch");
    rmat q = realified();
    rmat kr = k.realified();
    rmat d = kr - q * (q.transpose() * kr);
    double worst = 0.0;
    Eigen::Index arg = 0;
    for (Eigen::Index j = 0; j < d.cols(); ++j) {
        double r = d.col(j).norm();
        if (r > worst) {
            worst = r;
            arg = j;
        }
    }
    if (witness) *witness = k.basis().col(arg);
    return worst;
}

RealSubspace RealSubspace::mapped(const cmat& linear) const {
    return from_columns(linear * basis_);
}

RealSubspace RealSubspace::mapped(const AntilinearOperator& a) const {
    return from_columns(a.c * basis_.conjugate());
}

double subspace_distance(const RealSubspace& a, const RealSubspace& b) {
    if (a.ambient_dim() != b.ambient_dim() || a.real_dim() != b.real_dim()) return 1.0;
    rmat qa = a.realified(), qb = b.realified();
    rmat d = qa - qb * (qb.transpose() * qa);
    if (d.cols() == 0) return 0.0;
    Eigen::JacobiSVD<rmat> svd(d);
    return std::min(1.0, svd.singularValues()(0));
}

// ---- standardness ----

static rmat bib(const cmat& basis) {
    const auto n = basis.rows(), k = basis.cols();
    rmat a(2 * n, 2 * k);
    a << realify_cols(basis), realify_cols(cplx(0, 1) * basis);
    return a;
}

StandardnessReport is_standard(const RealSubspace& h) {
    StandardnessReport r;
    r.real_dim = h.real_dim();
    r.complex_dim = h.ambient_dim();
    rmat a = bib(h.basis());
    Eigen::JacobiSVD<rmat> svd(a);
    const rvec& sv = svd.singularValues();
    // a tall 2n x 2k matrix: the smallest of the 2k singular values
    r.min_singular = sv(sv.size() - 1);
    r.condition = r.min_singular > 0 ? sv(0) / r.min_singular : std::numeric_limits<double>::infinity();
    r.standard = (r.real_dim == r.complex_dim) && r.min_singular > eps_std;
    return r;
}

// orthonormal basis of the complex span of the columns
static cmat complex_span(const cmat& b, double rel = 1e-12) {
    Eigen::JacobiSVD<cmat> svd(b, Eigen::ComputeThinU);
    const rvec& sv = svd.singularValues();
    Eigen::Index m = 0;
    while (m < sv.size() && sv(m) > rel * sv(0)) ++m;
    return svd.matrixU().leftCols(m);
}

StandardnessReport is_standard_in_span(const RealSubspace& h) {
    cmat q = complex_span(h.basis());
    RealSubspace local = RealSubspace::from_columns(q.adjoint() * h.basis());
    StandardnessReport r = is_standard(local);
    r.standard = r.standard && local.real_dim() == h.real_dim();
    return r;
}

RealSubspace symplectic_complement(const RealSubspace& h) {
    // Im<xi, eta> = realify(xi) . realify(-i eta): the real orthogonal of iH
    const int n = h.ambient_dim();
    rmat x = realify_cols(cplx(0, 1) * h.basis());
    const int k = static_cast<int>(x.cols());
    if (k == 2 * n) {
        RealSubspace z;
        return z;  // {0}
    }
    Eigen::HouseholderQR<rmat> qr(x);
    rmat qfull = qr.householderQ() * rmat::Identity(2 * n, 2 * n);
    return RealSubspace::from_columns(complexify_cols(qfull.rightCols(2 * n - k)));
}

// ---- Tomita ----

cmat ModularData::delta_pow(cplx z) const {
    cvec d(spectrum.size());
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) d(i) = std::exp(z * std::log(spectrum(i)));
    return eigvecs * d.asDiagonal() * eigvecs.adjoint();
}

cvec ModularData::apply_pow(cplx z, const cvec& v) const {
    cvec c = eigvecs.adjoint() * v;
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) c(i) *= std::exp(z * std::log(spectrum(i)));
    return eigvecs * c;
}

cmat ModularData::log_delta() const {
    rvec l = spectrum.array().log();
    cmat r = eigvecs * l.cast<cplx>().asDiagonal() * eigvecs.adjoint();
    return 0.5 * (r + r.adjoint());
}

SpectralData ModularData::spectral() const {
    const int n = ambient_dim(), m = span_dim();
    SpectralData sd;
    sd.eigenvalues.resize(n);
    sd.eigenvectors.resize(n, n);
    if (m < n) {
        Eigen::HouseholderQR<cmat> qr(span);
        cmat qfull = qr.householderQ() * cmat::Identity(n, n);
        sd.eigenvectors.leftCols(n - m) = qfull.rightCols(n - m);
        sd.eigenvalues.head(n - m).setZero();
    }
    sd.eigenvectors.rightCols(m) = eigvecs;
    sd.eigenvalues.tail(m) = spectrum;
    // the kernel is exactly the padding; every eigenvalue on the span is support
    sd.eps_support = 0.5 * spectrum(0);
    sd.support_rank = m;
    return sd;
}

ModularData tomita(const RealSubspace& h) {
    const int n = h.ambient_dim();
    if (h.real_dim() != n) {
        std::ostringstream os;
        os << "tomita needs real dimension " << n << ", got " << h.real_dim();
        throw precondition_error(os.str());
    }
    StandardnessReport rep = is_standard(h);
    if (!rep.standard || rep.condition > max_condition) {
        std::ostringstream os;
        os << "subspace is ill-conditioned (near-non-standard): smallest singular value " << rep.min_singular
           << ", condition " << rep.condition;
        throw numerical_error(os.str(), rep.min_singular);
    }
    // S is +1 on realified H and -1 on realified iH
    rmat a = bib(h.basis());
    rvec sign(2 * n);
    sign << rvec::Ones(n), -rvec::Ones(n);
    Eigen::PartialPivLU<rmat> lu(a);
    rmat sr = a * sign.asDiagonal() * lu.inverse();
    AntilinearOperator s = AntilinearOperator::from_realified(sr);

    // polar decomposition from the SVD of C: S*S = conj(C^* C)
    Eigen::JacobiSVD<cmat> svd(s.c, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const rvec& sv = svd.singularValues();
    ModularData md;
    md.span = cmat::Identity(n, n);
    md.spectrum.resize(n);
    md.eigvecs.resize(n, n);
    cmat vc = svd.matrixV().conjugate();
    for (int i = 0; i < n; ++i) {
        md.spectrum(i) = sv(n - 1 - i) * sv(n - 1 - i);
        md.eigvecs.col(i) = vc.col(n - 1 - i);
    }
    cmat dm = md.eigvecs * md.spectrum.cast<cplx>().asDiagonal() * md.eigvecs.adjoint();
    md.delta = HermitianOperator::trusted(0.5 * (dm + dm.adjoint()), md.spectrum(n - 1));
    md.j = {svd.matrixU() * svd.matrixV().adjoint()};
    md.s = s;
    md.condition = rep.condition;
    return md;
}

ModularData tomita_in_span(const RealSubspace& h) {
    cmat q = complex_span(h.basis());
    if (q.cols() != h.real_dim()) {
        std::ostringstream os;
        os << "subspace is not standard in its span: real dim " << h.real_dim() << ", complex span dim " << q.cols();
        throw precondition_error(os.str());
    }
    if (q.cols() == h.ambient_dim()) return tomita(h);
    RealSubspace local = RealSubspace::from_columns(q.adjoint() * h.basis());
    ModularData mk = tomita(local);
    ModularData md;
    md.span = q;
    md.spectrum = mk.spectrum;
    md.eigvecs = q * mk.eigvecs;
    cmat dm = md.eigvecs * md.spectrum.cast<cplx>().asDiagonal() * md.eigvecs.adjoint();
    md.delta = HermitianOperator::trusted(0.5 * (dm + dm.adjoint()), md.spectrum(md.spectrum.size() - 1));
    md.j = {q * mk.j.c * q.transpose()};
    md.s = {q * mk.s.c * q.transpose()};
    md.condition = mk.condition;
    return md;
}

StandardSubspace::StandardSubspace(RealSubspace h) : h_(std::move(h)), md_(tomita(h_)) {}

EntropyDensityBound entropy_density_bound(const cvec& xi, const StandardSubspace& h) {
    const ModularData& md = h.modular();
    EntropyDensityBound r;
    r.lhs = quad_form_log(xi, md.spectral()).value();
    r.rhs = md.s.apply(xi).squaredNorm() / std::exp(1.0);
    r.ok = r.lhs <= r.rhs + 1e-10 * std::max(1.0, xi.squaredNorm());
    return r;
}

void check_contained(const RealSubspace& outer, const RealSubspace& inner, double tol) {
    cvec w;
    double r = outer.containment_residual(inner, &w);
    if (r > tol) {
        std::ostringstream os;
        os << "K is not contained in H: residual " << r << " for a basis vector of K";
        throw precondition_error(os.str());
    }
}

cmat contraction_family(const ModularData& h, const ModularData& k, cplx z) {
    if (z.imag() > 1e-14 || z.imag() < -0.5 - 1e-14) throw input_error("z outside the strip -1/2 <= Im z <= 0");
    const cplx i(0, 1);
    return h.delta_pow(i * z) * k.delta_pow(-i * z);
}

cmat contraction_family(const StandardSubspace& h, const RealSubspace& k, cplx z) {
    check_contained(h.subspace(), k);
    return contraction_family(h.modular(), tomita_in_span(k), z);
}

double contraction_adjoint_residual(const StandardSubspace& h, const StandardSubspace& k, cplx z) {
    StandardSubspace hp(symplectic_complement(h.subspace()));
    StandardSubspace kp(symplectic_complement(k.subspace()));
    const cplx i(0, 1);
    cmat lhs = kp.modular().delta_pow(i * z) * hp.modular().delta_pow(-i * z);
    cplx w = -std::conj(z);
    cmat rhs = (h.modular().delta_pow(i * w) * k.modular().delta_pow(-i * w)).adjoint();
    // relative: off the nested case these powers are far from contractions
    return opnorm(lhs - rhs) / std::max(1.0, opnorm(rhs));
}

InclusionReport inclusion_inequalities(const StandardSubspace& h, const RealSubspace& k,
                                       const std::vector<double>& alpha_grid) {
    check_contained(h.subspace(), k);
    ModularData mk = tomita_in_span(k);
    const ModularData& mh = h.modular();
    const cmat& q = mk.span;
    InclusionReport r;
    r.ok = true;
    double worst = std::numeric_limits<double>::infinity();
    for (double a : alpha_grid) {
        if (a < 0.0 || a > 1.0) throw input_error("alpha outside [0, 1]");
        cmat d = q.adjoint() * (mk.delta_pow(a) - mh.delta_pow(a)) * q;
        Eigen::SelfAdjointEigenSolver<cmat> es(0.5 * (d + d.adjoint()));
        double m = es.eigenvalues()(0);
        r.alpha.push_back(a);
        r.power_margin.push_back(m);
        if (m < worst) {
            worst = m;
            r.worst_alpha = a;
            r.witness = q * es.eigenvectors().col(0);
        }
    }
    cmat dl = q.adjoint() * (mk.log_delta() - mh.log_delta()) * q;
    r.log_margin = min_eig(dl);
    r.ok = worst >= -1e-9 && r.log_margin >= -1e-9;
    if (alpha_grid.empty()) r.ok = r.log_margin >= -1e-9;
    return r;
}

BorchersReport borchers_check(const StandardSubspace& h, const std::function<cmat(double)>& u, int direction,
                              const std::vector<double>& s_grid, const std::vector<double>& t_grid) {
    if (direction != 1 && direction != -1) throw input_error("direction must be +1 or -1");
    for (double t : t_grid) {
        RealSubspace img = h.subspace().mapped(u(t));
        double r = h.subspace().containment_residual(img);
        if (r > 1e-8) {
            std::ostringstream os;
            os << "U(" << t << ")H is not contained in H (residual " << r << ")";
            throw input_error(os.str());
        }
    }
    BorchersReport rep;
    rep.s = s_grid;
    rep.t = t_grid;
    rep.residual = rmat::Zero(static_cast<Eigen::Index>(s_grid.size()), static_cast<Eigen::Index>(t_grid.size()));
    const ModularData& md = h.modular();
    for (size_t a = 0; a < s_grid.size(); ++a) {
        double s = s_grid[a];
        cmat dp = md.delta_it(s), dm = md.delta_it(-s);
        for (size_t b = 0; b < t_grid.size(); ++b) {
            double t = t_grid[b];
            double r = opnorm(dp * u(t) * dm - u(std::exp(-direction * 2 * pi * s) * t));
            rep.residual(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = r;
            rep.max_residual = std::max(rep.max_residual, r);
        }
    }
    return rep;
}

} // namespace bk
