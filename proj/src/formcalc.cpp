#include "bekenstein/formcalc.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace bk {

double opnorm(const cmat& a) {
    if (a.size() == 0) return 0.0;
    if (a.rows() <= 64 && a.cols() <= 64) {
        Eigen::JacobiSVD<cmat> svd(a);
        return svd.singularValues()(0);
    }
    Eigen::BDCSVD<cmat> svd(a);
    return svd.singularValues()(0);
}

double ExtendedReal::value() const {
    if (tag_ != Tag::finite) throw domain_error("extended real is not finite: " + str());
    return v_;
}

double ExtendedReal::to_double() const {
    switch (tag_) {
    case Tag::finite: return v_;
    case Tag::plus_infinity: return std::numeric_limits<double>::infinity();
    case Tag::minus_infinity: return -std::numeric_limits<double>::infinity();
    default: return std::numeric_limits<double>::quiet_NaN();
    }
}

ExtendedReal ExtendedReal::operator-() const {
    switch (tag_) {
    case Tag::finite: return finite(-v_);
    case Tag::plus_infinity: return minus_inf();
    case Tag::minus_infinity: return plus_inf();
    default: return undefined();
    }
}

ExtendedReal ExtendedReal::from_parts(double plus, double minus) {
    bool pinf = std::isinf(plus), minf = std::isinf(minus);
    if (pinf && minf) return undefined();
    if (pinf) return plus_inf();
    if (minf) return minus_inf();
    return finite(plus - minus);
}

std::string ExtendedReal::str() const {
    switch (tag_) {
    case Tag::finite: {
        std::ostringstream os;
        os.precision(17);
        os << v_;
        return os.str();
    }
    case Tag::plus_infinity: return "+inf";
    case Tag::minus_infinity: return "-inf";
    default: return "undefined";
    }
}

HermitianOperator::HermitianOperator(const cmat& m) {
    if (m.rows() != m.cols() || m.rows() == 0) throw input_error("hermitian operator must be square and non-empty");
    m_ = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<cmat> es(m_, Eigen::EigenvaluesOnly);
    const rvec& ev = es.eigenvalues();
    norm_ = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
    // Frobenius norm bounds the spectral norm, so this check is conservative
    double asym = (m - m.adjoint()).norm();
    if (asym > tol_herm * (norm_ > 1e-14 ? norm_ : 1e-14)) {
        std::ostringstream os;
        os << "matrix is not hermitian: ||A - A*|| = " << asym;
        throw input_error(os.str());
    }
}

HermitianOperator HermitianOperator::trusted(cmat m, double norm) {
    HermitianOperator h;
    h.m_ = std::move(m);
    h.norm_ = norm;
    return h;
}

HermitianOperator HermitianOperator::diag(const rvec& d) {
    cmat m = cmat::Zero(d.size(), d.size());
    m.diagonal() = d.cast<cplx>();
    return HermitianOperator(m);
}

SpectralData spectral(const HermitianOperator& a) {
    Eigen::SelfAdjointEigenSolver<cmat> es(a.matrix());
    if (es.info() != Eigen::Success) throw numerical_error("eigen-decomposition failed", 0.0);
    SpectralData sd;
    sd.eigenvalues = es.eigenvalues();
    sd.eigenvectors = es.eigenvectors();
    sd.eps_support = a.eps_support();
    sd.support_rank = 0;
    for (int i = 0; i < sd.eigenvalues.size(); ++i)
        if (std::abs(sd.eigenvalues(i)) > sd.eps_support) ++sd.support_rank;
    return sd;
}

cmat SpectralData::apply_on_support_c(const std::function<cplx(double)>& f) const {
    const int n = static_cast<int>(eigenvalues.size());
    cvec d(n);
    for (int i = 0; i < n; ++i) d(i) = std::abs(eigenvalues(i)) > eps_support ? f(eigenvalues(i)) : cplx(0.0);
    return eigenvectors * d.asDiagonal() * eigenvectors.adjoint();
}

cmat SpectralData::apply_on_support(const std::function<double(double)>& f) const {
    cmat r = apply_on_support_c([&](double x) { return cplx(f(x), 0.0); });
    return 0.5 * (r + r.adjoint());
}

cmat SpectralData::support_projection() const {
    return apply_on_support([](double) { return 1.0; });
}

static void check_dim(const cvec& xi, int n) {
    if (xi.size() != n) throw input_error("dimension mismatch between vector and operator");
}

ExtendedReal quad_form(const cvec& xi, const HermitianOperator& a) {
    check_dim(xi, a.dim());
    SpectralData sd = spectral(a);
    cvec c = sd.eigenvectors.adjoint() * xi;
    double plus = 0.0, minus = 0.0;
    for (int i = 0; i < c.size(); ++i) {
        double l = sd.eigenvalues(i), w = std::norm(c(i));
        if (l > 0) plus += l * w;
        else minus -= l * w;
    }
    return ExtendedReal::from_parts(plus, minus);
}

ExtendedReal quad_form_log(const cvec& xi, const SpectralData& sd) {
    check_dim(xi, static_cast<int>(sd.eigenvalues.size()));
    if (sd.eigenvalues(0) < -sd.eps_support) {
        std::ostringstream os;
        os << "log of a non-positive operator (min eigenvalue " << sd.eigenvalues(0) << ")";
        throw domain_error(os.str());
    }
    cvec c = sd.eigenvectors.adjoint() * xi;
    double plus = 0.0, minus = 0.0, kern = 0.0;
    for (int i = 0; i < c.size(); ++i) {
        double l = sd.eigenvalues(i), w = std::norm(c(i));
        if (l <= sd.eps_support) kern += w;
        else if (l >= 1.0) plus += std::log(l) * w;
        else minus -= std::log(l) * w;
    }
    if (kern > eps_support_rel * xi.squaredNorm()) minus = std::numeric_limits<double>::infinity();
    return ExtendedReal::from_parts(plus, minus);
}

ExtendedReal quad_form_log(const cvec& xi, const HermitianOperator& a) {
    check_dim(xi, a.dim());
    return quad_form_log(xi, spectral(a));
}

double log_kernel(double lambda, double t) {
    if (!(lambda > 0) || !(t > 0)) throw domain_error("log kernel needs lambda > 0 and t > 0");
    // -((t+1)^-1 - lambda/(t+lambda))/t, with the 1/t cancelled by hand
    return (lambda - 1.0) / ((1.0 + t) * (lambda + t));
}

QuadratureResult integrate_half_line(const std::function<double(double)>& f, double tol) {
    // t = e^s: the integrand decays like e^{-|s|} at both ends, so |s| <= 60 loses nothing
    auto g = [&](double s) {
        double t = std::exp(s);
        return f(t) * t;
    };
    double err = 0.0, l1 = 0.0;
    double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, -60.0, 60.0, 25, 1e-13, &err, &l1);
    if (!(err <= tol) || !std::isfinite(v)) throw numerical_error("kernel quadrature did not converge", err);
    return {v, err};
}

double kernel_log(double lambda) {
    return integrate_half_line([lambda](double t) { return log_kernel(lambda, t); }).value;
}

double log_via_kernel(const cvec& xi, const HermitianOperator& a) {
    check_dim(xi, a.dim());
    SpectralData sd = spectral(a);
    if (sd.eigenvalues(0) < -sd.eps_support) throw domain_error("log of a non-positive operator");
    // restrict to the support, where A is positive definite
    cmat p = sd.support_projection();
    cvec x = p * xi;
    if ((xi - x).squaredNorm() > eps_support_rel * xi.squaredNorm())
        throw domain_error("vector has a component on the kernel; the log form is -inf");
    const int n = a.dim();
    const cmat& am = a.matrix();
    const cmat id = cmat::Identity(n, n);
    auto g = [&](double t) {
        // <x, f(A, t) x> = <x, (A - 1)(A + t)^-1 x> / (1 + t), restricted to the support
        cmat shifted = am + t * id;
        cvec y = shifted.ldlt().solve(x);
        y = p * y;
        cplx v = x.dot((am - id) * y);
        return v.real() / (1.0 + t);
    };
    return integrate_half_line(g).value;
}

double log_limit(const cvec& xi, const HermitianOperator& a, LimitTrace* trace) {
    check_dim(xi, a.dim());
    SpectralData sd = spectral(a);
    ExtendedReal ref = quad_form_log(xi, sd);
    if (!ref.is_finite()) throw domain_error("log form is not finite; the t -> 0 limit diverges");
    cvec c = sd.eigenvectors.adjoint() * xi;
    auto q = [&](double t) {
        // (||A^{t/2} xi||^2 - ||xi||^2)/t with lambda^t - 1 evaluated as expm1
        double s = 0.0;
        for (int i = 0; i < c.size(); ++i) {
            if (sd.eigenvalues(i) <= sd.eps_support) continue;
            s += std::norm(c(i)) * std::expm1(t * std::log(sd.eigenvalues(i)));
        }
        return s / t;
    };
    LimitTrace tr;
    for (int k = 3; k <= 20; ++k) {
        double t = std::ldexp(1.0, -k);
        tr.t.push_back(t);
        tr.quotient.push_back(q(t));
    }
    double scale = 1.0 + std::abs(tr.quotient.front());
    for (size_t i = 1; i < tr.quotient.size(); ++i) {
        // the quotient decreases monotonically as t decreases
        if (tr.quotient[i] > tr.quotient[i - 1] + 1e-12 * scale)
            throw numerical_error("log limit sequence is not monotone", tr.quotient[i] - tr.quotient[i - 1]);
    }
    for (size_t i = 1; i < tr.quotient.size(); ++i) tr.richardson.push_back(2.0 * tr.quotient[i] - tr.quotient[i - 1]);
    size_t m = tr.richardson.size();
    double drift = std::abs(tr.richardson[m - 1] - tr.richardson[m - 2]);
    if (drift > 1e-8 * scale) throw numerical_error("log limit extrapolation did not settle", drift);
    tr.value = tr.richardson.back();
    if (trace) *trace = tr;
    return tr.value;
}

double min_eig(const cmat& herm) {
    if (herm.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<cmat> es(0.5 * (herm + herm.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

bool form_order_leq(const HermitianOperator& a, const HermitianOperator& b) {
    if (a.dim() != b.dim()) throw input_error("dimension mismatch in form order");
    double s = std::max(a.norm(), b.norm());
    if (s < 1e-14) s = 1e-14;
    return min_eig(b.matrix() - a.matrix()) >= -1e-10 * s;
}

cmat log_on_support(const HermitianOperator& a) {
    SpectralData sd = spectral(a);
    if (sd.eigenvalues(0) < -sd.eps_support) throw domain_error("log of a non-positive operator");
    return sd.apply_on_support([](double x) { return std::log(x); });
}

cmat power_on_support(const HermitianOperator& a, double s) {
    SpectralData sd = spectral(a);
    if (sd.eigenvalues(0) < -sd.eps_support) throw domain_error("power of a non-positive operator");
    return sd.apply_on_support([s](double x) { return std::pow(x, s); });
}

LogMonotoneReport check_log_monotone(const HermitianOperator& a, const HermitianOperator& b, bool throw_on_fail) {
    if (!form_order_leq(a, b)) throw precondition_error("check_log_monotone needs A <= B");
    SpectralData sa = spectral(a);
    if (sa.eigenvalues(0) < -sa.eps_support) throw domain_error("A is not positive semidefinite");
    const int n = a.dim();
    int k = sa.support_rank;
    cmat va = sa.eigenvectors.rightCols(k);  // ascending order puts the support last
    cmat la = va.adjoint() * sa.apply_on_support([](double x) { return std::log(x); }) * va;
    cmat lb = va.adjoint() * log_on_support(b) * va;
    cmat d = lb - la;
    d = 0.5 * (d + d.adjoint());
    LogMonotoneReport r;
    r.support_dim = k;
    if (k == 0) {
        r.ok = true;
        r.witness = cvec::Zero(n);
        return r;
    }
    Eigen::SelfAdjointEigenSolver<cmat> es(d);
    r.margin = es.eigenvalues()(0);
    r.witness = va * es.eigenvectors().col(0);
    r.ok = r.margin >= -1e-9;
    if (!r.ok && throw_on_fail) {
        std::ostringstream os;
        os << "log B - log A has eigenvalue " << r.margin << " on the support of A";
        throw property_failure(os.str(), r.margin);
    }
    return r;
}

} // namespace bk
