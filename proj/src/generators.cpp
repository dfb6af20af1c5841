#include "bekenstein/generators.hpp"

#include "bekenstein/random.hpp"

namespace bk {

HermitianOperator random_pd(std::mt19937_64& g, int n, double spread) {
    cmat q = random_unitary(g, n);
    rvec ev = (spread * gaussian_rvec(g, n)).array().exp();
    cmat a = q * ev.cast<cplx>().asDiagonal() * q.adjoint();
    return HermitianOperator(0.5 * (a + a.adjoint()));
}

std::pair<HermitianOperator, HermitianOperator> random_ordered_pair(std::mt19937_64& g, int n, int r) {
    cmat x = gaussian_cmat(g, n, r);
    cmat c = gaussian_cmat(g, n, n);
    cmat a = x * x.adjoint();
    cmat b = a + 0.5 * c * c.adjoint();
    return {HermitianOperator(0.5 * (a + a.adjoint())), HermitianOperator(0.5 * (b + b.adjoint()))};
}

cmat random_unitary(std::mt19937_64& g, int n) {
    Eigen::HouseholderQR<cmat> qr(gaussian_cmat(g, n, n));
    cmat q = qr.householderQ() * cmat::Identity(n, n);
    // fix the phases so the distribution is Haar
    cmat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) q.col(i) *= std::polar(1.0, std::arg(r(i, i)));
    return q;
}

DensityMatrix random_density(std::mt19937_64& g, int n) {
    cmat x = gaussian_cmat(g, n, n);
    cmat rho = x * x.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

RealSubspace random_standard(std::mt19937_64& g, int n, double max_cond) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        RealSubspace h = RealSubspace::from_columns(gaussian_cmat(g, n, n));
        StandardnessReport rep = is_standard(h);
        if (rep.standard && rep.condition <= max_cond) return h;
    }
    throw numerical_error("could not sample a well-conditioned standard subspace", max_cond);
}

RealSubspace random_inner(std::mt19937_64& g, const RealSubspace& h, int k) {
    if (k < 1 || k > h.real_dim()) throw input_error("inner dimension out of range");
    for (int attempt = 0; attempt < 1000; ++attempt) {
        rmat w = gaussian_rvec(g, h.real_dim() * k).reshaped(h.real_dim(), k);
        RealSubspace kk = RealSubspace::from_columns(h.basis() * w.cast<cplx>());
        StandardnessReport rep = is_standard_in_span(kk);
        if (rep.standard && rep.condition < 1e6) return kk;
    }
    throw numerical_error("could not sample a subspace standard in its span", 0.0);
}

} // namespace bk
