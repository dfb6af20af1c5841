#pragma once

#include "bekenstein/formcalc.hpp"

namespace bk {

inline constexpr double eps_faithful = 1e-10;

class DensityMatrix {
public:
    DensityMatrix() = default;
    // checks hermiticity, trace 1 to 1e-12 and min eigenvalue >= -1e-12
    explicit DensityMatrix(const cmat& rho);
    static DensityMatrix diag(const rvec& p);

    int dim() const { return static_cast<int>(rho_.rows()); }
    const cmat& matrix() const { return rho_; }
    double min_eigenvalue() const { return min_ev_; }
    bool faithful() const { return min_ev_ > eps_faithful; }
    // rho^z on the support, zero on the kernel
    cmat power(cplx z) const;
    cmat sqrt() const { return power(cplx(0.5, 0.0)); }
    cmat log_on_support() const;

private:
    cmat rho_;
    double min_ev_ = 0.0;
};

// n x n matrices with the Hilbert-Schmidt inner product, stored column-major;
// M acts by left multiplication, M' by right multiplication
class StandardFormAlgebra {
public:
    explicit StandardFormAlgebra(int n) : n_(n) {}
    int n() const { return n_; }
    int hilbert_dim() const { return n_ * n_; }

    cvec vec(const cmat& x) const;
    cmat unvec(const cvec& xi) const;
    cmat left(const cmat& a) const;   // x -> a x
    cmat right(const cmat& b) const;  // x -> x b
    // density matrix of <xi, a xi> on M, and of <xi, x b> on M'
    cmat left_density(const cvec& xi) const;
    cmat right_density(const cvec& xi) const;
    cvec vacuum(const DensityMatrix& omega) const { return vec(omega.sqrt()); }

private:
    int n_;
};

// x -> rho_omega x rho_phi'^-1 on the support e e'
HermitianOperator spatial_derivative(const DensityMatrix& omega, const DensityMatrix& phi_prime,
                                     bool require_faithful = true);

// S = -(xi, log Delta(omega/phi') xi); +inf when supp rho_phi is not inside supp rho_omega
ExtendedReal relative_entropy(const DensityMatrix& phi, const DensityMatrix& omega, const cvec& xi);
// same, with the canonical representative rho_phi^{1/2}
ExtendedReal relative_entropy(const DensityMatrix& phi, const DensityMatrix& omega);

struct ExtrapolationTrace {
    std::vector<double> t;
    std::vector<double> quotient;
    double value = 0.0;
    double residual = 0.0;  // difference between the last two extrapolants
};
// geometric grid 1e-1 .. 1e-6, two Richardson eliminations
double richardson_limit(const std::vector<double>& t, const std::vector<double>& q, double* residual);

double uhlmann_entropy(const DensityMatrix& phi, const DensityMatrix& omega, const cvec& xi,
                       ExtrapolationTrace* trace = nullptr);

struct CocycleSample {
    cplx s;
    cmat u;  // (Dphi : Domega)_s^*
};
CocycleSample connes_cocycle(const DensityMatrix& phi, const DensityMatrix& omega, double s);
// the same matrix function at complex s, used for the analytic continuation
CocycleSample connes_cocycle_continued(const DensityMatrix& phi, const DensityMatrix& omega, cplx s);
// modular automorphism of omega on M: a -> rho^{is} a rho^{-is}
cmat modular_automorphism(const DensityMatrix& omega, double s, const cmat& a);

// constant c with S = c * d/dt phi(u_{-it}) at t = 0+, fixed once on a calibration pair
double cocycle_calibration();
double cocycle_entropy(const DensityMatrix& phi, const DensityMatrix& omega, ExtrapolationTrace* trace = nullptr);

struct LocalizedIsometry {
    bool ok = false;
    cmat v;                    // isometry in M with v Omega = xi
    double discrepancy = 0.0;  // trace-norm distance of the two commutant states
};
LocalizedIsometry localized_isometry(const cvec& xi, const StandardFormAlgebra& alg, const DensityMatrix& omega);

// -(xi, log Delta_Omega xi)
double vector_state_entropy(const cvec& xi, const StandardFormAlgebra& alg, const DensityMatrix& omega);

// trace over the second factor of C^da (x) C^db
DensityMatrix partial_trace_second(const DensityMatrix& rho, int da, int db);

} // namespace bk
