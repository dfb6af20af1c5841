#pragma once

#include <functional>
#include <vector>

#include "bekenstein/errors.hpp"
#include "bekenstein/extended_real.hpp"
#include "bekenstein/types.hpp"

namespace bk {

inline constexpr double tol_herm = 1e-12;
inline constexpr double eps_support_rel = 1e-12;

class HermitianOperator {
public:
    HermitianOperator() = default;
    // validates hermiticity to tol_herm relative to the operator norm, then symmetrizes
    explicit HermitianOperator(const cmat& m);
    static HermitianOperator from_real(const rmat& m) { return HermitianOperator(m.cast<cplx>()); }
    static HermitianOperator diag(const rvec& d);
    // skips validation; for matrices hermitian by construction with a known norm
    static HermitianOperator trusted(cmat m, double norm);

    int dim() const { return static_cast<int>(m_.rows()); }
    const cmat& matrix() const { return m_; }
    double norm() const { return norm_; }
    double eps_support() const { return eps_support_rel * (norm_ > 1e-14 ? norm_ : 1e-14); }

private:
    cmat m_;
    double norm_ = 0.0;
};

struct SpectralData {
    rvec eigenvalues;   // ascending
    cmat eigenvectors;  // columns
    int support_rank = 0;
    double eps_support = 0.0;

    // f applied on the support, zero on the kernel
    cmat apply_on_support(const std::function<double(double)>& f) const;
    cmat apply_on_support_c(const std::function<cplx(double)>& f) const;
    cmat support_projection() const;
};

SpectralData spectral(const HermitianOperator& a);

ExtendedReal quad_form(const cvec& xi, const HermitianOperator& a);
ExtendedReal quad_form_log(const cvec& xi, const HermitianOperator& a);
// the same value from a precomputed decomposition
ExtendedReal quad_form_log(const cvec& xi, const SpectralData& sd);

// f(lambda, t) = -((t+1)^-1 - lambda (t+lambda)^-1)/t
double log_kernel(double lambda, double t);

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
};
// integral of f over (0, inf) through t = e^s, adaptive Gauss-Kronrod to 1e-10
QuadratureResult integrate_half_line(const std::function<double(double)>& f, double tol = 1e-10);

double kernel_log(double lambda);  // int_0^inf f(lambda, t) dt
double log_via_kernel(const cvec& xi, const HermitianOperator& a);

struct LimitTrace {
    std::vector<double> t;
    std::vector<double> quotient;  // (||A^{t/2} xi||^2 - ||xi||^2)/t
    std::vector<double> richardson;
    double value = 0.0;
};
double log_limit(const cvec& xi, const HermitianOperator& a, LimitTrace* trace = nullptr);

bool form_order_leq(const HermitianOperator& a, const HermitianOperator& b);

struct LogMonotoneReport {
    double margin = 0.0;  // min-eig(log B - log A) on the support of A
    cvec witness;         // eigenvector attaining it
    int support_dim = 0;
    bool ok = false;
};
// throws property_failure when margin < -1e-9
LogMonotoneReport check_log_monotone(const HermitianOperator& a, const HermitianOperator& b,
                                     bool throw_on_fail = true);

// matrix functions through the spectral decomposition, support convention
cmat log_on_support(const HermitianOperator& a);
cmat power_on_support(const HermitianOperator& a, double s);

double min_eig(const cmat& herm);

} // namespace bk
