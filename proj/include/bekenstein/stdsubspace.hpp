#pragma once

#include <functional>
#include <vector>

#include "bekenstein/formcalc.hpp"

namespace bk {

inline constexpr double eps_std = 1e-8;
inline constexpr double max_condition = 1e10;

// C^n ~ R^2n by stacking (Re, Im)
rvec realify(const cvec& v);
rmat realify_cols(const cmat& b);
cvec complexify(const rvec& r);
cmat complexify_cols(const rmat& r);

// xi -> C conj(xi)
struct AntilinearOperator {
    cmat c;

    cvec apply(const cvec& v) const { return c * v.conjugate(); }
    AntilinearOperator adjoint() const { return {c.transpose()}; }
    // (C1 conj)(C2 conj) is linear: C1 conj(C2)
    cmat compose(const AntilinearOperator& o) const { return c * o.c.conjugate(); }
    // real 2n x 2n form [[Re C, Im C], [Im C, -Re C]]
    rmat realified() const;
    static AntilinearOperator from_realified(const rmat& s);
};

class RealSubspace {
public:
    struct MakeReport {
        int given = 0;
        int kept = 0;
        std::vector<int> dropped;  // indices of real-linearly dependent inputs
    };

    RealSubspace() = default;
    static RealSubspace make(const std::vector<cvec>& vs, MakeReport* report = nullptr, double tol = 1e-10);
    static RealSubspace from_columns(const cmat& b, MakeReport* report = nullptr, double tol = 1e-10);
    static RealSubspace real_canonical(int n);

    int ambient_dim() const { return n_; }
    int real_dim() const { return static_cast<int>(basis_.cols()); }
    const cmat& basis() const { return basis_; }  // orthonormal for Re<.,.>
    rmat realified() const { return realify_cols(basis_); }

    cvec project(const cvec& v) const;  // real-orthogonal projection
    double residual(const cvec& v) const { return (v - project(v)).norm(); }
    // max residual of the other subspace's basis; witness gets the worst vector
    double containment_residual(const RealSubspace& k, cvec* witness = nullptr) const;

    RealSubspace mapped(const cmat& linear) const;  // image under a complex-linear map
    RealSubspace mapped(const AntilinearOperator& a) const;

private:
    int n_ = 0;
    cmat basis_;
};

// sine of the largest principal angle between realified subspaces; 1 if dimensions differ
double subspace_distance(const RealSubspace& a, const RealSubspace& b);

struct StandardnessReport {
    bool standard = false;
    double min_singular = 0.0;  // of [B | iB] realified
    double condition = 0.0;
    int real_dim = 0;
    int complex_dim = 0;  // of the space it is tested in
};

StandardnessReport is_standard(const RealSubspace& h);
// standardness inside the closed complex span of h
StandardnessReport is_standard_in_span(const RealSubspace& h);

RealSubspace symplectic_complement(const RealSubspace& h);

struct ModularData {
    cmat span;        // n x m orthonormal basis of the complex span
    rvec spectrum;    // eigenvalues of Delta on the span, ascending
    cmat eigvecs;     // n x m
    HermitianOperator delta;  // ambient, zero off the span
    AntilinearOperator j;     // ambient, zero off the span
    AntilinearOperator s;
    double condition = 0.0;

    int ambient_dim() const { return static_cast<int>(span.rows()); }
    int span_dim() const { return static_cast<int>(span.cols()); }
    cmat span_projection() const { return span * span.adjoint(); }
    // Delta^z on the span, extended by zero
    cmat delta_pow(cplx z) const;
    cmat delta_pow(double a) const { return delta_pow(cplx(a, 0.0)); }
    cmat delta_it(double t) const { return delta_pow(cplx(0.0, t)); }
    cmat log_delta() const;
    cvec apply_pow(cplx z, const cvec& v) const;
    SpectralData spectral() const;
};

// Tomita data of a subspace standard in the full space
ModularData tomita(const RealSubspace& h);
// Tomita data of a subspace standard in its complex span, extended by zero
ModularData tomita_in_span(const RealSubspace& h);

class StandardSubspace {
public:
    StandardSubspace() = default;
    explicit StandardSubspace(RealSubspace h);
    const RealSubspace& subspace() const { return h_; }
    const ModularData& modular() const { return md_; }
    int dim() const { return h_.ambient_dim(); }

private:
    RealSubspace h_;
    ModularData md_;
};

struct EntropyDensityBound {
    double lhs = 0.0;  // (xi, log Delta xi)
    double rhs = 0.0;  // ||S xi||^2 / e
    bool ok = false;
};
EntropyDensityBound entropy_density_bound(const cvec& xi, const StandardSubspace& h);

// T_{H,K}(z) = Delta_H^{iz} Delta_K^{-iz} F for -1/2 <= Im z <= 0
cmat contraction_family(const StandardSubspace& h, const RealSubspace& k, cplx z);
cmat contraction_family(const ModularData& h, const ModularData& k, cplx z);
void check_contained(const RealSubspace& outer, const RealSubspace& inner, double tol = 1e-10);

// || T_{K',H'}(z) - T_{H,K}(-conj z)^* || / max(1, ||T_{H,K}(-conj z)||) for standard H, K; the complements get
// their own Tomita data, so this exercises S_{H'} = S_H^* end to end
double contraction_adjoint_residual(const StandardSubspace& h, const StandardSubspace& k, cplx z);

struct InclusionReport {
    std::vector<double> alpha;
    std::vector<double> power_margin;  // min-eig of F(Delta_K^a - Delta_H^a)F on K_C
    double log_margin = 0.0;           // min-eig of F(log Delta_K - log Delta_H)F on K_C
    bool ok = false;
    double worst_alpha = 0.0;
    cvec witness;
};
// K may be standard only in its complex span; the inequalities are then read on K_C
InclusionReport inclusion_inequalities(const StandardSubspace& h, const RealSubspace& k,
                                       const std::vector<double>& alpha_grid);

struct BorchersReport {
    std::vector<double> s, t;
    rmat residual;  // s x t
    double max_residual = 0.0;
};
// residual of Delta^{is} U(t) Delta^{-is} = U(e^{-+2 pi s} t); diagnostic only
BorchersReport borchers_check(const StandardSubspace& h, const std::function<cmat(double)>& u, int direction,
                              const std::vector<double>& s_grid, const std::vector<double>& t_grid);

} // namespace bk
