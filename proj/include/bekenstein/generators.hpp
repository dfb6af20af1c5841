#pragma once

#include <random>

#include "bekenstein/modular_entropy.hpp"
#include "bekenstein/stdsubspace.hpp"

namespace bk {

// random inputs for the property suites

// positive definite with log-normal spectrum
HermitianOperator random_pd(std::mt19937_64& g, int n, double spread = 1.0);
// A <= B, both PSD; A has rank r
std::pair<HermitianOperator, HermitianOperator> random_ordered_pair(std::mt19937_64& g, int n, int r);

cmat random_unitary(std::mt19937_64& g, int n);
DensityMatrix random_density(std::mt19937_64& g, int n);

// real span of n gaussian vectors in C^n; resampled while [B | iB] has condition above max_cond
RealSubspace random_standard(std::mt19937_64& g, int n, double max_cond = 1e6);
// K = real span of k < n random real combinations of the basis of h, standard in its span
RealSubspace random_inner(std::mt19937_64& g, const RealSubspace& h, int k);

} // namespace bk
