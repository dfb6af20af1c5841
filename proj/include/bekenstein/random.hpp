#pragma once

#include <cstdint>
#include <random>

#include "bekenstein/types.hpp"

namespace bk {

// independent stream per (seed, tag, index) so results do not depend on scheduling
inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

inline rvec gaussian_rvec(std::mt19937_64& g, int n) {
    std::normal_distribution<double> d;
    rvec v(n);
    for (int i = 0; i < n; ++i) v(i) = d(g);
    return v;
}

inline cvec gaussian_cvec(std::mt19937_64& g, int n) {
    std::normal_distribution<double> d;
    cvec v(n);
    for (int i = 0; i < n; ++i) {
        double re = d(g);
        v(i) = cplx(re, d(g));
    }
    return v;
}

inline cmat gaussian_cmat(std::mt19937_64& g, int r, int c) {
    std::normal_distribution<double> d;
    cmat m(r, c);
    for (int j = 0; j < c; ++j)
        for (int i = 0; i < r; ++i) {
            double re = d(g);
            m(i, j) = cplx(re, d(g));
        }
    return m;
}

} // namespace bk
