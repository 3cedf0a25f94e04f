#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

// Exact big-integer combinatorics: Gaussian binomials, rank-count formulas,
// ordinary binomials, and their gamma-factor approximations in log2 domain.

namespace gcn {

using BigNat = boost::multiprecision::cpp_int;

/// Constant of the q-binomial sandwich q^{k(n-k)} <= [n k]_q < gamma q^{k(n-k)}.
inline constexpr double kGamma = 3.48;

BigNat big_pow(const BigNat& base, int64_t exp);

/// Exact q-binomial coefficient [n k]_q. Returns 0 if k > n, 1 if k == 0.
BigNat gaussian_binomial(int64_t n, int64_t k, int64_t q);

struct GaussianBounds {
    BigNat lower;       // q^{k(n-k)}, exact
    double upper_log2;  // log2(gamma) + k(n-k) log2(q)
};
GaussianBounds gaussian_bounds(int64_t n, int64_t k, int64_t q);

/// Exact number of m x n matrices over GF(q) of rank s.
BigNat count_matrices_of_rank(int64_t m, int64_t n, int64_t s, int64_t q);

/// log2 of the bound M(m,n,s) <= gamma q^{(m+n)s - s^2}.
double count_matrices_of_rank_log2_bound(int64_t m, int64_t n, int64_t s, int64_t q);

/// Exact binomial coefficient C(n, k); 0 when k < 0 or k > n.
BigNat binomial(int64_t n, int64_t k);

/// log2 of a positive big integer (-inf for zero), good to ~1e-15 relative.
double log2_bignat(const BigNat& x);

}  // namespace gcn
