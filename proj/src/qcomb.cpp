#include "gcn/qcomb.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gcn {

BigNat big_pow(const BigNat& base, int64_t exp) {
    if (exp < 0) throw std::invalid_argument("big_pow: negative exponent");
    BigNat r = 1, b = base;
    while (exp) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

BigNat gaussian_binomial(int64_t n, int64_t k, int64_t q) {
    if (n < 0 || k < 0) throw std::invalid_argument("gaussian_binomial: negative argument");
    if (q < 2) throw std::invalid_argument("gaussian_binomial: q must be >= 2");
    if (k > n) return 0;
    // [n k]_q = prod_{i=1..k} (q^{n-k+i}-1)/(q^i-1); dividing after each
    // multiplication stays exact because each partial product is [n-k+i i]_q.
    BigNat r = 1;
    const BigNat bq = q;
    for (int64_t i = 1; i <= k; ++i) {
        r *= big_pow(bq, n - k + i) - 1;
        r /= big_pow(bq, i) - 1;
    }
    return r;
}

GaussianBounds gaussian_bounds(int64_t n, int64_t k, int64_t q) {
    if (k < 0 || k > n) throw std::invalid_argument("gaussian_bounds: need 0 <= k <= n");
    GaussianBounds b;
    b.lower = big_pow(BigNat(q), k * (n - k));
    b.upper_log2 = std::log2(kGamma) +
                   static_cast<double>(k) * static_cast<double>(n - k) *
                       std::log2(static_cast<double>(q));
    return b;
}

BigNat count_matrices_of_rank(int64_t m, int64_t n, int64_t s, int64_t q) {
    if (s < 0 || s > std::min(m, n))
        throw std::invalid_argument("count_matrices_of_rank: need 0 <= s <= min(m,n)");
    // M(m,n,s) = [m s]_q * prod_{j=0..s-1} (q^n - q^j)
    BigNat r = gaussian_binomial(m, s, q);
    const BigNat qn = big_pow(BigNat(q), n);
    for (int64_t j = 0; j < s; ++j) r *= qn - big_pow(BigNat(q), j);
    return r;
}

double count_matrices_of_rank_log2_bound(int64_t m, int64_t n, int64_t s, int64_t q) {
    return std::log2(kGamma) +
           static_cast<double>((m + n) * s - s * s) * std::log2(static_cast<double>(q));
}

BigNat binomial(int64_t n, int64_t k) {
    if (n < 0) throw std::invalid_argument("binomial: negative n");
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigNat r = 1;
    for (int64_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

double log2_bignat(const BigNat& x) {
    if (x < 0) throw std::invalid_argument("log2_bignat: negative argument");
    if (x == 0) return -std::numeric_limits<double>::infinity();
    const auto bits = boost::multiprecision::msb(x);  // floor(log2 x)
    if (bits <= 62) return std::log2(x.convert_to<double>());
    const unsigned shift = bits - 52;
    const double top = (x >> shift).convert_to<double>();
    return std::log2(top) + static_cast<double>(shift);
}

}  // namespace gcn
