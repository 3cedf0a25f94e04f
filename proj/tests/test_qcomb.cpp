#include <doctest.h>

#include <cmath>
#include <set>

#include "gcn/gf.hpp"
#include "gcn/qcomb.hpp"

using namespace gcn;

namespace {

// independent oracle: count k-dimensional rowspaces of F_q^n by enumerating
// every k x n matrix and canonicalizing
uint64_t brute_subspace_count(int64_t n, int64_t k, int64_t q) {
    const FieldPtr f = Gf::make(static_cast<uint64_t>(q));
    uint64_t total = 1;
    for (int64_t i = 0; i < k * n; ++i) total *= static_cast<uint64_t>(q);
    std::set<std::vector<uint32_t>> seen;
    for (uint64_t idx = 0; idx < total; ++idx) {
        Matrix m(f, k, n);
        uint64_t v = idx;
        for (auto& e : m.data()) {
            e = static_cast<uint32_t>(v % static_cast<uint64_t>(q));
            v /= static_cast<uint64_t>(q);
        }
        const auto ech = m.rref();
        if (ech.rank != k) continue;
        seen.insert(ech.reduced.data());
    }
    return seen.size();
}

// independent oracle: count m x n matrices of rank s by enumeration
uint64_t brute_rank_count(int64_t m, int64_t n, int64_t s, int64_t q) {
    const FieldPtr f = Gf::make(static_cast<uint64_t>(q));
    uint64_t total = 1;
    for (int64_t i = 0; i < m * n; ++i) total *= static_cast<uint64_t>(q);
    uint64_t count = 0;
    for (uint64_t idx = 0; idx < total; ++idx) {
        Matrix a(f, m, n);
        uint64_t v = idx;
        for (auto& e : a.data()) {
            e = static_cast<uint32_t>(v % static_cast<uint64_t>(q));
            v /= static_cast<uint64_t>(q);
        }
        if (a.rank() == s) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("gaussian binomial examples") {
    CHECK(gaussian_binomial(2, 1, 2) == 3);
    CHECK(gaussian_binomial(4, 2, 2) == 35);
    CHECK(gaussian_binomial(3, 1, 3) == 13);
    CHECK(gaussian_binomial(7, 0, 2) == 1);
    CHECK(gaussian_binomial(3, 5, 2) == 0);
    CHECK(gaussian_binomial(4, 3, 2) == 15);

    // brute-force cross checks
    CHECK(gaussian_binomial(2, 1, 2).convert_to<uint64_t>() == brute_subspace_count(2, 1, 2));
    CHECK(gaussian_binomial(4, 2, 2).convert_to<uint64_t>() == brute_subspace_count(4, 2, 2));
    CHECK(gaussian_binomial(3, 2, 3).convert_to<uint64_t>() == brute_subspace_count(3, 2, 3));
}

TEST_CASE("gaussian bounds") {
    const auto b = gaussian_bounds(4, 2, 2);
    CHECK(b.lower == 16);
    CHECK(b.upper_log2 == doctest::Approx(std::log2(55.68)).epsilon(1e-12));
    CHECK(gaussian_binomial(4, 2, 2) >= b.lower);

    const auto b31 = gaussian_bounds(3, 1, 3);
    CHECK(b31.lower == 9);
    CHECK(b31.upper_log2 == doctest::Approx(std::log2(31.32)).epsilon(1e-12));

    const auto b0 = gaussian_bounds(5, 0, 7);
    CHECK(b0.lower == 1);
    CHECK(b0.upper_log2 == doctest::Approx(std::log2(3.48)).epsilon(1e-12));
}

TEST_CASE("sandwich property holds exactly for n <= 8") {
    for (const int64_t q : {2, 3, 4, 5}) {
        for (int64_t n = 0; n <= 8; ++n)
            for (int64_t k = 0; k <= n; ++k) {
                const BigNat gb = gaussian_binomial(n, k, q);
                const BigNat low = big_pow(BigNat(q), k * (n - k));
                CHECK(low <= gb);
                CHECK(100 * gb < 348 * low);  // gb < 3.48 q^{k(n-k)}, exactly
            }
    }
}

TEST_CASE("gaussian binomial symmetry") {
    for (const int64_t q : {2, 3, 5}) {
        for (int64_t n = 0; n <= 9; ++n)
            for (int64_t k = 0; k <= n; ++k)
                CHECK(gaussian_binomial(n, k, q) == gaussian_binomial(n, n - k, q));
    }
}

TEST_CASE("rank counts") {
    CHECK(count_matrices_of_rank(2, 2, 2, 2) == 6);
    CHECK(count_matrices_of_rank(2, 2, 2, 2).convert_to<uint64_t>() == brute_rank_count(2, 2, 2, 2));
    CHECK(count_matrices_of_rank(3, 3, 0, 5) == 1);
    CHECK(count_matrices_of_rank(2, 3, 1, 2).convert_to<uint64_t>() == brute_rank_count(2, 3, 1, 2));

    // partition: sum over s of M(m,n,s) = q^{mn}
    for (const int64_t q : {2, 3}) {
        for (int64_t m = 1; m <= 4; ++m)
            for (int64_t n = 1; n <= 4; ++n) {
                BigNat sum = 0;
                for (int64_t s = 0; s <= std::min(m, n); ++s)
                    sum += count_matrices_of_rank(m, n, s, q);
                CHECK(sum == big_pow(BigNat(q), m * n));
            }
    }

    // the log2 bound M <= gamma q^{(m+n)s - s^2}
    for (int64_t m = 1; m <= 4; ++m)
        for (int64_t n = 1; n <= 4; ++n)
            for (int64_t s = 0; s <= std::min(m, n); ++s) {
                const double lhs = log2_bignat(count_matrices_of_rank(m, n, s, 2));
                CHECK(lhs <= count_matrices_of_rank_log2_bound(m, n, s, 2) + 1e-9);
            }
}

TEST_CASE("binomial") {
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(3, 7) == 0);
    CHECK(binomial(20, 3) == 1140);
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(52, 5) == 2598960);
    CHECK(binomial(800000, 3) == BigNat("85333013333600000"));
}

TEST_CASE("log2 of big integers") {
    CHECK(log2_bignat(BigNat(1)) == 0.0);
    CHECK(log2_bignat(big_pow(BigNat(2), 200)) == doctest::Approx(200.0).epsilon(1e-14));
    CHECK(log2_bignat(BigNat(1024)) == doctest::Approx(10.0));
    const BigNat x = big_pow(BigNat(10), 50);
    CHECK(log2_bignat(x) == doctest::Approx(50.0 * std::log2(10.0)).epsilon(1e-12));
}
