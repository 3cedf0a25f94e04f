#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gcn/network.hpp"
#include "gcn/qcomb.hpp"

// Bounds on r_max (the largest middle layer admitting a (q,t)-linear
// solution), necessary/sufficient conditions on q^t, alphabet-gap bounds,
// upper-bound comparison predicates, the recursive covering-code lower bound,
// and the curve generator behind the companion plots.
//
// Values are carried in log2 domain; formulas that are exact integers also
// carry the exact value.

namespace gcn {

struct DerivedConstants {
    int64_t h, alpha, ell, eps;
    int64_t theta;     // alpha - floor((h-eps)/ell) + 1
    double beta;       // ((alpha-1)! / (2 e gamma alpha))^{1/(alpha-1)}
    double beta_log2;

    static DerivedConstants of(const NetworkParams& p);
    int64_t f(int64_t t) const;  // (al+e-h) e t^2 + (al+2e-h) t + 1
    int64_t g(int64_t t) const;  // max(lt,(h-l)t) (min(lt,(h-l)t) - (h-l-e)t + 1)
};

enum class BoundKind { Upper, Lower };

struct BoundReport {
    std::string source;  // mechanism tag, e.g. "upper:subspace"
    BoundKind kind = BoundKind::Upper;
    bool valid = false;                 // stated parameter conditions hold
    double value_log2 = 0.0;            // gamma-approximate (or only) form
    std::optional<BigNat> value_exact;  // exact form when the formula has one
    std::string notes;
};

/// Subspace-packing upper bound, valid for h - eps >= 2 ell:
/// exact [(e+l)t, et]_q (theta (q^{lt+1}-1)/(q-1) - 1) + floor((h-e)/l) - 1,
/// approximated by gamma theta q^{lt(et+1)} + alpha - theta.
BoundReport rmax_upper_subspace(const NetworkParams& p, int64_t q, int64_t t);

/// Pair-intersection upper bound for alpha = 2:
/// exact floor([ht, c]_q / [lt, c]_q) with c = (2l+e-h)t + 1,
/// approximated by gamma q^{(h-l)(2l+e-h)t^2 + (h-l)t}.
BoundReport rmax_upper_alpha2(const NetworkParams& p, int64_t q, int64_t t);

/// Covering-ratio upper bound:
/// exact floor((alpha-1) [ht, ht-et-1]_q / [ht-lt, ht-lt-et-1]_q),
/// approximated by gamma (alpha-1) q^{lt(et+1)}.
BoundReport rmax_upper_ratio(const NetworkParams& p, int64_t q, int64_t t);

/// Random-coding lower bound (local-lemma argument): beta q^{f(t)/(alpha-1)}.
BoundReport rmax_lower_probabilistic(const NetworkParams& p, int64_t q, int64_t t);

/// Dual-lifted-MRD lower bound, valid for h <= 2l+e: (alpha-1) q^{g(t)}.
BoundReport rmax_lower_lifted_mrd(const NetworkParams& p, int64_t q, int64_t t);

/// Recursive covering-code lower bound on B_q(n,k,delta;alpha) (with the
/// non-recursive dual-lifted-MRD value folded in; the larger is reported).
BoundReport covering_lower_recursive(int64_t n, int64_t k, int64_t delta, int64_t alpha,
                                     int64_t q);

/// log2 of the smallest q^t a (q,t)-linear solution can possibly have
/// (necessary condition), as a function of t.
double necessary_qt_log2(const NetworkParams& p, int64_t t);

/// log2 of a q^t beyond which a (q,t)-linear solution surely exists
/// (sufficient condition), as a function of t.
double sufficient_qt_log2(const NetworkParams& p, int64_t t);

struct GapReport {
    bool high_regime = false;  // h >= 2l+e
    // authoritative (search-based) bounds in bits
    double gap_upper_bits = 0.0;
    double gap_lower_bits = 0.0;
    // witnesses
    int64_t t_necessary_cross = 0;   // least t with 2^t above the necessary curve
    int64_t t_sufficient_cross = 0;  // least t with 2^t above the sufficient curve
    int64_t opt_q = 0, opt_t = 0;    // prime power and t minimizing t log2(q)
    double opt_qt_log2 = 0.0;        //   subject to q^t >= necessary threshold
    // closed forms (reported alongside; the search-based values are authoritative)
    double t_prime = 0.0;  // positive root of 2^t = threshold(t)
    bool closed_upper_valid = false;
    double gap_upper_closed_bits = 0.0;
    bool closed_lower_valid = false;
    double gap_lower_closed_bits = 0.0;
};

GapReport gap_bounds(const NetworkParams& p);

struct UpperComparison {
    // exact values (alpha2 present only when alpha == 2 and in range)
    std::optional<BigNat> subspace, ratio, alpha2;
    std::string winner;  // source tag of the smallest valid exact upper bound
    // predicate: subspace beats ratio when [(e+l)t et]_q <= alpha and
    // 2 theta alpha <= (alpha-1) q^{l e t^2}
    bool pred_small_binomial = false;
    // predicate: subspace beats ratio when [(e+l)t et]_q >= alpha, h >= 2e and
    // 8 theta < alpha - 1
    bool pred_small_theta = false;
    // predicate: the alpha=2 bound beats the ratio bound (three-case test on
    // the exponent difference)
    bool pred_alpha2 = false;
    // exponent of q in log_q(U_alpha2) - log_q(U_ratio) = d2 t^2 + d1 t
    int64_t exponent_d2 = 0, exponent_d1 = 0;
};

UpperComparison compare_upper_bounds(const NetworkParams& p, int64_t q, int64_t t);

struct BestBounds {
    BoundReport lower, upper;        // table pick per parameter regime
    std::vector<BoundReport> all;    // every bound, valid or not
};

BestBounds best_bounds(const NetworkParams& p, int64_t q, int64_t t);

struct FigureRow {
    int64_t t;
    double necessary;  // linear scale
    double sufficient;
    double two_pow_t;
};

std::vector<FigureRow> figure_curves(const NetworkParams& p, int64_t t_max);

// ---- small number-theory helpers used by the gap search ----
bool is_prime_power_u64(uint64_t n);
uint64_t next_prime_power(uint64_t n);  // least prime power >= max(n, 2)

}  // namespace gcn
