#include "gcn/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace gcn {

namespace {

int64_t floor_div(int64_t a, int64_t b) {
    int64_t d = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
    return d;
}

double log2d(double x) { return std::log2(x); }

// log2(2^a + c) for c >= 0, robust when a is huge
double log2_add_const(double a, double c) {
    if (c <= 0) return a;
    if (a > 512) return a + std::log2(1.0 + c * std::exp2(-a));
    return std::log2(std::exp2(a) + c);
}

}  // namespace

DerivedConstants DerivedConstants::of(const NetworkParams& p) {
    DerivedConstants d{p.h, p.alpha, p.ell, p.eps, 0, 0.0, 0.0};
    d.theta = p.alpha - floor_div(p.h - p.eps, p.ell) + 1;
    d.beta_log2 = (std::lgamma(static_cast<double>(p.alpha)) / std::numbers::ln2 -
                   log2d(2.0 * std::numbers::e * kGamma * static_cast<double>(p.alpha))) /
                  static_cast<double>(p.alpha - 1);
    d.beta = std::exp2(d.beta_log2);
    return d;
}

int64_t DerivedConstants::f(int64_t t) const {
    return (alpha * ell + eps - h) * eps * t * t + (alpha * ell + 2 * eps - h) * t + 1;
}

int64_t DerivedConstants::g(int64_t t) const {
    const int64_t a = ell * t, b = (h - ell) * t;
    return std::max(a, b) * (std::min(a, b) - (h - ell - eps) * t + 1);
}

// ------------------------------------------------------------- r_max bounds

BoundReport rmax_upper_subspace(const NetworkParams& p, int64_t q, int64_t t) {
    p.validate();
    const DerivedConstants d = DerivedConstants::of(p);
    BoundReport rep;
    rep.source = "upper:subspace";
    rep.kind = BoundKind::Upper;
    rep.valid = p.alpha >= 2 && p.h - p.eps >= 2 * p.ell && t >= 1;
    if (!rep.valid) {
        rep.notes = "requires h - eps >= 2 ell";
        return rep;
    }
    const int64_t lq_exp = p.ell * t * (p.eps * t + 1);
    rep.value_log2 = log2_add_const(
        log2d(kGamma) + log2d(static_cast<double>(d.theta)) +
            static_cast<double>(lq_exp) * log2d(static_cast<double>(q)),
        static_cast<double>(p.alpha - d.theta));
    const BigNat geo = (big_pow(BigNat(q), p.ell * t + 1) - 1) / (q - 1);
    rep.value_exact = gaussian_binomial((p.eps + p.ell) * t, p.eps * t, q) *
                          (d.theta * geo - 1) +
                      floor_div(p.h - p.eps, p.ell) - 1;
    return rep;
}

BoundReport rmax_upper_alpha2(const NetworkParams& p, int64_t q, int64_t t) {
    p.validate();
    BoundReport rep;
    rep.source = "upper:alpha2";
    rep.kind = BoundKind::Upper;
    rep.valid = p.alpha == 2 && p.ell + p.eps < p.h && p.h <= 2 * p.ell + p.eps && t >= 1;
    if (!rep.valid) {
        rep.notes = "requires alpha = 2 and ell + eps < h <= 2 ell + eps";
        return rep;
    }
    const int64_t c = (2 * p.ell + p.eps - p.h) * t + 1;
    rep.value_log2 =
        log2d(kGamma) + static_cast<double>((p.h - p.ell) * (2 * p.ell + p.eps - p.h) * t * t +
                                            (p.h - p.ell) * t) *
                            log2d(static_cast<double>(q));
    rep.value_exact = gaussian_binomial(p.h * t, c, q) / gaussian_binomial(p.ell * t, c, q);
    return rep;
}

BoundReport rmax_upper_ratio(const NetworkParams& p, int64_t q, int64_t t) {
    p.validate();
    BoundReport rep;
    rep.source = "upper:ratio";
    rep.kind = BoundKind::Upper;
    const int64_t n = p.h * t, k = p.ell * t, et = p.eps * t;
    const bool denominator_ok = n - k - et - 1 >= 0;  // (h-l-e)t >= 1
    bool alpha_ok = false;
    if (denominator_ok)
        alpha_ok = BigNat(p.alpha) <= gaussian_binomial(n - et - 1, k, q) + 1;
    rep.valid = k > 1 && k < n && denominator_ok && alpha_ok && t >= 1;
    if (!rep.valid)
        rep.notes = "requires 1 < ell t < h t, eps <= h - ell - 1/t, and alpha within the "
                    "binomial cap";
    if (denominator_ok) {
        rep.value_log2 = log2d(kGamma) + log2d(static_cast<double>(p.alpha - 1)) +
                         static_cast<double>(k * (et + 1)) * log2d(static_cast<double>(q));
        rep.value_exact = BigNat(p.alpha - 1) * gaussian_binomial(n, n - et - 1, q) /
                          gaussian_binomial(n - k, n - k - et - 1, q);
    }
    return rep;
}

BoundReport rmax_lower_probabilistic(const NetworkParams& p, int64_t q, int64_t t) {
    p.validate();
    const DerivedConstants d = DerivedConstants::of(p);
    BoundReport rep;
    rep.source = "lower:probabilistic";
    rep.kind = BoundKind::Lower;
    rep.valid = p.h >= 1 && p.h <= p.alpha * p.ell + p.eps && t >= 1;
    if (!rep.valid) {
        rep.notes = "requires 1 <= h <= alpha ell + eps";
        return rep;
    }
    rep.value_log2 = d.beta_log2 + static_cast<double>(d.f(t)) /
                                       static_cast<double>(p.alpha - 1) *
                                       log2d(static_cast<double>(q));
    return rep;
}

BoundReport rmax_lower_lifted_mrd(const NetworkParams& p, int64_t q, int64_t t) {
    p.validate();
    const DerivedConstants d = DerivedConstants::of(p);
    BoundReport rep;
    rep.source = "lower:liftedmrd";
    rep.kind = BoundKind::Lower;
    rep.valid = p.non_trivially_solvable() && p.h <= 2 * p.ell + p.eps && t >= 1;
    if (!rep.valid) {
        rep.notes = "requires ell + eps < h <= 2 ell + eps";
        return rep;
    }
    rep.value_log2 = log2d(static_cast<double>(p.alpha - 1)) +
                     static_cast<double>(d.g(t)) * log2d(static_cast<double>(q));
    rep.value_exact = BigNat(p.alpha - 1) * big_pow(BigNat(q), d.g(t));
    return rep;
}

namespace {

BigNat mrd_dual_size(int64_t n, int64_t k, int64_t delta, int64_t alpha, int64_t q) {
    return BigNat(alpha - 1) *
           big_pow(BigNat(q), std::max(k, n - k) * (std::min(k, n - k) - delta + 1));
}

BigNat covering_recursion(int64_t n, int64_t k, int64_t delta, int64_t alpha, int64_t q,
                          std::map<int64_t, BigNat>& memo) {
    if (n < k) return 0;
    if (n < k + delta) return alpha - 1;  // fewer than alpha codewords fit, vacuously fine
    const auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    BigNat best;
    if (n < k + 2 * delta) {
        best = mrd_dual_size(n, k, delta, alpha, q);
    } else {
        for (int64_t t = delta; t <= n - k - delta; ++t) {
            BigNat v;
            if (t < k) {
                v = BigNat(alpha - 1) * big_pow(BigNat(q), k * (t - delta + 1)) *
                    covering_recursion(n - t, k, delta, alpha, q, memo);
            } else {
                v = BigNat(alpha - 1) * big_pow(BigNat(q), t * (k - delta + 1)) *
                        covering_recursion(n - t, k, delta, alpha, q, memo) +
                    covering_recursion(t + k - delta, k, delta, alpha, q, memo);
            }
            best = std::max(best, v);
        }
    }
    memo.emplace(n, best);
    return best;
}

}  // namespace

BoundReport covering_lower_recursive(int64_t n, int64_t k, int64_t delta, int64_t alpha,
                                     int64_t q) {
    BoundReport rep;
    rep.source = "lower:recursive";
    rep.kind = BoundKind::Lower;
    if (delta < 1 || delta > k || k + delta > n || alpha < 2) {
        rep.valid = false;
        rep.notes = "requires 1 <= delta <= k and k + delta <= n";
        return rep;
    }
    const BigNat direct = mrd_dual_size(n, k, delta, alpha, q);
    const bool alpha_cap_ok = BigNat(alpha) <= big_pow(BigNat(q), k) + 1;
    rep.valid = true;
    BigNat value = direct;
    if (alpha_cap_ok) {
        std::map<int64_t, BigNat> memo;
        const BigNat rec = covering_recursion(n, k, delta, alpha, q, memo);
        if (rec > value) {
            value = rec;
            rep.notes = "recursion beats the direct dual-lifted-MRD value " + direct.str();
        } else {
            rep.notes = "direct dual-lifted-MRD value; recursion gave " + rec.str();
        }
    } else {
        rep.notes = "alpha > q^k + 1: recursion inapplicable, direct value only";
    }
    rep.value_exact = value;
    rep.value_log2 = log2_bignat(value);
    return rep;
}

// ------------------------------------------------- q^t threshold conditions

double necessary_qt_log2(const NetworkParams& p, int64_t t) {
    p.validate();
    if (t < 1) throw std::invalid_argument("necessary_qt: t must be >= 1");
    const DerivedConstants d = DerivedConstants::of(p);
    const double denom = static_cast<double>(p.ell * (p.eps * t + 1));
    if (p.h >= 2 * p.ell + p.eps) {
        return (log2d(static_cast<double>(p.r + d.theta - p.alpha)) -
                log2d(kGamma * static_cast<double>(d.theta))) /
               denom;
    }
    return (log2d(static_cast<double>(p.r)) -
            log2d(kGamma * static_cast<double>(p.alpha - 1))) /
           denom;
}

double sufficient_qt_log2(const NetworkParams& p, int64_t t) {
    p.validate();
    if (t < 1) throw std::invalid_argument("sufficient_qt: t must be >= 1");
    const DerivedConstants d = DerivedConstants::of(p);
    if (p.h >= 2 * p.ell + p.eps) {
        return static_cast<double>((p.alpha - 1) * t) / static_cast<double>(d.f(t)) *
               (log2d(static_cast<double>(p.r)) - d.beta_log2);
    }
    return static_cast<double>(t) / static_cast<double>(d.g(t)) *
           (log2d(static_cast<double>(p.r)) - log2d(static_cast<double>(p.alpha - 1)));
}

// --------------------------------------------------------------- gap bounds

namespace {

bool miller_rabin(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    auto mulmod = [](uint64_t a, uint64_t b, uint64_t m) {
        return static_cast<uint64_t>(static_cast<__uint128_t>(a) * b % m);
    };
    auto powmod = [&](uint64_t a, uint64_t e, uint64_t m) {
        uint64_t r = 1;
        a %= m;
        while (e) {
            if (e & 1) r = mulmod(r, a, m);
            a = mulmod(a, a, m);
            e >>= 1;
        }
        return r;
    };
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

uint64_t iroot(uint64_t n, int e) {
    if (e == 1) return n;
    uint64_t r = static_cast<uint64_t>(std::pow(static_cast<double>(n), 1.0 / e));
    auto powe = [&](uint64_t b) -> __uint128_t {
        __uint128_t v = 1;
        for (int i = 0; i < e; ++i) v *= b;
        return v;
    };
    while (r > 1 && powe(r) > n) --r;
    while (powe(r + 1) <= n) ++r;
    return r;
}

}  // namespace

bool is_prime_power_u64(uint64_t n) {
    if (n < 2) return false;
    for (int e = 63; e >= 1; --e) {
        const uint64_t r = iroot(n, e);
        if (r < 2) continue;
        __uint128_t v = 1;
        for (int i = 0; i < e; ++i) v *= r;
        if (v == n && miller_rabin(r)) return true;
    }
    return false;
}

uint64_t next_prime_power(uint64_t n) {
    uint64_t c = std::max<uint64_t>(n, 2);
    while (!is_prime_power_u64(c)) ++c;
    return c;
}

GapReport gap_bounds(const NetworkParams& p) {
    p.validate();
    const DerivedConstants d = DerivedConstants::of(p);
    GapReport rep;
    rep.high_regime = p.h >= 2 * p.ell + p.eps;

    const double necessary1 = necessary_qt_log2(p, 1);
    const double sufficient1 = sufficient_qt_log2(p, 1);

    // smallest t with 2^t above the sufficient curve: in the high regime
    // 2^{f(t)/(alpha-1)} >= r/beta, otherwise 2^{g(t)} >= r/(alpha-1)
    {
        const double target = rep.high_regime
                                  ? (log2d(static_cast<double>(p.r)) - d.beta_log2) *
                                        static_cast<double>(p.alpha - 1)
                                  : log2d(static_cast<double>(p.r)) -
                                        log2d(static_cast<double>(p.alpha - 1));
        int64_t t = 1;
        while (true) {
            const int64_t val = rep.high_regime ? d.f(t) : d.g(t);
            if (static_cast<double>(val) >= target) break;
            ++t;
            if (t > 100'000'000)
                throw std::runtime_error("gap_bounds: sufficient threshold out of reach");
        }
        rep.t_sufficient_cross = t;
    }
    rep.gap_lower_bits = necessary1 - static_cast<double>(rep.t_sufficient_cross);

    // smallest t with 2^t above the necessary curve
    {
        int64_t t = 1;
        while (static_cast<double>(t) < necessary_qt_log2(p, t)) {
            ++t;
            if (t > 100'000'000)
                throw std::runtime_error("gap_bounds: necessary threshold out of reach");
        }
        rep.t_necessary_cross = t;
    }
    // minimize t log2(q) over prime powers q and 1 <= t <= t_necessary_cross
    // subject to q^t >= necessary threshold at t; q = 2, t = t_necessary_cross
    // is feasible, and any t beyond it costs at least t > t_necessary_cross bits
    {
        double best = std::numeric_limits<double>::infinity();
        for (int64_t t = 1; t <= rep.t_necessary_cross; ++t) {
            const double thr = necessary_qt_log2(p, t);
            const double qreal = std::exp2(thr / static_cast<double>(t));
            uint64_t qc = static_cast<uint64_t>(std::ceil(qreal - 1e-9));
            qc = next_prime_power(qc);
            // floating-point guard at the boundary
            while (static_cast<double>(t) * log2d(static_cast<double>(qc)) < thr - 1e-9)
                qc = next_prime_power(qc + 1);
            const double bits = static_cast<double>(t) * log2d(static_cast<double>(qc));
            if (bits < best - 1e-12) {
                best = bits;
                rep.opt_q = static_cast<int64_t>(qc);
                rep.opt_t = t;
            }
        }
        rep.opt_qt_log2 = best;
    }
    rep.gap_upper_bits = sufficient1 - rep.opt_qt_log2;

    // closed forms (need eps >= 1; the lower form in the high regime also
    // needs h != alpha ell + eps)
    if (p.eps >= 1) {
        const double log_term =
            rep.high_regime
                ? log2d(static_cast<double>(p.r + d.theta - p.alpha)) -
                      log2d(kGamma * static_cast<double>(d.theta))
                : log2d(static_cast<double>(p.r)) - log2d(kGamma * static_cast<double>(p.alpha - 1));
        const double le = static_cast<double>(p.ell * p.eps);
        const double inv2e = 1.0 / (2.0 * static_cast<double>(p.eps));
        rep.t_prime = std::sqrt(log_term / le + inv2e * inv2e) - inv2e;
        rep.closed_upper_valid = true;
        rep.gap_upper_closed_bits = sufficient1 - std::max(rep.t_prime - 1.0, 1.0);

        if (rep.high_regime) {
            if (p.h != p.alpha * p.ell + p.eps) {
                rep.closed_lower_valid = true;
                rep.gap_lower_closed_bits =
                    necessary1 -
                    std::sqrt(static_cast<double>(p.alpha - 1) *
                              (log2d(static_cast<double>(p.r)) - d.beta_log2) /
                              static_cast<double>((p.alpha * p.ell + p.eps - p.h) * p.eps));
            }
        } else {
            rep.closed_lower_valid = true;
            const double lr = log2d(static_cast<double>(p.r)) -
                              log2d(static_cast<double>(p.alpha - 1));
            rep.gap_lower_closed_bits =
                (lr - 2.0) / static_cast<double>(p.ell * (p.eps + 1)) -
                std::sqrt(lr / static_cast<double>(p.ell * p.eps));
        }
    }
    return rep;
}

// ------------------------------------------------------------- comparisons

UpperComparison compare_upper_bounds(const NetworkParams& p, int64_t q, int64_t t) {
    p.validate();
    const DerivedConstants d = DerivedConstants::of(p);
    UpperComparison cmp;

    const BoundReport sub = rmax_upper_subspace(p, q, t);
    const BoundReport rat = rmax_upper_ratio(p, q, t);
    const BoundReport a2 = rmax_upper_alpha2(p, q, t);
    if (sub.valid) cmp.subspace = sub.value_exact;
    if (rat.valid) cmp.ratio = rat.value_exact;
    if (a2.valid) cmp.alpha2 = a2.value_exact;

    // winner: smallest valid exact value (ties to the earlier tag)
    const std::pair<const char*, const std::optional<BigNat>*> entries[] = {
        {"upper:subspace", &cmp.subspace},
        {"upper:alpha2", &cmp.alpha2},
        {"upper:ratio", &cmp.ratio},
    };
    const BigNat* best = nullptr;
    for (const auto& [tag, val] : entries) {
        if (!val->has_value()) continue;
        if (best == nullptr || val->value() < *best) {
            best = &val->value();
            cmp.winner = tag;
        }
    }

    // predicate hypotheses
    const BigNat small_binom = gaussian_binomial((p.eps + p.ell) * t, p.eps * t, q);
    const bool common = p.h >= 2 * p.ell + p.eps && rat.valid;
    cmp.pred_small_binomial =
        common && small_binom <= p.alpha &&
        BigNat(2 * d.theta * p.alpha) <= BigNat(p.alpha - 1) *
                                             big_pow(BigNat(q), p.ell * p.eps * t * t);
    cmp.pred_small_theta =
        common && small_binom >= p.alpha && p.h >= 2 * p.eps && 8 * d.theta < p.alpha - 1;

    cmp.exponent_d2 = (p.h - p.ell) * (2 * p.ell + p.eps - p.h) - p.eps * p.ell;
    cmp.exponent_d1 = p.h - 2 * p.ell;
    if (p.alpha == 2) {
        const int64_t et1 = p.eps * t + 1, lt = p.ell * t;
        const int64_t hlve = (p.h - p.ell - p.eps) * t;  // > 1 iff h > l+e+1/t
        const bool b1 = et1 < lt && (p.h > 2 * p.ell || hlve < 1);
        const bool b2 = et1 > lt && (hlve > 1 || p.h < 2 * p.ell);
        const bool b3 = et1 == lt && p.h != 2 * p.ell;
        cmp.pred_alpha2 = b1 || b2 || b3;
    }
    return cmp;
}

BestBounds best_bounds(const NetworkParams& p, int64_t q, int64_t t) {
    p.validate();
    BestBounds bb;
    bb.all.push_back(rmax_upper_subspace(p, q, t));
    bb.all.push_back(rmax_upper_alpha2(p, q, t));
    bb.all.push_back(rmax_upper_ratio(p, q, t));
    bb.all.push_back(rmax_lower_probabilistic(p, q, t));
    bb.all.push_back(rmax_lower_lifted_mrd(p, q, t));
    if (p.non_trivially_solvable())
        bb.all.push_back(covering_lower_recursive(p.h * t, p.ell * t,
                                                  (p.h - p.ell - p.eps) * t, p.alpha, q));
    else {
        BoundReport rec;
        rec.source = "lower:recursive";
        rec.kind = BoundKind::Lower;
        rec.valid = false;
        rec.notes = "requires a non-trivially solvable network";
        bb.all.push_back(rec);
    }

    auto find = [&](const char* tag) -> const BoundReport& {
        for (const BoundReport& b : bb.all)
            if (b.source == tag) return b;
        throw std::logic_error("bound tag missing");
    };

    // table pick by regime
    const char* upper_tag;
    if (p.alpha > 2) {
        upper_tag = p.h < 2 * p.ell + p.eps ? "upper:ratio" : "upper:subspace";
    } else {
        // alpha = 2: the smaller gamma-form exponent of the two
        const int64_t e_ratio = p.ell * t * (p.eps * t + 1);
        const int64_t e_a2 =
            (p.h - p.ell) * (2 * p.ell + p.eps - p.h) * t * t + (p.h - p.ell) * t;
        upper_tag = (find("upper:alpha2").valid && e_a2 <= e_ratio) ? "upper:alpha2"
                                                                    : "upper:ratio";
    }
    bb.upper = find(upper_tag);
    if (!bb.upper.valid) {
        // fall back to the smallest valid upper bound
        for (const BoundReport& b : bb.all)
            if (b.kind == BoundKind::Upper && b.valid &&
                (!bb.upper.valid || b.value_log2 < bb.upper.value_log2))
                bb.upper = b;
    }
    bb.lower = find(p.h < 2 * p.ell + p.eps ? "lower:liftedmrd" : "lower:probabilistic");
    if (!bb.lower.valid) {
        for (const BoundReport& b : bb.all)
            if (b.kind == BoundKind::Lower && b.valid &&
                (!bb.lower.valid || b.value_log2 > bb.lower.value_log2))
                bb.lower = b;
    }
    return bb;
}

std::vector<FigureRow> figure_curves(const NetworkParams& p, int64_t t_max) {
    p.validate();
    if (t_max < 1) throw std::invalid_argument("figure_curves: t_max must be >= 1");
    std::vector<FigureRow> rows;
    rows.reserve(static_cast<size_t>(t_max));
    for (int64_t t = 1; t <= t_max; ++t) {
        FigureRow row;
        row.t = t;
        row.necessary = std::exp2(necessary_qt_log2(p, t));
        row.sufficient = std::exp2(sufficient_qt_log2(p, t));
        row.two_pow_t = std::exp2(static_cast<double>(t));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace gcn
