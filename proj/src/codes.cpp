#include "gcn/codes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

namespace gcn {

namespace {

// --- polynomial helpers over an arbitrary base field, low degree first ---

using FPoly = std::vector<uint32_t>;  // element codes of the base field

void fpoly_trim(FPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

FPoly fpoly_mod(const Gf& f, FPoly a, const FPoly& b) {
    fpoly_trim(a);
    const size_t db = b.size() - 1;
    const uint32_t lead_inv = f.inv(b.back());
    while (a.size() > db) {
        const uint32_t c = f.mul(a.back(), lead_inv);
        if (c != 0) {
            const size_t shift = a.size() - 1 - db;
            for (size_t i = 0; i <= db; ++i)
                a[shift + i] = f.sub(a[shift + i], f.mul(c, b[i]));
        }
        a.pop_back();
        fpoly_trim(a);
        if (a.empty()) break;
    }
    return a;
}

bool fpoly_irreducible(const Gf& f, const FPoly& poly) {
    const size_t deg = poly.size() - 1;
    if (deg == 1) return true;
    const uint64_t q = f.order();
    for (size_t d = 1; d <= deg / 2; ++d) {
        uint64_t count = 1;
        for (size_t i = 0; i < d; ++i) count *= q;
        FPoly g(d + 1, 0);
        g[d] = 1;
        for (uint64_t idx = 0; idx < count; ++idx) {
            uint64_t v = idx;
            for (size_t i = 0; i < d; ++i) {
                g[i] = static_cast<uint32_t>(v % q);
                v /= q;
            }
            FPoly rem = fpoly_mod(f, poly, g);
            if (rem.empty()) return false;
        }
    }
    return true;
}

// lexicographically smallest (low-degree-first) monic irreducible of degree m
FPoly smallest_irreducible_over(const Gf& f, int64_t m) {
    const uint64_t q = f.order();
    FPoly poly(static_cast<size_t>(m + 1), 0);
    poly[static_cast<size_t>(m)] = 1;
    if (m == 1) return poly;
    uint64_t count = 1;
    for (int64_t i = 0; i < m; ++i) count *= q;
    for (uint64_t idx = 0; idx < count; ++idx) {
        uint64_t v = idx;
        for (int64_t i = m; i-- > 0;) {
            poly[static_cast<size_t>(i)] = static_cast<uint32_t>(v % q);
            v /= q;
        }
        if (fpoly_irreducible(f, poly)) return poly;
    }
    throw std::logic_error("no irreducible polynomial found over base field");
}

// GF(q^m) as polynomials over a base Gf modulo a fixed irreducible.
// Elements are coefficient vectors of length m (base-field codes).
class ExtField {
  public:
    using Elem = std::vector<uint32_t>;

    ExtField(FieldPtr base, int64_t m)
        : base_(std::move(base)), m_(m), modulus_(smallest_irreducible_over(*base_, m)) {}

    int64_t degree() const { return m_; }
    const FieldPtr& base() const { return base_; }

    Elem zero() const { return Elem(static_cast<size_t>(m_), 0); }
    Elem one() const {
        Elem e = zero();
        e[0] = 1;
        return e;
    }
    /// basis power y^j for j < m
    Elem basis_power(int64_t j) const {
        Elem e = zero();
        e[static_cast<size_t>(j)] = 1;
        return e;
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem r = a;
        for (size_t i = 0; i < r.size(); ++i) r[i] = base_->add(r[i], b[i]);
        return r;
    }

    Elem mul(const Elem& a, const Elem& b) const {
        FPoly prod(static_cast<size_t>(2 * m_ - 1), 0);
        for (int64_t i = 0; i < m_; ++i) {
            const uint32_t ai = a[static_cast<size_t>(i)];
            if (ai == 0) continue;
            for (int64_t j = 0; j < m_; ++j)
                prod[static_cast<size_t>(i + j)] = base_->add(
                    prod[static_cast<size_t>(i + j)], base_->mul(ai, b[static_cast<size_t>(j)]));
        }
        FPoly rem = fpoly_mod(*base_, prod, modulus_);
        rem.resize(static_cast<size_t>(m_), 0);
        return rem;
    }

    Elem pow(Elem a, uint64_t n) const {
        Elem r = one();
        while (n) {
            if (n & 1) r = mul(r, a);
            a = mul(a, a);
            n >>= 1;
        }
        return r;
    }

    Elem scale(uint32_t c, const Elem& a) const {  // c in the base field
        Elem r = a;
        for (auto& x : r) x = base_->mul(c, x);
        return r;
    }

  private:
    FieldPtr base_;
    int64_t m_;
    FPoly modulus_;
};

}  // namespace

// ------------------------------------------------------------ Gabidulin

GabidulinCode::GabidulinCode(FieldPtr base, int64_t rows, int64_t cols, int64_t dist)
    : base_(std::move(base)), rows_(rows), cols_(cols), dist_(dist) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("gabidulin: empty matrix shape");
    if (dist < 1 || dist > std::min(rows, cols))
        throw InvalidDistance("gabidulin: need 1 <= dist <= min(rows, cols)");
    m_ = std::max(rows_, cols_);
    nn_ = std::min(rows_, cols_);
    n_coeffs_ = nn_ - dist_ + 1;
    k_exp_ = m_ * n_coeffs_;

    ExtField ext(base_, m_);
    // evaluation points: y^0, ..., y^{nn-1}; precompute their q^i powers
    const uint64_t q = base_->order();
    frob_pow_.assign(static_cast<size_t>(n_coeffs_), {});
    std::vector<ExtField::Elem> pts;
    for (int64_t j = 0; j < nn_; ++j) pts.push_back(ext.basis_power(j));
    for (int64_t i = 0; i < n_coeffs_; ++i) {
        frob_pow_[static_cast<size_t>(i)].reserve(static_cast<size_t>(nn_));
        for (int64_t j = 0; j < nn_; ++j) {
            frob_pow_[static_cast<size_t>(i)].push_back(pts[static_cast<size_t>(j)]);
            pts[static_cast<size_t>(j)] = ext.pow(pts[static_cast<size_t>(j)], q);
        }
    }
}

BigNat GabidulinCode::size() const { return big_pow(BigNat(base_->order()), k_exp_); }

Matrix GabidulinCode::codeword(uint64_t index) const {
    const uint64_t q = base_->order();
    ExtField ext(base_, m_);
    // coefficients c_0..c_{n_coeffs-1} over GF(q^m), base-q digits of the
    // index, c_0 from the least significant digits
    std::vector<ExtField::Elem> coeffs;
    uint64_t v = index;
    for (int64_t i = 0; i < n_coeffs_; ++i) {
        ExtField::Elem c = ext.zero();
        for (int64_t d = 0; d < m_; ++d) {
            c[static_cast<size_t>(d)] = static_cast<uint32_t>(v % q);
            v /= q;
        }
        coeffs.push_back(std::move(c));
    }
    if (v != 0) throw std::out_of_range("gabidulin: codeword index out of range");
    // evaluate the linearized polynomial at every point; columns of an
    // m x nn matrix over the base field
    Matrix tall(base_, m_, nn_);
    for (int64_t j = 0; j < nn_; ++j) {
        ExtField::Elem val = ext.zero();
        for (int64_t i = 0; i < n_coeffs_; ++i)
            val = ext.add(val, ext.mul(coeffs[static_cast<size_t>(i)],
                                       frob_pow_[static_cast<size_t>(i)][static_cast<size_t>(j)]));
        for (int64_t d = 0; d < m_; ++d) tall.set(d, j, val[static_cast<size_t>(d)]);
    }
    return rows_ >= cols_ ? tall : tall.transposed();
}

// ---------------------------------------------------------- covering code

void CoveringCodeParams::validate() const {
    if (!field) throw ParamViolation("covering code: field not set");
    if (alpha < 2) throw ParamViolation("covering code: alpha must be >= 2");
    if (delta < 1) throw ParamViolation("covering code: delta must be >= 1");
    if (delta > k) throw ParamViolation("covering code: delta must be <= k");
    if (k + delta > n) throw ParamViolation("covering code: need k + delta <= n");
}

int64_t CoveringCode::size() const {
    int64_t s = 0;
    for (const auto& [sub, mult] : codewords) s += mult;
    return s;
}

bool CoveringCode::covering_property_holds() const {
    std::vector<const Subspace*> expanded;
    for (const auto& [sub, mult] : codewords)
        for (int64_t i = 0; i < mult; ++i) expanded.push_back(&sub);
    if (static_cast<int64_t>(expanded.size()) < params.alpha) return true;
    bool ok = true;
    for_each_combination(
        static_cast<int64_t>(expanded.size()), params.alpha,
        [&](std::span<const int64_t> pick) {
            Subspace s = *expanded[static_cast<size_t>(pick[0])];
            for (size_t i = 1; i < pick.size(); ++i)
                s = s.sum(*expanded[static_cast<size_t>(pick[i])]);
            if (s.dim() < params.k + params.delta) {
                ok = false;
                return false;
            }
            return true;
        });
    return ok;
}

Subspace lift(const Matrix& a) {
    const int64_t k = a.rows();
    Matrix g(a.field(), k, k + a.cols());
    for (int64_t i = 0; i < k; ++i) {
        g.set(i, i, 1);
        for (int64_t j = 0; j < a.cols(); ++j) g.set(i, k + j, a.at(i, j));
    }
    return Subspace::from_rows(g);
}

void mrd_dual_code_for_each(const CoveringCodeParams& p,
                            const std::function<bool(const Subspace&, int64_t)>& fn) {
    p.validate();
    const int64_t m = p.n - p.k;
    GabidulinCode mrd(p.field, m, p.n - m, p.delta);
    const BigNat total = mrd.size();
    if (total > BigNat(UINT64_MAX))
        throw SizeGuardExceeded("dual-lifted-MRD code too large to enumerate");
    const uint64_t count = total.convert_to<uint64_t>();
    for (uint64_t idx = 0; idx < count; ++idx) {
        const Subspace dual = lift(mrd.codeword(idx)).dual();
        if (!fn(dual, p.alpha - 1)) return;
    }
}

CoveringCode covering_code_mrd_dual(const CoveringCodeParams& p, uint64_t materialize_cap) {
    p.validate();
    const BigNat size = BigNat(p.alpha - 1) *
                        big_pow(BigNat(p.field->order()),
                                std::max(p.k, p.n - p.k) * (std::min(p.k, p.n - p.k) - p.delta + 1));
    if (size > materialize_cap)
        throw SizeGuardExceeded("dual-lifted-MRD code of size " + size.str() +
                                " exceeds the materialization cap; stream it instead");
    CoveringCode code;
    code.params = p;
    mrd_dual_code_for_each(p, [&](const Subspace& s, int64_t mult) {
        code.codewords.emplace_back(s, mult);
        return true;
    });
    std::sort(code.codewords.begin(), code.codewords.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return code;
}

NetworkSolution covering_to_solution(const NetworkParams& params, const FieldPtr& field,
                                     int64_t t, const CoveringCode& code) {
    params.validate();
    if (t < 1) throw ParamViolation("covering_to_solution: t must be >= 1");
    const int64_t n = params.h * t;
    const int64_t k = params.ell * t;
    const int64_t delta = (params.h - params.ell - params.eps) * t;
    const auto& cp = code.params;
    if (cp.n != n || cp.k != k || cp.delta != delta || cp.alpha != params.alpha ||
        !cp.field->same_field(*field))
        throw ParamViolation("covering_to_solution: code parameters do not match the network");
    if (code.size() < params.r)
        throw NotEnoughCodewords("covering code has " + std::to_string(code.size()) +
                                 " codewords but the network needs " + std::to_string(params.r));
    NetworkSolution sol;
    sol.field = field;
    sol.t = t;
    for (const auto& [sub, mult] : code.codewords) {
        for (int64_t i = 0; i < mult; ++i) {
            if (static_cast<int64_t>(sol.coeffs.size()) == params.r) break;
            sol.coeffs.push_back(sub.basis());
        }
        if (static_cast<int64_t>(sol.coeffs.size()) == params.r) break;
    }
    return sol;
}

LllReport lll_feasible(const NetworkParams& params, int64_t q, int64_t t) {
    params.validate();
    if (q < 2 || t < 1) throw std::invalid_argument("lll_feasible: need q >= 2 and t >= 1");
    const double lq = std::log2(static_cast<double>(q));
    const int64_t h = params.h, a = params.alpha, l = params.ell, e = params.eps;
    LllReport rep;
    rep.p_log2 =
        std::log2(2.0 * kGamma) +
        static_cast<double>((h - a * l - e) * e * t * t + (h - a * l - 2 * e) * t - 1) * lq;
    rep.d_union = BigNat(a) * binomial(params.r - 1, a - 1);
    rep.d_exact = binomial(params.r, a) - binomial(params.r - a, a);
    rep.epd_log2 = std::log2(std::numbers::e) + rep.p_log2 + log2_bignat(rep.d_union);
    rep.feasible = rep.epd_log2 <= 0.0;
    return rep;
}

RandomizedResult randomized_solution(const NetworkParams& params, const FieldPtr& field,
                                     int64_t t, int64_t max_attempts, uint64_t rng_seed,
                                     const VerifyOptions& verify_opts) {
    params.validate();
    std::mt19937_64 rng(rng_seed);
    const uint64_t q = field->order();
    const uint64_t reject_from = UINT64_MAX - UINT64_MAX % q;
    auto draw = [&]() -> uint32_t {
        uint64_t v = rng();
        while (v >= reject_from) v = rng();
        return static_cast<uint32_t>(v % q);
    };
    RandomizedResult res;
    for (int64_t attempt = 1; attempt <= max_attempts; ++attempt) {
        NetworkSolution sol;
        sol.field = field;
        sol.t = t;
        for (int64_t i = 0; i < params.r; ++i) {
            Matrix a(field, params.ell * t, params.h * t);
            for (auto& v : a.data()) v = draw();
            sol.coeffs.push_back(std::move(a));
        }
        if (verify_solution(params, sol, verify_opts).valid) {
            res.solution = std::move(sol);
            res.attempts = attempt;
            return res;
        }
    }
    res.attempts = max_attempts;
    return res;
}

}  // namespace gcn
