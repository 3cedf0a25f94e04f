#include "gcn/network.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <set>
#include <thread>

namespace gcn {

void NetworkParams::validate() const {
    if (alpha < 2) throw std::invalid_argument("network params: alpha must be >= 2");
    if (ell < 1) throw std::invalid_argument("network params: ell must be >= 1");
    if (h < 1) throw std::invalid_argument("network params: h must be >= 1");
    if (eps < 0) throw std::invalid_argument("network params: eps must be >= 0");
    if (r < alpha) throw std::invalid_argument("network params: r must be >= alpha");
}

const char* to_string(SolvabilityClass c) {
    switch (c) {
        case SolvabilityClass::TriviallySolvable: return "trivially-solvable";
        case SolvabilityClass::NonTrivial: return "non-trivial";
        case SolvabilityClass::Unsolvable: return "unsolvable";
    }
    return "?";
}

SolvabilityClass classify(const NetworkParams& params) {
    params.validate();
    if (params.h <= params.ell + params.eps) return SolvabilityClass::TriviallySolvable;
    if (params.h > params.alpha * params.ell + params.eps) return SolvabilityClass::Unsolvable;
    return SolvabilityClass::NonTrivial;
}

void NetworkSolution::check_shapes(const NetworkParams& params) const {
    if (static_cast<int64_t>(coeffs.size()) != params.r)
        throw std::invalid_argument("solution: expected one coding matrix per middle node");
    for (const Matrix& a : coeffs) {
        if (a.rows() != params.ell * t || a.cols() != params.h * t)
            throw std::invalid_argument("solution: coding matrix shape mismatch");
        if (!a.field()->same_field(*field))
            throw FieldMismatch("solution: coding matrix field mismatch");
    }
}

bool for_each_combination(int64_t n, int64_t k,
                          const std::function<bool(std::span<const int64_t>)>& fn) {
    if (k < 0 || k > n) return true;
    std::vector<int64_t> c(static_cast<size_t>(k));
    for (int64_t i = 0; i < k; ++i) c[static_cast<size_t>(i)] = i;
    while (true) {
        if (!fn(c)) return false;
        // advance to the next combination in lex order
        int64_t i = k - 1;
        while (i >= 0 && c[static_cast<size_t>(i)] == n - k + i) --i;
        if (i < 0) return true;
        ++c[static_cast<size_t>(i)];
        for (int64_t j = i + 1; j < k; ++j)
            c[static_cast<size_t>(j)] = c[static_cast<size_t>(j - 1)] + 1;
    }
}

std::vector<int64_t> combination_unrank(int64_t n, int64_t k, uint64_t index) {
    std::vector<int64_t> c;
    c.reserve(static_cast<size_t>(k));
    BigNat rem = index;
    int64_t next = 0;
    for (int64_t slot = 0; slot < k; ++slot) {
        for (int64_t v = next; v <= n - (k - slot); ++v) {
            const BigNat block = binomial(n - v - 1, k - slot - 1);
            if (rem < block) {
                c.push_back(v);
                next = v + 1;
                break;
            }
            rem -= block;
        }
    }
    return c;
}

namespace {

int64_t required_rank(const NetworkParams& params, int64_t t) {
    return std::max<int64_t>(0, (params.h - params.eps) * t);
}

bool subset_meets_rank(const NetworkParams& params, const NetworkSolution& sol,
                       std::span<const int64_t> subset) {
    std::vector<Matrix> blocks;
    blocks.reserve(subset.size());
    for (int64_t i : subset) blocks.push_back(sol.coeffs[static_cast<size_t>(i)]);
    return Matrix::vstack(blocks).rank() >= required_rank(params, sol.t);
}

uint64_t guarded_receiver_count(const NetworkParams& params, uint64_t guard) {
    const BigNat n = params.receiver_count();
    if (n > guard)
        throw TooManySubsets("receiver count " + n.str() + " exceeds the subset guard of " +
                             std::to_string(guard));
    return n.convert_to<uint64_t>();
}

}  // namespace

VerifyResult verify_solution(const NetworkParams& params, const NetworkSolution& sol,
                             const VerifyOptions& opts) {
    params.validate();
    sol.check_shapes(params);
    const uint64_t total = guarded_receiver_count(params, opts.subset_guard);

    VerifyResult res;
    res.subsets_checked = total;
    const int threads = std::max(1, opts.threads);
    if (threads == 1 || total < 4096) {
        uint64_t index = 0;
        std::optional<std::vector<int64_t>> fail;
        for_each_combination(params.r, params.alpha, [&](std::span<const int64_t> subset) {
            if (!subset_meets_rank(params, sol, subset)) {
                fail.emplace(subset.begin(), subset.end());
                res.subsets_checked = index + 1;
                return false;
            }
            ++index;
            return true;
        });
        res.valid = !fail.has_value();
        res.first_failure = std::move(fail);
        return res;
    }

    // Partition the lexicographic index range; first_failure is the global
    // minimum failing index, independent of scheduling.
    std::atomic<uint64_t> first_fail{UINT64_MAX};
    std::vector<std::thread> pool;
    const uint64_t chunk = (total + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        const uint64_t lo = chunk * static_cast<uint64_t>(w);
        const uint64_t hi = std::min(total, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            std::vector<int64_t> subset = combination_unrank(params.r, params.alpha, lo);
            for (uint64_t idx = lo; idx < hi; ++idx) {
                if ((idx & 1023) == 0 && first_fail.load(std::memory_order_relaxed) < lo) return;
                if (!subset_meets_rank(params, sol, subset)) {
                    uint64_t cur = first_fail.load(std::memory_order_relaxed);
                    while (idx < cur &&
                           !first_fail.compare_exchange_weak(cur, idx, std::memory_order_relaxed)) {
                    }
                    return;
                }
                // next combination in lex order
                int64_t i = params.alpha - 1;
                while (i >= 0 && subset[static_cast<size_t>(i)] == params.r - params.alpha + i) --i;
                if (i < 0) break;
                ++subset[static_cast<size_t>(i)];
                for (int64_t j = i + 1; j < params.alpha; ++j)
                    subset[static_cast<size_t>(j)] = subset[static_cast<size_t>(j - 1)] + 1;
            }
        });
    }
    for (std::thread& th : pool) th.join();
    if (first_fail.load() != UINT64_MAX) {
        res.valid = false;
        res.first_failure = combination_unrank(params.r, params.alpha, first_fail.load());
        res.subsets_checked = first_fail.load() + 1;
    } else {
        res.valid = true;
    }
    return res;
}

namespace {

// B completion without the rank-condition check; fills at most eps*t rows.
Matrix complete_links_lenient(const NetworkParams& params, const NetworkSolution& sol,
                              std::span<const int64_t> subset, int64_t* stack_rank_out) {
    const int64_t ht = params.h * sol.t;
    const int64_t bt = params.eps * sol.t;
    std::vector<Matrix> blocks;
    for (int64_t i : subset) blocks.push_back(sol.coeffs[static_cast<size_t>(i)]);
    const Matrix stack = Matrix::vstack(blocks);
    MatrixEchelon e = stack.rref();
    if (stack_rank_out) *stack_rank_out = e.rank;

    Matrix b(sol.field, bt, ht);
    int64_t used = 0;
    int64_t rank = e.rank;
    Matrix work = e.reduced.row_slice(0, e.rank);
    for (int64_t j = 0; j < ht && rank < ht && used < bt; ++j) {
        Matrix cand(sol.field, work.rows() + 1, ht);
        std::copy(work.data().begin(), work.data().end(), cand.data().begin());
        cand.set(work.rows(), j, 1);
        MatrixEchelon ce = cand.rref();
        if (ce.rank > rank) {
            b.set(used, j, 1);
            ++used;
            rank = ce.rank;
            work = ce.reduced.row_slice(0, ce.rank);
        }
    }
    return b;
}

}  // namespace

Matrix complete_direct_links(const NetworkParams& params, const NetworkSolution& sol,
                             std::span<const int64_t> subset) {
    params.validate();
    sol.check_shapes(params);
    int64_t stack_rank = 0;
    Matrix b = complete_links_lenient(params, sol, subset, &stack_rank);
    if (stack_rank < required_rank(params, sol.t))
        throw RankConditionUnmet("subset violates the receiver rank condition");
    return b;
}

SimulationReport simulate(const NetworkParams& params, const NetworkSolution& sol,
                          std::span<const uint32_t> message, uint64_t rng_seed,
                          uint64_t max_receivers) {
    params.validate();
    sol.check_shapes(params);
    if (static_cast<int64_t>(message.size()) != params.h * sol.t)
        throw std::invalid_argument("simulate: message length must be h*t");

    SimulationReport rep;
    std::vector<std::vector<int64_t>> subsets;
    if (params.receiver_count() <= max_receivers) {
        for_each_combination(params.r, params.alpha, [&](std::span<const int64_t> s) {
            subsets.emplace_back(s.begin(), s.end());
            return true;
        });
    } else {
        rep.sampled = true;
        std::mt19937_64 rng(rng_seed);
        std::set<std::vector<int64_t>> seen;
        std::uniform_int_distribution<int64_t> pick(0, params.r - 1);
        while (seen.size() < max_receivers) {
            std::set<int64_t> s;
            while (static_cast<int64_t>(s.size()) < params.alpha) s.insert(pick(rng));
            seen.emplace(s.begin(), s.end());
        }
        subsets.assign(seen.begin(), seen.end());
    }

    rep.all_ok = true;
    for (const auto& subset : subsets) {
        ReceiverReport rr;
        rr.subset = subset;
        const Matrix b = complete_links_lenient(params, sol, subset, nullptr);
        std::vector<Matrix> blocks;
        for (int64_t i : subset) blocks.push_back(sol.coeffs[static_cast<size_t>(i)]);
        blocks.push_back(b);
        const Matrix full = Matrix::vstack(blocks);
        rr.received = full.apply(message);
        const auto dec = solve_linear(full, rr.received);
        if (!dec.has_value())
            throw std::logic_error("simulate: receiver system inconsistent with its own output");
        rr.unique = dec->unique;
        rr.decoded = dec->x;
        rr.ok = rr.unique && std::equal(rr.decoded.begin(), rr.decoded.end(), message.begin());
        rep.all_ok = rep.all_ok && rr.ok;
        rep.receivers.push_back(std::move(rr));
    }
    return rep;
}

}  // namespace gcn
