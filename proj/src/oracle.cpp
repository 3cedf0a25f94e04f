#include <algorithm>
#include <cstring>

#include "gcn/codes.hpp"

// Exact maximum covering-code search. The covering condition "every alpha
// codewords (with multiplicity) span dimension >= k+delta" is equivalent to:
// every (k+delta-1)-dimensional subspace W contains at most alpha-1 codewords,
// counting multiplicity. (alpha codewords spanning less all fit inside some
// such W, and conversely.) The search keeps one capacity counter per W.
//
// A counting bound follows for free: each codeword lies in exactly
// [n-k, delta-1]_q of the W's, so the code size never exceeds
// floor((alpha-1) * [n, k+delta-1]_q / [n-k, delta-1]_q); reaching that value
// proves optimality and stops the search.

namespace gcn {

namespace {

struct Incidence {
    std::vector<Subspace> vertices;        // G(n,k) in canonical order
    std::vector<std::vector<int32_t>> vw;  // vertex -> indices of W's containing it
    int64_t per = 0;                       // W's per vertex
    int64_t w_count = 0;
};

Incidence build_incidence(const CoveringCodeParams& p) {
    Incidence inc;
    inc.vertices = grassmannian(p.field, p.n, p.k);
    const int64_t wd = p.k + p.delta - 1;
    const std::vector<Subspace> ws = grassmannian(p.field, p.n, wd);
    inc.w_count = static_cast<int64_t>(ws.size());
    inc.vw.resize(inc.vertices.size());
    for (size_t v = 0; v < inc.vertices.size(); ++v) {
        for (size_t w = 0; w < ws.size(); ++w)
            if (inc.vertices[v].sum(ws[w]).dim() == wd) inc.vw[v].push_back(static_cast<int32_t>(w));
    }
    inc.per = static_cast<int64_t>(inc.vw.empty() ? 0 : inc.vw[0].size());
    return inc;
}

// ---- alpha == 2: maximum clique with greedy-coloring bound ----
// Vertices are adjacent iff no W contains both, i.e. dim(U+V) >= k+delta.

class CliqueSolver {
  public:
    CliqueSolver(const Incidence& inc, int64_t stop_cap)
        : n_(static_cast<int>(inc.vertices.size())),
          blocks_(static_cast<size_t>((n_ + 63) / 64)),
          adj_(static_cast<size_t>(n_) * blocks_, 0),
          stop_cap_(stop_cap) {
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v) {
                const auto& a = inc.vw[static_cast<size_t>(u)];
                const auto& b = inc.vw[static_cast<size_t>(v)];
                bool share = false;
                size_t i = 0, j = 0;
                while (i < a.size() && j < b.size()) {
                    if (a[i] == b[j]) {
                        share = true;
                        break;
                    }
                    a[i] < b[j] ? ++i : ++j;
                }
                if (!share) {  // no common W: the pair spans >= k+delta
                    adj(u)[static_cast<size_t>(v) / 64] |= uint64_t(1) << (v % 64);
                    adj(v)[static_cast<size_t>(u) / 64] |= uint64_t(1) << (u % 64);
                }
            }
    }

    void solve() {
        std::vector<int> all(static_cast<size_t>(n_));
        for (int i = 0; i < n_; ++i) all[static_cast<size_t>(i)] = i;
        std::vector<int> cur;
        expand(cur, all);
    }

    const std::vector<int>& best() const { return best_; }
    uint64_t nodes() const { return nodes_; }

  private:
    uint64_t* adj(int v) { return adj_.data() + static_cast<size_t>(v) * blocks_; }
    const uint64_t* adj(int v) const { return adj_.data() + static_cast<size_t>(v) * blocks_; }
    bool adjacent(int u, int v) const {
        return adj(u)[static_cast<size_t>(v) / 64] >> (v % 64) & 1;
    }

    // cand is sorted by vertex index; returns true when the search may stop.
    bool expand(std::vector<int>& cur, const std::vector<int>& cand) {
        ++nodes_;
        if (cand.empty()) {
            if (cur.size() > best_.size()) best_ = cur;
            return static_cast<int64_t>(best_.size()) >= stop_cap_;
        }
        // Greedy coloring into independent classes: a clique takes at most one
        // vertex per class, so class number bounds the attainable growth.
        std::vector<std::vector<uint64_t>> class_nbr;  // union of members' adjacency
        std::vector<int> ordered;                      // by class, then index
        std::vector<int> color_of(cand.size(), 0);
        std::vector<std::vector<int>> classes;
        for (const int v : cand) {
            size_t c = 0;
            while (c < classes.size() &&
                   (class_nbr[c][static_cast<size_t>(v) / 64] >> (v % 64) & 1))
                ++c;
            if (c == classes.size()) {
                classes.emplace_back();
                class_nbr.emplace_back(blocks_, 0);
            }
            classes[c].push_back(v);
            for (size_t b = 0; b < blocks_; ++b) class_nbr[c][b] |= adj(v)[b];
        }
        for (size_t c = 0; c < classes.size(); ++c)
            for (int v : classes[c]) {
                color_of[ordered.size()] = static_cast<int>(c) + 1;
                ordered.push_back(v);
            }
        // branch from the highest color down; on prune all remaining colors
        // are no larger, so the whole call stops
        std::vector<uint64_t> remaining(blocks_, 0);
        for (const int v : cand)
            remaining[static_cast<size_t>(v) / 64] |= uint64_t(1) << (v % 64);
        for (size_t i = ordered.size(); i-- > 0;) {
            if (static_cast<int64_t>(cur.size()) + color_of[i] <=
                static_cast<int64_t>(best_.size()))
                return false;
            const int v = ordered[i];
            remaining[static_cast<size_t>(v) / 64] &= ~(uint64_t(1) << (v % 64));
            std::vector<int> next;
            for (const int u : cand)
                if ((remaining[static_cast<size_t>(u) / 64] >> (u % 64) & 1) && adjacent(v, u))
                    next.push_back(u);
            cur.push_back(v);
            const bool stop = expand(cur, next);
            cur.pop_back();
            if (stop) return true;
        }
        return false;
    }

    int n_;
    size_t blocks_;
    std::vector<uint64_t> adj_;
    std::vector<int> best_;
    int64_t stop_cap_;
    uint64_t nodes_ = 0;
};

// ---- alpha >= 3: multiset depth-first search over capacities ----

class CapacityDfs {
  public:
    CapacityDfs(const Incidence& inc, int64_t max_mult, int64_t cap_per_w, int64_t stop_cap)
        : inc_(inc),
          max_mult_(max_mult),
          stop_cap_(stop_cap),
          wcap_(static_cast<size_t>(inc.w_count), static_cast<int32_t>(cap_per_w)),
          total_cap_(inc.w_count * cap_per_w),
          mult_(inc.vertices.size(), 0),
          best_mult_(inc.vertices.size(), 0) {}

    void solve() { dfs(0); }

    int64_t best() const { return best_; }
    const std::vector<int16_t>& best_mult() const { return best_mult_; }
    uint64_t nodes() const { return nodes_; }

  private:
    bool dfs(size_t idx) {
        ++nodes_;
        if (cur_ > best_) {
            best_ = cur_;
            best_mult_ = mult_;
        }
        if (best_ >= stop_cap_) return true;
        if (idx == inc_.vertices.size()) return false;
        if (cur_ + total_cap_ / inc_.per <= best_) return false;
        const auto& ws = inc_.vw[idx];
        int64_t mc = max_mult_;
        for (int32_t w : ws) mc = std::min<int64_t>(mc, wcap_[static_cast<size_t>(w)]);
        for (int64_t m = mc; m >= 0; --m) {
            // a maximum code can be assumed to contain the canonical first
            // subspace: the general linear group acts transitively on G(n,k)
            // and preserves the covering property
            if (idx == 0 && m == 0) continue;
            if (m > 0) {
                for (int32_t w : ws) wcap_[static_cast<size_t>(w)] -= static_cast<int32_t>(m);
                total_cap_ -= m * inc_.per;
                cur_ += m;
                mult_[idx] = static_cast<int16_t>(m);
            }
            const bool stop = dfs(idx + 1);
            if (m > 0) {
                for (int32_t w : ws) wcap_[static_cast<size_t>(w)] += static_cast<int32_t>(m);
                total_cap_ += m * inc_.per;
                cur_ -= m;
                mult_[idx] = 0;
            }
            if (stop) return true;
        }
        return false;
    }

    const Incidence& inc_;
    int64_t max_mult_;
    int64_t stop_cap_;
    std::vector<int32_t> wcap_;
    int64_t total_cap_;
    std::vector<int16_t> mult_;
    std::vector<int16_t> best_mult_;
    int64_t best_ = -1;
    int64_t cur_ = 0;
    uint64_t nodes_ = 0;
};

}  // namespace

OracleResult oracle_max_code(const CoveringCodeParams& p, const OracleOptions& opts) {
    p.validate();
    const int64_t q = p.field->order();
    const BigNat vertex_count = gaussian_binomial(p.n, p.k, q);
    if (vertex_count > opts.grassmannian_cap)
        throw TooLarge("G(" + std::to_string(p.n) + "," + std::to_string(p.k) + ") over GF(" +
                       std::to_string(q) + ") has " + vertex_count.str() +
                       " subspaces, above the cap of " + std::to_string(opts.grassmannian_cap));

    const Incidence inc = build_incidence(p);
    const BigNat cap_big =
        BigNat(p.alpha - 1) * gaussian_binomial(p.n, p.k + p.delta - 1, q) /
        gaussian_binomial(p.n - p.k, p.delta - 1, q);
    const int64_t stop_cap = cap_big.convert_to<int64_t>();

    OracleResult res;
    res.witness.params = p;
    std::vector<std::pair<Subspace, int64_t>> picked;
    if (p.alpha == 2 && opts.multiset_allowed) {
        // repeats never help at alpha = 2 (delta >= 1), so this is a pure
        // maximum-clique instance
        CliqueSolver solver(inc, stop_cap);
        solver.solve();
        res.nodes_explored = solver.nodes();
        for (int v : solver.best())
            picked.emplace_back(inc.vertices[static_cast<size_t>(v)], 1);
    } else {
        const int64_t max_mult = opts.multiset_allowed ? p.alpha - 1 : 1;
        CapacityDfs solver(inc, max_mult, p.alpha - 1, stop_cap);
        solver.solve();
        res.nodes_explored = solver.nodes();
        for (size_t v = 0; v < inc.vertices.size(); ++v)
            if (solver.best_mult()[v] > 0)
                picked.emplace_back(inc.vertices[v], solver.best_mult()[v]);
    }
    std::sort(picked.begin(), picked.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    res.witness.codewords = std::move(picked);
    res.size = res.witness.size();
    return res;
}

}  // namespace gcn
