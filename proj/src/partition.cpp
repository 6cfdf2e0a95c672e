#include "ccf/partition.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ccf {

namespace {

void canonicalize(std::vector<Block>& blocks) {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const Block& a, const Block& b) { return a.front() < b.front(); });
}

std::string block_str(const Block& b) {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
    os << "}";
    return os.str();
}

// Union-find over 0..m-1.
struct Dsu {
    std::vector<int> p;
    explicit Dsu(int m) : p(m) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

std::vector<Block> dsu_blocks(Dsu& d, int n) {
    std::vector<Block> out;
    std::vector<int> slot(n, -1);
    for (int i = 0; i < n; ++i) {
        int r = d.find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[slot[r]].push_back(i + 1);
    }
    return out;
}

bool crossing_labels(const std::vector<int>& lab) {
    int n = static_cast<int>(lab.size());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (lab[b] == lab[a]) continue;
            for (int c = b + 1; c < n; ++c) {
                if (lab[c] != lab[a]) continue;
                for (int d = c + 1; d < n; ++d)
                    if (lab[d] == lab[b]) return true;
            }
        }
    return false;
}

// Generic NC enumeration over [1..n] restricted by an element filter for the block containing a.
void nc_rec(std::vector<std::pair<int, int>>& pending, std::vector<Block>& cur,
            const std::vector<int>* colors, const BlocksFn& f) {
    if (pending.empty()) {
        f(cur);
        return;
    }
    auto [a, b] = pending.back();
    pending.pop_back();
    if (a > b) {
        nc_rec(pending, cur, colors, f);
        pending.emplace_back(a, b);
        return;
    }
    std::vector<int> cand;
    for (int x = a + 1; x <= b; ++x)
        if (!colors || (*colors)[x - 1] == (*colors)[a - 1]) cand.push_back(x);
    int m = static_cast<int>(cand.size());
    size_t saved = pending.size();
    for (unsigned long mask = 0; mask < (1UL << m); ++mask) {
        Block blk{a};
        for (int j = 0; j < m; ++j)
            if (mask >> j & 1UL) blk.push_back(cand[j]);
        // Gaps pushed right-to-left so that blocks are produced in order of their minima.
        pending.emplace_back(blk.back() + 1, b);
        for (size_t j = blk.size() - 1; j > 0; --j) pending.emplace_back(blk[j - 1] + 1, blk[j] - 1);
        cur.push_back(std::move(blk));
        nc_rec(pending, cur, colors, f);
        cur.pop_back();
        pending.resize(saved);
    }
    pending.emplace_back(a, b);
}

void set_rec(int i, int n, std::vector<Block>& cur, const BlocksFn& f) {
    if (i > n) {
        f(cur);
        return;
    }
    for (size_t k = 0; k < cur.size(); ++k) {
        cur[k].push_back(i);
        set_rec(i + 1, n, cur, f);
        cur[k].pop_back();
    }
    cur.push_back({i});
    set_rec(i + 1, n, cur, f);
    cur.pop_back();
}

std::vector<Block> typeB_kreweras_raw(int n, const std::vector<Block>& blocks) {
    int m = 2 * n;
    std::vector<int> sigma(m), inv(m);
    for (const auto& b : blocks) {
        std::vector<int> pos;
        for (int x : b) pos.push_back(typeB_position(n, x));
        std::sort(pos.begin(), pos.end());
        for (size_t j = 0; j < pos.size(); ++j) sigma[pos[j]] = pos[(j + 1) % pos.size()];
    }
    for (int p = 0; p < m; ++p) inv[sigma[p]] = p;
    std::vector<bool> seen(m, false);
    std::vector<Block> out;
    for (int p = 0; p < m; ++p) {
        if (seen[p]) continue;
        Block cyc;
        for (int q = p; !seen[q]; q = inv[(q + 1) % m]) {
            seen[q] = true;
            cyc.push_back(typeB_element(n, q));
        }
        out.push_back(cyc);
    }
    return out;
}

}  // namespace

Partition::Partition(int n, std::vector<Block> blocks) : n_(n), blocks_(std::move(blocks)) {
    if (n < 1) throw std::invalid_argument("partition ground set must be non-empty");
    std::vector<int> seen(n + 1, 0);
    for (const auto& b : blocks_) {
        if (b.empty()) throw std::invalid_argument("empty block");
        for (int x : b) {
            if (x < 1 || x > n || seen[x]) throw std::invalid_argument("blocks do not partition [n]");
            seen[x] = 1;
        }
    }
    for (int i = 1; i <= n; ++i)
        if (!seen[i]) throw std::invalid_argument("blocks do not cover [n]");
    canonicalize(blocks_);
}

Partition Partition::discrete(int n) {
    std::vector<Block> b;
    for (int i = 1; i <= n; ++i) b.push_back({i});
    return Partition(n, b);
}

Partition Partition::full(int n) {
    Block b(n);
    std::iota(b.begin(), b.end(), 1);
    return Partition(n, {b});
}

std::vector<int> Partition::labels() const {
    std::vector<int> lab(n_);
    for (size_t k = 0; k < blocks_.size(); ++k)
        for (int x : blocks_[k]) lab[x - 1] = static_cast<int>(k);
    return lab;
}

int Partition::index_of(const Block& b) const {
    Block s = b;
    std::sort(s.begin(), s.end());
    for (size_t k = 0; k < blocks_.size(); ++k)
        if (blocks_[k] == s) return static_cast<int>(k);
    return -1;
}

std::string Partition::str() const {
    std::string s = "{";
    for (size_t k = 0; k < blocks_.size(); ++k) s += (k ? "," : "") + block_str(blocks_[k]);
    return s + "}";
}

std::vector<int> OrderedPartition::rank() const {
    std::vector<int> r(order.size());
    for (size_t k = 0; k < order.size(); ++k) r[order[k]] = static_cast<int>(k);
    return r;
}

std::string TypeBPartition::str() const {
    std::string s = "{";
    for (size_t k = 0; k < blocks.size(); ++k) s += (k ? "," : "") + block_str(blocks[k]);
    s += "}";
    if (zero_block) s += " zero=" + std::to_string(*zero_block);
    if (kreweras_block) s += " R=" + block_str(*kreweras_block);
    return s;
}

bool is_noncrossing(const Partition& p) { return !crossing_labels(p.labels()); }

bool is_interval(const Partition& p) {
    for (const auto& b : p.blocks())
        if (b.back() - b.front() + 1 != static_cast<int>(b.size())) return false;
    return true;
}

void for_each_set_partition(int n, const BlocksFn& f) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    std::vector<Block> cur;
    set_rec(1, n, cur, f);
}

void for_each_nc(int n, const BlocksFn& f) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    std::vector<std::pair<int, int>> pending{{1, n}};
    std::vector<Block> cur;
    nc_rec(pending, cur, nullptr, f);
}

void for_each_nc_colored(const std::vector<int>& colors, const BlocksFn& f) {
    int n = static_cast<int>(colors.size());
    if (n < 1) throw std::invalid_argument("n must be positive");
    std::vector<std::pair<int, int>> pending{{1, n}};
    std::vector<Block> cur;
    nc_rec(pending, cur, &colors, f);
}

void for_each_interval(int n, const BlocksFn& f) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    for (unsigned long cuts = 0; cuts < (1UL << (n - 1)); ++cuts) {
        std::vector<Block> cur{{1}};
        for (int i = 2; i <= n; ++i) {
            if (cuts >> (i - 2) & 1UL) cur.push_back({});
            cur.back().push_back(i);
        }
        f(cur);
    }
}

std::vector<Partition> enumerate(Kind kind, int n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    std::vector<Partition> out;
    auto push = [&](const std::vector<Block>& b) { out.emplace_back(n, b); };
    switch (kind) {
        case Kind::all: for_each_set_partition(n, push); break;
        case Kind::nc: for_each_nc(n, push); break;
        case Kind::interval: for_each_interval(n, push); break;
        default: throw std::invalid_argument("use enumerate_monotone / enumerate_typeB for this kind");
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> nesting_parent(const std::vector<Block>& blocks) {
    int m = static_cast<int>(blocks.size());
    std::vector<int> parent(m, -1);
    for (int w = 0; w < m; ++w) {
        int best = -1;
        for (int v = 0; v < m; ++v) {
            if (v == w) continue;
            if (blocks[v].front() < blocks[w].front() && blocks[w].back() < blocks[v].back()) {
                if (best < 0 || blocks[v].front() > blocks[best].front()) best = v;
            }
        }
        parent[w] = best;
    }
    return parent;
}

std::vector<int> nesting_parent(const Partition& p) { return nesting_parent(p.blocks()); }

std::pair<std::vector<Block>, std::vector<Block>> outer_inner(const Partition& p) {
    if (!is_noncrossing(p)) throw std::invalid_argument("outer_inner needs a non-crossing partition");
    auto parent = nesting_parent(p);
    std::pair<std::vector<Block>, std::vector<Block>> out;
    for (size_t k = 0; k < p.size(); ++k)
        (parent[k] < 0 ? out.first : out.second).push_back(p.blocks()[k]);
    return out;
}

bool is_monotone(const OrderedPartition& op) {
    auto parent = nesting_parent(op.base);
    auto r = op.rank();
    for (size_t w = 0; w < parent.size(); ++w) {
        // Every ancestor must precede; checking the immediate parent suffices by transitivity.
        if (parent[w] >= 0 && r[parent[w]] > r[w]) return false;
    }
    return true;
}

long monotone_hook_product(const std::vector<Block>& blocks) {
    auto parent = nesting_parent(blocks);
    std::vector<long> sub(blocks.size(), 1);
    // Children have larger minima than parents, so walking by decreasing minimum is post-order.
    std::vector<int> idx(blocks.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return blocks[a].front() > blocks[b].front(); });
    long prod = 1;
    for (int v : idx) {
        prod *= sub[v];
        if (parent[v] >= 0) sub[parent[v]] += sub[v];
    }
    return prod;
}

std::vector<OrderedPartition> enumerate_monotone(int n) {
    std::vector<OrderedPartition> out;
    for (auto& p : enumerate(Kind::nc, n)) {
        std::vector<int> ord(p.size());
        std::iota(ord.begin(), ord.end(), 0);
        do {
            OrderedPartition op{p, ord};
            if (is_monotone(op)) out.push_back(op);
        } while (std::next_permutation(ord.begin(), ord.end()));
    }
    return out;
}

Partition kreweras(const Partition& p) {
    if (!is_noncrossing(p)) throw std::invalid_argument("kreweras needs a non-crossing partition");
    int n = p.n();
    std::vector<int> perm(n), inv(n);
    for (const auto& b : p.blocks())
        for (size_t j = 0; j < b.size(); ++j) perm[b[j] - 1] = b[(j + 1) % b.size()] - 1;
    for (int i = 0; i < n; ++i) inv[perm[i]] = i;
    std::vector<bool> seen(n, false);
    std::vector<Block> out;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        Block cyc;
        for (int q = i; !seen[q]; q = inv[(q + 1) % n]) {
            seen[q] = true;
            cyc.push_back(q + 1);
        }
        out.push_back(cyc);
    }
    return Partition(n, out);
}

std::vector<Block> kreweras_gaps(const Partition& p) {
    int n = p.n();
    std::vector<Block> out;
    Partition k = kreweras(p);
    for (auto b : k.blocks()) {
        for (int& x : b) x = x % n + 1;
        std::sort(b.begin(), b.end());
        out.push_back(b);
    }
    std::sort(out.begin(), out.end(), [](const Block& a, const Block& b) { return a.front() < b.front(); });
    return out;
}

Partition rotate(const Partition& p, int k) {
    int n = p.n();
    std::vector<Block> out;
    for (auto b : p.blocks()) {
        for (int& x : b) x = ((x - 1 + k) % n + n) % n + 1;
        out.push_back(b);
    }
    return Partition(n, out);
}

Partition join(const Partition& a, const Partition& b) {
    if (a.n() != b.n()) throw std::invalid_argument("join: size mismatch");
    Dsu d(a.n());
    for (const auto* p : {&a, &b})
        for (const auto& blk : p->blocks())
            for (int x : blk) d.unite(blk.front() - 1, x - 1);
    return Partition(a.n(), dsu_blocks(d, a.n()));
}

Partition nc_join(const Partition& a, const Partition& b) {
    Partition j = join(a, b);
    for (;;) {
        auto lab = j.labels();
        int n = j.n();
        bool merged = false;
        Dsu d(n);
        for (int i = 0; i < n; ++i) d.unite(i, j.blocks()[lab[i]].front() - 1);
        for (int x = 0; x < n && !merged; ++x)
            for (int y = x + 1; y < n && !merged; ++y) {
                if (lab[y] == lab[x]) continue;
                for (int z = y + 1; z < n && !merged; ++z) {
                    if (lab[z] != lab[x]) continue;
                    for (int w = z + 1; w < n; ++w)
                        if (lab[w] == lab[y]) {
                            d.unite(x, y);
                            merged = true;
                            break;
                        }
                }
            }
        if (!merged) return j;
        j = Partition(n, dsu_blocks(d, n));
    }
}

Partition meet(const Partition& a, const Partition& b) {
    if (a.n() != b.n()) throw std::invalid_argument("meet: size mismatch");
    auto la = a.labels(), lb = b.labels();
    std::vector<Block> out;
    std::vector<std::pair<int, int>> keys;
    for (int i = 0; i < a.n(); ++i) {
        std::pair<int, int> key{la[i], lb[i]};
        auto it = std::find(keys.begin(), keys.end(), key);
        if (it == keys.end()) {
            keys.push_back(key);
            out.push_back({i + 1});
        } else {
            out[it - keys.begin()].push_back(i + 1);
        }
    }
    return Partition(a.n(), out);
}

bool refines(const Partition& a, const Partition& b) {
    if (a.n() != b.n()) throw std::invalid_argument("refines: size mismatch");
    auto lb = b.labels();
    for (const auto& blk : a.blocks())
        for (int x : blk)
            if (lb[x - 1] != lb[blk.front() - 1]) return false;
    return true;
}

std::vector<int> CyclicOrder::read(const Block& subset) const {
    int top = anchor.empty() ? n : *std::max_element(anchor.begin(), anchor.end());
    auto key = [&](int w) {
        bool wrap = kind == AnchorKind::block ? w > top : w >= top;
        return wrap ? w - n : w;
    };
    std::vector<int> out = subset;
    std::sort(out.begin(), out.end(), [&](int a, int b) { return key(a) < key(b); });
    return out;
}

CyclicOrder induced_order(const Partition& p, const Block& anchor, AnchorKind kind) {
    Block s = anchor;
    std::sort(s.begin(), s.end());
    bool ok = false;
    if (kind == AnchorKind::block) {
        ok = p.index_of(s) >= 0;
    } else {
        for (const auto& b : kreweras_gaps(p)) ok = ok || b == s;
    }
    if (!ok) throw std::invalid_argument("anchor is not a block");
    return CyclicOrder{p.n(), kind, s};
}

Word read_word(const Word& w, const Block& subset, const CyclicOrder& order) {
    if (static_cast<int>(w.size()) != order.n) throw std::invalid_argument("read_word: length mismatch");
    Word out;
    for (int x : order.read(subset)) out.push_back(w[x - 1]);
    return out;
}

Word restrict_word(const Word& w, const Block& subset) {
    Word out;
    out.reserve(subset.size());
    for (int x : subset) out.push_back(w[x - 1]);
    return out;
}

int typeB_position(int n, int x) { return x > 0 ? x - 1 : n - x - 1; }
int typeB_element(int n, int pos) { return pos < n ? pos + 1 : -(pos - n + 1); }

bool is_typeB_noncrossing(int n, const std::vector<Block>& blocks) {
    std::vector<int> lab(2 * n, -1);
    for (size_t k = 0; k < blocks.size(); ++k)
        for (int x : blocks[k]) {
            if (x == 0 || x < -n || x > n) return false;
            int p = typeB_position(n, x);
            if (lab[p] >= 0) return false;
            lab[p] = static_cast<int>(k);
        }
    for (int v : lab)
        if (v < 0) return false;
    for (const auto& b : blocks) {
        Block neg;
        for (int x : b) neg.push_back(-x);
        std::sort(neg.begin(), neg.end());
        bool found = false;
        for (auto c : blocks) {
            std::sort(c.begin(), c.end());
            found = found || c == neg;
        }
        if (!found) return false;
    }
    return !crossing_labels(lab);
}

TypeBPartition make_typeB(int n, std::vector<Block> blocks) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (!is_typeB_noncrossing(n, blocks)) throw std::invalid_argument("not a non-crossing type-B partition");
    auto by_pos = [n](int a, int b) { return typeB_position(n, a) < typeB_position(n, b); };
    for (auto& b : blocks) std::sort(b.begin(), b.end(), by_pos);
    std::sort(blocks.begin(), blocks.end(), [&](const Block& a, const Block& b) { return by_pos(a.front(), b.front()); });
    TypeBPartition tb{n, blocks, std::nullopt, std::nullopt};
    for (size_t k = 0; k < blocks.size(); ++k) {
        const auto& b = blocks[k];
        if (std::find(b.begin(), b.end(), -b.front()) != b.end()) tb.zero_block = static_cast<int>(k);
    }
    if (!tb.zero_block) {
        for (const auto& b : typeB_kreweras_raw(n, blocks)) {
            if (std::find(b.begin(), b.end(), -b.front()) == b.end()) continue;
            Block r;
            for (int x : b)
                if (x > 0) r.push_back(x % n + 1);
            std::sort(r.begin(), r.end());
            tb.kreweras_block = r;
        }
        if (!tb.kreweras_block) throw std::logic_error("type-B Kreweras complement has no zero block");
    }
    return tb;
}

Partition abs_map(const TypeBPartition& tb) {
    std::vector<Block> out;
    std::set<Block> seen;
    for (const auto& b : tb.blocks) {
        std::set<int> a;
        for (int x : b) a.insert(x < 0 ? -x : x);
        Block ab(a.begin(), a.end());
        if (seen.insert(ab).second) out.push_back(ab);
    }
    return Partition(tb.n, out);
}

TypeBPartition typeB_kreweras(const TypeBPartition& tb) { return make_typeB(tb.n, typeB_kreweras_raw(tb.n, tb.blocks)); }

TypeBPartition join_with_intervals(const TypeBPartition& sigma, const Partition& intervals) {
    int n = sigma.n;
    if (intervals.n() != n) throw std::invalid_argument("join_with_intervals: size mismatch");
    if (!is_interval(intervals)) throw std::invalid_argument("join_with_intervals: not an interval partition");
    int m = 2 * n;
    Dsu d(m);
    for (const auto& b : sigma.blocks)
        for (int x : b) d.unite(typeB_position(n, b.front()), typeB_position(n, x));
    for (const auto& b : intervals.blocks())
        for (int x : b) {
            d.unite(typeB_position(n, b.front()), typeB_position(n, x));
            d.unite(typeB_position(n, -b.front()), typeB_position(n, -x));
        }
    // Close under crossings on the 2n-circle; the result stays inversion-invariant.
    for (;;) {
        std::vector<int> lab(m);
        for (int p = 0; p < m; ++p) lab[p] = d.find(p);
        bool merged = false;
        for (int a = 0; a < m && !merged; ++a)
            for (int b = a + 1; b < m && !merged; ++b) {
                if (lab[b] == lab[a]) continue;
                for (int c = b + 1; c < m && !merged; ++c) {
                    if (lab[c] != lab[a]) continue;
                    for (int e = c + 1; e < m; ++e)
                        if (lab[e] == lab[b]) {
                            d.unite(a, b);
                            merged = true;
                            break;
                        }
                }
            }
        if (!merged) break;
    }
    std::vector<Block> out;
    for (const auto& b : dsu_blocks(d, m)) {
        Block s;
        for (int p : b) s.push_back(typeB_element(n, p - 1));
        out.push_back(s);
    }
    return make_typeB(n, out);
}

std::vector<TypeBPartition> enumerate_typeB(int n, Kind kind) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    std::vector<TypeBPartition> out;
    for_each_nc(2 * n, [&](const std::vector<Block>& blocks) {
        std::vector<int> lab(2 * n);
        for (size_t k = 0; k < blocks.size(); ++k)
            for (int p : blocks[k]) lab[p - 1] = static_cast<int>(k);
        for (int p = 0; p < 2 * n; ++p) {
            // Inversion swaps positions p and p + n; blocks must map onto blocks.
            for (int q = 0; q < 2 * n; ++q)
                if ((lab[p] == lab[q]) != (lab[(p + n) % (2 * n)] == lab[(q + n) % (2 * n)])) return;
        }
        std::vector<Block> signed_blocks;
        for (const auto& b : blocks) {
            Block s;
            for (int p : b) s.push_back(typeB_element(n, p - 1));
            signed_blocks.push_back(s);
        }
        auto tb = make_typeB(n, signed_blocks);
        if (kind == Kind::typeB_NCZ && !tb.zero_block) return;
        if (kind == Kind::typeB_NCZprime && tb.zero_block) return;
        out.push_back(tb);
    });
    return out;
}

size_t count(Kind kind, int n) {
    size_t c = 0;
    switch (kind) {
        case Kind::all: for_each_set_partition(n, [&](const auto&) { ++c; }); return c;
        case Kind::nc: for_each_nc(n, [&](const auto&) { ++c; }); return c;
        case Kind::interval: return size_t{1} << (n - 1);
        case Kind::monotone: return enumerate_monotone(n).size();
        default: return enumerate_typeB(n, kind).size();
    }
}

}  // namespace ccf
