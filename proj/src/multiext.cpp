#include "ccf/multiext.hpp"

#include <algorithm>
#include <stdexcept>

namespace ccf {

namespace {

void check_length(const Partition& p, const Word& w) {
    if (static_cast<int>(w.size()) != p.n()) throw std::invalid_argument("word length does not match partition size");
}

}  // namespace

MultiSeq MultiSeq::of(const WordTable& t, bool cyclic) {
    return MultiSeq{[t](const Word& w) -> Q { return t(w); }, cyclic};
}

Word read_from(const Block& block, const Block& anchor, const Word& w) {
    int n = static_cast<int>(w.size());
    int top = anchor.back();
    Block order = block;
    auto key = [&](int x) { return x > top ? x - n : x; };
    std::sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });
    return restrict_word(w, order);
}

Q product_over(const std::vector<Block>& blocks, const Word& w, const Evaluator& f) {
    Q r = 1;
    for (const auto& b : blocks) {
        r *= f(restrict_word(w, b));
        if (r == 0) break;
    }
    return r;
}

Q cfree_over(const std::vector<Block>& blocks, const std::vector<int>& parent, const Word& w, const Evaluator& f,
             const Evaluator& g) {
    Q r = 1;
    for (size_t k = 0; k < blocks.size() && r != 0; ++k)
        r *= parent[k] < 0 ? f(restrict_word(w, blocks[k])) : g(restrict_word(w, blocks[k]));
    return r;
}

Q leibniz_over(const std::vector<Block>& blocks, const Word& w, const Evaluator& f, const Evaluator& df) {
    std::vector<Q> fv;
    for (const auto& b : blocks) fv.push_back(f(restrict_word(w, b)));
    Q total = 0;
    for (size_t v = 0; v < blocks.size(); ++v) {
        Q r = 1;
        for (size_t u = 0; u < blocks.size() && r != 0; ++u)
            if (u != v) r *= fv[u];
        if (r != 0) total += r * df(restrict_word(w, blocks[v]));
    }
    return total;
}

Q cyclic_over(const std::vector<Block>& blocks, const Word& w, const Evaluator& f, const Evaluator& df) {
    Q total = 0;
    for (size_t v = 0; v < blocks.size(); ++v) {
        Q r = 1;
        for (size_t u = 0; u < blocks.size() && r != 0; ++u)
            if (u != v) r *= f(read_from(blocks[u], blocks[v], w));
        if (r != 0) total += r * df(restrict_word(w, blocks[v]));
    }
    return total;
}

Q extend_nc(const MultiSeq& f, const Partition& p, const Word& w) {
    check_length(p, w);
    return product_over(p.blocks(), w, f.f);
}

Q extend_cfree(const MultiSeq& f, const MultiSeq& g, const Partition& p, const Word& w) {
    check_length(p, w);
    return cfree_over(p.blocks(), nesting_parent(p), w, f.f, g.f);
}

Q extend_inf(const MultiSeq& f, const MultiSeq& df, const Partition& p, const Word& w) {
    check_length(p, w);
    return leibniz_over(p.blocks(), w, f.f, df.f);
}

Q extend_cyclic(const MultiSeq& f, const MultiSeq& df, const Partition& p, const Word& w) {
    check_length(p, w);
    if (!df.cyclic) throw std::invalid_argument("extend_cyclic needs a cyclically invariant df");
    return cyclic_over(p.blocks(), w, f.f, df.f);
}

Q extend_typeB(TypeBStyle style, const MultiSeq& f, const MultiSeq& g, const TypeBPartition& tb, const Word& w) {
    Partition p = abs_map(tb);
    check_length(p, w);
    Q r = 1;
    if (tb.zero_block) {
        Block zero;
        for (int x : tb.blocks[*tb.zero_block])
            if (x > 0) zero.push_back(x);
        std::sort(zero.begin(), zero.end());
        r *= g(restrict_word(w, zero));
        for (const auto& b : p.blocks()) {
            if (b == zero || r == 0) continue;
            r *= f(style == TypeBStyle::cyclic ? read_from(b, zero, w) : restrict_word(w, b));
        }
    } else {
        CyclicOrder order{p.n(), AnchorKind::kreweras, *tb.kreweras_block};
        for (const auto& b : p.blocks()) {
            if (r == 0) break;
            r *= f(style == TypeBStyle::cyclic ? read_word(w, b, order) : restrict_word(w, b));
        }
    }
    return r;
}

}  // namespace ccf
