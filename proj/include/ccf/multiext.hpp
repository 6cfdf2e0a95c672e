#pragma once

#include "ccf/functional.hpp"
#include "ccf/partition.hpp"

namespace ccf {

// A family (f_n) evaluated on words of any length n >= 1.
struct MultiSeq {
    Evaluator f;
    bool cyclic = false;
    Q operator()(const Word& w) const { return f(w); }

    static MultiSeq of(const WordTable& t, bool cyclic = false);
};

Q extend_nc(const MultiSeq& f, const Partition& p, const Word& w);
Q extend_cfree(const MultiSeq& f, const MultiSeq& g, const Partition& p, const Word& w);
Q extend_inf(const MultiSeq& f, const MultiSeq& df, const Partition& p, const Word& w);
Q extend_cyclic(const MultiSeq& f, const MultiSeq& df, const Partition& p, const Word& w);

enum class TypeBStyle { plain, cyclic };
Q extend_typeB(TypeBStyle style, const MultiSeq& f, const MultiSeq& g, const TypeBPartition& tb, const Word& w);

// Raw block-list forms used by the inner loops of the cumulant recursions.
Q product_over(const std::vector<Block>& blocks, const Word& w, const Evaluator& f);
Q cfree_over(const std::vector<Block>& blocks, const std::vector<int>& parent, const Word& w, const Evaluator& f,
             const Evaluator& g);
Q leibniz_over(const std::vector<Block>& blocks, const Word& w, const Evaluator& f, const Evaluator& df);
Q cyclic_over(const std::vector<Block>& blocks, const Word& w, const Evaluator& f, const Evaluator& df);
// Letters of block, read in the order induced by anchor (a block of the same partition).
Word read_from(const Block& block, const Block& anchor, const Word& w);

}  // namespace ccf
