#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ccf {

// Elements are 1-based; a block is kept sorted ascending.
using Block = std::vector<int>;
using Word = std::vector<int>;

class Partition {
public:
    Partition() = default;
    // Validates that blocks cover {1..n} disjointly; sorts each block and orders blocks by minimum.
    Partition(int n, std::vector<Block> blocks);

    static Partition discrete(int n);
    static Partition full(int n);

    int n() const { return n_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    size_t size() const { return blocks_.size(); }

    // labels()[i-1] is the index of the block containing i.
    std::vector<int> labels() const;
    int index_of(const Block& b) const;  // -1 when b is not a block
    std::string str() const;

    auto operator<=>(const Partition&) const = default;

private:
    int n_ = 0;
    std::vector<Block> blocks_;
};

struct OrderedPartition {
    Partition base;
    std::vector<int> order;  // order[k] is the index of the k-th block
    std::vector<int> rank() const;
};

// Signed ground set {-n..-1, 1..n}. Positions on the circle: 1..n then -1..-n.
struct TypeBPartition {
    int n = 0;
    std::vector<Block> blocks;            // signed elements, sorted by circle position
    std::optional<int> zero_block;        // NCZ: index of the block with V = -V
    std::optional<Block> kreweras_block;  // NCZ': block of Kr(Abs) read with gap labels
    bool operator==(const TypeBPartition&) const = default;
    std::string str() const;
};

enum class Kind { all, nc, interval, monotone, typeB, typeB_NCZ, typeB_NCZprime };

bool is_noncrossing(const Partition& p);
bool is_interval(const Partition& p);

using BlocksFn = std::function<void(const std::vector<Block>&)>;

void for_each_set_partition(int n, const BlocksFn& f);
void for_each_nc(int n, const BlocksFn& f);
// Non-crossing partitions whose blocks are monochromatic for the given colouring of 1..n.
void for_each_nc_colored(const std::vector<int>& colors, const BlocksFn& f);
void for_each_interval(int n, const BlocksFn& f);

// Kinds all, nc, interval. Monotone and type-B have their own enumerators.
std::vector<Partition> enumerate(Kind kind, int n);
std::vector<OrderedPartition> enumerate_monotone(int n);
std::vector<TypeBPartition> enumerate_typeB(int n, Kind kind = Kind::typeB);
size_t count(Kind kind, int n);

// Index of the immediately enclosing block, or -1 for outer blocks.
std::vector<int> nesting_parent(const std::vector<Block>& blocks);
std::vector<int> nesting_parent(const Partition& p);
std::pair<std::vector<Block>, std::vector<Block>> outer_inner(const Partition& p);
bool is_monotone(const OrderedPartition& op);
// Number of monotone orders of p divided by |p|!, i.e. 1 / prod of nesting-subtree sizes.
long monotone_hook_product(const std::vector<Block>& blocks);

Partition kreweras(const Partition& p);
// Blocks of Kr(p) relabelled so that r stands for the dual point just before r.
std::vector<Block> kreweras_gaps(const Partition& p);
Partition rotate(const Partition& p, int k);  // i -> i + k (mod n)

Partition join(const Partition& a, const Partition& b);
Partition nc_join(const Partition& a, const Partition& b);
Partition meet(const Partition& a, const Partition& b);
bool refines(const Partition& a, const Partition& b);  // a <= b

enum class AnchorKind { block, kreweras };

struct CyclicOrder {
    int n = 0;
    AnchorKind kind = AnchorKind::block;
    Block anchor;
    // Elements of subset listed in the induced order.
    std::vector<int> read(const Block& subset) const;
};

CyclicOrder induced_order(const Partition& p, const Block& anchor, AnchorKind kind);
Word read_word(const Word& w, const Block& subset, const CyclicOrder& order);
Word restrict_word(const Word& w, const Block& subset);

int typeB_position(int n, int x);
int typeB_element(int n, int pos);
bool is_typeB_noncrossing(int n, const std::vector<Block>& blocks);
TypeBPartition make_typeB(int n, std::vector<Block> blocks);
Partition abs_map(const TypeBPartition& tb);
TypeBPartition typeB_kreweras(const TypeBPartition& tb);
TypeBPartition join_with_intervals(const TypeBPartition& sigma, const Partition& intervals);

}  // namespace ccf
