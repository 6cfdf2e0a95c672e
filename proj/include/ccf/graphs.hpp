#pragma once

#include <climits>
#include <string>
#include <vector>

#include "ccf/rational.hpp"

namespace ccf {

struct Edge {
    int u = 0, v = 0;
    int origin = 1;  // which factor contributed the edge
};

class RootedGraph {
public:
    RootedGraph() : RootedGraph(1, {}, 0) {}
    RootedGraph(int vertices, std::vector<Edge> edges, int root);

    static RootedGraph point();
    static RootedGraph path(int n);      // rooted at an end
    static RootedGraph complete(int n);  // K_n rooted at 0
    static RootedGraph cycle(int n);

    int size() const { return n_; }
    int root() const { return root_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<std::vector<std::pair<int, int>>>& adjacency() const { return adj_; }  // (neighbour, origin)

    // Vertices summed over by the W-trace; empty unless set by conditional_product.
    const std::vector<int>& marked() const { return marked_; }
    // Walk moments up to this degree are those of the untruncated product.
    int exact_degree() const { return exact_degree_; }

    RootedGraph with_origin(int origin) const;
    void set_labels(std::vector<std::string> labels);
    void set_marked(std::vector<int> marked) { marked_ = std::move(marked); }
    void set_exact_degree(int d) { exact_degree_ = d; }

private:
    int n_ = 1, root_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::string> labels_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
    std::vector<int> marked_;
    int exact_degree_ = INT_MAX;
};

enum class ProductKind { star, comb, orthogonal };
ProductKind parse_product(const std::string& s);

// Component of the root; edges of g1 get origin 1 and edges of g2 origin 2.
RootedGraph product(ProductKind kind, const RootedGraph& g1, const RootedGraph& g2);

// Reduced words of length <= depth.
RootedGraph free_product_truncated(const RootedGraph& g1, const RootedGraph& g2, int depth);

// n layers: g1 at the root, then copies of g2 and g1 alternately attached at the non-root vertices
// added by the previous layer. Origins 1 (g1) and 2 (g2).
RootedGraph subordination_branch(const RootedGraph& g1, const RootedGraph& g2, int n);

// (H1 |- Gamma_2) star (H2 |- Gamma_1) with branches of the given depth; marked() holds the vertices of
// H1 and H2.
RootedGraph conditional_product(const RootedGraph& h1, const RootedGraph& h2, const RootedGraph& g1,
                                const RootedGraph& g2, int depth);

// <delta_v, A_{w_1} ... A_{w_n} delta_v>; letter 0 is the full adjacency, letters 1, 2 filter by origin.
Q walk_moment(const RootedGraph& g, const std::vector<int>& word, int vertex);
Q root_moment(const RootedGraph& g, const std::vector<int>& word);
Q w_trace(const RootedGraph& g, const std::vector<int>& word);
std::vector<Q> root_moments(const RootedGraph& g, int degree);
// Tr(A^n), n = 0..degree.
std::vector<Q> trace_moments(const RootedGraph& g, int degree);

struct GraphCheck {
    std::string name;
    bool holds = true;
    int checked = 0;
    std::string witness;
};

struct GraphReport {
    std::vector<GraphCheck> checks;
    bool ok() const;
};

// Checks on a conditional product: root moments against the c-free additive convolution; traciality of the
// W-trace on origin words; the factorization of omega on centred alternating polynomials; single-algebra
// W-trace moments against traces of H_i; omega-moments of A against the cyclic-conditional convolution.
GraphReport verify_conditional_product(const RootedGraph& product, const RootedGraph& h1, const RootedGraph& h2,
                                       const RootedGraph& g1, const RootedGraph& g2, int degree);
GraphReport verify_graph_theorems(const RootedGraph& h1, const RootedGraph& h2, const RootedGraph& g1,
                                  const RootedGraph& g2, int degree);

}  // namespace ccf
