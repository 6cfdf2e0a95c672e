#include "ccf/graphs.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ccf/series.hpp"

namespace ccf {

RootedGraph::RootedGraph(int vertices, std::vector<Edge> edges, int root)
    : n_(vertices), root_(root), edges_(std::move(edges)) {
    if (n_ < 1) throw std::invalid_argument("empty graph");
    if (root_ < 0 || root_ >= n_) throw std::invalid_argument("root out of range");
    adj_.assign(n_, {});
    std::set<std::pair<int, int>> seen;
    for (const Edge& e : edges_) {
        if (e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_) throw std::invalid_argument("edge endpoint out of range");
        if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
        if (!seen.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second)
            throw std::invalid_argument("duplicate edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
        adj_[e.u].push_back({e.v, e.origin});
        adj_[e.v].push_back({e.u, e.origin});
    }
    labels_.resize(n_);
    for (int i = 0; i < n_; ++i) labels_[i] = std::to_string(i);
}

RootedGraph RootedGraph::point() { return RootedGraph(1, {}, 0); }

RootedGraph RootedGraph::path(int n) {
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, 1});
    return RootedGraph(n, e, 0);
}

RootedGraph RootedGraph::complete(int n) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.push_back({i, j, 1});
    return RootedGraph(n, e, 0);
}

RootedGraph RootedGraph::cycle(int n) {
    if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n, 1});
    return RootedGraph(n, e, 0);
}

RootedGraph RootedGraph::with_origin(int origin) const {
    std::vector<Edge> e = edges_;
    for (auto& x : e) x.origin = origin;
    RootedGraph g(n_, e, root_);
    g.labels_ = labels_;
    g.exact_degree_ = exact_degree_;
    return g;
}

void RootedGraph::set_labels(std::vector<std::string> labels) {
    if (static_cast<int>(labels.size()) != n_) throw std::invalid_argument("label count differs from vertex count");
    labels_ = std::move(labels);
}

ProductKind parse_product(const std::string& s) {
    if (s == "star") return ProductKind::star;
    if (s == "comb") return ProductKind::comb;
    if (s == "orthogonal") return ProductKind::orthogonal;
    throw std::invalid_argument("unknown product: " + s);
}

namespace {

struct Builder {
    int n = 1;  // vertex 0 is the root
    std::vector<Edge> edges;

    // Copies g with its root glued to `at`; returns the new ids of g's vertices.
    std::vector<int> attach(const RootedGraph& g, int at) {
        std::vector<int> id(g.size());
        for (int v = 0; v < g.size(); ++v) id[v] = v == g.root() ? at : n++;
        for (const Edge& e : g.edges()) edges.push_back({id[e.u], id[e.v], e.origin});
        return id;
    }

    RootedGraph build(int exact) const {
        RootedGraph g(n, edges, 0);
        g.set_exact_degree(exact);
        return g;
    }
};

std::vector<int> non_root(const RootedGraph& g, const std::vector<int>& id) {
    std::vector<int> out;
    for (int v = 0; v < g.size(); ++v)
        if (v != g.root()) out.push_back(id[v]);
    return out;
}

// Restriction to the component of the root, keeping the marked vertices that survive.
RootedGraph root_component(const RootedGraph& g) {
    std::vector<int> id(g.size(), -1);
    std::vector<int> order = {g.root()};
    id[g.root()] = 0;
    for (size_t i = 0; i < order.size(); ++i)
        for (const auto& [w, o] : g.adjacency()[order[i]])
            if (id[w] < 0) {
                id[w] = static_cast<int>(order.size());
                order.push_back(w);
            }
    if (static_cast<int>(order.size()) == g.size() && g.root() == 0) return g;
    std::vector<Edge> e;
    for (const Edge& x : g.edges())
        if (id[x.u] >= 0) e.push_back({id[x.u], id[x.v], x.origin});
    RootedGraph r(static_cast<int>(order.size()), e, 0);
    std::vector<std::string> labels;
    for (int v : order) labels.push_back(g.labels()[v]);
    r.set_labels(labels);
    r.set_exact_degree(g.exact_degree());
    return r;
}

RootedGraph branch(const RootedGraph& first, const RootedGraph& other, int n) {
    if (n < 1) throw std::invalid_argument("branch depth must be positive");
    Builder b;
    std::vector<int> frontier = non_root(first, b.attach(first, 0));
    for (int layer = 2; layer <= n; ++layer) {
        const RootedGraph& g = layer % 2 == 0 ? other : first;
        std::vector<int> next;
        for (int v : frontier) {
            std::vector<int> nr = non_root(g, b.attach(g, v));
            next.insert(next.end(), nr.begin(), nr.end());
        }
        frontier = std::move(next);
    }
    return b.build(2 * n + 1);
}

}  // namespace

RootedGraph product(ProductKind kind, const RootedGraph& g1, const RootedGraph& g2) {
    RootedGraph a = g1.with_origin(1), c = g2.with_origin(2);
    Builder b;
    std::vector<int> id = b.attach(a, 0);
    switch (kind) {
    case ProductKind::star:
        b.attach(c, 0);
        break;
    case ProductKind::comb:
        for (int v : id) b.attach(c, v);
        break;
    case ProductKind::orthogonal:
        for (int v : non_root(a, id)) b.attach(c, v);
        break;
    }
    return root_component(b.build(INT_MAX));
}

RootedGraph free_product_truncated(const RootedGraph& g1, const RootedGraph& g2, int depth) {
    if (depth < 1) throw std::invalid_argument("truncation depth must be at least 1");
    const RootedGraph* gs[2] = {&g1, &g2};
    using Word = std::vector<std::pair<int, int>>;  // (factor, vertex), first letter varies along edges
    std::map<Word, int> id;
    std::vector<Word> words = {{}};
    id[{}] = 0;
    std::set<std::pair<int, int>> seen;
    std::vector<Edge> edges;
    auto link = [&](int a, const Word& w, int origin) {
        auto [it, fresh] = id.insert({w, static_cast<int>(words.size())});
        if (fresh) words.push_back(w);
        int b = it->second;
        if (seen.insert({std::min(a, b), std::max(a, b)}).second) edges.push_back({a, b, origin + 1});
    };
    for (size_t i = 0; i < words.size(); ++i) {
        Word w = words[i];
        int a = static_cast<int>(i);
        int first = w.empty() ? -1 : w[0].first;
        if (!w.empty()) {
            const RootedGraph& g = *gs[first];
            Word rest(w.begin() + 1, w.end());
            for (const auto& [x, o] : g.adjacency()[w[0].second]) {
                Word y = rest;
                if (x != g.root()) y.insert(y.begin(), {first, x});
                link(a, y, first);
            }
        }
        if (static_cast<int>(w.size()) >= depth) continue;
        for (int f = 0; f < 2; ++f) {
            if (f == first) continue;
            const RootedGraph& g = *gs[f];
            for (const auto& [x, o] : g.adjacency()[g.root()]) {
                Word y = w;
                y.insert(y.begin(), {f, x});
                link(a, y, f);
            }
        }
    }
    RootedGraph g(static_cast<int>(words.size()), edges, 0);
    std::vector<std::string> labels;
    for (const Word& w : words) {
        std::string s = w.empty() ? "e" : "";
        for (const auto& [f, v] : w) s += (s.empty() ? "" : ".") + std::to_string(f + 1) + ":" + gs[f]->labels()[v];
        labels.push_back(s);
    }
    g.set_labels(labels);
    g.set_exact_degree(2 * depth + 1);
    return g;
}

RootedGraph subordination_branch(const RootedGraph& g1, const RootedGraph& g2, int n) {
    return branch(g1.with_origin(1), g2.with_origin(2), n);
}

RootedGraph conditional_product(const RootedGraph& h1, const RootedGraph& h2, const RootedGraph& g1,
                                const RootedGraph& g2, int depth) {
    RootedGraph gamma1 = branch(g1.with_origin(1), g2.with_origin(2), depth);
    RootedGraph gamma2 = branch(g2.with_origin(2), g1.with_origin(1), depth);
    Builder b;
    std::vector<int> marked = {0};
    std::vector<int> v1 = non_root(h1, b.attach(h1.with_origin(1), 0));
    std::vector<int> v2 = non_root(h2, b.attach(h2.with_origin(2), 0));
    for (int v : v1) b.attach(gamma2, v);
    for (int v : v2) b.attach(gamma1, v);
    marked.insert(marked.end(), v1.begin(), v1.end());
    marked.insert(marked.end(), v2.begin(), v2.end());
    RootedGraph g = b.build(2 * depth + 1);
    g.set_marked(marked);
    return g;
}

namespace {

void require_exact(const RootedGraph& g, size_t degree) {
    if (static_cast<long>(degree) > g.exact_degree())
        throw std::invalid_argument("degree " + std::to_string(degree) + " exceeds the exactness radius " +
                                    std::to_string(g.exact_degree()) + " of the truncated graph");
}

std::vector<Q> apply(const RootedGraph& g, const std::vector<Q>& x, int letter) {
    std::vector<Q> y(g.size());
    for (int v = 0; v < g.size(); ++v) {
        if (x[v] == 0) continue;
        for (const auto& [w, o] : g.adjacency()[v])
            if (letter == 0 || o == letter) y[w] += x[v];
    }
    return y;
}

}  // namespace

Q walk_moment(const RootedGraph& g, const std::vector<int>& word, int vertex) {
    require_exact(g, word.size());
    std::vector<Q> x(g.size());
    x[vertex] = 1;
    for (auto it = word.rbegin(); it != word.rend(); ++it) x = apply(g, x, *it);
    return x[vertex];
}

Q root_moment(const RootedGraph& g, const std::vector<int>& word) { return walk_moment(g, word, g.root()); }

Q w_trace(const RootedGraph& g, const std::vector<int>& word) {
    if (g.marked().empty()) throw std::invalid_argument("W-trace needs a conditional product");
    Q s = 0;
    for (int v : g.marked()) s += walk_moment(g, word, v);
    return s;
}

std::vector<Q> root_moments(const RootedGraph& g, int degree) {
    require_exact(g, degree);
    std::vector<Q> m(degree + 1), x(g.size());
    x[g.root()] = 1;
    for (int n = 0; n <= degree; ++n) {
        m[n] = x[g.root()];
        if (n < degree) x = apply(g, x, 0);
    }
    return m;
}

std::vector<Q> trace_moments(const RootedGraph& g, int degree) {
    std::vector<Q> m(degree + 1);
    for (int v = 0; v < g.size(); ++v) {
        std::vector<Q> x(g.size());
        x[v] = 1;
        for (int n = 0; n <= degree; ++n) {
            m[n] += x[v];
            if (n < degree) x = apply(g, x, 0);
        }
    }
    return m;
}

bool GraphReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const GraphCheck& c) { return c.holds; });
}

namespace {

using Poly = std::vector<std::pair<Q, std::vector<int>>>;

Poly multiply(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [c, u] : a)
        for (const auto& [d, v] : b) {
            std::vector<int> w = u;
            w.insert(w.end(), v.begin(), v.end());
            r.push_back({c * d, w});
        }
    return r;
}

template <class F>
Q evaluate(const Poly& p, const F& f) {
    Q s = 0;
    for (const auto& [c, w] : p)
        if (c != 0) s += c * f(w);
    return s;
}

std::string word_string(const std::vector<int>& w) {
    std::string s;
    for (int x : w) s += (s.empty() ? "X" : " X") + std::to_string(x);
    return s.empty() ? "1" : s;
}

void fail(GraphCheck& c, const std::string& w) {
    if (c.holds) c.witness = w;
    c.holds = false;
}

std::string show(const Q& a, const Q& b) { return to_string(a) + " vs " + to_string(b); }

}  // namespace

GraphReport verify_conditional_product(const RootedGraph& prod, const RootedGraph& h1, const RootedGraph& h2,
                                       const RootedGraph& g1, const RootedGraph& g2, int degree) {
    GraphReport report;
    const int W = static_cast<int>(prod.marked().size());
    auto psi_marginal = [&](const RootedGraph& g) { return MomentSeries{root_moments(g, degree)}; };
    MomentSeries mu1 = psi_marginal(g1), mu2 = psi_marginal(g2), nu1 = psi_marginal(h1), nu2 = psi_marginal(h2);

    {
        GraphCheck c{"root moments = conditionally free additive convolution", true, 0, {}};
        MomentSeries expect = additive_convolve(Mode::conditional, {mu1, nu1, {}}, {mu2, nu2, {}}).sum.phi;
        std::vector<Q> got = root_moments(prod, degree);
        for (int n = 0; n <= degree; ++n, ++c.checked)
            if (got[n] != expect.m[n]) fail(c, "degree " + std::to_string(n) + ": " + show(got[n], expect.m[n]));
        report.checks.push_back(c);
    }

    auto omega = [&](const std::vector<int>& w) -> Q { return w_trace(prod, w); };
    auto phi = [&](const std::vector<int>& w) -> Q { return root_moment(prod, w); };

    {
        GraphCheck c{"W-trace is tracial on origin words", true, 0, {}};
        for (int n = 2; n <= degree; ++n)
            for (int mask = 0; mask < (1 << n); ++mask) {
                std::vector<int> w(n);
                for (int i = 0; i < n; ++i) w[i] = (mask >> i & 1) + 1;
                Q base = omega(w);
                std::vector<int> r = w;
                std::rotate(r.begin(), r.begin() + 1, r.end());
                ++c.checked;
                if (omega(r) != base) fail(c, word_string(w) + " vs " + word_string(r));
            }
        report.checks.push_back(c);
    }

    {
        GraphCheck c{"W-trace factorization on centred alternating polynomials", true, 0, {}};
        // X, X^2 - Psi(X^2), X^2 + X - Psi(X^2) in the letter of the given algebra
        const MomentSeries* mus[3] = {nullptr, &mu1, &mu2};
        auto centred = [&](int letter, int kind) {
            const MomentSeries& mu = *mus[letter];
            Poly p = {{Q(1), std::vector<int>(kind == 0 ? 1 : 2, letter)}};
            if (kind == 2) p.push_back({Q(1), {letter}});
            Q shift = kind == 0 ? mu.m[1] : mu.m[2] + (kind == 2 ? mu.m[1] : Q(0));
            p.push_back({Q(-shift), {}});
            return p;
        };
        for (int n = 2; n <= degree; ++n) {
            // all kind sequences of length n with total degree <= degree
            std::vector<std::vector<int>> seqs = {{}};
            for (int i = 0; i < n; ++i) {
                std::vector<std::vector<int>> next;
                for (const auto& s : seqs)
                    for (int k = 0; k < 3; ++k) {
                        auto t = s;
                        t.push_back(k);
                        next.push_back(t);
                    }
                seqs = std::move(next);
            }
            for (const auto& s : seqs) {
                int deg = 0;
                for (int k : s) deg += k == 0 ? 1 : 2;
                if (deg > degree) continue;
                for (int start = 1; start <= 2; ++start) {
                    // p_1 in algebra `start`, p_i alternate; the product is p_n ... p_1
                    std::vector<Poly> p(n);
                    for (int i = 0; i < n; ++i) p[i] = centred(i % 2 == 0 ? start : 3 - start, s[i]);
                    Poly prod_poly = p[n - 1];
                    for (int i = n - 2; i >= 0; --i) prod_poly = multiply(prod_poly, p[i]);
                    Q lhs = evaluate(prod_poly, omega), rhs = 1;
                    if (n % 2 == 0) {
                        for (const auto& q : p) rhs *= evaluate(q, phi);
                    } else {
                        rhs = evaluate(multiply(p[0], p[n - 1]), phi);
                        for (int i = 1; i + 1 < n; ++i) rhs *= evaluate(p[i], phi);
                    }
                    ++c.checked;
                    if (lhs != rhs) {
                        std::ostringstream os;
                        os << "n = " << n << ", start " << start << ", kinds";
                        for (int k : s) os << ' ' << k;
                        os << ": " << show(lhs, rhs);
                        fail(c, os.str());
                    }
                }
            }
        }
        report.checks.push_back(c);
    }

    std::vector<Q> tr1 = trace_moments(h1, degree), tr2 = trace_moments(h2, degree);
    {
        GraphCheck c{"single-algebra W-trace = Tr(A_H^n) + (|V(H_j)| - 1) mu_G(X^n)", true, 0, {}};
        GraphCheck d{"single-algebra W-trace = Tr(A_H^n)", true, 0, {}};
        for (int n = 1; n <= degree; ++n)
            for (int i = 1; i <= 2; ++i) {
                const std::vector<Q>& tr = i == 1 ? tr1 : tr2;
                const MomentSeries& mu = i == 1 ? mu1 : mu2;
                int other = (i == 1 ? h2 : h1).size() - 1;
                Q got = omega(std::vector<int>(n, i));
                ++c.checked;
                ++d.checked;
                std::string where = "X" + std::to_string(i) + "^" + std::to_string(n) + ": ";
                if (got != tr[n] + other * mu.m[n]) fail(c, where + show(got, tr[n] + other * mu.m[n]));
                if (got != tr[n]) fail(d, where + show(got, tr[n]));
            }
        report.checks.push_back(c);
        report.checks.push_back(d);
    }

    {
        GraphCheck c{"W-trace moments of A = cyclic-conditional additive convolution", true, 0, {}};
        auto omega_marginal = [&](int i) {
            MomentSeries s;
            s.m.push_back(W);
            for (int n = 1; n <= degree; ++n) s.m.push_back(omega(std::vector<int>(n, i)));
            return s;
        };
        Distribution a{mu1, nu1, omega_marginal(1)}, b{mu2, nu2, omega_marginal(2)};
        MomentSeries expect = additive_convolve(Mode::cyclic_conditional, a, b).sum.omega;
        for (int n = 0; n <= degree; ++n, ++c.checked) {
            Q got = omega(std::vector<int>(n, 0));
            if (got != expect.m[n]) fail(c, "degree " + std::to_string(n) + ": " + show(got, expect.m[n]));
        }
        report.checks.push_back(c);
    }
    return report;
}

GraphReport verify_graph_theorems(const RootedGraph& h1, const RootedGraph& h2, const RootedGraph& g1,
                                  const RootedGraph& g2, int degree) {
    RootedGraph prod = conditional_product(h1, h2, g1, g2, degree / 2 + 1);
    return verify_conditional_product(prod, h1, h2, g1, g2, degree);
}

}  // namespace ccf
