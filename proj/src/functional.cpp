#include "ccf/functional.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ccf {

int Alphabet::add(const std::string& name, int algebra_label, int w) {
    if (find(name) >= 0) throw std::invalid_argument("duplicate letter: " + name);
    if (w < 1) throw std::invalid_argument("letter weight must be positive");
    names.push_back(name);
    algebra.push_back(algebra_label);
    weight.push_back(w);
    return size() - 1;
}

int Alphabet::find(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

int Alphabet::degree(const Word& w) const {
    int d = 0;
    for (int x : w) d += weight.at(x);
    return d;
}

bool Alphabet::monochromatic(const Word& w) const {
    for (int x : w)
        if (algebra.at(x) != algebra.at(w.front())) return false;
    return true;
}

Alphabet Alphabet::single(const std::string& name) {
    Alphabet a;
    a.add(name, 0);
    return a;
}

Alphabet Alphabet::pair(const std::string& x, const std::string& y) {
    Alphabet a;
    a.add(x, 0);
    a.add(y, 1);
    return a;
}

std::vector<Word> all_words(const Alphabet& alphabet, int max_degree) {
    std::vector<Word> out;
    std::vector<Word> frontier{{}};
    while (!frontier.empty()) {
        std::vector<Word> next;
        for (const auto& w : frontier) {
            int d = alphabet.degree(w);
            for (int x = 0; x < alphabet.size(); ++x) {
                if (d + alphabet.weight[x] > max_degree) continue;
                Word v = w;
                v.push_back(x);
                next.push_back(v);
            }
        }
        std::sort(next.begin(), next.end());
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return out;
}

std::string word_key(const Alphabet& alphabet, const Word& w) {
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + alphabet.names.at(w[i]);
    return s;
}

Word parse_word(const Alphabet& alphabet, const std::string& key) {
    Word w;
    if (key.empty()) return w;
    std::stringstream ss(key);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
        int x = alphabet.find(tok);
        if (x < 0) throw std::invalid_argument("unknown letter '" + tok + "' in word '" + key + "'");
        w.push_back(x);
    }
    return w;
}

Word rotate_word(const Word& w, int k) {
    if (w.empty()) return w;
    int n = static_cast<int>(w.size());
    k = ((k % n) + n) % n;
    Word out(w.begin() + k, w.end());
    out.insert(out.end(), w.begin(), w.begin() + k);
    return out;
}

Word power_word(int letter, int n) { return Word(n, letter); }

WordTable::WordTable(Alphabet alphabet, int max_degree, Evaluator lazy)
    : s_(std::make_shared<State>(State{std::move(alphabet), max_degree, {}, std::move(lazy)})) {}

Q WordTable::operator()(const Word& w) const {
    auto it = s_->values.find(w);
    if (it != s_->values.end()) return it->second;
    if (!s_->lazy) throw std::out_of_range("no value for word '" + word_key(s_->alphabet, w) + "'");
    Q v = s_->lazy(w);
    s_->values.emplace(w, v);
    return v;
}

WordTable WordTable::alias() const {
    WordTable t;
    t.s_ = std::shared_ptr<State>(s_.get(), [](State*) {});
    return t;
}

bool WordTable::has(const Word& w) const { return s_->values.count(w) > 0; }

void WordTable::set(const Word& w, const Q& value) { s_->values[w] = value; }

void WordTable::set_evaluator(Evaluator lazy) { s_->lazy = std::move(lazy); }

void WordTable::materialize() {
    for (const auto& w : all_words(s_->alphabet, s_->max_degree)) (*this)(w);
    s_->lazy = nullptr;
}

MomentFunctional::MomentFunctional(Alphabet alphabet, int max_degree, Q unit, bool tracial, Evaluator lazy)
    : WordTable(std::move(alphabet), max_degree, std::move(lazy)),
      unit_(std::make_shared<Q>(std::move(unit))),
      tracial_(tracial) {}

Q MomentFunctional::operator()(const Word& w) const {
    if (w.empty()) return *unit_;
    return WordTable::operator()(w);
}

MomentFunctional MomentFunctional::materialized() const {
    MomentFunctional out(alphabet(), max_degree(), unit(), tracial());
    for (const auto& w : all_words(alphabet(), max_degree())) out.set(w, (*this)(w));
    return out;
}

MomentFunctional MomentFunctional::alias() const {
    MomentFunctional t;
    t.s_ = std::shared_ptr<State>(s_.get(), [](State*) {});
    t.unit_ = unit_;
    t.tracial_ = tracial_;
    return t;
}

MomentFunctional MomentFunctional::univariate(const std::vector<Q>& m, const std::string& name) {
    if (m.empty()) throw std::invalid_argument("moment sequence needs at least the unit");
    MomentFunctional f(Alphabet::single(name), static_cast<int>(m.size()) - 1, m[0], true);
    for (size_t n = 1; n < m.size(); ++n) f.set(power_word(0, static_cast<int>(n)), m[n]);
    return f;
}

std::vector<Q> MomentFunctional::sequence(int letter, int n) const {
    std::vector<Q> out;
    for (int k = 0; k <= n; ++k) out.push_back((*this)(power_word(letter, k)));
    return out;
}

std::string family_name(Family f) {
    switch (f) {
        case Family::free: return "free";
        case Family::boolean: return "boolean";
        case Family::monotone: return "monotone";
        case Family::conditional: return "conditional";
        case Family::infinitesimal: return "infinitesimal";
        case Family::cyclic_free: return "cyclic_free";
        case Family::cyclic_conditional: return "cyclic_conditional";
        case Family::cyclic_boolean: return "cyclic_boolean";
    }
    return "?";
}

Family parse_family(const std::string& s) {
    for (Family f : {Family::free, Family::boolean, Family::monotone, Family::conditional, Family::infinitesimal,
                     Family::cyclic_free, Family::cyclic_conditional, Family::cyclic_boolean})
        if (family_name(f) == s) return f;
    throw std::invalid_argument("unknown cumulant family: " + s);
}

CumulantTable::CumulantTable(Family family, Alphabet alphabet, int max_degree, Evaluator lazy)
    : WordTable(std::move(alphabet), max_degree, std::move(lazy)), family_(family) {}

CumulantTable CumulantTable::alias() const {
    CumulantTable t;
    t.s_ = std::shared_ptr<State>(s_.get(), [](State*) {});
    t.family_ = family_;
    return t;
}

std::vector<Q> CumulantTable::sequence(int letter, int n) const {
    std::vector<Q> out{0};
    for (int k = 1; k <= n; ++k) out.push_back((*this)(power_word(letter, k)));
    return out;
}

MomentFunctional tabulate(const Alphabet& alphabet, int max_degree, const Q& unit, bool tracial,
                          const Evaluator& f) {
    MomentFunctional out(alphabet, max_degree, unit, tracial);
    for (const auto& w : all_words(alphabet, max_degree)) out.set(w, f(w));
    return out;
}

MomentFunctional linear_combination(const std::vector<std::pair<Q, MomentFunctional>>& terms, const Q& unit) {
    if (terms.empty()) throw std::invalid_argument("empty linear combination");
    bool tracial = true;
    for (const auto& t : terms) tracial = tracial && t.second.tracial();
    return MomentFunctional(terms.front().second.alphabet(), terms.front().second.max_degree(), unit, tracial,
                            [terms](const Word& w) -> Q {
                                Q s = 0;
                                for (const auto& [c, f] : terms) s += c * f(w);
                                return s;
                            });
}

Q random_rational(std::mt19937_64& rng, int range) {
    std::uniform_int_distribution<int> num(-range, range), den(1, range);
    Q q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

MomentFunctional random_functional(const Alphabet& alphabet, int max_degree, std::mt19937_64& rng, bool tracial,
                                   const Q& unit) {
    MomentFunctional f(alphabet, max_degree, unit, tracial);
    for (const auto& w : all_words(alphabet, max_degree)) {
        if (f.has(w)) continue;
        Q v = random_rational(rng);
        f.set(w, v);
        if (tracial)
            for (size_t k = 1; k < w.size(); ++k) f.set(rotate_word(w, static_cast<int>(k)), v);
    }
    return f;
}

bool rotation_invariant(const WordTable& t, int max_degree, Word* witness) {
    for (const auto& w : all_words(t.alphabet(), max_degree)) {
        Q v = t(w);
        for (size_t k = 1; k < w.size(); ++k)
            if (t(rotate_word(w, static_cast<int>(k))) != v) {
                if (witness) *witness = w;
                return false;
            }
    }
    return true;
}

}  // namespace ccf
