#pragma once

#include <functional>
#include <random>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ccf/partition.hpp"
#include "ccf/rational.hpp"

namespace ccf {

// Finite generator alphabet. Each letter carries an algebra label and a weight (its degree).
struct Alphabet {
    std::vector<std::string> names;
    std::vector<int> algebra;
    std::vector<int> weight;

    int size() const { return static_cast<int>(names.size()); }
    int add(const std::string& name, int algebra_label = 0, int w = 1);
    int find(const std::string& name) const;  // -1 when absent
    int degree(const Word& w) const;
    bool monochromatic(const Word& w) const;
    bool operator==(const Alphabet&) const = default;

    static Alphabet single(const std::string& name = "a");
    static Alphabet pair(const std::string& a = "a", const std::string& b = "b");
};

// Words of weighted degree 1..max_degree, ordered by length then lexicographically.
std::vector<Word> all_words(const Alphabet& alphabet, int max_degree);
std::string word_key(const Alphabet& alphabet, const Word& w);  // "a,b,a"
Word parse_word(const Alphabet& alphabet, const std::string& key);
Word rotate_word(const Word& w, int k);  // left rotation by k
Word power_word(int letter, int n);

using Evaluator = std::function<Q(const Word&)>;

// Shared handle to a word-indexed table of rationals. Stored values win; otherwise an optional
// evaluator is called and its result memoized. Copies share state.
class WordTable {
public:
    WordTable() = default;
    WordTable(Alphabet alphabet, int max_degree, Evaluator lazy = {});

    Q operator()(const Word& w) const;
    bool has(const Word& w) const;
    void set(const Word& w, const Q& value);
    void set_evaluator(Evaluator lazy);

    const Alphabet& alphabet() const { return s_->alphabet; }
    int max_degree() const { return s_->max_degree; }
    const std::map<Word, Q>& values() const { return s_->values; }
    bool valid() const { return static_cast<bool>(s_); }

    // Evaluates every word up to max_degree, then drops the evaluator.
    void materialize();
    // Non-owning view; valid while some owning handle is alive. Used for self-recursive evaluators.
    WordTable alias() const;

protected:
    struct State {
        Alphabet alphabet;
        int max_degree = 0;
        std::map<Word, Q> values;
        Evaluator lazy;
    };
    std::shared_ptr<State> s_;
};

class MomentFunctional : public WordTable {
public:
    MomentFunctional() = default;
    MomentFunctional(Alphabet alphabet, int max_degree, Q unit, bool tracial = false, Evaluator lazy = {});

    Q operator()(const Word& w) const;  // the empty word returns unit()
    const Q& unit() const { return *unit_; }
    bool tracial() const { return tracial_; }
    void set_tracial(bool t) { tracial_ = t; }
    MomentFunctional materialized() const;  // independent eager copy
    MomentFunctional alias() const;

    // m[0] is the unit; m[n] the n-th moment of the single letter.
    static MomentFunctional univariate(const std::vector<Q>& m, const std::string& name = "a");
    std::vector<Q> sequence(int letter, int n) const;  // (f(1), f(a), ..., f(a^n))

private:
    std::shared_ptr<Q> unit_ = std::make_shared<Q>(1);
    bool tracial_ = false;
};

enum class Family {
    free,
    boolean,
    monotone,
    conditional,
    infinitesimal,
    cyclic_free,
    cyclic_conditional,
    cyclic_boolean
};

std::string family_name(Family f);
Family parse_family(const std::string& s);

class CumulantTable : public WordTable {
public:
    CumulantTable() = default;
    CumulantTable(Family family, Alphabet alphabet, int max_degree, Evaluator lazy = {});
    Family family() const { return family_; }
    std::vector<Q> sequence(int letter, int n) const;  // (0, c(a), ..., c(a^n))
    CumulantTable alias() const;

private:
    Family family_ = Family::free;
};

MomentFunctional tabulate(const Alphabet& alphabet, int max_degree, const Q& unit, bool tracial,
                          const Evaluator& f);
// f + c g on non-empty words, with the given unit.
MomentFunctional linear_combination(const std::vector<std::pair<Q, MomentFunctional>>& terms, const Q& unit);
// Small random rationals (numerator in [-range, range], denominator in [1, range]).
Q random_rational(std::mt19937_64& rng, int range = 5);
// Random values on all words up to max_degree; tracial inputs are constant on rotation classes.
MomentFunctional random_functional(const Alphabet& alphabet, int max_degree, std::mt19937_64& rng, bool tracial,
                                   const Q& unit = 1);
bool rotation_invariant(const WordTable& t, int max_degree, Word* witness = nullptr);

}  // namespace ccf
