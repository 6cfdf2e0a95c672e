#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ccf/graphs.hpp"
#include "ccf/joint.hpp"
#include "ccf/series.hpp"

namespace ccf {

using Json = nlohmann::ordered_json;

constexpr int kOrderCap = 14;

// Malformed input; what() carries the file and the line or field.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parse errors read "source: parse error at line L, column C: ...".
Json parse_json_text(const std::string& text, const std::string& source);
Json load_json(const std::string& path);

// "p/q" strings and JSON integers; floats are rejected.
Q rational_from_json(const Json& v, const std::string& where);
Json rational_to_json(const Q& q);
Json rationals_to_json(const std::vector<Q>& v);

// { "alphabet": [...], "unit": "r", "moments": { "a,b": "r", ... }, "tracial": bool }. The table's degree is
// the largest D <= order such that every word of degree <= D is listed. Words past kOrderCap are errors.
MomentFunctional functional_from_json(const Json& j, const std::string& where, int order,
                                      const Alphabet* alphabet = nullptr);

// Either a single functional, which then serves as the one role a command asks for, or
// { "alphabet": [...], "psi": {...}, "phi": {...}, "omega": {...} } with per-role unit and moments.
struct FunctionalFile {
    std::string source;
    Alphabet alphabet;
    bool keyed = false;
    MomentFunctional psi, phi, omega;  // plain files fill psi only
};
FunctionalFile functional_file_from_json(const Json& j, const std::string& source, int order);

// Roles read by each mode: "psi", "phi", "omega".
std::vector<std::string> mode_roles(Mode mode);
std::vector<std::string> family_roles(Family family);

// The functional for role; a plain file answers when exactly one role is requested.
const MomentFunctional& role(const FunctionalFile& f, const std::string& name, size_t requested);
Marginal marginal_from_file(const FunctionalFile& f, const std::vector<std::string>& roles);
// Univariate marginal series up to order.
Distribution distribution_from_file(const FunctionalFile& f, const std::vector<std::string>& roles, int order);

// { "vertices": n, "edges": [[u, v], ...], "root": r }
RootedGraph graph_from_json(const Json& j, const std::string& where);

Json table_to_json(const WordTable& t, int degree);

}  // namespace ccf
