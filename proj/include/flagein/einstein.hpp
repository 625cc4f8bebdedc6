#pragma once

// Assembly of the Einstein equations of a flag as an exact-rational
// polynomial system, ansatz specialization, and the closed-form solver for
// two-equation reductions that are quadratic after eliminating the Einstein
// constant.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flagein/flag.hpp"
#include "flagein/polynomial.hpp"
#include "flagein/quadfield.hpp"
#include "flagein/ricci.hpp"

namespace flagein {

/// One grouped interaction of an equation: weight * (l_xi^2 - (l_u - l_v)^2)
/// / (l_u l_v), with u <= v summand indices. The weights are the printed
/// prefactors of the scaled systems.
struct InteractionTerm {
    int u = 0;
    int v = 0;
    Rational weight;
};

/// Scaled equation for the summand xi:
///   constant + sum of interactions = scale * c * l_xi.
struct StructuredEquation {
    int xi = 0;
    Rational constant;
    std::vector<InteractionTerm> terms;
};

/// Where each t-root parameter of the underlying flag ended up: either a
/// value pinned by an ansatz or the index of the system variable carrying it.
struct KeyBinding {
    std::string key;
    std::optional<Rational> value;
    int var = -1;
};

struct PolySystem {
    // variables: one lambda per positive t-root (t-root keys, summand order),
    // then "c" last
    std::vector<std::string> vars;
    std::vector<std::string> display;  // g12 / f12 / h1 style names
    std::vector<Polynomial> equations;
    std::vector<std::string> eq_keys;         // t-root key per equation (assembly only)
    std::vector<Monomial> clearing;           // denominator-clearing monomial per equation
    Rational scale_factor;                    // 8(n+1) for C, 4(n-1) for D
    std::string family;
    std::vector<int> partition;
    std::vector<KeyBinding> bindings;            // one per t-root of the flag
    std::optional<std::vector<StructuredEquation>> structured;

    int c_index() const { return static_cast<int>(vars.size()) - 1; }
    int lambda_count() const { return static_cast<int>(vars.size()) - 1; }
    bool any_fixed() const;

    std::string text() const;
    std::string latex() const;
    nlohmann::json to_json() const;
    static PolySystem from_json(const nlohmann::json& j);
};

/// Builds the full system: one equation per positive t-root, the scaled
/// structure-constant form cleared of denominators, coefficients exact.
PolySystem assemble(const Flag& flag);

/// Display name for a t-root variable: "d1-d2" -> "g12", "d1+d2" -> "f12",
/// "2d1" -> "h1".
std::string display_name(const std::string& troot_key);

struct Ansatz {
    struct Class {
        std::string name;                  // name of the merged variable
        std::vector<std::string> members;  // t-root keys / variable names
        std::optional<Rational> value;     // fixed value, if any
    };
    std::vector<Class> classes;
};

/// Merges and substitutes variables; collapses equations that become equal
/// after normalization. Throws std::invalid_argument on an inconsistent
/// ansatz (an equation degenerating to 0 = nonzero).
PolySystem specialize(const PolySystem& sys, const Ansatz& ansatz);

struct ClosedFormRoot {
    QuadValue h;
    QuadValue c;
    int multiplicity = 1;
};

struct QuadraticSolveOutcome {
    bool has_real_roots = false;
    std::string note;
    Rational qa, qb, qc;   // normalized quadratic qa*h^2 + qb*h + qc = 0
    Rational discriminant; // qb^2 - 4*qa*qc
    std::vector<ClosedFormRoot> roots;       // positive h only
    int discarded_nonpositive = 0;
};

/// For a system of exactly two equations in two variables {h, c}, linear in
/// c: eliminates c, solves the quadratic exactly, back-substitutes c.
QuadraticSolveOutcome solve_quadratic_pair(const PolySystem& sys);

/// Evaluates a polynomial over quadratic-field values.
QuadValue eval_quad(const Polynomial& p, const std::vector<QuadValue>& x);

}  // namespace flagein
