#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace gpk {

// Individual terms: first-order variables and context/parameter constants.
struct Term {
    enum class Kind : uint8_t { var, constant } kind = Kind::var;
    std::string name;
    bool operator==(const Term& o) const { return kind == o.kind && name == o.name; }
};

inline Term tvar(std::string n) { return {Term::Kind::var, std::move(n)}; }
inline Term tconst(std::string n) { return {Term::Kind::constant, std::move(n)}; }

// Element-set expressions, the arguments of native predicate atoms. They
// evaluate to a subset of the universe against the current assignment.
struct SetExpr {
    enum class Kind : uint8_t {
        rel_var,      // monadic relation variable, by name
        all_vertices,
        all_edges,
        empty,
        single,       // {term}
        set_union,
        set_diff,
        before,       // {x ∈ base : x ≺_O t}
    };
    Kind kind;
    std::string name;                          // rel_var
    Term term;                                 // single / before
    std::shared_ptr<const SetExpr> lhs, rhs;   // union/diff; before uses lhs
};

SetExpr set_rel_var(std::string name);
SetExpr set_all_vertices();
SetExpr set_all_edges();
SetExpr set_empty();
SetExpr set_single(Term t);
SetExpr set_union(SetExpr a, SetExpr b);
SetExpr set_diff(SetExpr a, SetExpr b);
SetExpr set_before(SetExpr base, Term t);

// Built-in predicates with combinatorial implementations (union-find / DFS).
// Guard evaluation substitutes these for their defining SOL formulas; the
// agreement between the two is itself under test.
enum class NativeKind : uint8_t {
    bridge,            // bridge(e)
    connected,         // connected(S, s, t)
    cycle,             // cycle(S)
    spanning_forest,   // spanning_forest(F)
    cycle_path_cover,  // cycle_path_cover(B)           (directed)
    in_touching,       // x ∈ Touching(D, S)
    in_last_in_comp,   // x ∈ LastInComp(D, S)          (needs the order)
    on_cycle,          // on_cycle(v, B)                (directed)
};

const char* native_name(NativeKind k);

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class Kind : uint8_t {
        literal,       // boolean constant
        equal,         // terms[0] = terms[1]
        rel_atom,      // symbol(terms...)
        rel_var_atom,  // symbol is a relation VARIABLE
        native_atom,   // native(kind; terms...; sets...)
        neg,
        conj,
        disj,
        implies,
        exists_fo,
        forall_fo,
        exists_so,     // symbol = relation variable name, arity set
        forall_so,
    };

    Kind kind;
    bool value = false;           // literal
    std::string symbol;           // relation symbol / variable names
    int arity = 0;                // SO quantifier arity
    NativeKind native = NativeKind::bridge;
    std::vector<Term> terms;
    std::vector<SetExpr> sets;
    std::vector<FormulaPtr> children;
};

// Constructors.
FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_equal(Term a, Term b);
FormulaPtr f_rel(std::string symbol, std::vector<Term> terms);
FormulaPtr f_rel_var(std::string var, std::vector<Term> terms);
FormulaPtr f_native(NativeKind k, std::vector<Term> terms, std::vector<SetExpr> sets);
FormulaPtr f_not(FormulaPtr a);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_exists(std::string var, FormulaPtr body);
FormulaPtr f_forall(std::string var, FormulaPtr body);
FormulaPtr f_exists_so(std::string var, int arity, FormulaPtr body);
FormulaPtr f_forall_so(std::string var, int arity, FormulaPtr body);
FormulaPtr f_and_all(std::vector<FormulaPtr> fs);   // empty -> true
FormulaPtr f_or_all(std::vector<FormulaPtr> fs);    // empty -> false

// Counting quantifier "exactly k distinct witnesses", expanded with fresh
// variables. k=0 becomes ∀y ¬f.
FormulaPtr exists_exactly(int k, const std::string& var, FormulaPtr body);

// Free individual variables / free relation variables.
std::set<std::string> free_fo_vars(const Formula& f);
std::set<std::string> free_so_vars(const Formula& f);
std::set<std::string> constants_used(const Formula& f);

// Quantifier nesting depth, FO and SO quantifiers both counting 1.
int quantifier_rank(const Formula& f);

// Capture-avoiding substitution of individual terms for free variables.
FormulaPtr substitute(const FormulaPtr& f, const std::vector<std::pair<std::string, Term>>& subst);

// Membership of a term in a set expression, unfolded to a plain formula.
FormulaPtr set_membership(const Term& t, const SetExpr& s);

// Substitution of set expressions for free monadic relation variables: used
// where the variable appears as a set and unfolded through set_membership
// where it appears as an atom. First-order binders that would capture a
// variable free in a replacement are renamed; a second-order binder clashing
// with a replacement's relation variable is an error.
FormulaPtr substitute_sets(const FormulaPtr& f,
                           const std::vector<std::pair<std::string, SetExpr>>& subst);

// DSL rendering (parseable by parse_formula).
std::string to_text(const Formula& f);
std::string to_text(const SetExpr& s);

} // namespace gpk
