#include "gpk/formula.hpp"

#include <atomic>
#include <sstream>

#include "gpk/error.hpp"

namespace gpk {

namespace {
std::shared_ptr<const SetExpr> box(SetExpr s) { return std::make_shared<const SetExpr>(std::move(s)); }
} // namespace

SetExpr set_rel_var(std::string name) {
    SetExpr s;
    s.kind = SetExpr::Kind::rel_var;
    s.name = std::move(name);
    return s;
}
SetExpr set_all_vertices() { SetExpr s; s.kind = SetExpr::Kind::all_vertices; return s; }
SetExpr set_all_edges() { SetExpr s; s.kind = SetExpr::Kind::all_edges; return s; }
SetExpr set_empty() { SetExpr s; s.kind = SetExpr::Kind::empty; return s; }
SetExpr set_single(Term t) {
    SetExpr s;
    s.kind = SetExpr::Kind::single;
    s.term = std::move(t);
    return s;
}
SetExpr set_union(SetExpr a, SetExpr b) {
    SetExpr s;
    s.kind = SetExpr::Kind::set_union;
    s.lhs = box(std::move(a));
    s.rhs = box(std::move(b));
    return s;
}
SetExpr set_diff(SetExpr a, SetExpr b) {
    SetExpr s;
    s.kind = SetExpr::Kind::set_diff;
    s.lhs = box(std::move(a));
    s.rhs = box(std::move(b));
    return s;
}
SetExpr set_before(SetExpr base, Term t) {
    SetExpr s;
    s.kind = SetExpr::Kind::before;
    s.lhs = box(std::move(base));
    s.term = std::move(t);
    return s;
}

const char* native_name(NativeKind k) {
    switch (k) {
        case NativeKind::bridge: return "bridge";
        case NativeKind::connected: return "connected";
        case NativeKind::cycle: return "cycle";
        case NativeKind::spanning_forest: return "spanning-forest";
        case NativeKind::cycle_path_cover: return "cycle-path-cover";
        case NativeKind::in_touching: return "in-touching";
        case NativeKind::in_last_in_comp: return "in-last-in-comp";
        case NativeKind::on_cycle: return "on-cycle";
    }
    return "?";
}

namespace {
FormulaPtr mk(Formula f) { return std::make_shared<const Formula>(std::move(f)); }
} // namespace

FormulaPtr f_true() {
    Formula f;
    f.kind = Formula::Kind::literal;
    f.value = true;
    return mk(std::move(f));
}

FormulaPtr f_false() {
    Formula f;
    f.kind = Formula::Kind::literal;
    f.value = false;
    return mk(std::move(f));
}

FormulaPtr f_equal(Term a, Term b) {
    Formula f;
    f.kind = Formula::Kind::equal;
    f.terms = {std::move(a), std::move(b)};
    return mk(std::move(f));
}

FormulaPtr f_rel(std::string symbol, std::vector<Term> terms) {
    Formula f;
    f.kind = Formula::Kind::rel_atom;
    f.symbol = std::move(symbol);
    f.terms = std::move(terms);
    return mk(std::move(f));
}

FormulaPtr f_rel_var(std::string var, std::vector<Term> terms) {
    Formula f;
    f.kind = Formula::Kind::rel_var_atom;
    f.symbol = std::move(var);
    f.terms = std::move(terms);
    return mk(std::move(f));
}

FormulaPtr f_native(NativeKind k, std::vector<Term> terms, std::vector<SetExpr> sets) {
    Formula f;
    f.kind = Formula::Kind::native_atom;
    f.native = k;
    f.terms = std::move(terms);
    f.sets = std::move(sets);
    return mk(std::move(f));
}

FormulaPtr f_not(FormulaPtr a) {
    Formula f;
    f.kind = Formula::Kind::neg;
    f.children = {std::move(a)};
    return mk(std::move(f));
}

namespace {
FormulaPtr binary(Formula::Kind k, FormulaPtr a, FormulaPtr b) {
    Formula f;
    f.kind = k;
    f.children = {std::move(a), std::move(b)};
    return mk(std::move(f));
}

FormulaPtr quantifier(Formula::Kind k, std::string var, int arity, FormulaPtr body) {
    Formula f;
    f.kind = k;
    f.symbol = std::move(var);
    f.arity = arity;
    f.children = {std::move(body)};
    return mk(std::move(f));
}
} // namespace

FormulaPtr f_and(FormulaPtr a, FormulaPtr b) { return binary(Formula::Kind::conj, std::move(a), std::move(b)); }
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) { return binary(Formula::Kind::disj, std::move(a), std::move(b)); }
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) { return binary(Formula::Kind::implies, std::move(a), std::move(b)); }
FormulaPtr f_exists(std::string var, FormulaPtr body) { return quantifier(Formula::Kind::exists_fo, std::move(var), 0, std::move(body)); }
FormulaPtr f_forall(std::string var, FormulaPtr body) { return quantifier(Formula::Kind::forall_fo, std::move(var), 0, std::move(body)); }
FormulaPtr f_exists_so(std::string var, int arity, FormulaPtr body) { return quantifier(Formula::Kind::exists_so, std::move(var), arity, std::move(body)); }
FormulaPtr f_forall_so(std::string var, int arity, FormulaPtr body) { return quantifier(Formula::Kind::forall_so, std::move(var), arity, std::move(body)); }

FormulaPtr f_and_all(std::vector<FormulaPtr> fs) {
    if (fs.empty()) return f_true();
    FormulaPtr r = fs[0];
    for (size_t i = 1; i < fs.size(); ++i) r = f_and(r, fs[i]);
    return r;
}

FormulaPtr f_or_all(std::vector<FormulaPtr> fs) {
    if (fs.empty()) return f_false();
    FormulaPtr r = fs[0];
    for (size_t i = 1; i < fs.size(); ++i) r = f_or(r, fs[i]);
    return r;
}

FormulaPtr exists_exactly(int k, const std::string& var, FormulaPtr body) {
    if (k < 0) throw Error("exists-exactly needs k >= 0");
    auto instance = [&](const std::string& v) {
        return substitute(body, {{var, tvar(v)}});
    };
    if (k == 0) {
        std::string y = var + "$0";
        return f_forall(y, f_not(instance(y)));
    }
    std::vector<std::string> xs;
    for (int i = 1; i <= k; ++i) xs.push_back(var + "$" + std::to_string(i));
    std::vector<FormulaPtr> parts;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            parts.push_back(f_not(f_equal(tvar(xs[static_cast<size_t>(i)]), tvar(xs[static_cast<size_t>(j)]))));
    for (auto& x : xs) parts.push_back(instance(x));
    std::string y = var + "$y";
    std::vector<FormulaPtr> antecedent;
    for (auto& x : xs) antecedent.push_back(f_not(f_equal(tvar(y), tvar(x))));
    parts.push_back(f_forall(y, f_implies(f_and_all(std::move(antecedent)), f_not(instance(y)))));
    FormulaPtr out = f_and_all(std::move(parts));
    for (int i = k - 1; i >= 0; --i) out = f_exists(xs[static_cast<size_t>(i)], out);
    return out;
}

namespace {
void collect_set_vars(const SetExpr& s, std::set<std::string>& so, std::set<std::string>& fo,
                      std::set<std::string>& consts, const std::set<std::string>& bound_fo,
                      const std::set<std::string>& bound_so) {
    switch (s.kind) {
        case SetExpr::Kind::rel_var:
            if (!bound_so.count(s.name)) so.insert(s.name);
            break;
        case SetExpr::Kind::single:
        case SetExpr::Kind::before:
            if (s.term.kind == Term::Kind::var) {
                if (!bound_fo.count(s.term.name)) fo.insert(s.term.name);
            } else {
                consts.insert(s.term.name);
            }
            if (s.lhs) collect_set_vars(*s.lhs, so, fo, consts, bound_fo, bound_so);
            break;
        case SetExpr::Kind::set_union:
        case SetExpr::Kind::set_diff:
            collect_set_vars(*s.lhs, so, fo, consts, bound_fo, bound_so);
            collect_set_vars(*s.rhs, so, fo, consts, bound_fo, bound_so);
            break;
        default:
            break;
    }
}

void collect(const Formula& f, std::set<std::string>& fo, std::set<std::string>& so,
             std::set<std::string>& consts, std::set<std::string> bound_fo,
             std::set<std::string> bound_so) {
    auto term_visit = [&](const Term& t) {
        if (t.kind == Term::Kind::var) {
            if (!bound_fo.count(t.name)) fo.insert(t.name);
        } else {
            consts.insert(t.name);
        }
    };
    switch (f.kind) {
        case Formula::Kind::literal:
            break;
        case Formula::Kind::equal:
        case Formula::Kind::rel_atom:
            for (auto& t : f.terms) term_visit(t);
            break;
        case Formula::Kind::rel_var_atom:
            if (!bound_so.count(f.symbol)) so.insert(f.symbol);
            for (auto& t : f.terms) term_visit(t);
            break;
        case Formula::Kind::native_atom:
            for (auto& t : f.terms) term_visit(t);
            for (auto& s : f.sets) collect_set_vars(s, so, fo, consts, bound_fo, bound_so);
            break;
        case Formula::Kind::neg:
        case Formula::Kind::conj:
        case Formula::Kind::disj:
        case Formula::Kind::implies:
            for (auto& c : f.children) collect(*c, fo, so, consts, bound_fo, bound_so);
            break;
        case Formula::Kind::exists_fo:
        case Formula::Kind::forall_fo: {
            auto b = bound_fo;
            b.insert(f.symbol);
            collect(*f.children[0], fo, so, consts, std::move(b), bound_so);
            break;
        }
        case Formula::Kind::exists_so:
        case Formula::Kind::forall_so: {
            auto b = bound_so;
            b.insert(f.symbol);
            collect(*f.children[0], fo, so, consts, bound_fo, std::move(b));
            break;
        }
    }
}
} // namespace

std::set<std::string> free_fo_vars(const Formula& f) {
    std::set<std::string> fo, so, consts;
    collect(f, fo, so, consts, {}, {});
    return fo;
}

std::set<std::string> free_so_vars(const Formula& f) {
    std::set<std::string> fo, so, consts;
    collect(f, fo, so, consts, {}, {});
    return so;
}

std::set<std::string> constants_used(const Formula& f) {
    std::set<std::string> fo, so, consts;
    collect(f, fo, so, consts, {}, {});
    return consts;
}

int quantifier_rank(const Formula& f) {
    switch (f.kind) {
        case Formula::Kind::literal:
        case Formula::Kind::equal:
        case Formula::Kind::rel_atom:
        case Formula::Kind::rel_var_atom:
        case Formula::Kind::native_atom:
            return 0;
        case Formula::Kind::neg:
            return quantifier_rank(*f.children[0]);
        case Formula::Kind::conj:
        case Formula::Kind::disj:
        case Formula::Kind::implies:
            return std::max(quantifier_rank(*f.children[0]), quantifier_rank(*f.children[1]));
        case Formula::Kind::exists_fo:
        case Formula::Kind::forall_fo:
        case Formula::Kind::exists_so:
        case Formula::Kind::forall_so:
            return 1 + quantifier_rank(*f.children[0]);
    }
    return 0;
}

namespace {

std::atomic<uint64_t> g_fresh_counter{0};

std::string fresh_var(const std::string& base) {
    return base + "$r" + std::to_string(g_fresh_counter.fetch_add(1));
}

Term subst_term(const Term& t, const std::vector<std::pair<std::string, Term>>& su) {
    if (t.kind == Term::Kind::var) {
        for (auto& [from, to] : su)
            if (from == t.name) return to;
    }
    return t;
}

SetExpr subst_set(const SetExpr& s, const std::vector<std::pair<std::string, Term>>& su) {
    SetExpr r = s;
    switch (s.kind) {
        case SetExpr::Kind::single:
            r.term = subst_term(s.term, su);
            break;
        case SetExpr::Kind::before:
            r.term = subst_term(s.term, su);
            r.lhs = box(subst_set(*s.lhs, su));
            break;
        case SetExpr::Kind::set_union:
        case SetExpr::Kind::set_diff:
            r.lhs = box(subst_set(*s.lhs, su));
            r.rhs = box(subst_set(*s.rhs, su));
            break;
        default:
            break;
    }
    return r;
}

bool term_mentions_var(const Term& t, const std::string& v) {
    return t.kind == Term::Kind::var && t.name == v;
}

bool subst_mentions(const std::vector<std::pair<std::string, Term>>& su, const std::string& v) {
    for (auto& [from, to] : su)
        if (term_mentions_var(to, v)) return true;
    return false;
}

FormulaPtr subst_rec(const FormulaPtr& f, std::vector<std::pair<std::string, Term>> su) {
    // Drop no-op entries early.
    for (size_t i = su.size(); i-- > 0;)
        if (su[i].second.kind == Term::Kind::var && su[i].second.name == su[i].first)
            su.erase(su.begin() + static_cast<long>(i));
    if (su.empty()) return f;
    Formula out = *f;
    switch (f->kind) {
        case Formula::Kind::literal:
            return f;
        case Formula::Kind::equal:
        case Formula::Kind::rel_atom:
        case Formula::Kind::rel_var_atom:
            for (auto& t : out.terms) t = subst_term(t, su);
            return mk(std::move(out));
        case Formula::Kind::native_atom:
            for (auto& t : out.terms) t = subst_term(t, su);
            for (auto& s : out.sets) s = subst_set(s, su);
            return mk(std::move(out));
        case Formula::Kind::neg:
        case Formula::Kind::conj:
        case Formula::Kind::disj:
        case Formula::Kind::implies:
            for (auto& c : out.children) c = subst_rec(c, su);
            return mk(std::move(out));
        case Formula::Kind::exists_fo:
        case Formula::Kind::forall_fo: {
            std::string v = f->symbol;
            // The binder shadows v in its body.
            auto inner = su;
            for (size_t i = inner.size(); i-- > 0;)
                if (inner[i].first == v) inner.erase(inner.begin() + static_cast<long>(i));
            if (subst_mentions(inner, v)) {
                // capture: rename the bound variable first
                std::string nv = fresh_var(v);
                FormulaPtr renamed = subst_rec(f->children[0], {{v, tvar(nv)}});
                out.symbol = nv;
                out.children[0] = subst_rec(renamed, inner);
            } else {
                out.children[0] = subst_rec(f->children[0], inner);
            }
            return mk(std::move(out));
        }
        case Formula::Kind::exists_so:
        case Formula::Kind::forall_so:
            // SO binders never capture individual terms.
            out.children[0] = subst_rec(f->children[0], su);
            return mk(std::move(out));
    }
    return f;
}

} // namespace

FormulaPtr substitute(const FormulaPtr& f, const std::vector<std::pair<std::string, Term>>& subst) {
    return subst_rec(f, subst);
}

FormulaPtr set_membership(const Term& t, const SetExpr& s) {
    switch (s.kind) {
        case SetExpr::Kind::rel_var: return f_rel_var(s.name, {t});
        case SetExpr::Kind::all_vertices: return f_rel("PV", {t});
        case SetExpr::Kind::all_edges: return f_rel("PE", {t});
        case SetExpr::Kind::empty: return f_false();
        case SetExpr::Kind::single: return f_equal(t, s.term);
        case SetExpr::Kind::set_union:
            return f_or(set_membership(t, *s.lhs), set_membership(t, *s.rhs));
        case SetExpr::Kind::set_diff:
            return f_and(set_membership(t, *s.lhs), f_not(set_membership(t, *s.rhs)));
        case SetExpr::Kind::before:
            return f_and(set_membership(t, *s.lhs), f_rel("O", {t, s.term}));
    }
    throw Error("unhandled set expression");
}

namespace {

using SetSubst = std::vector<std::pair<std::string, SetExpr>>;

const SetExpr* set_lookup(const SetSubst& su, const std::string& name) {
    for (auto& [k, v] : su)
        if (k == name) return &v;
    return nullptr;
}

SetExpr set_subst_rec(const SetExpr& s, const SetSubst& su) {
    switch (s.kind) {
        case SetExpr::Kind::rel_var:
            if (const SetExpr* r = set_lookup(su, s.name)) return *r;
            return s;
        case SetExpr::Kind::set_union:
        case SetExpr::Kind::set_diff: {
            SetExpr out = s;
            out.lhs = std::make_shared<SetExpr>(set_subst_rec(*s.lhs, su));
            out.rhs = std::make_shared<SetExpr>(set_subst_rec(*s.rhs, su));
            return out;
        }
        case SetExpr::Kind::before: {
            SetExpr out = s;
            out.lhs = std::make_shared<SetExpr>(set_subst_rec(*s.lhs, su));
            return out;
        }
        default:
            return s;
    }
}

void set_free_terms(const SetExpr& s, std::set<std::string>& fo) {
    switch (s.kind) {
        case SetExpr::Kind::single:
        case SetExpr::Kind::before:
            if (s.term.kind == Term::Kind::var) fo.insert(s.term.name);
            if (s.lhs) set_free_terms(*s.lhs, fo);
            break;
        case SetExpr::Kind::set_union:
        case SetExpr::Kind::set_diff:
            set_free_terms(*s.lhs, fo);
            set_free_terms(*s.rhs, fo);
            break;
        default:
            break;
    }
}

FormulaPtr set_subst_formula(const FormulaPtr& f, SetSubst su) {
    if (su.empty()) return f;
    Formula out = *f;
    switch (f->kind) {
        case Formula::Kind::literal:
        case Formula::Kind::equal:
        case Formula::Kind::rel_atom:
            return f;
        case Formula::Kind::rel_var_atom:
            if (const SetExpr* r = set_lookup(su, f->symbol)) {
                if (f->terms.size() != 1)
                    throw Error("set substituted for non-monadic variable " + f->symbol);
                return set_membership(f->terms[0], *r);
            }
            return f;
        case Formula::Kind::native_atom:
            for (auto& s : out.sets) s = set_subst_rec(s, su);
            return mk(std::move(out));
        case Formula::Kind::neg:
        case Formula::Kind::conj:
        case Formula::Kind::disj:
        case Formula::Kind::implies:
            for (auto& c : out.children) c = set_subst_formula(c, su);
            return mk(std::move(out));
        case Formula::Kind::exists_fo:
        case Formula::Kind::forall_fo: {
            // Rename the binder when a replacement mentions it as a term.
            std::set<std::string> fo;
            for (auto& [k, v] : su) {
                (void)k;
                set_free_terms(v, fo);
            }
            if (fo.count(f->symbol)) {
                std::string nv = fresh_var(f->symbol);
                out.symbol = nv;
                out.children[0] =
                    set_subst_formula(subst_rec(f->children[0], {{f->symbol, tvar(nv)}}), su);
            } else {
                out.children[0] = set_subst_formula(f->children[0], su);
            }
            return mk(std::move(out));
        }
        case Formula::Kind::exists_so:
        case Formula::Kind::forall_so: {
            auto inner = su;
            for (size_t i = inner.size(); i-- > 0;)
                if (inner[i].first == f->symbol) inner.erase(inner.begin() + static_cast<long>(i));
            for (auto& [k, v] : inner) {
                (void)k;
                std::set<std::string> so, fo2, consts;
                std::set<std::string> none;
                collect_set_vars(v, so, fo2, consts, none, none);
                if (so.count(f->symbol))
                    throw Error("relation binder " + f->symbol + " captures a substituted set");
            }
            out.children[0] = set_subst_formula(f->children[0], inner);
            return mk(std::move(out));
        }
    }
    return f;
}

} // namespace

FormulaPtr substitute_sets(const FormulaPtr& f,
                           const std::vector<std::pair<std::string, SetExpr>>& subst) {
    return set_subst_formula(f, subst);
}

namespace {
// Constants carry an @ sigil so the rendering stays parseable.
std::string term_text(const Term& t) {
    return t.kind == Term::Kind::constant ? "@" + t.name : t.name;
}
} // namespace

std::string to_text(const SetExpr& s) {
    switch (s.kind) {
        case SetExpr::Kind::rel_var: return s.name;
        case SetExpr::Kind::all_vertices: return "verts";
        case SetExpr::Kind::all_edges: return "edges";
        case SetExpr::Kind::empty: return "empty-set";
        case SetExpr::Kind::single: return "(single " + term_text(s.term) + ")";
        case SetExpr::Kind::set_union: return "(union " + to_text(*s.lhs) + " " + to_text(*s.rhs) + ")";
        case SetExpr::Kind::set_diff: return "(diff " + to_text(*s.lhs) + " " + to_text(*s.rhs) + ")";
        case SetExpr::Kind::before: return "(before " + to_text(*s.lhs) + " " + term_text(s.term) + ")";
    }
    return "?";
}

std::string to_text(const Formula& f) {
    std::ostringstream os;
    switch (f.kind) {
        case Formula::Kind::literal:
            return f.value ? "true" : "false";
        case Formula::Kind::equal:
            return "(= " + term_text(f.terms[0]) + " " + term_text(f.terms[1]) + ")";
        case Formula::Kind::rel_atom: {
            os << "(rel " << f.symbol;
            for (auto& t : f.terms) os << " " << term_text(t);
            os << ")";
            return os.str();
        }
        case Formula::Kind::rel_var_atom: {
            os << "(rvar " << f.symbol;
            for (auto& t : f.terms) os << " " << term_text(t);
            os << ")";
            return os.str();
        }
        case Formula::Kind::native_atom: {
            os << "(native " << native_name(f.native);
            for (auto& s : f.sets) os << " " << to_text(s);
            for (auto& t : f.terms) os << " " << term_text(t);
            os << ")";
            return os.str();
        }
        case Formula::Kind::neg:
            return "(not " + to_text(*f.children[0]) + ")";
        case Formula::Kind::conj:
            return "(and " + to_text(*f.children[0]) + " " + to_text(*f.children[1]) + ")";
        case Formula::Kind::disj:
            return "(or " + to_text(*f.children[0]) + " " + to_text(*f.children[1]) + ")";
        case Formula::Kind::implies:
            return "(implies " + to_text(*f.children[0]) + " " + to_text(*f.children[1]) + ")";
        case Formula::Kind::exists_fo:
            return "(exists " + f.symbol + " " + to_text(*f.children[0]) + ")";
        case Formula::Kind::forall_fo:
            return "(forall " + f.symbol + " " + to_text(*f.children[0]) + ")";
        case Formula::Kind::exists_so:
            return "(existsR " + f.symbol + " " + std::to_string(f.arity) + " " + to_text(*f.children[0]) + ")";
        case Formula::Kind::forall_so:
            return "(forallR " + f.symbol + " " + std::to_string(f.arity) + " " + to_text(*f.children[0]) + ")";
    }
    return "?";
}

} // namespace gpk
