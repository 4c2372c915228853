#include "gpk/parser.hpp"

#include <atomic>
#include <cstdlib>

#include "gpk/error.hpp"

namespace gpk {

namespace {

[[noreturn]] void fail(const Sexpr& at, const std::string& msg) {
  throw ParseError(msg, at.line, at.col);
}

const Sexpr& item(const Sexpr& e, size_t i) {
  if (!e.is_list() || e.items.size() <= i)
    fail(e, "form is too short");
  return e.items[i];
}

std::string atom_of(const Sexpr& e, const char* what) {
  if (e.kind != Sexpr::Kind::atom) fail(e, std::string("expected ") + what);
  return e.atom;
}

int int_of(const Sexpr& e) {
  std::string a = atom_of(e, "an integer");
  char* end = nullptr;
  long v = std::strtol(a.c_str(), &end, 10);
  if (end == a.c_str() || *end != '\0') fail(e, "expected an integer, got " + a);
  return static_cast<int>(v);
}

std::string head_of(const Sexpr& e) {
  if (!e.is_list() || e.items.empty() || e.items[0].kind != Sexpr::Kind::atom)
    fail(e, "expected a (head ...) form");
  return e.items[0].atom;
}

void expect_len(const Sexpr& e, size_t n) {
  if (e.items.size() != n)
    fail(e, head_of(e) + " takes " + std::to_string(n - 1) + " arguments");
}

std::vector<std::string> var_list(const Sexpr& e) {
  std::vector<std::string> vars;
  if (e.kind == Sexpr::Kind::atom) {
    vars.push_back(e.atom);
    return vars;
  }
  for (const auto& v : e.items) vars.push_back(atom_of(v, "a variable"));
  return vars;
}

std::atomic<uint64_t> g_parser_fresh{0};

std::string parser_fresh(const char* base) {
  return std::string(base) + "$p" + std::to_string(g_parser_fresh.fetch_add(1));
}

FormulaPtr membership(const Term& t, const SetExpr& s) { return set_membership(t, s); }

struct NativeSig {
  NativeKind kind;
  int sets;
  int terms;
};

const NativeSig* native_signature(const std::string& name) {
  static const std::map<std::string, NativeSig> table = {
      {"bridge", {NativeKind::bridge, 0, 1}},
      {"connected", {NativeKind::connected, 1, 2}},
      {"cycle", {NativeKind::cycle, 1, 0}},
      {"spanning-forest", {NativeKind::spanning_forest, 1, 0}},
      {"cycle-path-cover", {NativeKind::cycle_path_cover, 1, 0}},
      {"in-touching", {NativeKind::in_touching, 2, 1}},
      {"in-last-in-comp", {NativeKind::in_last_in_comp, 2, 1}},
      {"on-cycle", {NativeKind::on_cycle, 1, 1}},
  };
  auto it = table.find(name);
  return it == table.end() ? nullptr : &it->second;
}

} // namespace

Term parse_term(const Sexpr& e) {
  std::string a = atom_of(e, "a term");
  if (a.empty()) fail(e, "empty term");
  if (a[0] == '@') {
    if (a.size() == 1) fail(e, "constant needs a name after @");
    return tconst(a.substr(1));
  }
  return tvar(a);
}

SetExpr parse_set(const Sexpr& e) {
  if (e.kind == Sexpr::Kind::atom) {
    if (e.atom == "verts") return set_all_vertices();
    if (e.atom == "edges") return set_all_edges();
    if (e.atom == "empty-set") return set_empty();
    return set_rel_var(e.atom);
  }
  std::string h = head_of(e);
  if (h == "single") {
    expect_len(e, 2);
    return set_single(parse_term(item(e, 1)));
  }
  if (h == "union" || h == "diff") {
    if (e.items.size() < 3) fail(e, h + " needs at least two sets");
    SetExpr acc = parse_set(item(e, 1));
    for (size_t i = 2; i < e.items.size(); ++i) {
      SetExpr rhs = parse_set(e.items[i]);
      acc = h == "union" ? set_union(std::move(acc), std::move(rhs))
                         : set_diff(std::move(acc), std::move(rhs));
    }
    return acc;
  }
  if (h == "before") {
    expect_len(e, 3);
    return set_before(parse_set(item(e, 1)), parse_term(item(e, 2)));
  }
  fail(e, "unknown set form " + h);
}

FormulaPtr parse_formula(const Sexpr& e, const ParseCtx& ctx) {
  if (e.kind == Sexpr::Kind::atom) {
    if (e.atom == "true") return f_true();
    if (e.atom == "false") return f_false();
    fail(e, "expected a formula, got atom " + e.atom);
  }
  std::string h = head_of(e);
  if (h == "=") {
    expect_len(e, 3);
    return f_equal(parse_term(item(e, 1)), parse_term(item(e, 2)));
  }
  if (h == "rel" || h == "rvar") {
    if (e.items.size() < 2) fail(e, h + " needs a symbol");
    std::string sym = atom_of(item(e, 1), "a relation symbol");
    std::vector<Term> ts;
    for (size_t i = 2; i < e.items.size(); ++i) ts.push_back(parse_term(e.items[i]));
    return h == "rel" ? f_rel(std::move(sym), std::move(ts))
                      : f_rel_var(std::move(sym), std::move(ts));
  }
  if (h == "native") {
    if (e.items.size() < 2) fail(e, "native needs a predicate name");
    std::string name = atom_of(item(e, 1), "a native predicate name");
    const NativeSig* sig = native_signature(name);
    if (!sig) fail(e, "unknown native predicate " + name);
    if ((int)e.items.size() != 2 + sig->sets + sig->terms)
      fail(e, "native " + name + " takes " + std::to_string(sig->sets) +
                  " set(s) then " + std::to_string(sig->terms) + " term(s)");
    std::vector<SetExpr> sets;
    std::vector<Term> terms;
    size_t i = 2;
    for (int k = 0; k < sig->sets; ++k) sets.push_back(parse_set(e.items[i++]));
    for (int k = 0; k < sig->terms; ++k) terms.push_back(parse_term(e.items[i++]));
    return f_native(sig->kind, std::move(terms), std::move(sets));
  }
  if (h == "not") {
    expect_len(e, 2);
    return f_not(parse_formula(item(e, 1), ctx));
  }
  if (h == "and" || h == "or") {
    std::vector<FormulaPtr> parts;
    for (size_t i = 1; i < e.items.size(); ++i)
      parts.push_back(parse_formula(e.items[i], ctx));
    return h == "and" ? f_and_all(std::move(parts)) : f_or_all(std::move(parts));
  }
  if (h == "implies") {
    expect_len(e, 3);
    return f_implies(parse_formula(item(e, 1), ctx), parse_formula(item(e, 2), ctx));
  }
  if (h == "exists" || h == "forall") {
    expect_len(e, 3);
    std::vector<std::string> vars = var_list(item(e, 1));
    if (vars.empty()) fail(e, h + " needs at least one variable");
    FormulaPtr body = parse_formula(item(e, 2), ctx);
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      body = h == "exists" ? f_exists(*it, std::move(body))
                           : f_forall(*it, std::move(body));
    return body;
  }
  if (h == "existsR" || h == "forallR") {
    expect_len(e, 4);
    std::string var = atom_of(item(e, 1), "a relation variable");
    int arity = int_of(item(e, 2));
    if (arity < 1) fail(e, "relation arity must be positive");
    FormulaPtr body = parse_formula(item(e, 3), ctx);
    return h == "existsR" ? f_exists_so(var, arity, std::move(body))
                          : f_forall_so(var, arity, std::move(body));
  }
  if (h == "exists-exactly") {
    expect_len(e, 4);
    int k = int_of(item(e, 1));
    std::string var = atom_of(item(e, 2), "a variable");
    return exists_exactly(k, var, parse_formula(item(e, 3), ctx));
  }
  if (h == "in") {
    expect_len(e, 3);
    return membership(parse_term(item(e, 1)), parse_set(item(e, 2)));
  }
  if (h == "subset") {
    expect_len(e, 3);
    SetExpr a = parse_set(item(e, 1));
    SetExpr b = parse_set(item(e, 2));
    std::string x = parser_fresh("x");
    return f_forall(x, f_implies(membership(tvar(x), a), membership(tvar(x), b)));
  }
  if (h == "call") {
    if (e.items.size() < 2) fail(e, "call needs a template name");
    std::string name = atom_of(item(e, 1), "a template name");
    auto it = ctx.formula_macros.find(name);
    if (it == ctx.formula_macros.end()) fail(e, "unknown formula template " + name);
    const auto& [args, body] = it->second;
    if (e.items.size() - 2 != args.size())
      fail(e, "template " + name + " takes " + std::to_string(args.size()) + " arguments");
    // An argument in set syntax binds the parameter as a set only; a bare
    // symbol binds it in both roles since the body fixes which one is used.
    std::vector<std::pair<std::string, Term>> term_su;
    std::vector<std::pair<std::string, SetExpr>> set_su;
    for (size_t i = 0; i < args.size(); ++i) {
      const Sexpr& arg = e.items[i + 2];
      bool set_syntax = false;
      if (arg.kind == Sexpr::Kind::list) {
        std::string ah = head_of(arg);
        set_syntax = ah == "union" || ah == "diff" || ah == "single" || ah == "before";
      } else {
        set_syntax = arg.atom == "verts" || arg.atom == "edges" || arg.atom == "empty-set";
      }
      if (set_syntax) {
        set_su.emplace_back(args[i], parse_set(arg));
      } else {
        Term t = parse_term(arg);
        term_su.emplace_back(args[i], t);
        if (t.kind == Term::Kind::var) set_su.emplace_back(args[i], set_rel_var(t.name));
      }
    }
    return substitute_sets(substitute(body, term_su), set_su);
  }
  fail(e, "unknown formula form " + h);
}

FormulaPtr parse_formula_text(const std::string& text, const ParseCtx& ctx) {
  return parse_formula(read_sexpr(text), ctx);
}

PolyExprPtr parse_poly_expr(const Sexpr& e, const ParseCtx& ctx) {
  if (e.kind == Sexpr::Kind::atom) fail(e, "expected an expression form");
  std::string h = head_of(e);
  if (h == "const") {
    std::string text;
    for (size_t i = 1; i < e.items.size(); ++i) {
      if (i > 1) text += " ";
      text += atom_of(e.items[i], "a polynomial token");
    }
    try {
      return pe_const(Polynomial::parse(text));
    } catch (const Error& err) {
      fail(e, err.what());
    }
  }
  if (h == "tv") {
    expect_len(e, 2);
    return pe_tv(parse_formula(item(e, 1), ctx));
  }
  if (h == "prod" || h == "sum") {
    std::vector<PolyExprPtr> parts;
    for (size_t i = 1; i < e.items.size(); ++i)
      parts.push_back(parse_poly_expr(e.items[i], ctx));
    return h == "prod" ? pe_product(std::move(parts)) : pe_sum(std::move(parts));
  }
  if (h == "prod-over" || h == "sum-over") {
    expect_len(e, 4);
    std::vector<std::string> vars = var_list(item(e, 1));
    FormulaPtr guard = parse_formula(item(e, 2), ctx);
    PolyExprPtr body = parse_poly_expr(item(e, 3), ctx);
    return h == "prod-over"
               ? pe_guarded_product(std::move(vars), std::move(guard), std::move(body))
               : pe_small_sum(std::move(vars), std::move(guard), std::move(body));
  }
  if (h == "sum-rel") {
    expect_len(e, 4);
    const Sexpr& binders = item(e, 1);
    if (!binders.is_list() || binders.items.empty())
      fail(binders, "sum-rel needs ((NAME arity)...) binders");
    std::vector<std::pair<std::string, int>> rel_vars;
    for (const auto& b : binders.items) {
      if (!b.is_list() || b.items.size() != 2)
        fail(b, "relation binder must be (NAME arity)");
      rel_vars.emplace_back(atom_of(b.items[0], "a relation variable"), int_of(b.items[1]));
    }
    FormulaPtr guard = parse_formula(item(e, 2), ctx);
    PolyExprPtr body = parse_poly_expr(item(e, 3), ctx);
    return pe_large_sum(std::move(rel_vars), std::move(guard), std::move(body));
  }
  if (h == "card-power") {
    expect_len(e, 4);
    std::string ind = atom_of(item(e, 1), "an indeterminate");
    std::vector<std::string> vars = var_list(item(e, 2));
    return pe_card_power(ind, std::move(vars), parse_formula(item(e, 3), ctx));
  }
  if (h == "card-factorial") {
    expect_len(e, 3);
    std::string var = atom_of(item(e, 1), "a variable");
    return pe_card_factorial(var, parse_formula(item(e, 2), ctx));
  }
  if (h == "falling-power") {
    expect_len(e, 4);
    std::string ind = atom_of(item(e, 1), "an indeterminate");
    std::string var = atom_of(item(e, 2), "a variable");
    return pe_falling_power(ind, var, parse_formula(item(e, 3), ctx));
  }
  fail(e, "unknown expression form " + h);
}

PolyExprPtr parse_poly_expr_text(const std::string& text, const ParseCtx& ctx) {
  return parse_poly_expr(read_sexpr(text), ctx);
}

namespace {

// Clause bodies shared by (scheme ...), (define-scheme ...) and the
// anonymous scheme inside a rule.
void parse_scheme_clauses(const Sexpr& e, size_t first, TranslationScheme& sch,
                          const ParseCtx& ctx) {
  for (size_t i = first; i < e.items.size(); ++i) {
    const Sexpr& c = e.items[i];
    std::string h = head_of(c);
    if (h == "source") {
      expect_len(c, 2);
      sch.source = vocab_from_name(atom_of(item(c, 1), "a vocabulary"));
    } else if (h == "target") {
      expect_len(c, 2);
      sch.target = vocab_from_name(atom_of(item(c, 1), "a vocabulary"));
    } else if (h == "params") {
      for (size_t j = 1; j < c.items.size(); ++j) {
        Term t = parse_term(c.items[j]);
        if (t.kind != Term::Kind::constant) fail(c.items[j], "params must be @constants");
        sch.params.push_back(t.name);
      }
    } else if (h == "domain") {
      expect_len(c, 3);
      std::vector<std::string> vars = var_list(item(c, 1));
      if (vars.size() != 1) fail(c, "domain takes one variable");
      sch.domain_var = vars[0];
      sch.domain = parse_formula(item(c, 2), ctx);
    } else if (h == "relation") {
      expect_len(c, 4);
      TranslationScheme::RelClause rc;
      rc.symbol = atom_of(item(c, 1), "a relation symbol");
      rc.vars = var_list(item(c, 2));
      rc.body = parse_formula(item(c, 3), ctx);
      sch.relations.push_back(std::move(rc));
    } else {
      fail(c, "unknown scheme clause " + h);
    }
  }
  if (!sch.domain) fail(e, "scheme " + sch.name + " lacks a domain clause");
}

} // namespace

TranslationScheme parse_scheme(const Sexpr& e, const ParseCtx& ctx) {
  if (!e.is_form("scheme") && !e.is_form("define-scheme"))
    fail(e, "expected a (scheme ...) form");
  TranslationScheme sch;
  sch.name = atom_of(item(e, 1), "a scheme name");
  parse_scheme_clauses(e, 2, sch, ctx);
  return sch;
}

RecursiveDefinition parse_recursive_definition(const Sexpr& e, const ParseCtx& ctx) {
  if (!e.is_form("recursive-definition"))
    fail(e, "expected a (recursive-definition ...) form");
  RecursiveDefinition def;
  def.name = atom_of(item(e, 1), "a definition name");
  bool saw_order = false;
  for (size_t i = 2; i < e.items.size(); ++i) {
    const Sexpr& c = e.items[i];
    std::string h = head_of(c);
    if (h == "vocabulary") {
      expect_len(c, 2);
      def.vocab = vocab_from_name(atom_of(item(c, 1), "a vocabulary"));
    } else if (h == "context") {
      expect_len(c, 2);
      Term t = parse_term(item(c, 1));
      if (t.kind != Term::Kind::constant) fail(c, "context must be an @constant");
      def.context_param = t.name;
    } else if (h == "context-arity") {
      expect_len(c, 2);
      def.context_arity = int_of(item(c, 1));
      if (def.context_arity != 1)
        fail(c, "only context arity 1 is supported");
    } else if (h == "order") {
      expect_len(c, 2);
      def.order_constraint = parse_formula(item(c, 1), ctx);
      saw_order = true;
    } else if (h == "empty-value") {
      std::string text;
      for (size_t j = 1; j < c.items.size(); ++j) {
        if (j > 1) text += " ";
        text += atom_of(c.items[j], "a polynomial token");
      }
      def.empty_value = Polynomial::parse(text);
    } else if (h == "rule") {
      GuardedDeconstruction rule;
      rule.name = atom_of(item(c, 1), "a rule name");
      bool saw_guard = false, saw_scheme = false, saw_coeff = false;
      for (size_t j = 2; j < c.items.size(); ++j) {
        const Sexpr& rc = c.items[j];
        std::string rh = head_of(rc);
        if (rh == "guard") {
          expect_len(rc, 2);
          rule.guard = parse_formula(item(rc, 1), ctx);
          saw_guard = true;
        } else if (rh == "scheme") {
          rule.scheme.name = def.name + "." + rule.name;
          rule.scheme.source = def.vocab;
          rule.scheme.target = def.vocab;
          parse_scheme_clauses(rc, 1, rule.scheme, ctx);
          // A vocabulary relation the rule leaves unstated is kept as is on
          // the surviving elements. Standalone schemes get no such default.
          for (const RelationSymbol& rs : vocabulary(def.vocab).relations) {
            if (rule.scheme.find(rs.name)) continue;
            TranslationScheme::RelClause keep;
            keep.symbol = rs.name;
            std::vector<Term> args;
            for (int k = 0; k < rs.arity; ++k) {
              keep.vars.push_back("u" + std::to_string(k + 1));
              args.push_back(tvar(keep.vars.back()));
            }
            keep.body = f_rel(rs.name, std::move(args));
            rule.scheme.relations.push_back(std::move(keep));
          }
          saw_scheme = true;
        } else if (rh == "coeff") {
          expect_len(rc, 2);
          rule.coeff = parse_poly_expr(item(rc, 1), ctx);
          saw_coeff = true;
        } else {
          fail(rc, "unknown rule clause " + rh);
        }
      }
      if (!saw_guard || !saw_scheme || !saw_coeff)
        fail(c, "rule " + rule.name + " needs guard, scheme and coeff");
      if (rule.scheme.params.empty()) rule.scheme.params = {def.context_param};
      def.rules.push_back(std::move(rule));
    } else {
      fail(c, "unknown definition clause " + h);
    }
  }
  if (!saw_order) fail(e, "definition " + def.name + " lacks an order clause");
  if (def.rules.empty()) fail(e, "definition " + def.name + " has no rules");
  return def;
}

DefFile parse_def_file(const std::string& text) {
  DefFile out;
  for (const Sexpr& e : read_sexprs(text)) {
    std::string h = head_of(e);
    if (h == "define-formula") {
      expect_len(e, 4);
      std::string name = atom_of(item(e, 1), "a template name");
      std::vector<std::string> args;
      const Sexpr& al = item(e, 2);
      if (!al.is_list()) fail(al, "template arguments must be a list");
      for (const auto& a : al.items) args.push_back(atom_of(a, "a variable"));
      FormulaPtr body = parse_formula(item(e, 3), out.macros);
      out.macros.formula_macros[name] = {std::move(args), std::move(body)};
    } else if (h == "define-poly") {
      expect_len(e, 3);
      std::string name = atom_of(item(e, 1), "a name");
      out.polys[name] = parse_poly_expr(item(e, 2), out.macros);
    } else if (h == "define-scheme" || h == "scheme") {
      TranslationScheme sch = parse_scheme(e, out.macros);
      out.schemes[sch.name] = std::move(sch);
    } else if (h == "recursive-definition") {
      out.definitions.push_back(parse_recursive_definition(e, out.macros));
    } else {
      fail(e, "unknown top-level form " + h);
    }
  }
  return out;
}

} // namespace gpk
