#include "gpk/translation.hpp"

#include <algorithm>
#include <atomic>

#include "gpk/error.hpp"
#include "gpk/eval.hpp"

namespace gpk {

namespace {

std::string fresh_temp() {
  static std::atomic<int> counter{0};
  return "$t" + std::to_string(counter.fetch_add(1));
}

FormulaPtr substitute_many(const FormulaPtr& body, const std::vector<std::string>& vars,
                           const std::vector<Term>& terms) {
  if (vars.size() != terms.size()) throw Error("substitution arity mismatch");
  std::vector<std::pair<std::string, Term>> su;
  su.reserve(vars.size());
  for (size_t i = 0; i < vars.size(); ++i) su.emplace_back(vars[i], terms[i]);
  return substitute(body, su);
}

int max_so_binder_arity(const Formula& f) {
  int m = 0;
  if (f.kind == Formula::Kind::exists_so || f.kind == Formula::Kind::forall_so)
    m = f.arity;
  for (const auto& c : f.children) m = std::max(m, max_so_binder_arity(*c));
  return m;
}

} // namespace

const TranslationScheme::RelClause* TranslationScheme::find(
    const std::string& symbol) const {
  for (const auto& c : relations)
    if (c.symbol == symbol) return &c;
  return nullptr;
}

FormulaPtr TranslationScheme::domain_at(const Term& t) const {
  return substitute_many(domain, {domain_var}, {t});
}

std::string TranslationScheme::to_text() const {
  std::string out = "(scheme " + name;
  out += std::string(" (source ") + vocab_name(source) + ")";
  out += std::string(" (target ") + vocab_name(target) + ")";
  if (!params.empty()) {
    out += " (params";
    for (const auto& p : params) out += " @" + p;
    out += ")";
  }
  out += " (domain (" + domain_var + ") " + gpk::to_text(*domain) + ")";
  for (const auto& c : relations) {
    out += " (relation " + c.symbol + " (";
    for (size_t i = 0; i < c.vars.size(); ++i) out += (i ? " " : "") + c.vars[i];
    out += ") " + gpk::to_text(*c.body) + ")";
  }
  return out + ")";
}

FormulaPtr translate(const TranslationScheme& sch, const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::literal:
      return f;
    case Formula::Kind::equal:
      return f_and_all({f_equal(f->terms[0], f->terms[1]),
                        sch.domain_at(f->terms[0]), sch.domain_at(f->terms[1])});
    case Formula::Kind::rel_atom: {
      const auto* clause = sch.find(f->symbol);
      if (!clause) {
        // PV/PE/O without clauses are inherited, matching transduce: kinds
        // and order carry over, except that a graph1 target is all vertices.
        if (f->symbol == "PV" || f->symbol == "PE") {
          if (sch.find(f->symbol == "PV" ? "PE" : "PV"))
            throw Error("scheme " + sch.name + " must define PV and PE together");
          if (sch.target == VocabTag::graph1)
            return f->symbol == "PV" ? f_true() : f_false();
          return f;
        }
        if (f->symbol == "O") return f;
        throw Error("scheme " + sch.name + " has no clause for symbol " + f->symbol);
      }
      if (clause->vars.size() != f->terms.size())
        throw Error("arity mismatch applying clause " + f->symbol);
      return substitute_many(clause->body, clause->vars, f->terms);
    }
    case Formula::Kind::rel_var_atom:
      return f;
    case Formula::Kind::native_atom:
      throw Error(std::string("native predicate ") + native_name(f->native) +
                  " cannot be translated");
    case Formula::Kind::neg:
      return f_not(translate(sch, f->children[0]));
    case Formula::Kind::conj:
    case Formula::Kind::disj: {
      std::vector<FormulaPtr> parts;
      parts.reserve(f->children.size());
      for (const auto& c : f->children) parts.push_back(translate(sch, c));
      return f->kind == Formula::Kind::conj ? f_and_all(parts) : f_or_all(parts);
    }
    case Formula::Kind::implies:
      return f_implies(translate(sch, f->children[0]), translate(sch, f->children[1]));
    case Formula::Kind::exists_fo:
      return f_exists(f->symbol, f_and(sch.domain_at(tvar(f->symbol)),
                                       translate(sch, f->children[0])));
    case Formula::Kind::forall_fo:
      return f_forall(f->symbol, f_implies(sch.domain_at(tvar(f->symbol)),
                                           translate(sch, f->children[0])));
    case Formula::Kind::exists_so:
    case Formula::Kind::forall_so: {
      // confine the quantified relation to domain tuples
      std::vector<std::string> vs;
      std::vector<Term> ts;
      std::vector<FormulaPtr> doms;
      for (int i = 0; i < f->arity; ++i) {
        vs.push_back(fresh_temp());
        ts.push_back(tvar(vs.back()));
        doms.push_back(sch.domain_at(ts.back()));
      }
      FormulaPtr closure = f_implies(f_rel_var(f->symbol, ts), f_and_all(doms));
      for (auto it = vs.rbegin(); it != vs.rend(); ++it)
        closure = f_forall(*it, closure);
      FormulaPtr body = translate(sch, f->children[0]);
      if (f->kind == Formula::Kind::exists_so)
        return f_exists_so(f->symbol, f->arity, f_and(closure, body));
      return f_forall_so(f->symbol, f->arity, f_implies(closure, body));
    }
  }
  throw Error("unhandled formula kind in translation");
}

OrderedStructure transduce(const TranslationScheme& sch, const OrderedStructure& m,
                           const std::map<std::string, int>& consts) {
  for (const auto& p : sch.params)
    if (!consts.count(p))
      throw Error("scheme " + sch.name + " needs constant @" + p);

  std::vector<int> pos = m.positions();
  Evaluator ev(m.s, &pos);
  Assignment a;
  a.consts = consts;

  int n = (int)m.s.universe.size();
  std::vector<int> kept;  // source indices, in source universe order
  {
    a.fo.emplace_back(sch.domain_var, 0);
    for (int i = 0; i < n; ++i) {
      a.fo.back().second = i;
      if (ev.eval(*sch.domain, a)) kept.push_back(i);
    }
    a.fo.pop_back();
  }
  int kn = (int)kept.size();
  std::vector<int> new_index(n, -1);
  for (int i = 0; i < kn; ++i) new_index[kept[i]] = i;

  IncidenceStructure out;
  out.vocab = sch.target;
  for (int i : kept) out.universe.push_back(m.s.universe[i]);

  const auto* pv = sch.find("PV");
  const auto* pe = sch.find("PE");
  if ((pv == nullptr) != (pe == nullptr))
    throw Error("scheme " + sch.name + " must define PV and PE together");
  auto holds_at = [&](const TranslationScheme::RelClause& c, int src_elem) {
    if (c.vars.size() != 1) throw Error("sort clause must be unary");
    a.fo.emplace_back(c.vars[0], src_elem);
    bool r = ev.eval(*c.body, a);
    a.fo.pop_back();
    return r;
  };
  out.kinds.resize(kn);
  if (sch.target == VocabTag::graph1 && !pv) {
    std::fill(out.kinds.begin(), out.kinds.end(), ElementKind::vertex);
  } else {
    for (int i = 0; i < kn; ++i) {
      bool isv, ise;
      if (pv) {
        isv = holds_at(*pv, kept[i]);
        ise = holds_at(*pe, kept[i]);
      } else {
        isv = m.s.kinds[kept[i]] == ElementKind::vertex;
        ise = !isv;
      }
      if (isv == ise)
        throw Error("scheme " + sch.name + " gives element " + out.universe[i] +
                    (isv ? " both sorts" : " no sort"));
      out.kinds[i] = isv ? ElementKind::vertex : ElementKind::edge;
    }
  }

  for (const RelationSymbol& sym : vocabulary(sch.target).relations) {
    const auto* clause = sch.find(sym.name);
    if (!clause)
      throw Error("scheme " + sch.name + " does not define relation " + sym.name);
    if ((int)clause->vars.size() != sym.arity)
      throw Error("clause arity mismatch for relation " + sym.name);
    Relation rel(sym.arity, kn);
    std::vector<int> odo(sym.arity, 0);
    bool done = kn == 0;
    size_t base = a.fo.size();
    for (const auto& v : clause->vars) a.fo.emplace_back(v, 0);
    while (!done) {
      for (int i = 0; i < sym.arity; ++i) a.fo[base + i].second = kept[odo[i]];
      if (ev.eval(*clause->body, a)) rel.insert(odo);
      int i = sym.arity;
      done = true;
      while (i > 0) {
        --i;
        if (++odo[i] < kn) { done = false; break; }
        odo[i] = 0;
      }
    }
    a.fo.resize(base);
    out.relations.emplace(sym.name, std::move(rel));
  }

  std::vector<int> order(kn);  // order[k] = index of k-th element
  const auto* oc = sch.find("O");
  if (oc) {
    if (oc->vars.size() != 2) throw Error("order clause must be binary");
    std::vector<std::vector<char>> lt(kn, std::vector<char>(kn, 0));
    size_t base = a.fo.size();
    a.fo.emplace_back(oc->vars[0], 0);
    a.fo.emplace_back(oc->vars[1], 0);
    for (int i = 0; i < kn; ++i)
      for (int j = 0; j < kn; ++j) {
        a.fo[base].second = kept[i];
        a.fo[base + 1].second = kept[j];
        lt[i][j] = ev.eval(*oc->body, a) ? 1 : 0;
      }
    a.fo.resize(base);
    std::vector<int> pred(kn, 0);
    for (int i = 0; i < kn; ++i) {
      if (lt[i][i]) throw Error("scheme " + sch.name + " order is not irreflexive");
      for (int j = 0; j < kn; ++j) {
        if (i == j) continue;
        if (lt[i][j] == lt[j][i])
          throw Error("scheme " + sch.name + " order is not total/antisymmetric");
        if (lt[j][i]) ++pred[i];
      }
    }
    std::vector<char> taken(kn, 0);
    for (int i = 0; i < kn; ++i) {
      if (pred[i] >= kn || taken[pred[i]])
        throw Error("scheme " + sch.name + " order is not transitive");
      taken[pred[i]] = 1;
      order[pred[i]] = i;
    }
  } else {
    // induce from the source order
    std::vector<int> by_pos = kept;
    const std::vector<int>& pos = m.positions();
    std::sort(by_pos.begin(), by_pos.end(),
              [&](int x, int y) { return pos[x] < pos[y]; });
    for (int k = 0; k < kn; ++k) order[k] = new_index[by_pos[k]];
  }

  OrderedStructure res(std::move(out), std::move(order), m.context_arity);
  return res;
}

TranslationScheme compose(const TranslationScheme& first,
                          const TranslationScheme& second) {
  if (first.target != second.source)
    throw Error("schemes do not compose: vocabulary mismatch");
  TranslationScheme out;
  out.name = first.name + ">>" + second.name;
  out.source = first.source;
  out.target = second.target;
  out.params = first.params;
  for (const auto& p : second.params)
    if (std::find(out.params.begin(), out.params.end(), p) == out.params.end())
      out.params.push_back(p);

  out.domain_var = first.domain_var;
  FormulaPtr inner = substitute_many(second.domain, {second.domain_var},
                                     {tvar(first.domain_var)});
  out.domain = f_and(first.domain, translate(first, inner));

  for (const auto& c : second.relations) {
    TranslationScheme::RelClause nc;
    nc.symbol = c.symbol;
    nc.vars = c.vars;
    // pull the clause back through `first`, then relativize its free
    // variables to first's domain (translation alone does not reach them)
    std::vector<FormulaPtr> parts = {translate(first, c.body)};
    for (const auto& v : c.vars) parts.push_back(first.domain_at(tvar(v)));
    nc.body = f_and_all(parts);
    out.relations.push_back(std::move(nc));
  }

  // Built-ins `second` inherits come from the intermediate stage, not from
  // the original source: carry first's clauses over, and make the graph1
  // all-vertex reading explicit. With no clause on either side the composed
  // scheme inherits straight through, which is the same thing.
  if (!second.find("PV") && !second.find("PE")) {
    if (first.find("PV") && first.find("PE")) {
      out.relations.push_back(*first.find("PV"));
      out.relations.push_back(*first.find("PE"));
    } else if (first.find("PV") || first.find("PE")) {
      throw Error("scheme " + first.name + " must define PV and PE together");
    } else if (first.target == VocabTag::graph1) {
      out.relations.push_back({"PV", {"u1"}, f_true()});
      out.relations.push_back({"PE", {"u1"}, f_false()});
    }
  }
  if (!second.find("O") && first.find("O"))
    out.relations.push_back(*first.find("O"));
  return out;
}

int scheme_quantifier_rank(const TranslationScheme& sch) {
  int r = quantifier_rank(*sch.domain);
  for (const auto& c : sch.relations)
    r = std::max(r, quantifier_rank(*c.body));
  return r;
}

int translation_rank_bound(const TranslationScheme& sch, const Formula& f) {
  return quantifier_rank(f) + scheme_quantifier_rank(sch) + max_so_binder_arity(f);
}

} // namespace gpk
