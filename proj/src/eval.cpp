#include "gpk/eval.hpp"

#include "gpk/error.hpp"

namespace gpk {

namespace {

constexpr size_t kMaxSoSpaceBits = 26;

} // namespace

Evaluator::Evaluator(const IncidenceStructure& s, const std::vector<int>* positions)
    : s_(&s), pos_(positions), n_((int)s.universe.size()) {
  if (n_ > 64) throw Error("universe too large for set masks (max 64 elements)");
  if (pos_ && (int)pos_->size() != n_)
    throw Error("position vector does not match universe size");
}

int Evaluator::position_of(int elem) const {
  if (!pos_) throw Error("order comparison without an order");
  return (*pos_)[elem];
}

int Evaluator::resolve(const Term& t, const Assignment& a) const {
  if (t.kind == Term::Kind::var) {
    for (auto it = a.fo.rbegin(); it != a.fo.rend(); ++it)
      if (it->first == t.name) return it->second;
    throw Error("unbound variable: " + t.name);
  }
  auto it = a.consts.find(t.name);
  if (it == a.consts.end()) throw Error("unassigned constant: " + t.name);
  return it->second;
}

ElemMask Evaluator::eval_set(const SetExpr& e, Assignment& a) const {
  switch (e.kind) {
    case SetExpr::Kind::rel_var: {
      for (auto it = a.so.rbegin(); it != a.so.rend(); ++it) {
        if (it->first != e.name) continue;
        const Relation& r = it->second;
        if (r.arity() != 1)
          throw Error("set expression uses non-monadic relation variable " + e.name);
        ElemMask m = 0;
        for (int i = 0; i < n_; ++i)
          if (r.bit(i)) m |= ElemMask(1) << i;
        return m;
      }
      throw Error("unbound relation variable: " + e.name);
    }
    case SetExpr::Kind::all_vertices:
      return all_vertices_mask(*s_);
    case SetExpr::Kind::all_edges:
      return all_edges_mask(*s_);
    case SetExpr::Kind::empty:
      return 0;
    case SetExpr::Kind::single:
      return ElemMask(1) << resolve(e.term, a);
    case SetExpr::Kind::set_union:
      return eval_set(*e.lhs, a) | eval_set(*e.rhs, a);
    case SetExpr::Kind::set_diff:
      return eval_set(*e.lhs, a) & ~eval_set(*e.rhs, a);
    case SetExpr::Kind::before: {
      ElemMask base = eval_set(*e.lhs, a);
      int cut = position_of(resolve(e.term, a));
      ElemMask m = 0;
      for (int i = 0; i < n_; ++i)
        if ((base >> i & 1) && position_of(i) < cut) m |= ElemMask(1) << i;
      return m;
    }
  }
  throw Error("unhandled set expression");
}

bool Evaluator::next_relation(Relation& r) {
  size_t sp = r.space();
  for (size_t i = 0; i < sp; ++i) {
    if (!r.bit(i)) { r.set_bit(i, true); return true; }
    r.set_bit(i, false);
  }
  return false;  // wrapped past the full relation
}

bool Evaluator::eval(const Formula& f, Assignment& a) const {
  switch (f.kind) {
    case Formula::Kind::literal:
      return f.value;
    case Formula::Kind::equal:
      return resolve(f.terms[0], a) == resolve(f.terms[1], a);
    case Formula::Kind::rel_atom: {
      if (f.symbol == "PV")
        return s_->kinds[resolve(f.terms[0], a)] == ElementKind::vertex;
      if (f.symbol == "PE")
        return s_->kinds[resolve(f.terms[0], a)] == ElementKind::edge;
      if (f.symbol == "O")
        return position_of(resolve(f.terms[0], a)) <
               position_of(resolve(f.terms[1], a));
      const Relation& r = s_->relation(f.symbol);
      std::vector<int> tup;
      tup.reserve(f.terms.size());
      for (const Term& t : f.terms) tup.push_back(resolve(t, a));
      if ((int)tup.size() != r.arity())
        throw Error("arity mismatch on relation " + f.symbol);
      return r.contains(tup);
    }
    case Formula::Kind::rel_var_atom: {
      for (auto it = a.so.rbegin(); it != a.so.rend(); ++it) {
        if (it->first != f.symbol) continue;
        const Relation& r = it->second;
        if ((int)f.terms.size() != r.arity())
          throw Error("arity mismatch on relation variable " + f.symbol);
        std::vector<int> tup;
        tup.reserve(f.terms.size());
        for (const Term& t : f.terms) tup.push_back(resolve(t, a));
        return r.contains(tup);
      }
      throw Error("unbound relation variable: " + f.symbol);
    }
    case Formula::Kind::native_atom: {
      std::vector<ElemMask> sets;
      sets.reserve(f.sets.size());
      for (const SetExpr& e : f.sets) sets.push_back(eval_set(e, a));
      std::vector<int> elems;
      elems.reserve(f.terms.size());
      for (const Term& t : f.terms) elems.push_back(resolve(t, a));
      switch (f.native) {
        case NativeKind::bridge:
          return natives::bridge(*s_, elems[0]);
        case NativeKind::connected:
          return natives::connected(*s_, sets[0], elems[0], elems[1]);
        case NativeKind::cycle:
          return natives::cycle(*s_, sets[0]);
        case NativeKind::spanning_forest:
          return natives::spanning_forest(*s_, sets[0]);
        case NativeKind::cycle_path_cover:
          return natives::cycle_path_cover(*s_, sets[0]);
        case NativeKind::in_touching:
          return natives::in_touching(*s_, sets[0], sets[1], elems[0]);
        case NativeKind::in_last_in_comp: {
          if (!pos_) throw Error("last-in-component needs an order");
          return natives::in_last_in_comp(*s_, *pos_, sets[0], sets[1], elems[0]);
        }
        case NativeKind::on_cycle:
          return natives::on_cycle(*s_, sets[0], elems[0]);
      }
      throw Error("unhandled native predicate");
    }
    case Formula::Kind::neg:
      return !eval(*f.children[0], a);
    case Formula::Kind::conj:
      for (const auto& c : f.children)
        if (!eval(*c, a)) return false;
      return true;
    case Formula::Kind::disj:
      for (const auto& c : f.children)
        if (eval(*c, a)) return true;
      return false;
    case Formula::Kind::implies:
      return !eval(*f.children[0], a) || eval(*f.children[1], a);
    case Formula::Kind::exists_fo:
    case Formula::Kind::forall_fo: {
      bool is_exists = f.kind == Formula::Kind::exists_fo;
      a.fo.emplace_back(f.symbol, 0);
      bool result = !is_exists;
      for (int i = 0; i < n_; ++i) {
        a.fo.back().second = i;
        bool b = eval(*f.children[0], a);
        if (b == is_exists) { result = is_exists; break; }
      }
      a.fo.pop_back();
      return result;
    }
    case Formula::Kind::exists_so:
    case Formula::Kind::forall_so: {
      bool is_exists = f.kind == Formula::Kind::exists_so;
      Relation r(f.arity, n_);
      if (r.space() > kMaxSoSpaceBits)
        throw BudgetError("second-order search space too large");
      a.so.emplace_back(f.symbol, std::move(r));
      bool result = !is_exists;
      do {
        bool b = eval(*f.children[0], a);
        if (b == is_exists) { result = is_exists; break; }
      } while (next_relation(a.so.back().second));
      a.so.pop_back();
      return result;
    }
  }
  throw Error("unhandled formula kind");
}

bool models(const IncidenceStructure& s, const Formula& f,
            const std::vector<int>* positions,
            const std::map<std::string, int>& consts) {
  Evaluator ev(s, positions);
  Assignment a;
  a.consts = consts;
  return ev.eval(f, a);
}

} // namespace gpk
