#include "chrn/term.hpp"

#include <algorithm>
#include <sstream>

namespace chrn {

TermPtr Term::meta(std::string name) {
  return TermPtr(new Term(TermKind::Meta, std::move(name), 0, {}));
}

TermPtr Term::nominal(std::string name) {
  return TermPtr(new Term(TermKind::Nominal, std::move(name), 0, {}));
}

TermPtr Term::bound(int index) {
  return TermPtr(new Term(TermKind::Bound, "", index, {}));
}

TermPtr Term::ctor(std::string sym, std::vector<TermPtr> args) {
  return TermPtr(new Term(TermKind::Ctor, std::move(sym), 0, std::move(args)));
}

TermPtr Term::lam(std::string hint, TermPtr body) {
  return TermPtr(new Term(TermKind::Lam, std::move(hint), 0, {std::move(body)}));
}

TermPtr Term::app(TermPtr fun, TermPtr arg) {
  return TermPtr(new Term(TermKind::App, "", 0, {std::move(fun), std::move(arg)}));
}

bool structural_equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case TermKind::Meta:
    case TermKind::Nominal:
      return a->name() == b->name();
    case TermKind::Bound:
      return a->index() == b->index();
    case TermKind::Ctor: {
      if (a->name() != b->name() || a->args().size() != b->args().size()) return false;
      for (std::size_t i = 0; i < a->args().size(); ++i)
        if (!structural_equal(a->args()[i], b->args()[i])) return false;
      return true;
    }
    case TermKind::Lam:
      return structural_equal(a->body(), b->body());
    case TermKind::App:
      return structural_equal(a->fun(), b->fun()) && structural_equal(a->arg(), b->arg());
  }
  return false;
}

TermPtr shift(const TermPtr& t, int delta, int cutoff) {
  switch (t->kind()) {
    case TermKind::Meta:
    case TermKind::Nominal:
      return t;
    case TermKind::Bound:
      if (t->index() >= cutoff) return Term::bound(t->index() + delta);
      return t;
    case TermKind::Ctor: {
      std::vector<TermPtr> args;
      args.reserve(t->args().size());
      bool changed = false;
      for (const auto& a : t->args()) {
        auto s = shift(a, delta, cutoff);
        changed = changed || s.get() != a.get();
        args.push_back(std::move(s));
      }
      return changed ? Term::ctor(t->name(), std::move(args)) : t;
    }
    case TermKind::Lam: {
      auto b = shift(t->body(), delta, cutoff + 1);
      return b.get() == t->body().get() ? t : Term::lam(t->name(), b);
    }
    case TermKind::App: {
      auto f = shift(t->fun(), delta, cutoff);
      auto a = shift(t->arg(), delta, cutoff);
      if (f.get() == t->fun().get() && a.get() == t->arg().get()) return t;
      return Term::app(f, a);
    }
  }
  return t;
}

TermPtr open_bound(const TermPtr& body, const TermPtr& value, int depth) {
  switch (body->kind()) {
    case TermKind::Meta:
    case TermKind::Nominal:
      return body;
    case TermKind::Bound:
      if (body->index() == depth) return shift(value, depth);
      if (body->index() > depth) return Term::bound(body->index() - 1);
      return body;
    case TermKind::Ctor: {
      std::vector<TermPtr> args;
      args.reserve(body->args().size());
      for (const auto& a : body->args()) args.push_back(open_bound(a, value, depth));
      return Term::ctor(body->name(), std::move(args));
    }
    case TermKind::Lam:
      return Term::lam(body->name(), open_bound(body->body(), value, depth + 1));
    case TermKind::App:
      return Term::app(open_bound(body->fun(), value, depth),
                       open_bound(body->arg(), value, depth));
  }
  return body;
}

TermPtr abstract_nominal(const TermPtr& t, const std::string& nominal, int depth) {
  switch (t->kind()) {
    case TermKind::Meta:
      return t;
    case TermKind::Nominal:
      if (t->name() == nominal) return Term::bound(depth);
      return t;
    case TermKind::Bound:
      if (t->index() >= depth) return Term::bound(t->index() + 1);
      return t;
    case TermKind::Ctor: {
      std::vector<TermPtr> args;
      args.reserve(t->args().size());
      for (const auto& a : t->args()) args.push_back(abstract_nominal(a, nominal, depth));
      return Term::ctor(t->name(), std::move(args));
    }
    case TermKind::Lam:
      return Term::lam(t->name(), abstract_nominal(t->body(), nominal, depth + 1));
    case TermKind::App:
      return Term::app(abstract_nominal(t->fun(), nominal, depth),
                       abstract_nominal(t->arg(), nominal, depth));
  }
  return t;
}

bool has_free_bound(const TermPtr& t, int depth) {
  switch (t->kind()) {
    case TermKind::Meta:
    case TermKind::Nominal:
      return false;
    case TermKind::Bound:
      return t->index() >= depth;
    case TermKind::Ctor:
      for (const auto& a : t->args())
        if (has_free_bound(a, depth)) return true;
      return false;
    case TermKind::Lam:
      return has_free_bound(t->body(), depth + 1);
    case TermKind::App:
      return has_free_bound(t->fun(), depth) || has_free_bound(t->arg(), depth);
  }
  return false;
}

namespace {

bool mentions_bound(const TermPtr& t, int index) {
  switch (t->kind()) {
    case TermKind::Meta:
    case TermKind::Nominal:
      return false;
    case TermKind::Bound:
      return t->index() == index;
    case TermKind::Ctor:
      for (const auto& a : t->args())
        if (mentions_bound(a, index)) return true;
      return false;
    case TermKind::Lam:
      return mentions_bound(t->body(), index + 1);
    case TermKind::App:
      return mentions_bound(t->fun(), index) || mentions_bound(t->arg(), index);
  }
  return false;
}

bool is_atom(const TermPtr& t) {
  return t->is(TermKind::Bound) || t->is(TermKind::Meta) || t->is(TermKind::Nominal);
}

// One normalization pass; full_beta additionally fires redexes with
// non-atomic arguments. Returns nullptr when no rule applied.
TermPtr normalize_node(const TermPtr& t, bool full_beta) {
  if (t->is(TermKind::App) && t->fun()->is(TermKind::Lam)) {
    if (full_beta || is_atom(t->arg())) return open_bound(t->fun()->body(), t->arg());
  }
  // eta: \x. (f x) -> f  when x not free in f
  if (t->is(TermKind::Lam) && t->body()->is(TermKind::App)) {
    const auto& ap = t->body();
    if (ap->arg()->is(TermKind::Bound) && ap->arg()->index() == 0 &&
        !mentions_bound(ap->fun(), 0)) {
      return shift(ap->fun(), -1);
    }
  }
  return nullptr;
}

TermPtr normalize_rec(const TermPtr& t, bool full_beta, long& fuel) {
  if (--fuel < 0) throw EngineError("normalization fuel exhausted");
  TermPtr result;
  switch (t->kind()) {
    case TermKind::Meta:
    case TermKind::Nominal:
    case TermKind::Bound:
      return t;
    case TermKind::Ctor: {
      std::vector<TermPtr> args;
      args.reserve(t->args().size());
      bool changed = false;
      for (const auto& a : t->args()) {
        auto n = normalize_rec(a, full_beta, fuel);
        changed = changed || n.get() != a.get();
        args.push_back(std::move(n));
      }
      result = changed ? Term::ctor(t->name(), std::move(args)) : t;
      break;
    }
    case TermKind::Lam: {
      auto b = normalize_rec(t->body(), full_beta, fuel);
      result = b.get() == t->body().get() ? t : Term::lam(t->name(), b);
      break;
    }
    case TermKind::App: {
      auto f = normalize_rec(t->fun(), full_beta, fuel);
      auto a = normalize_rec(t->arg(), full_beta, fuel);
      result = (f.get() == t->fun().get() && a.get() == t->arg().get())
                   ? t
                   : Term::app(f, a);
      break;
    }
  }
  if (auto r = normalize_node(result, full_beta)) return normalize_rec(r, full_beta, fuel);
  return result;
}

}  // namespace

TermPtr normalize(const TermPtr& t) {
  long fuel = 1000000;
  return normalize_rec(t, /*full_beta=*/false, fuel);
}

TermPtr normalize_full(const TermPtr& t) {
  long fuel = 1000000;
  return normalize_rec(t, /*full_beta=*/true, fuel);
}

bool alpha_equal(const TermPtr& a, const TermPtr& b) {
  return structural_equal(normalize(a), normalize(b));
}

namespace {

// Spine view: peel App nodes down to a head.
void spine_of(const TermPtr& t, TermPtr& head, std::vector<TermPtr>& spine_args) {
  if (t->is(TermKind::App)) {
    spine_of(t->fun(), head, spine_args);
    spine_args.push_back(t->arg());
  } else {
    head = t;
  }
}

bool pattern_rec(const TermPtr& t) {
  TermPtr head;
  std::vector<TermPtr> args;
  spine_of(t, head, args);
  if (head->is(TermKind::Meta)) {
    // Free metavariable: spine args must be distinct atoms after eta.
    std::vector<TermPtr> norm;
    norm.reserve(args.size());
    for (const auto& raw : args) {
      auto a = normalize(raw);  // contract eta-expansions of atoms
      if (!is_atom(a)) return false;
      for (const auto& prev : norm)
        if (structural_equal(prev, a)) return false;
      norm.push_back(std::move(a));
    }
    return true;
  }
  if (head->is(TermKind::Lam)) {
    if (!pattern_rec(head->body())) return false;
  } else if (head->is(TermKind::Ctor)) {
    for (const auto& a : head->args())
      if (!pattern_rec(a)) return false;
  }
  for (const auto& a : args)
    if (!pattern_rec(a)) return false;
  return true;
}

}  // namespace

bool is_pattern(const TermPtr& t) { return pattern_rec(normalize(t)); }

bool occurs_meta(const std::string& name, const TermPtr& t) {
  switch (t->kind()) {
    case TermKind::Meta:
      return t->name() == name;
    case TermKind::Nominal:
    case TermKind::Bound:
      return false;
    case TermKind::Ctor:
      for (const auto& a : t->args())
        if (occurs_meta(name, a)) return true;
      return false;
    case TermKind::Lam:
      return occurs_meta(name, t->body());
    case TermKind::App:
      return occurs_meta(name, t->fun()) || occurs_meta(name, t->arg());
  }
  return false;
}

void collect_free_metavars(const TermPtr& t, std::set<std::string>& out) {
  switch (t->kind()) {
    case TermKind::Meta:
      out.insert(t->name());
      return;
    case TermKind::Nominal:
    case TermKind::Bound:
      return;
    case TermKind::Ctor:
      for (const auto& a : t->args()) collect_free_metavars(a, out);
      return;
    case TermKind::Lam:
      collect_free_metavars(t->body(), out);
      return;
    case TermKind::App:
      collect_free_metavars(t->fun(), out);
      collect_free_metavars(t->arg(), out);
      return;
  }
}

std::set<std::string> free_metavars(const TermPtr& t) {
  std::set<std::string> out;
  collect_free_metavars(t, out);
  return out;
}

void collect_support(const TermPtr& t, std::set<std::string>& out) {
  switch (t->kind()) {
    case TermKind::Nominal:
      out.insert(t->name());
      return;
    case TermKind::Meta:
    case TermKind::Bound:
      return;
    case TermKind::Ctor:
      for (const auto& a : t->args()) collect_support(a, out);
      return;
    case TermKind::Lam:
      collect_support(t->body(), out);
      return;
    case TermKind::App:
      collect_support(t->fun(), out);
      collect_support(t->arg(), out);
      return;
  }
}

std::set<std::string> support(const TermPtr& t) {
  std::set<std::string> out;
  collect_support(t, out);
  return out;
}

namespace {

bool is_list_term(const TermPtr& t) {
  if (t->is(TermKind::Ctor) && t->name() == "nil" && t->args().empty()) return true;
  return t->is(TermKind::Ctor) && t->name() == "cons" && t->args().size() == 2 &&
         is_list_term(t->args()[1]);
}

std::string fresh_binder_name(const std::string& hint, std::vector<std::string>& env) {
  std::string base = hint.empty() ? "x" : hint;
  std::string candidate = base;
  int k = 1;
  while (std::find(env.begin(), env.end(), candidate) != env.end())
    candidate = base + std::to_string(k++);
  return candidate;
}

void print_rec(const TermPtr& t, std::vector<std::string>& binders, std::ostringstream& out) {
  switch (t->kind()) {
    case TermKind::Meta:
      out << t->name();
      return;
    case TermKind::Nominal:
      out << "#" << t->name();
      return;
    case TermKind::Bound: {
      int i = t->index();
      if (i >= 0 && i < static_cast<int>(binders.size()))
        out << binders[binders.size() - 1 - i];
      else
        out << "!" << i;  // dangling index, only possible mid-rewrite
      return;
    }
    case TermKind::Ctor: {
      if (is_list_term(t)) {
        out << "[";
        TermPtr cur = t;
        bool first = true;
        while (cur->name() == "cons") {
          if (!first) out << ",";
          first = false;
          print_rec(cur->args()[0], binders, out);
          cur = cur->args()[1];
        }
        out << "]";
        return;
      }
      if (!t->name().empty() && t->name()[0] == '"') {
        out << t->name();  // quoted constructor keeps its quotes
        if (!t->args().empty()) throw EngineError("quoted constructor with arguments");
        return;
      }
      out << t->name();
      if (!t->args().empty()) {
        out << "(";
        for (std::size_t i = 0; i < t->args().size(); ++i) {
          if (i) out << ",";
          print_rec(t->args()[i], binders, out);
        }
        out << ")";
      }
      return;
    }
    case TermKind::Lam: {
      std::string n = fresh_binder_name(t->name(), binders);
      out << "\\" << n << ". ";
      binders.push_back(n);
      print_rec(t->body(), binders, out);
      binders.pop_back();
      return;
    }
    case TermKind::App: {
      out << "(";
      print_rec(t->fun(), binders, out);
      out << " ";
      print_rec(t->arg(), binders, out);
      out << ")";
      return;
    }
  }
}

}  // namespace

std::string to_string(const TermPtr& t) {
  std::ostringstream out;
  std::vector<std::string> binders;
  print_rec(t, binders, out);
  return out.str();
}

const TermPtr* Substitution::lookup(const std::string& name) const {
  auto it = map_.find(name);
  return it == map_.end() ? nullptr : &it->second;
}

TermPtr Substitution::apply(const TermPtr& t) const {
  if (map_.empty()) return t;
  switch (t->kind()) {
    case TermKind::Meta: {
      auto it = map_.find(t->name());
      return it == map_.end() ? t : it->second;
    }
    case TermKind::Nominal:
    case TermKind::Bound:
      return t;
    case TermKind::Ctor: {
      std::vector<TermPtr> args;
      args.reserve(t->args().size());
      bool changed = false;
      for (const auto& a : t->args()) {
        auto s = apply(a);
        changed = changed || s.get() != a.get();
        args.push_back(std::move(s));
      }
      return changed ? Term::ctor(t->name(), std::move(args)) : t;
    }
    case TermKind::Lam: {
      // Ranges are closed with respect to bound variables, so no shifting.
      auto b = apply(t->body());
      return b.get() == t->body().get() ? t : Term::lam(t->name(), b);
    }
    case TermKind::App: {
      auto f = apply(t->fun());
      auto a = apply(t->arg());
      if (f.get() == t->fun().get() && a.get() == t->arg().get()) return t;
      return Term::app(f, a);
    }
  }
  return t;
}

void Substitution::bind(const std::string& name, const TermPtr& t) {
  TermPtr value = normalize_full(apply(t));
  Substitution single;
  single.map_[name] = value;
  for (auto& [k, v] : map_) v = normalize_full(single.apply(v));
  map_[name] = value;
}

void Substitution::compose(const Substitution& other) {
  for (auto& [k, v] : map_) v = normalize_full(other.apply(v));
  for (const auto& [k, v] : other.map_)
    if (!map_.count(k)) map_[k] = v;
}

TermPtr apply_subst(const Substitution& s, const TermPtr& t) {
  return normalize_full(s.apply(t));
}

void Permutation::map_to(const std::string& from, const std::string& to) {
  map_[from] = to;
}

std::string Permutation::image(const std::string& name) const {
  auto it = map_.find(name);
  return it == map_.end() ? name : it->second;
}

Permutation Permutation::inverse() const {
  Permutation inv;
  for (const auto& [k, v] : map_) inv.map_[v] = k;
  return inv;
}

bool Permutation::is_identity() const {
  for (const auto& [k, v] : map_)
    if (k != v) return false;
  return true;
}

TermPtr Permutation::apply(const TermPtr& t) const {
  if (map_.empty()) return t;
  switch (t->kind()) {
    case TermKind::Nominal: {
      auto it = map_.find(t->name());
      return it == map_.end() ? t : Term::nominal(it->second);
    }
    case TermKind::Meta:
    case TermKind::Bound:
      return t;
    case TermKind::Ctor: {
      std::vector<TermPtr> args;
      args.reserve(t->args().size());
      for (const auto& a : t->args()) args.push_back(apply(a));
      return Term::ctor(t->name(), std::move(args));
    }
    case TermKind::Lam:
      return Term::lam(t->name(), apply(t->body()));
    case TermKind::App:
      return Term::app(apply(t->fun()), apply(t->arg()));
  }
  return t;
}

bool Constraint::operator==(const Constraint& other) const {
  if (sym != other.sym || args.size() != other.args.size()) return false;
  for (std::size_t i = 0; i < args.size(); ++i)
    if (!structural_equal(args[i], other.args[i])) return false;
  return true;
}

Constraint normalize(const Constraint& c) {
  Constraint out{c.sym, {}};
  out.args.reserve(c.args.size());
  for (const auto& a : c.args) out.args.push_back(normalize(a));
  return out;
}

Constraint apply_subst(const Substitution& s, const Constraint& c) {
  Constraint out{c.sym, {}};
  out.args.reserve(c.args.size());
  for (const auto& a : c.args) out.args.push_back(apply_subst(s, a));
  return out;
}

Constraint apply_permutation(const Permutation& p, const Constraint& c) {
  Constraint out{c.sym, {}};
  out.args.reserve(c.args.size());
  for (const auto& a : c.args) out.args.push_back(p.apply(a));
  return out;
}

bool alpha_equal(const Constraint& a, const Constraint& b) {
  if (a.sym != b.sym || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!alpha_equal(a.args[i], b.args[i])) return false;
  return true;
}

std::set<std::string> free_metavars(const Constraint& c) {
  std::set<std::string> out;
  for (const auto& a : c.args) collect_free_metavars(a, out);
  return out;
}

std::set<std::string> support(const Constraint& c) {
  std::set<std::string> out;
  for (const auto& a : c.args) collect_support(a, out);
  return out;
}

bool is_well_defined_constraint(const Constraint& c) {
  for (const auto& a : c.args) {
    if (!is_pattern(a)) return false;
    if (!support(a).empty()) return false;
  }
  return true;
}

std::string to_string(const Constraint& c) {
  std::ostringstream out;
  out << c.sym;
  if (!c.args.empty()) {
    out << "(";
    for (std::size_t i = 0; i < c.args.size(); ++i) {
      if (i) out << ",";
      out << to_string(c.args[i]);
    }
    out << ")";
  }
  return out.str();
}

}  // namespace chrn
