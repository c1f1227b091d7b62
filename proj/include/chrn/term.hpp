#ifndef CHRN_TERM_HPP
#define CHRN_TERM_HPP

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace chrn {

// Lambda-tree terms. Binders use de Bruijn indices internally (Bound nodes),
// which makes alpha-equality plain structural equality; the public surface
// (parser, printer, builders) speaks in names only.
class Term;
using TermPtr = std::shared_ptr<const Term>;

enum class TermKind { Meta, Nominal, Bound, Ctor, Lam, App };

class EngineError : public std::runtime_error {
public:
  explicit EngineError(const std::string& what) : std::runtime_error(what) {}
};

class Term {
public:
  static TermPtr meta(std::string name);
  static TermPtr nominal(std::string name);
  static TermPtr bound(int index);
  static TermPtr ctor(std::string sym, std::vector<TermPtr> args = {});
  static TermPtr lam(std::string hint, TermPtr body);
  static TermPtr app(TermPtr fun, TermPtr arg);

  TermKind kind() const { return kind_; }
  const std::string& name() const { return name_; }  // Meta/Nominal/Ctor sym, Lam hint
  int index() const { return index_; }               // Bound
  const std::vector<TermPtr>& args() const { return args_; }  // Ctor
  const TermPtr& body() const { return args_[0]; }            // Lam
  const TermPtr& fun() const { return args_[0]; }             // App
  const TermPtr& arg() const { return args_[1]; }             // App

  bool is(TermKind k) const { return kind_ == k; }

private:
  Term(TermKind k, std::string name, int index, std::vector<TermPtr> args)
      : kind_(k), name_(std::move(name)), index_(index), args_(std::move(args)) {}

  TermKind kind_;
  std::string name_;
  int index_;
  std::vector<TermPtr> args_;
};

// Structural equality; on normalized terms this is alpha-equality.
bool structural_equal(const TermPtr& a, const TermPtr& b);

// Adjust free de Bruijn indices >= cutoff by delta.
TermPtr shift(const TermPtr& t, int delta, int cutoff = 0);

// Replace Bound(depth) in body by value (shifted as needed); used by beta steps.
TermPtr open_bound(const TermPtr& body, const TermPtr& value, int depth = 0);

// Abstract every occurrence of the given nominal as Bound(depth); the inverse
// of opening a lambda with a fresh nominal. Used by parsers and encoders.
TermPtr abstract_nominal(const TermPtr& t, const std::string& nominal, int depth = 0);

// beta0 (argument is a metavariable, nominal or bound variable) plus
// eta-contraction, to fixpoint. Total; strictly size-decreasing per step.
TermPtr normalize(const TermPtr& t);

// Full beta (any argument) plus eta. Needed after substitution, where ranges
// may be abstractions applied to arbitrary terms. Fuel-guarded.
TermPtr normalize_full(const TermPtr& t);

// True iff equal up to renaming of bound variables, after normalization.
bool alpha_equal(const TermPtr& a, const TermPtr& b);

// Miller pattern check: every free metavariable occurs applied to distinct
// atoms (bound variables or nominal constants), up to eta. Nominal atoms are
// admitted because engine-made store terms apply variables to fresh constants.
bool is_pattern(const TermPtr& t);

bool occurs_meta(const std::string& name, const TermPtr& t);
void collect_free_metavars(const TermPtr& t, std::set<std::string>& out);
std::set<std::string> free_metavars(const TermPtr& t);
void collect_support(const TermPtr& t, std::set<std::string>& out);
std::set<std::string> support(const TermPtr& t);
bool has_free_bound(const TermPtr& t, int depth = 0);

std::string to_string(const TermPtr& t);

// Finite map from metavariable names to closed normal terms. Idempotent by
// construction: binding eagerly rewrites existing ranges.
class Substitution {
public:
  Substitution() = default;

  bool contains(const std::string& name) const { return map_.count(name) != 0; }
  const TermPtr* lookup(const std::string& name) const;
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const std::map<std::string, TermPtr>& bindings() const { return map_; }

  // Bind name to t (t is rewritten by the current substitution first).
  void bind(const std::string& name, const TermPtr& t);
  // Compose: result behaves as "apply other after this".
  void compose(const Substitution& other);

  TermPtr apply(const TermPtr& t) const;

private:
  std::map<std::string, TermPtr> map_;
};

// Capture-avoiding substitution application followed by full normalization.
TermPtr apply_subst(const Substitution& s, const TermPtr& t);

// Finite bijection on nominal names.
class Permutation {
public:
  Permutation() = default;

  // Adds a <-> b to the swap set (must stay a bijection).
  void map_to(const std::string& from, const std::string& to);
  const std::map<std::string, std::string>& mapping() const { return map_; }
  std::string image(const std::string& name) const;
  Permutation inverse() const;
  bool is_identity() const;

  TermPtr apply(const TermPtr& t) const;

private:
  std::map<std::string, std::string> map_;
};

// A constraint: constructor from the constraint signature applied to terms.
// No abstraction or application at top level by construction.
struct Constraint {
  std::string sym;
  std::vector<TermPtr> args;

  bool operator==(const Constraint& other) const;
};

Constraint normalize(const Constraint& c);
Constraint apply_subst(const Substitution& s, const Constraint& c);
Constraint apply_permutation(const Permutation& p, const Constraint& c);
bool alpha_equal(const Constraint& a, const Constraint& b);
std::set<std::string> free_metavars(const Constraint& c);
std::set<std::string> support(const Constraint& c);

// Well-defined constraint: every argument is a pattern and nominal-free.
bool is_well_defined_constraint(const Constraint& c);

std::string to_string(const Constraint& c);

}  // namespace chrn

#endif
