#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace tam {

// Kernel node kinds. Derived operators (<lt>, [lt], [gt], |, ->, Up) are
// expanded into these by the smart constructors below.
enum class Op {
  Top,
  Atom,
  Not,
  And,
  DiamLeq,  // <le>
  BoxLeq,   // [le]
  EqTheta,  // (=)
  BoxF,     // F
  DiamF,    // <F>
};

// Immutable formula tree with shared subterms. Copying is cheap.
class Formula {
 public:
  Formula();  // Top

  Op op() const noexcept { return node_->op; }
  const std::string& atom_name() const noexcept { return node_->atom; }
  // Single operand of a unary node, left operand of And.
  const Formula& operand() const { return node_->children.at(0); }
  const Formula& left() const { return node_->children.at(0); }
  const Formula& right() const { return node_->children.at(1); }

  bool is_unary() const noexcept;
  std::size_t depth() const;
  // Identity of the shared node; stable for the lifetime of any copy.
  const void* id() const noexcept { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

  static Formula make(Op op, std::string atom, std::vector<Formula> children);

 private:
  struct Node {
    Op op;
    std::string atom;
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Formula top();
Formula bottom();  // ~T
Formula atom(std::string_view name);
// Collapses double negation: neg(neg(f)) == f.
Formula neg(const Formula& f);
Formula conj(const Formula& a, const Formula& b);
Formula disj(const Formula& a, const Formula& b);
Formula implies(const Formula& a, const Formula& b);
Formula diam_leq(const Formula& f);
Formula box_leq(const Formula& f);
Formula eq_theta(const Formula& f);
// <lt> f := <le> f & ~(=) f
Formula diam_lt(const Formula& f);
// [lt] f := [le] f & ~(=) f
Formula box_lt(const Formula& f);
// [gt] f := ~<le> ~f
Formula box_gt(const Formula& f);
Formula box_f(const Formula& f);
Formula diam_f(const Formula& f);
// Up := ~Bp & ~Bnp
Formula undecided();

// Left-folded conjunction / disjunction; empty lists give T / ~T.
Formula conj_all(const std::vector<Formula>& fs);
Formula disj_all(const std::vector<Formula>& fs);

// Grammar (ASCII):
//   formula := impl
//   impl    := or ("->" impl)?
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := ("~"|"<le>"|"[le]"|"<lt>"|"[lt]"|"[gt]"|"(=)"|"F"|"<F>") unary | atom
//   atom    := "T" | "B" | "Bp" | "Bnp" | "(" formula ")"
// Throws ParseError.
Formula parse_formula(std::string_view text);

// Kernel-syntax printer; parse_formula(to_string(f)) == f.
std::string to_string(const Formula& f);

// Flattens conjunction chains and sorts conjuncts by printed form, so that
// labels differing only in conjunct order print identically.
Formula normal_form(const Formula& f);

// Atom names used anywhere in f, sorted and unique.
std::vector<std::string> atoms_of(const Formula& f);
bool uses_threshold(const Formula& f);

}  // namespace tam
