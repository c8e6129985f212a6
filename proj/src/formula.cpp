#include "tam/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "tam/errors.hpp"

namespace tam {

Formula::Formula() : node_(std::make_shared<const Node>(Node{Op::Top, {}, {}})) {}

Formula Formula::make(Op op, std::string atom, std::vector<Formula> children) {
  return Formula(std::make_shared<const Node>(Node{op, std::move(atom), std::move(children)}));
}

bool Formula::is_unary() const noexcept {
  switch (op()) {
    case Op::Not:
    case Op::DiamLeq:
    case Op::BoxLeq:
    case Op::EqTheta:
    case Op::BoxF:
    case Op::DiamF:
      return true;
    default:
      return false;
  }
}

std::size_t Formula::depth() const {
  std::size_t d = 0;
  for (const auto& c : node_->children) d = std::max(d, c.depth() + 1);
  return d;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op() || a.atom_name() != b.atom_name()) return false;
  return a.node_->children == b.node_->children;
}

Formula top() { return Formula(); }
Formula bottom() { return Formula::make(Op::Not, {}, {top()}); }
Formula atom(std::string_view name) { return Formula::make(Op::Atom, std::string(name), {}); }

Formula neg(const Formula& f) {
  if (f.op() == Op::Not) return f.operand();
  return Formula::make(Op::Not, {}, {f});
}

Formula conj(const Formula& a, const Formula& b) { return Formula::make(Op::And, {}, {a, b}); }
Formula disj(const Formula& a, const Formula& b) { return neg(conj(neg(a), neg(b))); }
Formula implies(const Formula& a, const Formula& b) { return neg(conj(a, neg(b))); }
Formula diam_leq(const Formula& f) { return Formula::make(Op::DiamLeq, {}, {f}); }
Formula box_leq(const Formula& f) { return Formula::make(Op::BoxLeq, {}, {f}); }
Formula eq_theta(const Formula& f) { return Formula::make(Op::EqTheta, {}, {f}); }
Formula diam_lt(const Formula& f) { return conj(diam_leq(f), neg(eq_theta(f))); }
Formula box_lt(const Formula& f) { return conj(box_leq(f), neg(eq_theta(f))); }
Formula box_gt(const Formula& f) { return neg(diam_leq(neg(f))); }
Formula box_f(const Formula& f) { return Formula::make(Op::BoxF, {}, {f}); }
Formula diam_f(const Formula& f) { return Formula::make(Op::DiamF, {}, {f}); }
Formula undecided() { return conj(neg(atom("Bp")), neg(atom("Bnp"))); }

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return top();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return bottom();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok {
  End,
  LParen,
  RParen,
  Not,
  And,
  Or,
  Implies,
  DiamLeq,
  BoxLeq,
  DiamLt,
  BoxLt,
  BoxGt,
  EqTheta,
  BoxF,
  DiamF,
  Top,
  Atom,
};

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

std::vector<Token> tokenize(std::string_view s) {
  static const std::pair<std::string_view, Tok> symbols[] = {
      {"<le>", Tok::DiamLeq}, {"[le]", Tok::BoxLeq}, {"<lt>", Tok::DiamLt}, {"[lt]", Tok::BoxLt},
      {"[gt]", Tok::BoxGt},   {"(=)", Tok::EqTheta}, {"<F>", Tok::DiamF},   {"->", Tok::Implies},
      {"~", Tok::Not},        {"&", Tok::And},       {"|", Tok::Or},        {"(", Tok::LParen},
      {")", Tok::RParen},
  };
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    bool matched = false;
    for (const auto& [sym, kind] : symbols) {
      if (s.substr(i, sym.size()) == sym) {
        out.push_back({kind, i, std::string(sym)});
        i += sym.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::isalpha(static_cast<unsigned char>(s[i]))) {
      std::size_t j = i;
      while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
      std::string word(s.substr(i, j - i));
      if (word == "T") {
        out.push_back({Tok::Top, i, word});
      } else if (word == "F") {
        out.push_back({Tok::BoxF, i, word});
      } else if (word == "B" || word == "Bp" || word == "Bnp") {
        out.push_back({Tok::Atom, i, word});
      } else {
        throw ParseError(i, "unknown token '" + word + "'");
      }
      i = j;
      continue;
    }
    throw ParseError(i, std::string("unknown token '") + s[i] + "'");
  }
  out.push_back({Tok::End, s.size(), {}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse() {
    Formula f = implication();
    if (peek().kind != Tok::End) {
      if (peek().kind == Tok::RParen) throw ParseError(peek().pos, "unbalanced ')'");
      throw ParseError(peek().pos, "unexpected token '" + peek().text + "'");
    }
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  Formula implication() {
    Formula lhs = disjunction();
    if (peek().kind == Tok::Implies) {
      take();
      return implies(lhs, implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula acc = conjunction();
    while (peek().kind == Tok::Or) {
      take();
      acc = disj(acc, conjunction());
    }
    return acc;
  }

  Formula conjunction() {
    Formula acc = unary();
    while (peek().kind == Tok::And) {
      take();
      acc = conj(acc, unary());
    }
    return acc;
  }

  Formula unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not: take(); return neg(unary());
      case Tok::DiamLeq: take(); return diam_leq(unary());
      case Tok::BoxLeq: take(); return box_leq(unary());
      case Tok::DiamLt: take(); return diam_lt(unary());
      case Tok::BoxLt: take(); return box_lt(unary());
      case Tok::BoxGt: take(); return box_gt(unary());
      case Tok::EqTheta: take(); return eq_theta(unary());
      case Tok::BoxF: take(); return box_f(unary());
      case Tok::DiamF: take(); return diam_f(unary());
      default: return primary();
    }
  }

  Formula primary() {
    const Token& t = take();
    switch (t.kind) {
      case Tok::Top: return top();
      case Tok::Atom: return atom(t.text);
      case Tok::LParen: {
        Formula f = implication();
        if (peek().kind != Tok::RParen) throw ParseError(peek().pos, "unbalanced '(': expected ')'");
        take();
        return f;
      }
      case Tok::End:
        if (pos_ >= 2 && toks_[pos_ - 2].kind != Tok::LParen) {
          const Token& op = toks_[pos_ - 2];
          throw ParseError(op.pos, "dangling operator '" + op.text + "'");
        }
        throw ParseError(t.pos, "unexpected end of input");
      default: throw ParseError(t.pos, "unexpected token '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void print(const Formula& f, std::string& out);

void print_operand(const Formula& f, std::string& out) {
  if (f.op() == Op::And) {
    out += '(';
    print(f, out);
    out += ')';
  } else {
    print(f, out);
  }
}

void print(const Formula& f, std::string& out) {
  switch (f.op()) {
    case Op::Top: out += 'T'; return;
    case Op::Atom: out += f.atom_name(); return;
    case Op::Not: out += '~'; print_operand(f.operand(), out); return;
    case Op::DiamLeq: out += "<le> "; print_operand(f.operand(), out); return;
    case Op::BoxLeq: out += "[le] "; print_operand(f.operand(), out); return;
    case Op::EqTheta: out += "(=) "; print_operand(f.operand(), out); return;
    case Op::BoxF: out += "F "; print_operand(f.operand(), out); return;
    case Op::DiamF: out += "<F> "; print_operand(f.operand(), out); return;
    case Op::And:
      print(f.left(), out);
      out += " & ";
      print_operand(f.right(), out);
      return;
  }
}

void flatten_conj(const Formula& f, std::vector<Formula>& out) {
  if (f.op() == Op::And) {
    flatten_conj(f.left(), out);
    flatten_conj(f.right(), out);
  } else {
    out.push_back(f);
  }
}

void collect_atoms(const Formula& f, std::set<std::string>& out, bool& threshold) {
  if (f.op() == Op::Atom) out.insert(f.atom_name());
  if (f.op() == Op::DiamLeq || f.op() == Op::BoxLeq || f.op() == Op::EqTheta) threshold = true;
  if (f.op() == Op::And) {
    collect_atoms(f.left(), out, threshold);
    collect_atoms(f.right(), out, threshold);
  } else if (f.is_unary()) {
    collect_atoms(f.operand(), out, threshold);
  }
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(tokenize(text)).parse(); }

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

Formula normal_form(const Formula& f) {
  switch (f.op()) {
    case Op::Top:
    case Op::Atom:
      return f;
    case Op::And: {
      std::vector<Formula> parts;
      flatten_conj(f, parts);
      std::vector<std::pair<std::string, Formula>> keyed;
      for (const auto& p : parts) {
        Formula n = normal_form(p);
        keyed.emplace_back(to_string(n), n);
      }
      std::stable_sort(keyed.begin(), keyed.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      std::vector<Formula> sorted;
      for (auto& [k, n] : keyed) sorted.push_back(n);
      return conj_all(sorted);
    }
    default:
      return Formula::make(f.op(), {}, {normal_form(f.operand())});
  }
}

std::vector<std::string> atoms_of(const Formula& f) {
  std::set<std::string> s;
  bool threshold = false;
  collect_atoms(f, s, threshold);
  return {s.begin(), s.end()};
}

bool uses_threshold(const Formula& f) {
  std::set<std::string> s;
  bool threshold = false;
  collect_atoms(f, s, threshold);
  return threshold;
}

}  // namespace tam
