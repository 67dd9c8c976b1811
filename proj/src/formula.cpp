#include "fghlab/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace fghlab {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::make(Op op, std::string name, Formula lhs, Formula rhs) {
  std::size_t size = 1;
  std::size_t h = std::hash<int>{}(static_cast<int>(op));
  unsigned depth = 0;
  bool box_free = op != Op::Box;
  if (op == Op::Var) h = mix(h, std::hash<std::string>{}(name));
  if (lhs.node_) {
    size += lhs.size();
    h = mix(h, lhs.hash());
    depth = lhs.modal_depth();
    box_free = box_free && lhs.is_box_free();
  }
  if (rhs.node_) {
    size += rhs.size();
    h = mix(h, rhs.hash());
    depth = std::max(depth, rhs.modal_depth());
    box_free = box_free && rhs.is_box_free();
  }
  if (op == Op::Box) ++depth;
  auto* node = new Node{op, std::move(name), std::move(lhs), std::move(rhs), size, h, depth, box_free};
  return Formula(std::shared_ptr<const Node>(node));
}

Formula Formula::var(std::string name) {
  if (name.empty()) throw Error("variable name must be nonempty");
  return make(Op::Var, std::move(name), {}, {});
}
Formula Formula::top() { return make(Op::Top, {}, {}, {}); }
Formula Formula::bot() { return make(Op::Bot, {}, {}, {}); }
Formula Formula::neg(Formula a) { return make(Op::Not, {}, std::move(a), {}); }
Formula Formula::box(Formula a) { return make(Op::Box, {}, std::move(a), {}); }
Formula Formula::conj(Formula a, Formula b) { return make(Op::And, {}, std::move(a), std::move(b)); }
Formula Formula::disj(Formula a, Formula b) { return make(Op::Or, {}, std::move(a), std::move(b)); }
Formula Formula::imp(Formula a, Formula b) { return make(Op::Imp, {}, std::move(a), std::move(b)); }
Formula Formula::iff(Formula a, Formula b) { return make(Op::Iff, {}, std::move(a), std::move(b)); }

Formula Formula::binary(Op op, Formula a, Formula b) {
  switch (op) {
    case Op::And:
    case Op::Or:
    case Op::Imp:
    case Op::Iff:
      return make(op, {}, std::move(a), std::move(b));
    default:
      throw std::logic_error("Formula::binary called with a non-binary connective");
  }
}

Op Formula::op() const noexcept { return node_->op; }

bool Formula::is_binary() const noexcept {
  Op o = node_->op;
  return o == Op::And || o == Op::Or || o == Op::Imp || o == Op::Iff;
}

const std::string& Formula::name() const {
  if (node_->op != Op::Var) throw std::logic_error("name() on a non-variable");
  return node_->name;
}

const Formula& Formula::lhs() const {
  if (!node_->lhs.node_) throw std::logic_error("lhs() on a leaf");
  return node_->lhs;
}

const Formula& Formula::rhs() const {
  if (!node_->rhs.node_) throw std::logic_error("rhs() on a non-binary node");
  return node_->rhs;
}

std::size_t Formula::size() const noexcept { return node_->size; }
unsigned Formula::modal_depth() const noexcept { return node_->depth; }
bool Formula::is_box_free() const noexcept { return node_->box_free; }
std::size_t Formula::hash() const noexcept { return node_->hash; }

bool operator==(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (!a.node_) return std::strong_ordering::less;
  if (!b.node_) return std::strong_ordering::greater;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.size <=> y.size; c != 0) return c;
  if (auto c = x.op <=> y.op; c != 0) return c;
  if (x.op == Op::Var) return x.name.compare(y.name) <=> 0;
  if (auto c = x.lhs <=> y.lhs; c != 0) return c;
  return x.rhs <=> y.rhs;
}

ParseError::ParseError(std::size_t offset, const std::string& what)
    : Error("syntax error at offset " + std::to_string(offset) + ": " + what), offset_(offset) {}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { Ident, Top, Bot, Not, And, Or, Imp, Iff, Box, Dia, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view lit) { return s.substr(i, lit.size()) == lit; };
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    std::size_t at = i;
    if (std::isalpha(c)) {
      std::size_t j = i + 1;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, at, std::string(s.substr(i, j - i))});
      i = j;
    } else if (starts("#t")) {
      out.push_back({Tok::Top, at, {}});
      i += 2;
    } else if (starts("#f")) {
      out.push_back({Tok::Bot, at, {}});
      i += 2;
    } else if (starts("<->")) {
      out.push_back({Tok::Iff, at, {}});
      i += 3;
    } else if (starts("<>")) {
      out.push_back({Tok::Dia, at, {}});
      i += 2;
    } else if (starts("->")) {
      out.push_back({Tok::Imp, at, {}});
      i += 2;
    } else if (starts("[]")) {
      out.push_back({Tok::Box, at, {}});
      i += 2;
    } else if (c == '!') {
      out.push_back({Tok::Not, at, {}});
      ++i;
    } else if (c == '&') {
      out.push_back({Tok::And, at, {}});
      ++i;
    } else if (c == '|') {
      out.push_back({Tok::Or, at, {}});
      ++i;
    } else if (c == '(') {
      out.push_back({Tok::LParen, at, {}});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::RParen, at, {}});
      ++i;
    } else {
      throw ParseError(at, std::string("unexpected character '") + static_cast<char>(c) + "'");
    }
  }
  out.push_back({Tok::End, s.size(), {}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse_all() {
    Formula f = parse_iff();
    if (peek().kind != Tok::End) throw ParseError(peek().offset, "unexpected trailing input");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  Formula parse_iff() {
    Formula f = parse_imp();
    while (accept(Tok::Iff)) f = Formula::iff(f, parse_imp());
    return f;
  }

  Formula parse_imp() {
    Formula f = parse_or();
    if (accept(Tok::Imp)) return Formula::imp(f, parse_imp());
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept(Tok::Or)) f = Formula::disj(f, parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept(Tok::And)) f = Formula::conj(f, parse_unary());
    return f;
  }

  Formula parse_unary() {
    if (accept(Tok::Not)) return Formula::neg(parse_unary());
    if (accept(Tok::Box)) return Formula::box(parse_unary());
    if (accept(Tok::Dia)) return Formula::neg(Formula::box(Formula::neg(parse_unary())));
    return parse_atom();
  }

  Formula parse_atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident:
        ++pos_;
        return Formula::var(t.text);
      case Tok::Top:
        ++pos_;
        return Formula::top();
      case Tok::Bot:
        ++pos_;
        return Formula::bot();
      case Tok::LParen: {
        ++pos_;
        Formula f = parse_iff();
        if (!accept(Tok::RParen)) throw ParseError(peek().offset, "expected ')'");
        return f;
      }
      case Tok::End:
        throw ParseError(t.offset, "unexpected end of input, expected a formula");
      default:
        throw ParseError(t.offset, "expected a formula");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Binding strength used by the printer; higher binds tighter.
int level(Op op) {
  switch (op) {
    case Op::Iff: return 1;
    case Op::Imp: return 2;
    case Op::Or: return 3;
    case Op::And: return 4;
    case Op::Not:
    case Op::Box: return 5;
    default: return 6;
  }
}

const char* symbol(Op op) {
  switch (op) {
    case Op::And: return " & ";
    case Op::Or: return " | ";
    case Op::Imp: return " -> ";
    case Op::Iff: return " <-> ";
    default: return "";
  }
}

void print_into(const Formula& f, std::string& out);

void print_child(const Formula& f, bool parens, std::string& out) {
  if (parens) out += '(';
  print_into(f, out);
  if (parens) out += ')';
}

void print_into(const Formula& f, std::string& out) {
  switch (f.op()) {
    case Op::Var: out += f.name(); return;
    case Op::Top: out += "#t"; return;
    case Op::Bot: out += "#f"; return;
    case Op::Not:
      out += '!';
      print_child(f.lhs(), level(f.lhs().op()) < 5, out);
      return;
    case Op::Box:
      out += "[]";
      print_child(f.lhs(), level(f.lhs().op()) < 5, out);
      return;
    default: break;
  }
  const int l = level(f.op());
  const int ll = level(f.lhs().op());
  const int rl = level(f.rhs().op());
  const bool right_assoc = f.op() == Op::Imp;
  print_child(f.lhs(), right_assoc ? ll <= l : ll < l, out);
  out += symbol(f.op());
  print_child(f.rhs(), right_assoc ? rl < l : rl <= l, out);
}

void collect_subformulas(const Formula& f, FormulaSet& acc) {
  if (!acc.insert(f).second) return;
  if (f.op() == Op::Not || f.op() == Op::Box) collect_subformulas(f.lhs(), acc);
  if (f.is_binary()) {
    collect_subformulas(f.lhs(), acc);
    collect_subformulas(f.rhs(), acc);
  }
}

void collect_variables(const Formula& f, std::set<std::string>& acc) {
  switch (f.op()) {
    case Op::Var: acc.insert(f.name()); return;
    case Op::Top:
    case Op::Bot: return;
    case Op::Not:
    case Op::Box: collect_variables(f.lhs(), acc); return;
    default:
      collect_variables(f.lhs(), acc);
      collect_variables(f.rhs(), acc);
  }
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(tokenize(text)).parse_all(); }

std::string print_formula(const Formula& f) {
  std::string out;
  print_into(f, out);
  return out;
}

FormulaSet subformulas(const Formula& f) {
  FormulaSet acc;
  collect_subformulas(f, acc);
  return acc;
}

std::set<std::string> variables(const Formula& f) {
  std::set<std::string> acc;
  collect_variables(f, acc);
  return acc;
}

std::size_t cx(const Formula& f) {
  auto subs = subformulas(f);
  return static_cast<std::size_t>(
      std::count_if(subs.begin(), subs.end(), [](const Formula& g) { return g.op() == Op::Box; }));
}

FormulaSet rf(const Formula& f) {
  FormulaSet out;
  for (const Formula& g : subformulas(f))
    if (g.op() == Op::Box) out.insert(Formula::imp(g, g.lhs()));
  return out;
}

Formula box_n(std::size_t n, Formula f) {
  for (std::size_t i = 0; i < n; ++i) f = Formula::box(std::move(f));
  return f;
}

Formula diamond_n(std::size_t n, Formula f) {
  if (n == 0) return f;
  return Formula::neg(box_n(n, Formula::neg(std::move(f))));
}

Formula f_s(std::size_t s) {
  return Formula::imp(box_n(s + 1, Formula::bot()), box_n(s, Formula::bot()));
}

Formula substitute(const Formula& f, const Substitution& subst) {
  switch (f.op()) {
    case Op::Var: {
      auto it = subst.find(f.name());
      return it == subst.end() ? f : it->second;
    }
    case Op::Top:
    case Op::Bot: return f;
    case Op::Not: return Formula::neg(substitute(f.lhs(), subst));
    case Op::Box: return Formula::box(substitute(f.lhs(), subst));
    default: return Formula::binary(f.op(), substitute(f.lhs(), subst), substitute(f.rhs(), subst));
  }
}

Formula polarity(bool bit, Formula a) { return bit ? a : Formula::neg(std::move(a)); }

Formula truth_constant(bool bit) { return bit ? Formula::top() : Formula::bot(); }

Formula big_and(const std::vector<Formula>& parts) {
  if (parts.empty()) return Formula::top();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::conj(acc, parts[i]);
  return acc;
}

Formula big_or(const std::vector<Formula>& parts) {
  if (parts.empty()) return Formula::bot();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::disj(acc, parts[i]);
  return acc;
}

Formula big_and(const FormulaSet& parts) { return big_and(std::vector<Formula>(parts.begin(), parts.end())); }

}  // namespace fghlab
