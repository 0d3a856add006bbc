#include "phasegame/expr.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "phasegame/error.hpp"

namespace phasegame {

namespace {

enum class Tok { Name, LParen, RParen, Tensor, Par, With, Plus, Implies, Dual, End };

struct Token {
  Tok kind;
  std::string text;
};

bool name_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '{' || c == '}' || c == ',' || c == '.' || c == '\'';
}

std::vector<Token> lex(std::string_view s) {
  static const std::pair<std::string_view, Tok> symbols[] = {
      {"⊸", Tok::Implies}, {"-o", Tok::Implies}, {"⊗", Tok::Tensor}, {"×", Tok::Tensor}, {"*", Tok::Tensor},
      {"⅋", Tok::Par},     {"&", Tok::With},     {"+", Tok::Plus},   {"^", Tok::Dual},   {"⊥", Tok::Dual},
      {"(", Tok::LParen},  {")", Tok::RParen},
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
        out.push_back({kind, std::string(sym)});
        i += sym.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (!name_char(static_cast<unsigned char>(s[i]))) {
      throw Error(ErrorKind::ParseError, "unexpected character at offset " + std::to_string(i));
    }
    std::size_t j = i;
    while (j < s.size() && name_char(static_cast<unsigned char>(s[j]))) ++j;
    out.push_back({Tok::Name, std::string(s.substr(i, j - i))});
    i = j;
  }
  out.push_back({Tok::End, ""});
  return out;
}

class Parser {
 public:
  Parser(const PhaseStructure& ps, std::vector<Token> toks, const EvalOptions& opts, Diagnostics* diag)
      : ps_(ps), toks_(std::move(toks)), opts_(opts), diag_(diag) {}

  Element parse() {
    auto v = implication();
    if (peek().kind != Tok::End) throw Error(ErrorKind::ParseError, "unexpected '" + peek().text + "'");
    return v;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  // The words "x" and "par" act as operators when they follow an operand.
  bool at(Tok kind) const {
    const auto& t = peek();
    if (t.kind == kind) return true;
    if (t.kind != Tok::Name) return false;
    return (kind == Tok::Tensor && t.text == "x") || (kind == Tok::Par && t.text == "par");
  }

  Element implication() {
    auto left = plus();
    if (!at(Tok::Implies)) return left;
    ++pos_;
    auto right = implication();
    if (opts_.implication == ImplicationMode::Residual) return ps_.lin_implies(left, right);
    return ps_.dual(tensor(ps_, left, ps_.dual(right), opts_.tensor, diag_));
  }

  Element plus() {
    auto v = with();
    while (at(Tok::Plus)) {
      ++pos_;
      v = additive_disj(ps_, v, with(), diag_);
    }
    return v;
  }

  Element with() {
    auto v = par_();
    while (at(Tok::With)) {
      ++pos_;
      v = additive_conj(ps_, v, par_(), diag_);
    }
    return v;
  }

  Element par_() {
    auto v = tens();
    while (at(Tok::Par)) {
      ++pos_;
      v = par(ps_, v, tens(), diag_);
    }
    return v;
  }

  Element tens() {
    auto v = postfix();
    while (at(Tok::Tensor)) {
      ++pos_;
      v = tensor(ps_, v, postfix(), opts_.tensor, diag_);
    }
    return v;
  }

  Element postfix() {
    auto v = atom();
    while (at(Tok::Dual)) {
      ++pos_;
      v = ps_.dual(v);
    }
    return v;
  }

  Element atom() {
    const auto& t = peek();
    if (t.kind == Tok::LParen) {
      ++pos_;
      auto v = implication();
      if (peek().kind != Tok::RParen) throw Error(ErrorKind::ParseError, "missing ')'");
      ++pos_;
      return v;
    }
    if (t.kind != Tok::Name) {
      throw Error(ErrorKind::ParseError, t.kind == Tok::End ? "unexpected end of expression" : "unexpected '" + t.text + "'");
    }
    ++pos_;
    try {
      return ps_.lattice().element(t.text);
    } catch (const Error&) {
      throw Error(ErrorKind::ParseError, "unknown element '" + t.text + "'");
    }
  }

  const PhaseStructure& ps_;
  std::vector<Token> toks_;
  EvalOptions opts_;
  Diagnostics* diag_;
  std::size_t pos_ = 0;
};

}  // namespace

Element eval_expression(const PhaseStructure& ps, std::string_view text, const EvalOptions& options, Diagnostics* diag) {
  return Parser(ps, lex(text), options, diag).parse();
}

}  // namespace phasegame
