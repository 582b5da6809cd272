#include "hflmc/parser.hpp"

#include <cctype>
#include <set>

#include "hflmc/errors.hpp"

namespace hflmc {
namespace {

enum class Tok {
  Ident,
  True,
  False,
  Sign,  // `=v` or `=m`; text holds the letter
  Lambda,
  Dot,
  Caret,
  Arrow,
  Or,
  And,
  LParen,
  RParen,
  LAngle,
  RAngle,
  LBrack,
  RBrack,
  Semi,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      Token t;
      t.line = line_;
      t.col = col_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (ident_start(c)) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && ident_char(src_[pos_])) advance();
        t.text = std::string(src_.substr(start, pos_ - start));
        t.kind = t.text == "true" ? Tok::True : t.text == "false" ? Tok::False : Tok::Ident;
        out.push_back(std::move(t));
        continue;
      }
      advance();
      switch (c) {
        case '\\':
          if (peek() == '/') {
            advance();
            t.kind = Tok::Or;
          } else {
            t.kind = Tok::Lambda;
          }
          break;
        case '/':
          if (peek() != '\\') throw ParseError(t.line, t.col, "expected `/\\`");
          advance();
          t.kind = Tok::And;
          break;
        case '-':
          if (peek() != '>') throw ParseError(t.line, t.col, "expected `->`");
          advance();
          t.kind = Tok::Arrow;
          break;
        case '=': {
          skip_blank();
          char s = peek();
          if ((s != 'v' && s != 'm') || (pos_ + 1 < src_.size() && ident_char(src_[pos_ + 1])))
            throw ParseError(line_, col_, "expected `v` or `m` after `=`");
          advance();
          t.kind = Tok::Sign;
          t.text = std::string(1, s);
          break;
        }
        case '.': t.kind = Tok::Dot; break;
        case '^': t.kind = Tok::Caret; break;
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case '<': t.kind = Tok::LAngle; break;
        case '>': t.kind = Tok::RAngle; break;
        case '[': t.kind = Tok::LBrack; break;
        case ']': t.kind = Tok::RBrack; break;
        case ';': t.kind = Tok::Semi; break;
        default:
          throw ParseError(t.line, t.col, std::string("unexpected character `") + c + "`");
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

const char* describe(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::True: return "`true`";
    case Tok::False: return "`false`";
    case Tok::Sign: return "`=v`/`=m`";
    case Tok::Lambda: return "`\\`";
    case Tok::Dot: return "`.`";
    case Tok::Caret: return "`^`";
    case Tok::Arrow: return "`->`";
    case Tok::Or: return "`\\/`";
    case Tok::And: return "`/\\`";
    case Tok::LParen: return "`(`";
    case Tok::RParen: return "`)`";
    case Tok::LAngle: return "`<`";
    case Tok::RAngle: return "`>`";
    case Tok::LBrack: return "`[`";
    case Tok::RBrack: return "`]`";
    case Tok::Semi: return "`;`";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct VarUse {
  Symbol name;
  int line;
  int col;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Hes parse_file() {
    Hes hes;
    std::vector<std::vector<VarUse>> uses;
    std::vector<Token> heads;
    while (cur().kind != Tok::End) {
      uses_.clear();
      heads.push_back(cur());
      hes.equations.push_back(equation());
      uses.push_back(std::move(uses_));
    }
    if (hes.equations.empty()) throw ParseError(cur().line, cur().col, "expected at least one equation");
    check_names(hes, heads, uses);
    hes.finalize();
    return hes;
  }

  Kind kind_only() {
    Kind k = kind();
    expect(Tok::End);
    return k;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }

  Token expect(Tok k) {
    if (cur().kind != k)
      throw ParseError(cur().line, cur().col,
                       std::string("expected ") + describe(k) + ", found " + describe(cur().kind));
    return toks_[pos_++];
  }

  bool accept(Tok k) {
    if (cur().kind != k) return false;
    ++pos_;
    return true;
  }

  Equation equation() {
    Equation eq;
    eq.name = Symbol(expect(Tok::Ident).text);
    Token sign = expect(Tok::Sign);
    eq.sign = sign.text == "v" ? Sign::Nu : Sign::Mu;
    while (cur().kind == Tok::Lambda) {
      ++pos_;
      Param p;
      p.name = Symbol(expect(Tok::Ident).text);
      if (accept(Tok::Caret)) {
        p.kind = kind();
        p.annotated = true;
      }
      expect(Tok::Dot);
      eq.params.push_back(p);
    }
    eq.body = disj();
    expect(Tok::Semi);
    return eq;
  }

  Formula disj() {
    Formula f = conj();
    while (accept(Tok::Or)) f = mk_or(f, conj());
    return f;
  }

  Formula conj() {
    Formula f = modal();
    while (accept(Tok::And)) f = mk_and(f, modal());
    return f;
  }

  Formula modal() {
    if (accept(Tok::LAngle)) {
      Symbol a(expect(Tok::Ident).text);
      expect(Tok::RAngle);
      return mk_dia(a, modal());
    }
    if (accept(Tok::LBrack)) {
      Symbol a(expect(Tok::Ident).text);
      expect(Tok::RBrack);
      return mk_box(a, modal());
    }
    return app();
  }

  static bool starts_atom(Tok k) {
    return k == Tok::Ident || k == Tok::True || k == Tok::False || k == Tok::LParen;
  }

  Formula app() {
    Formula f = atom();
    while (starts_atom(cur().kind)) f = mk_app(f, atom());
    return f;
  }

  Formula atom() {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::True:
        ++pos_;
        return mk_true();
      case Tok::False:
        ++pos_;
        return mk_false();
      case Tok::Ident: {
        Symbol s(t.text);
        uses_.push_back({s, t.line, t.col});
        ++pos_;
        return mk_var(s);
      }
      case Tok::LParen: {
        ++pos_;
        if (cur().kind == Tok::Lambda)
          throw ParseError(cur().line, cur().col, "λ-abstraction is only allowed as an equation prefix");
        Formula f = disj();
        expect(Tok::RParen);
        return f;
      }
      default:
        throw ParseError(t.line, t.col, std::string("expected a formula, found ") + describe(t.kind));
    }
  }

  Kind kind() {
    Kind lhs;
    if (accept(Tok::LParen)) {
      lhs = kind();
      expect(Tok::RParen);
    } else {
      Token t = expect(Tok::Ident);
      if (t.text != "o") throw ParseError(t.line, t.col, "expected kind `o`");
    }
    if (accept(Tok::Arrow)) return Kind::arrow(lhs, kind());
    return lhs;
  }

  static void check_names(const Hes& hes, const std::vector<Token>& heads,
                          const std::vector<std::vector<VarUse>>& uses) {
    std::set<Symbol> eq_names;
    for (std::size_t i = 0; i < hes.size(); ++i) {
      if (!eq_names.insert(hes[i].name).second)
        throw ParseError(heads[i].line, heads[i].col, "duplicate equation `" + hes[i].name.str() + "`");
    }
    std::set<Symbol> all_params;
    for (std::size_t i = 0; i < hes.size(); ++i) {
      std::set<Symbol> local;
      for (const auto& p : hes[i].params) {
        if (eq_names.contains(p.name))
          throw ParseError(heads[i].line, heads[i].col,
                           "parameter `" + p.name.str() + "` shadows an equation name");
        if (!local.insert(p.name).second)
          throw ParseError(heads[i].line, heads[i].col,
                           "parameter `" + p.name.str() + "` bound twice in `" + hes[i].name.str() + "`");
        if (!all_params.insert(p.name).second)
          throw ParseError(heads[i].line, heads[i].col,
                           "parameter `" + p.name.str() + "` is already used by another equation");
      }
      for (const auto& u : uses[i]) {
        if (!local.contains(u.name) && !eq_names.contains(u.name))
          throw ParseError(u.line, u.col, "unbound identifier `" + u.name.str() + "`");
      }
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<VarUse> uses_;
};

}  // namespace

Hes parse_hes(std::string_view text) { return Parser(Lexer(text).run()).parse_file(); }

Kind parse_kind(std::string_view text) { return Parser(Lexer(text).run()).kind_only(); }

}  // namespace hflmc
