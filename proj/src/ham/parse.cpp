#include <cctype>
#include <cmath>
#include <map>

#include "qobjsim/ham/ast.hpp"

namespace qobjsim::ham {

const char* to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::X: return "X";
    case OperatorKind::Y: return "Y";
    case OperatorKind::Z: return "Z";
    case OperatorKind::Sp: return "Sp";
    case OperatorKind::Sm: return "Sm";
    case OperatorKind::O: return "O";
    case OperatorKind::Lower: return "a";
    case OperatorKind::Raise: return "A";
    case OperatorKind::Number: return "N";
  }
  return "?";
}

ExprPtr make_expr(Expr::Node node) {
  return std::make_shared<const Expr>(Expr{std::move(node)});
}

namespace {

std::optional<OperatorKind> operator_kind(const std::string& s) {
  static const std::map<std::string, OperatorKind> kinds = {
      {"X", OperatorKind::X},   {"Y", OperatorKind::Y},     {"Z", OperatorKind::Z},
      {"Sp", OperatorKind::Sp}, {"Sm", OperatorKind::Sm},   {"O", OperatorKind::O},
      {"a", OperatorKind::Lower}, {"A", OperatorKind::Raise}, {"N", OperatorKind::Number}};
  auto it = kinds.find(s);
  if (it == kinds.end()) return std::nullopt;
  return it->second;
}

bool is_function_name(const std::string& s) {
  return s == "cos" || s == "sin" || s == "sqrt" || s == "abs" || s == "exp";
}

// Underscores in h_str are formatting; the lexer treats them as whitespace.
struct Lexer {
  enum class Tok { Number, Ident, LParen, RParen, LBrace, RBrace, LBracket, RBracket,
                   Comma, Plus, Minus, Star, Bind, End };

  const std::string& src;
  size_t pos = 0;
  Tok tok = Tok::End;
  double number = 0.0;
  std::string ident;
  size_t tok_pos = 0;

  explicit Lexer(const std::string& s) : src(s) { advance(); }

  void skip_filler() {
    while (pos < src.size() &&
           (src[pos] == '_' || std::isspace(static_cast<unsigned char>(src[pos])))) {
      ++pos;
    }
  }

  void advance() {
    skip_filler();
    tok_pos = pos;
    if (pos >= src.size()) {
      tok = Tok::End;
      return;
    }
    char c = src[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos + 1 < src.size() &&
         std::isdigit(static_cast<unsigned char>(src[pos + 1])))) {
      size_t end = pos;
      while (end < src.size() &&
             (std::isdigit(static_cast<unsigned char>(src[end])) || src[end] == '.')) {
        ++end;
      }
      // Exponent suffix (rare but harmless to accept).
      if (end < src.size() && (src[end] == 'e' || src[end] == 'E')) {
        size_t e = end + 1;
        if (e < src.size() && (src[e] == '+' || src[e] == '-')) ++e;
        if (e < src.size() && std::isdigit(static_cast<unsigned char>(src[e]))) {
          ++e;
          while (e < src.size() && std::isdigit(static_cast<unsigned char>(src[e]))) ++e;
          end = e;
        }
      }
      number = std::stod(src.substr(pos, end - pos));
      pos = end;
      tok = Tok::Number;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t end = pos;
      while (end < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[end])))) {
        ++end;
      }
      ident = src.substr(pos, end - pos);
      pos = end;
      tok = Tok::Ident;
      return;
    }
    switch (c) {
      case '(': tok = Tok::LParen; ++pos; return;
      case ')': tok = Tok::RParen; ++pos; return;
      case '{': tok = Tok::LBrace; ++pos; return;
      case '}': tok = Tok::RBrace; ++pos; return;
      case '[': tok = Tok::LBracket; ++pos; return;
      case ']': tok = Tok::RBracket; ++pos; return;
      case ',': tok = Tok::Comma; ++pos; return;
      case '+': tok = Tok::Plus; ++pos; return;
      case '-': tok = Tok::Minus; ++pos; return;
      case '*': tok = Tok::Star; ++pos; return;
      case '|':
        if (pos + 1 < src.size() && src[pos + 1] == '|') {
          tok = Tok::Bind;
          pos += 2;
          return;
        }
        throw DslError(pos, "'||'", "stray '|'");
      default:
        throw DslError(pos, "token", std::string("unexpected character '") + c + "'");
    }
  }
};

struct Parser {
  Lexer lex;

  explicit Parser(const std::string& s) : lex(s) {}

  [[noreturn]] void fail(const std::string& expected) {
    throw DslError(lex.tok_pos, expected, "unexpected input");
  }

  void expect(Lexer::Tok t, const std::string& what) {
    if (lex.tok != t) fail(what);
    lex.advance();
  }

  ExprPtr parse() {
    ExprPtr e = parse_sum();
    if (lex.tok != Lexer::Tok::End) fail("end of term");
    return e;
  }

  ExprPtr parse_sum() {
    std::vector<ExprPtr> terms;
    // A leading '+' is formatting ("_+2*pi*..." in the fixtures).
    if (lex.tok == Lexer::Tok::Plus) lex.advance();
    terms.push_back(parse_product());
    while (lex.tok == Lexer::Tok::Plus || lex.tok == Lexer::Tok::Minus) {
      bool minus = lex.tok == Lexer::Tok::Minus;
      lex.advance();
      ExprPtr t = parse_product();
      if (minus) t = make_expr(Expr::Negate{t});
      terms.push_back(t);
    }
    if (terms.size() == 1) return terms[0];
    return make_expr(Expr::Sum{std::move(terms)});
  }

  ExprPtr parse_product() {
    std::vector<ExprPtr> factors;
    factors.push_back(parse_unary());
    for (;;) {
      if (lex.tok == Lexer::Tok::Star || lex.tok == Lexer::Tok::Bind) {
        // '||' binds a channel amplitude to the operator on its left; the
        // algebra is an ordinary product either way.
        lex.advance();
        factors.push_back(parse_unary());
      } else if (lex.tok == Lexer::Tok::LParen) {
        // Juxtaposition before a group: "X{i}_(_a_+_A_)".
        factors.push_back(parse_unary());
      } else {
        break;
      }
    }
    if (factors.size() == 1) return factors[0];
    return make_expr(Expr::Product{std::move(factors)});
  }

  ExprPtr parse_unary() {
    if (lex.tok == Lexer::Tok::Minus) {
      lex.advance();
      return make_expr(Expr::Negate{parse_unary()});
    }
    return parse_primary();
  }

  Index parse_index() {
    if (lex.tok == Lexer::Tok::Number) {
      double v = lex.number;
      lex.advance();
      int i = static_cast<int>(v);
      if (static_cast<double>(i) != v) fail("integer index");
      return Index{i};
    }
    if (lex.tok == Lexer::Tok::Ident) {
      std::string name = lex.ident;
      lex.advance();
      return Index{name};
    }
    fail("subsystem index");
  }

  std::variant<int, std::string> parse_bound() {
    if (lex.tok == Lexer::Tok::Number) {
      int v = static_cast<int>(lex.number);
      lex.advance();
      return v;
    }
    if (lex.tok == Lexer::Tok::Ident) {
      std::string name = lex.ident;
      lex.advance();
      return name;
    }
    fail("SUM bound");
  }

  // Identifier names split into an alphabetic stem and an optional inline
  // digit suffix ("Sp0" means Sp on subsystem 0).
  static void split_stem(const std::string& s, std::string& stem, std::optional<int>& digits) {
    size_t k = 0;
    while (k < s.size() && std::isalpha(static_cast<unsigned char>(s[k]))) ++k;
    stem = s.substr(0, k);
    if (k < s.size()) {
      digits = std::stoi(s.substr(k));
    } else {
      digits = std::nullopt;
    }
  }

  ExprPtr parse_primary() {
    if (lex.tok == Lexer::Tok::Number) {
      double v = lex.number;
      lex.advance();
      return make_expr(Expr::Const{v});
    }
    if (lex.tok == Lexer::Tok::LParen) {
      lex.advance();
      ExprPtr e = parse_sum();
      expect(Lexer::Tok::RParen, "')'");
      return e;
    }
    if (lex.tok != Lexer::Tok::Ident) fail("number, name or '('");

    std::string name = lex.ident;
    lex.advance();

    if (name == "pi") return make_expr(Expr::Const{M_PI});

    if (name == "SUM") {
      expect(Lexer::Tok::LBracket, "'[' after SUM");
      if (lex.tok != Lexer::Tok::Ident) fail("SUM index variable");
      std::string var = lex.ident;
      lex.advance();
      expect(Lexer::Tok::Comma, "','");
      auto lo = parse_bound();
      expect(Lexer::Tok::Comma, "','");
      auto hi = parse_bound();
      expect(Lexer::Tok::Comma, "','");
      ExprPtr body = parse_sum();
      expect(Lexer::Tok::RBracket, "']'");
      return make_expr(Expr::SumMacro{var, lo, hi, body});
    }

    if (is_function_name(name) && lex.tok == Lexer::Tok::LParen) {
      lex.advance();
      std::vector<ExprPtr> args;
      args.push_back(parse_sum());
      while (lex.tok == Lexer::Tok::Comma) {
        lex.advance();
        args.push_back(parse_sum());
      }
      expect(Lexer::Tok::RParen, "')'");
      return make_expr(Expr::Nonlinear{name, std::move(args)});
    }

    std::string stem;
    std::optional<int> inline_digits;
    split_stem(name, stem, inline_digits);

    std::optional<Index> braced;
    if (lex.tok == Lexer::Tok::LBrace) {
      lex.advance();
      braced = parse_index();
      expect(Lexer::Tok::RBrace, "'}'");
    }

    if (auto op = operator_kind(stem)) {
      std::optional<Index> idx;
      if (braced) {
        idx = braced;
      } else if (inline_digits) {
        idx = Index{*inline_digits};
      }
      return make_expr(Expr::Operator{*op, idx});
    }
    if (stem.size() == 1 && (stem[0] == 'D' || stem[0] == 'U' || stem[0] == 'M')) {
      Index idx;
      if (braced) {
        idx = *braced;
      } else if (inline_digits) {
        idx = Index{*inline_digits};
      } else {
        fail("channel index after '" + stem + "'");
      }
      return make_expr(Expr::ChannelRef{stem[0], idx});
    }
    // Variable: braced form composes the name ("v{i}" -> v0, v1, ...).
    if (braced) return make_expr(Expr::Var{name, braced});
    return make_expr(Expr::Var{name, std::nullopt});
  }
};

}  // namespace

ExprPtr parse_hstr_term(const std::string& term) { return Parser(term).parse(); }

std::vector<ExprPtr> parse_hstr(const std::vector<std::string>& terms) {
  std::vector<ExprPtr> out;
  out.reserve(terms.size());
  for (size_t i = 0; i < terms.size(); ++i) {
    try {
      out.push_back(parse_hstr_term(terms[i]));
    } catch (const DslError& e) {
      throw DslError(e.column(), e.expected(),
                     "h_str[" + std::to_string(i) + "] \"" + terms[i] + "\": " + e.what());
    }
  }
  return out;
}

Json expr_to_json(const ExprPtr& e) {
  struct Visitor {
    Json operator()(const Expr::Const& c) {
      Json j = Json::object();
      j["const"] = c.value;
      return j;
    }
    Json operator()(const Expr::Var& v) {
      Json j = Json::object();
      j["var"] = v.base;
      if (v.index) j["index"] = index_json(*v.index);
      return j;
    }
    Json operator()(const Expr::ChannelRef& c) {
      Json j = Json::object();
      j["channel"] = std::string(1, c.kind);
      j["index"] = index_json(c.index);
      return j;
    }
    Json operator()(const Expr::Operator& o) {
      Json j = Json::object();
      j["op"] = to_string(o.kind);
      if (o.subsystem) j["subsystem"] = index_json(*o.subsystem);
      return j;
    }
    Json operator()(const Expr::Product& p) {
      Json j = Json::object();
      Json f = Json::array();
      for (const auto& x : p.factors) f.push_back(expr_to_json(x));
      j["product"] = f;
      return j;
    }
    Json operator()(const Expr::Sum& s) {
      Json j = Json::object();
      Json t = Json::array();
      for (const auto& x : s.terms) t.push_back(expr_to_json(x));
      j["sum"] = t;
      return j;
    }
    Json operator()(const Expr::SumMacro& s) {
      Json j = Json::object();
      j["sum_over"] = s.var;
      j["lo"] = bound_json(s.lo);
      j["hi"] = bound_json(s.hi);
      j["body"] = expr_to_json(s.body);
      return j;
    }
    Json operator()(const Expr::Nonlinear& n) {
      Json j = Json::object();
      Json a = Json::array();
      for (const auto& x : n.args) a.push_back(expr_to_json(x));
      j["fn"] = n.fn;
      j["args"] = a;
      return j;
    }
    Json operator()(const Expr::Negate& n) {
      Json j = Json::object();
      j["negate"] = expr_to_json(n.arg);
      return j;
    }

    static Json index_json(const Index& i) {
      if (std::holds_alternative<int>(i)) return std::get<int>(i);
      return std::get<std::string>(i);
    }
    static Json bound_json(const std::variant<int, std::string>& b) {
      if (std::holds_alternative<int>(b)) return std::get<int>(b);
      return std::get<std::string>(b);
    }
  };
  return std::visit(Visitor{}, e->node);
}

}  // namespace qobjsim::ham
