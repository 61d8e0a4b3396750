#include "qobjsim/qasm/gates.hpp"

#include <cctype>
#include <cmath>

namespace qobjsim::qasm {

namespace {

using Complex = std::complex<double>;

struct DefLexer {
  enum class Tok { Ident, Number, LParen, RParen, LBrace, RBrace, Comma, Semi,
                   Plus, Minus, Star, Slash, End };

  const std::string& src;
  size_t pos = 0;
  Tok tok = Tok::End;
  std::string ident;
  double number = 0.0;
  size_t tok_pos = 0;

  explicit DefLexer(const std::string& s) : src(s) { advance(); }

  void advance() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    tok_pos = pos;
    if (pos >= src.size()) {
      tok = Tok::End;
      return;
    }
    char c = src[pos];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t end = pos;
      while (end < src.size() && (std::isalnum(static_cast<unsigned char>(src[end])) ||
                                  src[end] == '_')) {
        ++end;
      }
      ident = src.substr(pos, end - pos);
      pos = end;
      tok = Tok::Ident;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t end = pos;
      while (end < src.size() && (std::isdigit(static_cast<unsigned char>(src[end])) ||
                                  src[end] == '.' || src[end] == 'e' || src[end] == 'E' ||
                                  ((src[end] == '+' || src[end] == '-') && end > pos &&
                                   (src[end - 1] == 'e' || src[end - 1] == 'E')))) {
        ++end;
      }
      number = std::stod(src.substr(pos, end - pos));
      pos = end;
      tok = Tok::Number;
      return;
    }
    ++pos;
    switch (c) {
      case '(': tok = Tok::LParen; return;
      case ')': tok = Tok::RParen; return;
      case '{': tok = Tok::LBrace; return;
      case '}': tok = Tok::RBrace; return;
      case ',': tok = Tok::Comma; return;
      case ';': tok = Tok::Semi; return;
      case '+': tok = Tok::Plus; return;
      case '-': tok = Tok::Minus; return;
      case '*': tok = Tok::Star; return;
      case '/': tok = Tok::Slash; return;
      default:
        throw DefError(tok_pos, std::string("unexpected character '") + c + "'");
    }
  }
};

struct DefParser {
  DefLexer lex;
  std::vector<std::string> params;
  std::vector<std::string> args;

  explicit DefParser(const std::string& s) : lex(s) {}

  [[noreturn]] void fail(const std::string& msg) { throw DefError(lex.tok_pos, msg); }

  void expect(DefLexer::Tok t, const char* what) {
    if (lex.tok != t) fail(std::string("expected ") + what);
    lex.advance();
  }

  std::string expect_ident() {
    if (lex.tok != DefLexer::Tok::Ident) fail("expected identifier");
    std::string s = lex.ident;
    lex.advance();
    return s;
  }

  int arg_index(const std::string& name) {
    for (size_t i = 0; i < args.size(); ++i) {
      if (args[i] == name) return static_cast<int>(i);
    }
    fail("'" + name + "' is not a declared qubit argument");
  }

  std::shared_ptr<ParamExpr> make(ParamExpr::Node&& n) {
    auto e = std::make_shared<ParamExpr>();
    e->node = std::move(n);
    return e;
  }

  ParamExpr parse_expr() { return *parse_sum(); }

  std::shared_ptr<ParamExpr> parse_sum() {
    auto lhs = parse_product();
    while (lex.tok == DefLexer::Tok::Plus || lex.tok == DefLexer::Tok::Minus) {
      char op = lex.tok == DefLexer::Tok::Plus ? '+' : '-';
      lex.advance();
      lhs = make(ParamExpr::Binary{op, lhs, parse_product()});
    }
    return lhs;
  }

  std::shared_ptr<ParamExpr> parse_product() {
    auto lhs = parse_unary();
    while (lex.tok == DefLexer::Tok::Star || lex.tok == DefLexer::Tok::Slash) {
      char op = lex.tok == DefLexer::Tok::Star ? '*' : '/';
      lex.advance();
      lhs = make(ParamExpr::Binary{op, lhs, parse_unary()});
    }
    return lhs;
  }

  std::shared_ptr<ParamExpr> parse_unary() {
    if (lex.tok == DefLexer::Tok::Minus) {
      lex.advance();
      return make(ParamExpr::Unary{parse_unary()});
    }
    return parse_primary();
  }

  std::shared_ptr<ParamExpr> parse_primary() {
    if (lex.tok == DefLexer::Tok::Number) {
      double v = lex.number;
      lex.advance();
      return make(ParamExpr::Const{v});
    }
    if (lex.tok == DefLexer::Tok::LParen) {
      lex.advance();
      auto e = parse_sum();
      expect(DefLexer::Tok::RParen, "')'");
      return e;
    }
    if (lex.tok == DefLexer::Tok::Ident) {
      std::string name = lex.ident;
      if (name == "pi") {
        lex.advance();
        return make(ParamExpr::Const{M_PI});
      }
      for (size_t i = 0; i < params.size(); ++i) {
        if (params[i] == name) {
          lex.advance();
          return make(ParamExpr::Param{i});
        }
      }
      fail("'" + name + "' is not a gate parameter");
    }
    fail("expected expression");
  }

  ParsedGateDef parse() {
    ParsedGateDef def;
    if (expect_ident() != "gate") throw DefError(0, "definition must start with 'gate'");
    def.name = expect_ident();
    if (lex.tok == DefLexer::Tok::LParen) {
      lex.advance();
      if (lex.tok != DefLexer::Tok::RParen) {
        params.push_back(expect_ident());
        while (lex.tok == DefLexer::Tok::Comma) {
          lex.advance();
          params.push_back(expect_ident());
        }
      }
      expect(DefLexer::Tok::RParen, "')'");
    }
    args.push_back(expect_ident());
    while (lex.tok == DefLexer::Tok::Comma) {
      lex.advance();
      args.push_back(expect_ident());
    }
    expect(DefLexer::Tok::LBrace, "'{'");
    while (lex.tok != DefLexer::Tok::RBrace) {
      std::string op = expect_ident();
      DefStatement stmt;
      if (op == "U") {
        stmt.kind = DefStatement::Kind::U;
        expect(DefLexer::Tok::LParen, "'('");
        stmt.angles[0] = parse_expr();
        expect(DefLexer::Tok::Comma, "','");
        stmt.angles[1] = parse_expr();
        expect(DefLexer::Tok::Comma, "','");
        stmt.angles[2] = parse_expr();
        expect(DefLexer::Tok::RParen, "')'");
        stmt.arg0 = arg_index(expect_ident());
      } else if (op == "CX") {
        stmt.kind = DefStatement::Kind::CX;
        stmt.arg0 = arg_index(expect_ident());
        expect(DefLexer::Tok::Comma, "','");
        stmt.arg1 = arg_index(expect_ident());
      } else {
        fail("body statements are restricted to U and CX");
      }
      expect(DefLexer::Tok::Semi, "';'");
      def.statements.push_back(std::move(stmt));
    }
    lex.advance();
    if (lex.tok != DefLexer::Tok::End) fail("trailing input after '}'");
    def.params = params;
    def.args = args;
    return def;
  }
};

}  // namespace

double ParamExpr::eval(const std::vector<double>& params) const {
  struct Visitor {
    const std::vector<double>& params;
    double operator()(const Const& c) { return c.value; }
    double operator()(const Param& p) {
      if (p.index >= params.size()) {
        throw GateError("gate parameter " + std::to_string(p.index) + " missing");
      }
      return params[p.index];
    }
    double operator()(const Unary& u) { return -u.arg->eval(params); }
    double operator()(const Binary& b) {
      double l = b.lhs->eval(params), r = b.rhs->eval(params);
      switch (b.op) {
        case '+': return l + r;
        case '-': return l - r;
        case '*': return l * r;
        case '/': return l / r;
      }
      return 0.0;
    }
  };
  return std::visit(Visitor{params}, node);
}

ParsedGateDef parse_qasm_def(const std::string& src) { return DefParser(src).parse(); }

Matrix u_matrix(double theta, double phi, double lambda) {
  Matrix m(2, 2);
  double c = std::cos(theta / 2), s = std::sin(theta / 2);
  m(0, 0) = c;
  m(0, 1) = -std::exp(Complex(0, lambda)) * s;
  m(1, 0) = std::exp(Complex(0, phi)) * s;
  m(1, 1) = std::exp(Complex(0, phi + lambda)) * c;
  return m;
}

Matrix cx_matrix() {
  // Index bit 0 = control (first argument), bit 1 = target.
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1;
  m(3, 1) = 1;
  m(2, 2) = 1;
  m(1, 3) = 1;
  return m;
}

Matrix embed_gate(const Matrix& gate, const std::vector<int>& positions, int n_qubits) {
  int k = static_cast<int>(positions.size());
  long long dim = 1LL << n_qubits;
  long long small = 1LL << k;

  long long pos_mask = 0;
  for (int p : positions) pos_mask |= 1LL << p;

  auto gather = [&](long long full) {
    long long s = 0;
    for (int j = 0; j < k; ++j) {
      if (full & (1LL << positions[j])) s |= 1LL << j;
    }
    return s;
  };
  auto scatter = [&](long long s, long long base) {
    long long full = base;
    for (int j = 0; j < k; ++j) {
      if (s & (1LL << j)) full |= 1LL << positions[j];
    }
    return full;
  };

  Matrix out = Matrix::Zero(dim, dim);
  for (long long col = 0; col < dim; ++col) {
    long long s_col = gather(col);
    long long base = col & ~pos_mask;
    for (long long s_row = 0; s_row < small; ++s_row) {
      Complex v = gate(s_row, s_col);
      if (v != Complex(0, 0)) out(scatter(s_row, base), col) = v;
    }
  }
  return out;
}

Matrix gate_matrix(const std::string& name, const std::vector<double>& params,
                   const std::map<std::string, ParsedGateDef>& defs) {
  auto need = [&](size_t n) {
    if (params.size() != n) {
      throw GateError("gate '" + name + "' takes " + std::to_string(n) + " parameters, got " +
                      std::to_string(params.size()));
    }
  };
  if (name == "u1") {
    need(1);
    return u_matrix(0, 0, params[0]);
  }
  if (name == "u2") {
    need(2);
    return u_matrix(M_PI / 2, params[0], params[1]);
  }
  if (name == "u3" || name == "U") {
    need(3);
    return u_matrix(params[0], params[1], params[2]);
  }
  if (name == "cx" || name == "CX") {
    need(0);
    return cx_matrix();
  }
  if (name == "id") {
    return Matrix::Identity(2, 2);
  }
  auto it = defs.find(name);
  if (it == defs.end()) throw GateError("unknown gate '" + name + "'");
  const ParsedGateDef& def = it->second;
  if (params.size() != def.params.size()) {
    throw GateError("gate '" + name + "' takes " + std::to_string(def.params.size()) +
                    " parameters, got " + std::to_string(params.size()));
  }
  int n = static_cast<int>(def.args.size());
  long long dim = 1LL << n;
  Matrix acc = Matrix::Identity(dim, dim);
  for (const auto& stmt : def.statements) {
    Matrix stage;
    if (stmt.kind == DefStatement::Kind::U) {
      stage = embed_gate(u_matrix(stmt.angles[0].eval(params), stmt.angles[1].eval(params),
                                  stmt.angles[2].eval(params)),
                         {stmt.arg0}, n);
    } else {
      stage = embed_gate(cx_matrix(), {stmt.arg0, stmt.arg1}, n);
    }
    acc = stage * acc;  // circuit order: later statements multiply on the left
  }
  return acc;
}

int gate_arity(const std::string& name, const std::map<std::string, ParsedGateDef>& defs) {
  if (name == "u1" || name == "u2" || name == "u3" || name == "U" || name == "id") return 1;
  if (name == "cx" || name == "CX") return 2;
  auto it = defs.find(name);
  if (it == defs.end()) throw GateError("unknown gate '" + name + "'");
  return static_cast<int>(it->second.args.size());
}

}  // namespace qobjsim::qasm
