#include "crflat/expr.hpp"

#include <cctype>
#include <limits>

#include "crflat/errors.hpp"

namespace crflat {

namespace {

struct Token {
  enum class Kind { Number, Ident, Op, LParen, RParen, End };
  Kind kind;
  std::string text;
  std::size_t position;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t k = 0;
  while (k < s.size()) {
    const char c = s[k];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++k;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = k;
      while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
      out.push_back({Token::Kind::Number, std::string(s.substr(start, k - start)), start});
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = k;
      while (k < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[k])) || s[k] == '_')) {
        ++k;
      }
      out.push_back({Token::Kind::Ident, std::string(s.substr(start, k - start)), start});
    } else if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
      out.push_back({Token::Kind::Op, std::string(1, c), k++});
    } else if (c == '(') {
      out.push_back({Token::Kind::LParen, "(", k++});
    } else if (c == ')') {
      out.push_back({Token::Kind::RParen, ")", k++});
    } else {
      throw ParseError(k, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Token::Kind::End, "", s.size()});
  return out;
}

constexpr int kAdditive = 10;
constexpr int kMultiplicative = 20;
constexpr int kUnary = 30;

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  ExprAst parse_all() {
    ExprAst e = expression(0);
    if (peek().kind != Token::Kind::End) {
      throw ParseError(peek().position, "unexpected '" + peek().text + "'");
    }
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  ExprAst expression(int min_bp) {
    ExprAst lhs = prefix();
    for (;;) {
      const Token& t = peek();
      if (t.kind != Token::Kind::Op) break;
      const char op = t.text[0];
      if (op == '^') {
        next();
        const Token& e = next();
        if (e.kind != Token::Kind::Number) {
          throw ParseError(e.position, "exponent must be a nonnegative integer literal");
        }
        if (e.text.size() > 4) throw ParseError(e.position, "exponent too large");
        ExprAst p{ExprAst::Kind::Pow, "", std::stoi(e.text), t.position, {}};
        p.children.push_back(std::move(lhs));
        lhs = std::move(p);
        continue;
      }
      const int bp = (op == '+' || op == '-') ? kAdditive : kMultiplicative;
      if (bp < min_bp) break;
      const std::size_t at = next().position;
      ExprAst rhs = expression(bp + 1);
      ExprAst::Kind kind = op == '+'   ? ExprAst::Kind::Add
                           : op == '-' ? ExprAst::Kind::Sub
                           : op == '*' ? ExprAst::Kind::Mul
                                       : ExprAst::Kind::Div;
      ExprAst node{kind, "", 0, at, {}};
      node.children.push_back(std::move(lhs));
      node.children.push_back(std::move(rhs));
      lhs = std::move(node);
    }
    return lhs;
  }

  ExprAst prefix() {
    const Token& t = next();
    switch (t.kind) {
      case Token::Kind::Number:
        return {ExprAst::Kind::Number, t.text, 0, t.position, {}};
      case Token::Kind::Ident:
        if (t.text == "i") return {ExprAst::Kind::ImaginaryUnit, "i", 0, t.position, {}};
        return {ExprAst::Kind::Variable, t.text, 0, t.position, {}};
      case Token::Kind::LParen: {
        ExprAst inner = expression(0);
        const Token& close = next();
        if (close.kind != Token::Kind::RParen) {
          throw ParseError(close.position, "expected ')'");
        }
        return inner;
      }
      case Token::Kind::Op:
        if (t.text == "-") {
          ExprAst node{ExprAst::Kind::Neg, "", 0, t.position, {}};
          node.children.push_back(expression(kUnary));
          return node;
        }
        if (t.text == "+") return expression(kUnary);
        break;
      case Token::Kind::End:
        throw ParseError(t.position, "unexpected end of input");
      default:
        break;
    }
    throw ParseError(t.position, "unexpected '" + t.text + "'");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprAst parse(std::string_view text) { return Parser(text).parse_all(); }

Series evaluate(const ExprAst& ast, const Context& ctx, int order) {
  using K = ExprAst::Kind;
  switch (ast.kind) {
    case K::Number: {
      Rational q(ast.text, 10);
      return Series::constant(ctx, GaussianRational(q), order);
    }
    case K::ImaginaryUnit:
      return Series::constant(ctx, GaussianRational::i(), order);
    case K::Variable:
      if (!ctx->find(ast.text)) {
        throw Error(ErrorCode::UndeclaredVariable,
                    "undeclared variable '" + ast.text + "' at position " +
                        std::to_string(ast.position));
      }
      return Series::variable(ctx, ast.text, order);
    case K::Neg:
      return -evaluate(ast.children[0], ctx, order);
    case K::Add:
      return evaluate(ast.children[0], ctx, order) + evaluate(ast.children[1], ctx, order);
    case K::Sub:
      return evaluate(ast.children[0], ctx, order) - evaluate(ast.children[1], ctx, order);
    case K::Mul:
      return evaluate(ast.children[0], ctx, order) * evaluate(ast.children[1], ctx, order);
    case K::Div: {
      Series den = evaluate(ast.children[1], ctx, order);
      if (den.constant_term().is_zero()) {
        throw Error(ErrorCode::DivisionByNonUnit,
                    "denominator at position " + std::to_string(ast.children[1].position) +
                        " vanishes at the origin");
      }
      return evaluate(ast.children[0], ctx, order) * invert_unit(den);
    }
    case K::Pow:
      return pow(evaluate(ast.children[0], ctx, order), ast.exponent);
  }
  throw Error(ErrorCode::ParseError, "corrupt expression tree");
}

Series parse_series(std::string_view text, const Context& ctx, int order) {
  return evaluate(parse(text), ctx, order);
}

std::string to_string(const ExprAst& ast) {
  using K = ExprAst::Kind;
  auto bin = [&](const char* op) {
    return "(" + to_string(ast.children[0]) + " " + op + " " + to_string(ast.children[1]) + ")";
  };
  switch (ast.kind) {
    case K::Number:
    case K::Variable:
      return ast.text;
    case K::ImaginaryUnit:
      return "i";
    case K::Neg:
      return "(-" + to_string(ast.children[0]) + ")";
    case K::Add: return bin("+");
    case K::Sub: return bin("-");
    case K::Mul: return bin("*");
    case K::Div: return bin("/");
    case K::Pow:
      return "(" + to_string(ast.children[0]) + ")^" + std::to_string(ast.exponent);
  }
  return {};
}

}  // namespace crflat
