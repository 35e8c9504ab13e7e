#include "otk/expr.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace otk {

struct Expr::Node {
  Kind kind = Kind::Number;
  double value = 0.0;
  int coordinate = 0;
  std::string name;
  Func func = Func::Sin;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Kind = Expr::Kind;

struct FuncEntry {
  const char* name;
  Func func;
};

constexpr FuncEntry kFunctions[] = {{"sin", Func::Sin},   {"cos", Func::Cos},
                                    {"exp", Func::Exp},   {"ln", Func::Ln},
                                    {"sqrt", Func::Sqrt}, {"abs", Func::Abs},
                                    {"sgn", Func::Sgn}};

int precedence(Kind k) {
  switch (k) {
    case Kind::Add:
    case Kind::Sub:
      return 1;
    case Kind::Mul:
    case Kind::Div:
      return 2;
    case Kind::Negate:
      return 3;
    case Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

char op_char(Kind k) {
  switch (k) {
    case Kind::Add:
      return '+';
    case Kind::Sub:
      return '-';
    case Kind::Mul:
      return '*';
    case Kind::Div:
      return '/';
    default:
      return '^';
  }
}

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void print(const Expr::Node& n, std::string& out);

void print_child(const Expr::Node& child, bool parens, std::string& out) {
  if (parens) out += '(';
  print(child, out);
  if (parens) out += ')';
}

void print(const Expr::Node& n, std::string& out) {
  switch (n.kind) {
    case Kind::Number:
      out += format_number(n.value);
      return;
    case Kind::Coordinate:
      out += n.coordinate == 0 ? "t1" : "t2";
      return;
    case Kind::Parameter:
      out += n.name;
      return;
    case Kind::Call:
      out += func_name(n.func);
      out += '(';
      print(*n.a, out);
      out += ')';
      return;
    case Kind::Negate:
      out += '-';
      print_child(*n.a, precedence(n.a->kind) < 3, out);
      return;
    case Kind::Pow:
      print_child(*n.a, precedence(n.a->kind) < 5, out);
      out += '^';
      print_child(*n.b, precedence(n.b->kind) < 3, out);
      return;
    default: {
      const int p = precedence(n.kind);
      print_child(*n.a, precedence(n.a->kind) < p, out);
      out += ' ';
      out += op_char(n.kind);
      out += ' ';
      print_child(*n.b, precedence(n.b->kind) <= p, out);
      return;
    }
  }
}

bool equal(const Expr::Node* x, const Expr::Node* y) {
  if (x == y) return true;
  if (!x || !y || x->kind != y->kind) return false;
  switch (x->kind) {
    case Kind::Number:
      return x->value == y->value;
    case Kind::Coordinate:
      return x->coordinate == y->coordinate;
    case Kind::Parameter:
      return x->name == y->name;
    case Kind::Call:
      return x->func == y->func && equal(x->a.get(), y->a.get());
    case Kind::Negate:
      return equal(x->a.get(), y->a.get());
    default:
      return equal(x->a.get(), y->a.get()) && equal(x->b.get(), y->b.get());
  }
}

// ---------------------------------------------------------------------------
// Parser

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.column = column_;
    if (pos_ >= src_.size()) {
      t.kind = Tok::End;
      return t;
    }
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lex_number(t);
    if (is_ident_start(c)) return lex_ident(t);
    advance();
    t.text = std::string(1, c);
    switch (c) {
      case '+':
        t.kind = Tok::Plus;
        return t;
      case '-':
        t.kind = Tok::Minus;
        return t;
      case '*':
        t.kind = Tok::Star;
        return t;
      case '/':
        t.kind = Tok::Slash;
        return t;
      case '^':
        t.kind = Tok::Caret;
        return t;
      case '(':
        t.kind = Tok::LParen;
        return t;
      case ')':
        t.kind = Tok::RParen;
        return t;
      default:
        throw ParseError("unexpected character '" + t.text + "'", t.line, t.column, {});
    }
  }

 private:
  static bool is_ident_start(char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalpha(u) || c == '_' || u >= 0x80;
  }
  static bool is_ident_char(char c) {
    return is_ident_start(c) || std::isdigit(static_cast<unsigned char>(c));
  }

  void advance() {
    const auto u = static_cast<unsigned char>(src_[pos_]);
    ++pos_;
    if (u == '\n') {
      ++line_;
      column_ = 1;
    } else if ((u & 0xC0) != 0x80) {
      ++column_;
    }
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  Token lex_number(Token t) {
    const size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
      advance();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        while (pos_ < look) advance();
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          advance();
        }
      }
    }
    t.kind = Tok::Number;
    t.text = std::string(src_.substr(start, pos_ - start));
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
      throw ParseError("malformed number '" + t.text + "'", t.line, t.column, {"number"});
    }
    return t;
  }

  Token lex_ident(Token t) {
    const size_t start = pos_;
    while (pos_ < src_.size() && is_ident_char(src_[pos_])) advance();
    t.kind = Tok::Ident;
    t.text = std::string(src_.substr(start, pos_ - start));
    return t;
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

std::string describe(const Token& t) {
  return t.kind == Tok::End ? std::string("end of input") : "'" + t.text + "'";
}

class Parser {
 public:
  Parser(std::string_view src, const ParseOptions& options) : lexer_(src), options_(options) {
    cur_ = lexer_.next();
  }

  Expr parse_all() {
    Expr e = parse_sum();
    if (cur_.kind != Tok::End) fail({"operator", "end of input"});
    return e;
  }

 private:
  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string msg = "syntax error at " + std::to_string(cur_.line) + ":" +
                      std::to_string(cur_.column) + ": unexpected " + describe(cur_) +
                      ", expected ";
    for (size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    throw ParseError(msg, cur_.line, cur_.column, std::move(expected));
  }

  void take() { cur_ = lexer_.next(); }

  Expr parse_sum() {
    Expr lhs = parse_product();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      const Kind k = cur_.kind == Tok::Plus ? Kind::Add : Kind::Sub;
      take();
      lhs = Expr::binary(k, lhs, parse_product());
    }
    return lhs;
  }

  Expr parse_product() {
    Expr lhs = parse_unary();
    while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
      const Kind k = cur_.kind == Tok::Star ? Kind::Mul : Kind::Div;
      take();
      lhs = Expr::binary(k, lhs, parse_unary());
    }
    return lhs;
  }

  Expr parse_unary() {
    if (cur_.kind == Tok::Minus) {
      take();
      return Expr::unary_minus(parse_unary());
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (cur_.kind == Tok::Caret) {
      take();
      return Expr::binary(Kind::Pow, base, parse_unary());
    }
    return base;
  }

  Expr parse_primary() {
    switch (cur_.kind) {
      case Tok::Number: {
        const double v = cur_.number;
        take();
        return Expr::number(v);
      }
      case Tok::LParen: {
        take();
        Expr inner = parse_sum();
        if (cur_.kind != Tok::RParen) fail({"')'"});
        take();
        return inner;
      }
      case Tok::Ident: {
        const Token id = cur_;
        take();
        if (cur_.kind == Tok::LParen) {
          const FuncEntry* entry = nullptr;
          for (const auto& f : kFunctions) {
            if (id.text == f.name) entry = &f;
          }
          if (!entry) {
            throw ParseError("unknown function '" + id.text + "' at " + std::to_string(id.line) +
                                 ":" + std::to_string(id.column),
                             id.line, id.column, {"function name"});
          }
          take();
          Expr arg = parse_sum();
          if (cur_.kind != Tok::RParen) fail({"')'"});
          take();
          return Expr::call(entry->func, arg);
        }
        if (id.text == options_.coordinate_names[0]) return Expr::coordinate(0);
        if (id.text == options_.coordinate_names[1]) return Expr::coordinate(1);
        return Expr::parameter(id.text);
      }
      default:
        fail({"number", "identifier", "'('", "'-'"});
    }
  }

  Lexer lexer_;
  const ParseOptions& options_;
  Token cur_;
};

// ---------------------------------------------------------------------------
// Evaluation

double apply(Func f, double x) {
  switch (f) {
    case Func::Sin:
      return std::sin(x);
    case Func::Cos:
      return std::cos(x);
    case Func::Exp:
      return std::exp(x);
    case Func::Ln:
      if (x <= 0.0) throw DomainError("ln of nonpositive value " + format_number(x));
      return std::log(x);
    case Func::Sqrt:
      if (x < 0.0) throw DomainError("sqrt of negative value " + format_number(x));
      return std::sqrt(x);
    case Func::Abs:
      return std::fabs(x);
    case Func::Sgn:
      return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
  }
  return 0.0;
}

Jet apply(Func f, const Jet& x) {
  switch (f) {
    case Func::Sin:
      return sin(x);
    case Func::Cos:
      return cos(x);
    case Func::Exp:
      return exp(x);
    case Func::Ln:
      return log(x);
    case Func::Sqrt:
      return sqrt(x);
    case Func::Abs:
      return abs(x);
    case Func::Sgn:
      return sgn(x);
  }
  return x;
}

double divide(double a, double b) {
  if (b == 0.0) throw DomainError("division by zero");
  return a / b;
}

Jet divide(const Jet& a, const Jet& b) { return a / b; }

bool integral(double c) { return c == std::nearbyint(c) && std::fabs(c) <= 1024.0; }

double power(double base, double e) {
  if (integral(e)) {
    if (base == 0.0 && e < 0.0) throw DomainError("division by zero");
    return std::pow(base, e);
  }
  if (base < 0.0) throw DomainError("non-integer power of negative value " + format_number(base));
  return std::pow(base, e);
}

Jet power(const Jet& base, const Jet& e) { return pow(base, e); }

template <class T>
T constant_like(double v, const T& shape) {
  if constexpr (std::is_same_v<T, double>) {
    (void)shape;
    return v;
  } else {
    return T::constant(v, shape.order());
  }
}

template <class T>
T eval_node(const Expr::Node& n, const ParamBindings& bindings, const T& t1, const T& t2) {
  switch (n.kind) {
    case Kind::Number:
      return constant_like(n.value, t1);
    case Kind::Coordinate:
      return n.coordinate == 0 ? t1 : t2;
    case Kind::Parameter: {
      auto it = bindings.find(n.name);
      if (it == bindings.end()) throw UnboundParameter(n.name);
      return constant_like(it->second, t1);
    }
    case Kind::Negate:
      return -eval_node(*n.a, bindings, t1, t2);
    default:
      break;
  }

  if (n.kind == Kind::Pow && n.b->kind == Kind::Number && integral(n.b->value)) {
    // Integer fast path: repeated multiplication, no logarithms.
    T base = eval_node(*n.a, bindings, t1, t2);
    try {
      if constexpr (std::is_same_v<T, double>) {
        return power(base, n.b->value);
      } else {
        return pow(base, static_cast<int>(n.b->value));
      }
    } catch (const DomainError& err) {
      std::string text;
      print(n, text);
      throw DomainError(std::string(err.what()) + " in '" + text + "'");
    }
  }

  if (n.kind == Kind::Call) {
    T arg = eval_node(*n.a, bindings, t1, t2);
    try {
      return apply(n.func, arg);
    } catch (const DomainError& err) {
      std::string text;
      print(n, text);
      throw DomainError(std::string(err.what()) + " in '" + text + "'");
    }
  }

  T a = eval_node(*n.a, bindings, t1, t2);
  T b = eval_node(*n.b, bindings, t1, t2);
  try {
    switch (n.kind) {
      case Kind::Add:
        return a + b;
      case Kind::Sub:
        return a - b;
      case Kind::Mul:
        return a * b;
      case Kind::Div:
        return divide(a, b);
      case Kind::Pow:
        return power(a, b);
      default:
        break;
    }
  } catch (const DomainError& err) {
    std::string text;
    print(n, text);
    throw DomainError(std::string(err.what()) + " in '" + text + "'");
  }
  return a;
}

NodePtr make(Expr::Node n) { return std::make_shared<const Expr::Node>(std::move(n)); }

void collect_parameters(const Expr::Node& n, std::set<std::string>& out) {
  if (n.kind == Kind::Parameter) out.insert(n.name);
  if (n.a) collect_parameters(*n.a, out);
  if (n.b) collect_parameters(*n.b, out);
}

bool uses_coordinates(const Expr::Node& n) {
  if (n.kind == Kind::Coordinate) return true;
  return (n.a && uses_coordinates(*n.a)) || (n.b && uses_coordinates(*n.b));
}

}  // namespace

// ---------------------------------------------------------------------------

const char* func_name(Func f) {
  for (const auto& e : kFunctions) {
    if (e.func == f) return e.name;
  }
  return "?";
}

ParseError::ParseError(const std::string& message, int line, int column,
                       std::vector<std::string> expected)
    : Error(message), line_(line), column_(column), expected_(std::move(expected)) {}

Expr Expr::number(double value) {
  // Literals are nonnegative in the grammar; keep constructed trees printable.
  if (value < 0.0 || (value == 0.0 && std::signbit(value))) return unary_minus(number(-value));
  Node n;
  n.kind = Kind::Number;
  n.value = value;
  return Expr(make(std::move(n)));
}

Expr::Expr() : node_(number(0.0).node_) {}

Expr Expr::coordinate(int index) {
  Node n;
  n.kind = Kind::Coordinate;
  n.coordinate = index == 0 ? 0 : 1;
  return Expr(make(std::move(n)));
}

Expr Expr::parameter(std::string name) {
  Node n;
  n.kind = Kind::Parameter;
  n.name = std::move(name);
  return Expr(make(std::move(n)));
}

Expr Expr::call(Func f, Expr argument) {
  Node n;
  n.kind = Kind::Call;
  n.func = f;
  n.a = argument.node_;
  return Expr(make(std::move(n)));
}

Expr Expr::unary_minus(Expr operand) {
  Node n;
  n.kind = Kind::Negate;
  n.a = operand.node_;
  return Expr(make(std::move(n)));
}

Expr Expr::binary(Kind op, Expr lhs, Expr rhs) {
  Node n;
  n.kind = op;
  n.a = lhs.node_;
  n.b = rhs.node_;
  return Expr(make(std::move(n)));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }
double Expr::number_value() const { return node_->value; }
int Expr::coordinate_index() const { return node_->coordinate; }
const std::string& Expr::name() const { return node_->name; }
Func Expr::func() const { return node_->func; }
Expr Expr::lhs() const { return Expr(node_->a); }
Expr Expr::rhs() const { return Expr(node_->b); }

std::string Expr::to_string() const {
  std::string out;
  print(*node_, out);
  return out;
}

bool Expr::operator==(const Expr& other) const { return equal(node_.get(), other.node_.get()); }

std::set<std::string> Expr::parameters() const {
  std::set<std::string> out;
  collect_parameters(*node_, out);
  return out;
}

bool Expr::depends_on_coordinates() const { return uses_coordinates(*node_); }

Expr operator+(Expr a, Expr b) { return Expr::binary(Expr::Kind::Add, a, b); }
Expr operator-(Expr a, Expr b) { return Expr::binary(Expr::Kind::Sub, a, b); }
Expr operator*(Expr a, Expr b) { return Expr::binary(Expr::Kind::Mul, a, b); }
Expr operator/(Expr a, Expr b) { return Expr::binary(Expr::Kind::Div, a, b); }
Expr operator-(Expr a) { return Expr::unary_minus(a); }

Expr parse(std::string_view source, const ParseOptions& options) {
  return Parser(source, options).parse_all();
}

template <class T>
T evaluate(const Expr& e, const ParamBindings& bindings, const T& t1, const T& t2) {
  return eval_node(e.root(), bindings, t1, t2);
}

template double evaluate<double>(const Expr&, const ParamBindings&, const double&, const double&);
template Jet evaluate<Jet>(const Expr&, const ParamBindings&, const Jet&, const Jet&);

double eval(const Expr& e, Vec2<double> point, const ParamBindings& bindings) {
  return evaluate(e, bindings, point[0], point[1]);
}

Jet eval_jet(const Expr& e, Vec2<double> point, const ParamBindings& bindings, int order) {
  return evaluate(e, bindings, Jet::variable(point[0], 0, order), Jet::variable(point[1], 1, order));
}

Expr substitute(const Expr& e, const Expr& t1_image, const Expr& t2_image) {
  switch (e.kind()) {
    case Expr::Kind::Coordinate:
      return e.coordinate_index() == 0 ? t1_image : t2_image;
    case Expr::Kind::Number:
    case Expr::Kind::Parameter:
      return e;
    case Expr::Kind::Negate:
      return Expr::unary_minus(substitute(e.lhs(), t1_image, t2_image));
    case Expr::Kind::Call:
      return Expr::call(e.func(), substitute(e.lhs(), t1_image, t2_image));
    default:
      return Expr::binary(e.kind(), substitute(e.lhs(), t1_image, t2_image),
                          substitute(e.rhs(), t1_image, t2_image));
  }
}

Expr substitute_parameter(const Expr& e, std::string_view name, const Expr& replacement) {
  switch (e.kind()) {
    case Expr::Kind::Parameter:
      return e.name() == name ? replacement : e;
    case Expr::Kind::Number:
    case Expr::Kind::Coordinate:
      return e;
    case Expr::Kind::Negate:
      return Expr::unary_minus(substitute_parameter(e.lhs(), name, replacement));
    case Expr::Kind::Call:
      return Expr::call(e.func(), substitute_parameter(e.lhs(), name, replacement));
    default:
      return Expr::binary(e.kind(), substitute_parameter(e.lhs(), name, replacement),
                          substitute_parameter(e.rhs(), name, replacement));
  }
}

}  // namespace otk
