#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "otk/error.hpp"
#include "otk/jet.hpp"

namespace otk {

/// Values of the named parameters of a metric (M, L, A, Lambda, ...).
using ParamBindings = std::map<std::string, double, std::less<>>;

enum class Func { Sin, Cos, Exp, Ln, Sqrt, Abs, Sgn };

/// Immutable expression tree in the two surface coordinates and named
/// parameters. Copies share structure; an Expr is safe to evaluate from many
/// threads at once.
class Expr {
 public:
  enum class Kind { Number, Coordinate, Parameter, Negate, Add, Sub, Mul, Div, Pow, Call };

  /// The literal 0.
  Expr();

  static Expr number(double value);
  /// Coordinate t1 (index 0) or t2 (index 1).
  static Expr coordinate(int index);
  static Expr parameter(std::string name);
  static Expr call(Func f, Expr argument);
  static Expr unary_minus(Expr operand);
  static Expr binary(Kind op, Expr lhs, Expr rhs);

  Kind kind() const noexcept;
  double number_value() const;
  int coordinate_index() const;
  const std::string& name() const;
  Func func() const;
  /// Operand of Negate/Call, left operand of a binary node.
  Expr lhs() const;
  Expr rhs() const;

  /// Canonical text; parse(to_string()) reproduces the same tree.
  std::string to_string() const;
  bool operator==(const Expr& other) const;

  std::set<std::string> parameters() const;
  bool depends_on_coordinates() const;

  struct Node;
  const Node& root() const noexcept { return *node_; }

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);
Expr operator-(Expr a);

const char* func_name(Func f);

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column, std::vector<std::string> expected);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

struct ParseOptions {
  /// Identifiers read as t1 and t2. Anything else that is not a function
  /// name is a parameter.
  std::array<std::string, 2> coordinate_names{"t1", "t2"};
};

/// Recursive-descent parser. Precedence from tight to loose:
/// ^ (right-associative), unary -, * /, + -.
Expr parse(std::string_view source, const ParseOptions& options = {});

/// Evaluates with the coordinates bound to arbitrary carrier values. With jet
/// carriers this composes the expression with the coordinate jets.
/// Instantiated for double and Jet.
template <class T>
T evaluate(const Expr& e, const ParamBindings& bindings, const T& t1, const T& t2);

double eval(const Expr& e, Vec2<double> point, const ParamBindings& bindings);

/// Exact partial derivatives of e up to `order` at `point`.
Jet eval_jet(const Expr& e, Vec2<double> point, const ParamBindings& bindings, int order);

/// e(phi1(t), phi2(t)).
Expr substitute(const Expr& e, const Expr& t1_image, const Expr& t2_image);

/// Replaces every occurrence of parameter `name` by `replacement`.
Expr substitute_parameter(const Expr& e, std::string_view name, const Expr& replacement);

}  // namespace otk
