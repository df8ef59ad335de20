#include "heisgeom/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>

namespace heis::expr {

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i];
  }
  return out;
}

const std::vector<std::string>& function_names() {
  static const std::vector<std::string> names{"sin", "cos", "exp", "ln", "sqrt", "abs", "pow"};
  return names;
}

bool is_function(const std::string& s) {
  for (const auto& f : function_names())
    if (f == s) return true;
  return false;
}

int function_arity(const std::string& s) { return s == "pow" ? 2 : 1; }

int variable_index(Arity a, const std::string& s) {
  const auto names = variable_names(a);
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == s) return static_cast<int>(i);
  return -1;
}

bool is_any_variable(const std::string& s) {
  for (Arity a : {Arity::Field, Arity::Curve, Arity::Patch})
    if (variable_index(a, s) >= 0) return true;
  return false;
}

const std::vector<std::string> kAtomStart{"number", "identifier", "(", "-"};
const std::vector<std::string> kOperators{"+", "-", "*", "/", "^"};

class Parser {
 public:
  Parser(const std::string& s, Arity arity, const Constants& c) : s_(s), arity_(arity), c_(c) {}

  NodePtr parse_single() {
    NodePtr n = expr();
    ws();
    if (pos_ != s_.size()) fail_trailing(false);
    return n;
  }

  std::vector<NodePtr> parse_list() {
    std::vector<NodePtr> out{expr()};
    ws();
    while (pos_ < s_.size() && s_[pos_] == ',') {
      ++pos_;
      out.push_back(expr());
      ws();
    }
    if (pos_ != s_.size()) fail_trailing(true);
    return out;
  }

 private:
  void ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(std::size_t at, std::vector<std::string> expected) {
    std::string found = at < s_.size() ? "'" + std::string(1, s_[at]) + "'" : "end of input";
    throw ParseError(ParseError::Syntax, at, expected,
                     "syntax error at offset " + std::to_string(at) + ": found " + found +
                         ", expected one of {" + join(expected) + "}");
  }

  [[noreturn]] void fail_trailing(bool list) {
    auto expected = kOperators;
    if (list) expected.push_back(",");
    expected.push_back("end of input");
    fail(pos_, expected);
  }

  static NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

  NodePtr binary(Node::Kind k, NodePtr a, NodePtr b) {
    Node n;
    n.kind = k;
    n.offset = a->offset;
    n.length = b->offset + b->length - a->offset;
    n.args = {std::move(a), std::move(b)};
    return make(std::move(n));
  }

  NodePtr expr() {
    NodePtr lhs = term();
    while (true) {
      ws();
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
        const Node::Kind k = s_[pos_] == '+' ? Node::Add : Node::Sub;
        ++pos_;
        lhs = binary(k, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    while (true) {
      ws();
      if (pos_ < s_.size() && (s_[pos_] == '*' || s_[pos_] == '/')) {
        const Node::Kind k = s_[pos_] == '*' ? Node::Mul : Node::Div;
        ++pos_;
        lhs = binary(k, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    NodePtr base = atom();
    ws();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      return binary(Node::Pow, base, factor());
    }
    return base;
  }

  NodePtr atom() {
    ws();
    const std::size_t start = pos_;
    if (pos_ >= s_.size()) fail(pos_, kAtomStart);
    const char ch = s_[pos_];
    if (ch == '-') {
      ++pos_;
      NodePtr inner = atom();
      Node n;
      n.kind = Node::Neg;
      n.offset = start;
      n.length = inner->offset + inner->length - start;
      n.args = {inner};
      return make(std::move(n));
    }
    if (ch == '(') {
      ++pos_;
      NodePtr inner = expr();
      ws();
      if (pos_ >= s_.size() || s_[pos_] != ')') {
        auto expected = kOperators;
        expected.push_back(")");
        fail(pos_, expected);
      }
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') return identifier();
    fail(pos_, kAtomStart);
  }

  NodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t k = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_, ++k;
      return k;
    };
    std::size_t nd = digits();
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      nd += digits();
    }
    if (nd == 0) fail(start, {"digit"});
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail(pos_, {"digit"});
    }
    Node n;
    n.kind = Node::Number;
    n.value = std::strtod(s_.substr(start, pos_ - start).c_str(), nullptr);
    n.offset = start;
    n.length = pos_ - start;
    return make(std::move(n));
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    const std::string name = s_.substr(start, pos_ - start);
    const std::size_t after = pos_;
    ws();
    const bool call = pos_ < s_.size() && s_[pos_] == '(';
    if (is_function(name)) {
      if (!call) fail(pos_, {"("});
      ++pos_;
      Node n;
      n.kind = Node::Call;
      n.name = name;
      n.offset = start;
      const int want = function_arity(name);
      for (int k = 0; k < want; ++k) {
        if (k > 0) {
          ws();
          if (pos_ >= s_.size() || s_[pos_] != ',') {
            auto expected = kOperators;
            expected.push_back(",");
            fail(pos_, expected);
          }
          ++pos_;
        }
        n.args.push_back(expr());
      }
      ws();
      if (pos_ >= s_.size() || s_[pos_] != ')') {
        auto expected = kOperators;
        expected.push_back(")");
        if (want == 1 && pos_ < s_.size() && s_[pos_] == ',')
          throw ParseError(ParseError::Syntax, pos_, expected,
                           "function '" + name + "' takes " + std::to_string(want) +
                               " argument at offset " + std::to_string(pos_));
        fail(pos_, expected);
      }
      ++pos_;
      n.length = pos_ - start;
      return make(std::move(n));
    }
    pos_ = after;
    Node n;
    n.offset = start;
    n.length = after - start;
    n.name = name;
    if (const int idx = variable_index(arity_, name); idx >= 0) {
      n.kind = Node::Variable;
      n.var = idx;
      return make(std::move(n));
    }
    if (is_any_variable(name))
      throw ParseError(ParseError::ArityMismatch, start, variable_names(arity_),
                       "variable '" + name + "' is not available for " + arity_name(arity_) +
                           " expressions (offset " + std::to_string(start) + ")");
    if (auto it = c_.find(name); it != c_.end()) {
      n.kind = Node::Constant;
      n.value = it->second;
      return make(std::move(n));
    }
    if (name == "pi") {
      n.kind = Node::Constant;
      n.value = std::numbers::pi;
      return make(std::move(n));
    }
    throw ParseError(ParseError::UnknownIdentifier, start, {},
                     "unknown identifier '" + name + "' at offset " + std::to_string(start));
  }

  const std::string& s_;
  Arity arity_;
  const Constants& c_;
  std::size_t pos_ = 0;
};

int precedence(const Node& n) {
  switch (n.kind) {
    case Node::Add:
    case Node::Sub:
      return 1;
    case Node::Mul:
    case Node::Div:
      return 2;
    case Node::Pow:
      return 3;
    default:
      return 4;
  }
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const char* arity_name(Arity a) {
  switch (a) {
    case Arity::Field:
      return "field";
    case Arity::Curve:
      return "curve";
    case Arity::Patch:
      return "patch";
  }
  return "?";
}

std::vector<std::string> variable_names(Arity a) {
  switch (a) {
    case Arity::Field:
      return {"x1", "x2", "x3"};
    case Arity::Curve:
      return {"t"};
    case Arity::Patch:
      return {"v", "w"};
  }
  return {};
}

ParseError::ParseError(Kind kind, std::size_t offset, std::vector<std::string> expected,
                       const std::string& msg)
    : std::runtime_error(msg), kind_(kind), offset_(offset), expected_(std::move(expected)) {}

NodePtr parse(const std::string& text, Arity arity, const Constants& constants) {
  return Parser(text, arity, constants).parse_single();
}

std::vector<NodePtr> parse_list(const std::string& text, Arity arity, const Constants& constants) {
  return Parser(text, arity, constants).parse_list();
}

std::string to_string(const NodePtr& n) {
  switch (n->kind) {
    case Node::Number:
      return format_number(n->value);
    case Node::Variable:
    case Node::Constant:
      return n->name;
    case Node::Neg: {
      const auto& c = n->args[0];
      const std::string inner = to_string(c);
      return precedence(*c) < 4 ? "-(" + inner + ")" : "-" + inner;
    }
    case Node::Call: {
      std::string out = n->name + "(";
      for (std::size_t i = 0; i < n->args.size(); ++i) {
        if (i) out += ", ";
        out += to_string(n->args[i]);
      }
      return out + ")";
    }
    default:
      break;
  }
  const int p = precedence(*n);
  const auto& a = n->args[0];
  const auto& b = n->args[1];
  std::string ls = to_string(a), rs = to_string(b);
  const char* op = n->kind == Node::Add   ? " + "
                   : n->kind == Node::Sub ? " - "
                   : n->kind == Node::Mul ? "*"
                   : n->kind == Node::Div ? "/"
                                          : "^";
  if (n->kind == Node::Pow) {
    if (precedence(*a) <= 3) ls = "(" + ls + ")";
    if (precedence(*b) < 3) rs = "(" + rs + ")";
  } else {
    if (precedence(*a) < p) ls = "(" + ls + ")";
    if (precedence(*b) <= p) rs = "(" + rs + ")";
  }
  return ls + op + rs;
}

bool equal(const NodePtr& a, const NodePtr& b) {
  if (a->kind != b->kind || a->args.size() != b->args.size()) return false;
  switch (a->kind) {
    case Node::Number:
    case Node::Constant:
      if (a->value != b->value) return false;
      break;
    case Node::Variable:
      if (a->var != b->var) return false;
      break;
    default:
      break;
  }
  if ((a->kind == Node::Variable || a->kind == Node::Constant || a->kind == Node::Call) &&
      a->name != b->name)
    return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return true;
}

int depth(const NodePtr& n) {
  int d = -1;
  for (const auto& c : n->args) d = std::max(d, depth(c));
  return d + 1;
}

Program::Program(const NodePtr& root) {
  emit(root);
  std::size_t cur = 0;
  for (const auto& in : code_) {
    switch (in.op) {
      case Lit:
      case Var:
        ++cur;
        break;
      case Add:
      case Sub:
      case Mul:
      case Div:
      case Pow:
      case PowCall:
        --cur;
        break;
      default:
        break;
    }
    max_stack_ = std::max(max_stack_, cur);
  }
}

void Program::emit(const NodePtr& n) {
  for (const auto& c : n->args) emit(c);
  Instr in{Lit, 0.0, -1, n->offset, n->length};
  switch (n->kind) {
    case Node::Number:
    case Node::Constant:
      in.op = Lit;
      in.value = n->value;
      break;
    case Node::Variable:
      in.op = Var;
      in.index = n->var;
      break;
    case Node::Neg:
      in.op = Neg;
      break;
    case Node::Add:
      in.op = Add;
      break;
    case Node::Sub:
      in.op = Sub;
      break;
    case Node::Mul:
      in.op = Mul;
      break;
    case Node::Div:
      in.op = Div;
      break;
    case Node::Pow:
      in.op = Pow;
      break;
    case Node::Call:
      in.op = n->name == "sin"    ? Sin
              : n->name == "cos"  ? Cos
              : n->name == "exp"  ? Exp
              : n->name == "ln"   ? Ln
              : n->name == "sqrt" ? Sqrt
              : n->name == "abs"  ? Abs
                                  : PowCall;
      break;
  }
  code_.push_back(in);
}

template <int N>
Jet<N> Program::eval(const Jet<N>* vars) const {
  std::vector<Jet<N>> st;
  st.reserve(max_stack_);
  for (const auto& in : code_) {
    try {
      switch (in.op) {
        case Lit:
          st.emplace_back(in.value);
          break;
        case Var:
          st.push_back(vars[in.index]);
          break;
        case Neg:
          st.back() = -st.back();
          break;
        case Sin:
          st.back() = sin(st.back());
          break;
        case Cos:
          st.back() = cos(st.back());
          break;
        case Exp:
          st.back() = exp(st.back());
          break;
        case Ln:
          st.back() = log(st.back());
          break;
        case Sqrt:
          st.back() = sqrt(st.back());
          break;
        case Abs:
          st.back() = abs(st.back());
          break;
        default: {
          Jet<N> b = st.back();
          st.pop_back();
          Jet<N>& a = st.back();
          switch (in.op) {
            case Add:
              a += b;
              break;
            case Sub:
              a -= b;
              break;
            case Mul:
              a = a * b;
              break;
            case Div:
              a = a / b;
              break;
            default:
              a = pow(a, b);
              break;
          }
        }
      }
    } catch (const DomainError& e) {
      throw EvalError(e, in.offset, in.length);
    }
  }
  return st.back();
}

template Jet<0> Program::eval<0>(const Jet<0>*) const;
template Jet<1> Program::eval<1>(const Jet<1>*) const;
template Jet<2> Program::eval<2>(const Jet<2>*) const;
template Jet<3> Program::eval<3>(const Jet<3>*) const;

ScalarField compile_field(const NodePtr& root) {
  auto prog = std::make_shared<const Program>(root);
  return ScalarField::from(
      [prog](const auto& x) {
        constexpr int N = std::decay_t<decltype(x[0])>::order;
        return prog->template eval<N>(x.data());
      },
      to_string(root));
}

ScalarField compile_field(const std::string& text, const Constants& constants) {
  return compile_field(parse(text, Arity::Field, constants));
}

CurveModel compile_curve(const std::string& text, double t0, double t1, const Constants& constants) {
  const auto nodes = parse_list(text, Arity::Curve, constants);
  if (nodes.size() != 3)
    throw ParseError(ParseError::ComponentCount, 0, {"3 components"},
                     "curve expression needs 3 comma-separated components, got " +
                         std::to_string(nodes.size()));
  std::array<std::shared_ptr<const Program>, 3> progs;
  for (int i = 0; i < 3; ++i) progs[i] = std::make_shared<const Program>(nodes[i]);
  return CurveModel::from(
      [progs](const Jet2& t) {
        return Vec3<Jet2>{progs[0]->eval<2>(&t), progs[1]->eval<2>(&t), progs[2]->eval<2>(&t)};
      },
      t0, t1, text);
}

Patch compile_patch(const std::string& text, const Constants& constants) {
  const auto nodes = parse_list(text, Arity::Patch, constants);
  if (nodes.size() != 3)
    throw ParseError(ParseError::ComponentCount, 0, {"3 components"},
                     "patch expression needs 3 comma-separated components, got " +
                         std::to_string(nodes.size()));
  std::array<std::shared_ptr<const Program>, 3> progs;
  for (int i = 0; i < 3; ++i) progs[i] = std::make_shared<const Program>(nodes[i]);
  return Patch::from(
      [progs](const Jet2& v, const Jet2& w) {
        const Jet2 vw[2] = {v, w};
        return Vec3<Jet2>{progs[0]->eval<2>(vw), progs[1]->eval<2>(vw), progs[2]->eval<2>(vw)};
      },
      text);
}

Constants parse_constants(const std::string& text) {
  Constants c;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("constant binding must be name=value: " + item);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string name = trim(item.substr(0, eq));
    const std::string val = trim(item.substr(eq + 1));
    char* end = nullptr;
    const double v = std::strtod(val.c_str(), &end);
    if (name.empty() || end == val.c_str() || *end != '\0')
      throw std::invalid_argument("bad constant binding: " + item);
    c[name] = v;
  }
  return c;
}

}  // namespace heis::expr
