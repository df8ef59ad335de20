#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "heisgeom/field.hpp"
#include "heisgeom/jet.hpp"

namespace heis::expr {

enum class Arity { Field, Curve, Patch };

const char* arity_name(Arity a);
std::vector<std::string> variable_names(Arity a);

class ParseError : public std::runtime_error {
 public:
  enum Kind { Syntax, UnknownIdentifier, ArityMismatch, ComponentCount };
  ParseError(Kind kind, std::size_t offset, std::vector<std::string> expected, const std::string& msg);

  Kind kind() const { return kind_; }
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  Kind kind_;
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Domain violation raised while evaluating, with the source span of the failing node.
class EvalError : public DomainError {
 public:
  EvalError(const DomainError& e, std::size_t offset, std::size_t length)
      : DomainError(e.primitive(), std::string(e.what()) + " at offset " + std::to_string(offset)),
        offset_(offset), length_(length) {}
  std::size_t offset() const { return offset_; }
  std::size_t length() const { return length_; }

 private:
  std::size_t offset_, length_;
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  enum Kind { Number, Variable, Constant, Neg, Add, Sub, Mul, Div, Pow, Call };
  Kind kind = Number;
  double value = 0;      // Number literal or bound Constant value
  int var = -1;          // Variable index
  std::string name;      // Variable, Constant, or Call name
  std::vector<NodePtr> args;
  std::size_t offset = 0, length = 0;
};

using Constants = std::map<std::string, double>;

/// Parses one scalar expression.
NodePtr parse(const std::string& text, Arity arity, const Constants& constants = {});

/// Parses a comma-separated list of scalar expressions.
std::vector<NodePtr> parse_list(const std::string& text, Arity arity, const Constants& constants = {});

std::string to_string(const NodePtr& n);
bool equal(const NodePtr& a, const NodePtr& b);
/// Edges on the longest root-to-leaf path; a leaf has depth 0.
int depth(const NodePtr& n);

/// Postfix program evaluated over jets.
class Program {
 public:
  explicit Program(const NodePtr& root);

  template <int N>
  Jet<N> eval(const Jet<N>* vars) const;

  std::size_t size() const { return code_.size(); }

 private:
  enum Op { Lit, Var, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp, Ln, Sqrt, Abs, PowCall };
  struct Instr {
    Op op;
    double value;
    int index;
    std::size_t offset, length;
  };
  void emit(const NodePtr& n);
  std::vector<Instr> code_;
  std::size_t max_stack_ = 0;
};

ScalarField compile_field(const std::string& text, const Constants& constants = {});
ScalarField compile_field(const NodePtr& root);
CurveModel compile_curve(const std::string& text, double t0, double t1, const Constants& constants = {});
Patch compile_patch(const std::string& text, const Constants& constants = {});

/// Parses "name=value,name=value".
Constants parse_constants(const std::string& text);

}  // namespace heis::expr
