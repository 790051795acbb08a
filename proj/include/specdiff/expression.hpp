#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace specdiff {

// Tiny arithmetic expression language for config-defined sources and probe
// targets. Grammar:
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := ('+' | '-')* power
//   power  := atom ('^' factor)?            right associative exponent
//   atom   := number | name | name '(' expr (',' expr)* ')' | '(' expr ')'
//
// Names resolve to the declared variables, the constants pi and e, or the
// functions exp, sin, cos, tan, arctan (alias atan), sqrt, abs, pow. A
// literal small integer exponent compiles to repeated multiplication, so
// "t^2" carries exactly the bits of t*t.
class Expression {
  enum class Op : std::uint8_t {
    push_const,
    push_var,
    add,
    sub,
    mul,
    divide,
    neg,
    ipow,  // slot holds the exponent, 2..8
    pow_general,
    call_exp,
    call_sin,
    call_cos,
    call_tan,
    call_atan,
    call_sqrt,
    call_abs,
  };

  struct Instr {
    Op op;
    std::int32_t slot = 0;
    double operand = 0.0;
  };

 public:
  static Expression parse(const std::string& text,
                          std::vector<std::string> variables) {
    Parser p(text, variables);
    Expression e;
    e.nvars_ = variables.size();
    e.program_ = p.run();
    e.check_depth();
    return e;
  }

  double eval(const double* args, std::size_t nargs) const {
    double stack[kMaxStack];
    std::size_t top = 0;
    for (const Instr& in : program_) {
      switch (in.op) {
        case Op::push_const:
          stack[top++] = in.operand;
          break;
        case Op::push_var:
          stack[top++] = static_cast<std::size_t>(in.slot) < nargs
                             ? args[in.slot]
                             : 0.0;
          break;
        case Op::add:
          --top;
          stack[top - 1] = stack[top - 1] + stack[top];
          break;
        case Op::sub:
          --top;
          stack[top - 1] = stack[top - 1] - stack[top];
          break;
        case Op::mul:
          --top;
          stack[top - 1] = stack[top - 1] * stack[top];
          break;
        case Op::divide:
          --top;
          stack[top - 1] = stack[top - 1] / stack[top];
          break;
        case Op::neg:
          stack[top - 1] = -stack[top - 1];
          break;
        case Op::ipow: {
          const double x = stack[top - 1];
          double acc = x;
          for (std::int32_t i = 1; i < in.slot; ++i) acc = acc * x;
          stack[top - 1] = acc;
          break;
        }
        case Op::pow_general:
          --top;
          stack[top - 1] = std::pow(stack[top - 1], stack[top]);
          break;
        case Op::call_exp:
          stack[top - 1] = std::exp(stack[top - 1]);
          break;
        case Op::call_sin:
          stack[top - 1] = std::sin(stack[top - 1]);
          break;
        case Op::call_cos:
          stack[top - 1] = std::cos(stack[top - 1]);
          break;
        case Op::call_tan:
          stack[top - 1] = std::tan(stack[top - 1]);
          break;
        case Op::call_atan:
          stack[top - 1] = std::atan(stack[top - 1]);
          break;
        case Op::call_sqrt:
          stack[top - 1] = std::sqrt(stack[top - 1]);
          break;
        case Op::call_abs:
          stack[top - 1] = std::fabs(stack[top - 1]);
          break;
      }
    }
    return stack[0];
  }

  double operator()(double a) const { return eval(&a, 1); }
  double operator()(double a, double b) const {
    const double args[2] = {a, b};
    return eval(args, 2);
  }

  std::size_t arity() const { return nvars_; }

 private:
  static constexpr std::size_t kMaxStack = 64;

  class Parser {
   public:
    Parser(const std::string& text, const std::vector<std::string>& variables)
        : text_(text), vars_(variables) {}

    std::vector<Instr> run() {
      parse_expr(0);
      skip_ws();
      if (pos_ != text_.size()) fail("unexpected trailing input");
      return std::move(out_);
    }

   private:
    const std::string& text_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
    std::vector<Instr> out_;

    [[noreturn]] void fail(const std::string& what) const {
      throw ParseError("expression: " + what + " at offset " + std::to_string(pos_),
                       pos_);
    }

    void skip_ws() {
      while (pos_ < text_.size() &&
             std::isspace(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
    }

    bool eat(char c) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == c) {
        ++pos_;
        return true;
      }
      return false;
    }

    char peek() {
      skip_ws();
      return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void guard_depth(int depth) {
      if (depth > 200) fail("expression nests too deeply");
    }

    void parse_expr(int depth) {
      guard_depth(depth);
      parse_term(depth + 1);
      while (true) {
        if (eat('+')) {
          parse_term(depth + 1);
          out_.push_back({Op::add});
        } else if (eat('-')) {
          parse_term(depth + 1);
          out_.push_back({Op::sub});
        } else {
          return;
        }
      }
    }

    void parse_term(int depth) {
      guard_depth(depth);
      parse_factor(depth + 1);
      while (true) {
        if (eat('*')) {
          parse_factor(depth + 1);
          out_.push_back({Op::mul});
        } else if (eat('/')) {
          parse_factor(depth + 1);
          out_.push_back({Op::divide});
        } else {
          return;
        }
      }
    }

    void parse_factor(int depth) {
      guard_depth(depth);
      bool negate = false;
      while (true) {
        if (eat('-'))
          negate = !negate;
        else if (eat('+'))
          ;
        else
          break;
      }
      parse_power(depth + 1);
      if (negate) out_.push_back({Op::neg});
    }

    void parse_power(int depth) {
      guard_depth(depth);
      parse_atom(depth + 1);
      if (!eat('^')) return;
      const std::size_t mark = out_.size();
      parse_factor(depth + 1);
      // lower a literal small positive integer exponent to multiplications
      if (out_.size() == mark + 1 && out_[mark].op == Op::push_const) {
        const double e = out_[mark].operand;
        if (e == 1.0) {
          out_.pop_back();
          return;
        }
        if (e >= 2.0 && e <= 8.0 && e == std::floor(e)) {
          out_.pop_back();
          out_.push_back({Op::ipow, static_cast<std::int32_t>(e)});
          return;
        }
      }
      out_.push_back({Op::pow_general});
    }

    void parse_atom(int depth) {
      guard_depth(depth);
      skip_ws();
      if (pos_ >= text_.size()) fail("unexpected end of input");
      const char c = text_[pos_];
      if (c == '(') {
        ++pos_;
        parse_expr(depth + 1);
        if (!eat(')')) fail("expected ')'");
        return;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        double value = 0.0;
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        const auto res = std::from_chars(begin, end, value);
        if (res.ec != std::errc{} || res.ptr == begin) fail("malformed number");
        pos_ = static_cast<std::size_t>(res.ptr - text_.data());
        out_.push_back({Op::push_const, 0, value});
        return;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_'))
          ++pos_;
        const std::string name = text_.substr(start, pos_ - start);
        for (std::size_t i = 0; i < vars_.size(); ++i) {
          if (vars_[i] == name) {
            out_.push_back({Op::push_var, static_cast<std::int32_t>(i)});
            return;
          }
        }
        if (name == "pi") {
          out_.push_back({Op::push_const, 0, std::numbers::pi});
          return;
        }
        if (name == "e") {
          out_.push_back({Op::push_const, 0, std::numbers::e});
          return;
        }
        parse_call(name, start, depth + 1);
        return;
      }
      fail(std::string("unexpected character '") + c + "'");
    }

    void parse_call(const std::string& name, std::size_t name_pos, int depth) {
      Op op;
      int args = 1;
      if (name == "exp") {
        op = Op::call_exp;
      } else if (name == "sin") {
        op = Op::call_sin;
      } else if (name == "cos") {
        op = Op::call_cos;
      } else if (name == "tan") {
        op = Op::call_tan;
      } else if (name == "arctan" || name == "atan") {
        op = Op::call_atan;
      } else if (name == "sqrt") {
        op = Op::call_sqrt;
      } else if (name == "abs") {
        op = Op::call_abs;
      } else if (name == "pow") {
        op = Op::pow_general;
        args = 2;
      } else {
        pos_ = name_pos;
        fail("unknown name '" + name + "'");
      }
      if (!eat('(')) fail("function '" + name + "' needs parenthesized arguments");
      parse_expr(depth + 1);
      for (int i = 1; i < args; ++i) {
        if (!eat(',')) fail("function '" + name + "' needs " + std::to_string(args) +
                            " arguments");
        parse_expr(depth + 1);
      }
      if (!eat(')')) fail("expected ')'");
      out_.push_back({op});
    }
  };

  void check_depth() const {
    std::size_t depth = 0;
    std::size_t peak = 0;
    for (const Instr& in : program_) {
      switch (in.op) {
        case Op::push_const:
        case Op::push_var:
          ++depth;
          peak = std::max(peak, depth);
          break;
        case Op::add:
        case Op::sub:
        case Op::mul:
        case Op::divide:
        case Op::pow_general:
          --depth;
          break;
        default:
          break;
      }
    }
    if (peak >= kMaxStack)
      throw ParseError("expression: too many nested operands", 0);
  }

  std::vector<Instr> program_;
  std::size_t nvars_ = 0;
};

}  // namespace specdiff
