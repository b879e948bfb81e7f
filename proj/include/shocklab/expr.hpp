#pragma once

#include <functional>
#include <memory>
#include <string>

namespace shocklab {

// Minimal arithmetic expression grammar over one variable r:
//   numbers, r, + - * / ^, exp, sin, parentheses.
// Parsed once into a small AST; evaluation is allocation-free.
class Expr {
  public:
    // Throws ConfigError with position info on malformed input.
    static Expr parse(const std::string& text);

    double eval(double r) const;
    const std::string& source() const { return src_; }

    struct Node;  // implementation detail, public only for the parser

  private:
    std::shared_ptr<const Node> root_;
    std::string src_;
};

}  // namespace shocklab
