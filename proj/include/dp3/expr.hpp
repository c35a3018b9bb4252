#ifndef DP3_EXPR_HPP
#define DP3_EXPR_HPP

#include <map>
#include <stdexcept>
#include <string>

namespace dp3 {

// Environment for small integer expressions appearing in catalog data:
// type parameters (c, d, b, ...) plus the derived shift s = max(0, c+d-1).
using Env = std::map<std::string, long long>;

struct ExprError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluates an integer expression over an environment.
// Grammar: additive chains of products of atoms; atoms are integer
// literals, variables, max(e1,e2), or parenthesized expressions.
long long eval_expr(const std::string& text, const Env& env);

// Extends env with s = max(0, c+d-1) when both c and d are bound.
Env with_s(Env env);

}  // namespace dp3

#endif
