#ifndef DP3_SYMBOL_HPP
#define DP3_SYMBOL_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dp3/expr.hpp"

namespace dp3 {

struct SymbolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One singularity symbol from the index-three table: A_t(l,m) with
// 1 <= l <= m <= 2, or D_t(m) with t >= 4.  A_1 carries a single weight,
// stored as l = m.
struct SymbolAtom {
    char series = 'A';  // 'A' or 'D'
    int t = 1;
    int l = 1;
    int m = 1;

    static SymbolAtom a(int t, int l, int m);
    static SymbolAtom d(int t, int m);
    bool operator==(const SymbolAtom&) const = default;
    bool operator<(const SymbolAtom& o) const;
    std::string str() const;
};

// Formal sum (multiset) of atoms, e.g. "D4(1)+3A1(1)".
struct SingSymbol {
    std::map<SymbolAtom, int> atoms;

    void add(const SymbolAtom& a, int count = 1);
    bool operator==(const SingSymbol&) const = default;
    bool empty() const { return atoms.empty(); }
    std::string str() const;
};

// Evaluates a symbol expression such as "A_{s+2}(2,2)", "D_{c+1}(2)",
// "2A_1(1)+A_1(2)" over an environment (s bound via with_s).
SingSymbol eval_symbol(const std::string& text, const Env& env);

}  // namespace dp3

#endif
