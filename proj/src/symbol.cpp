#include "dp3/symbol.hpp"

#include <cctype>
#include <sstream>

namespace dp3 {

SymbolAtom SymbolAtom::a(int t, int l, int m) {
    if (l > m) std::swap(l, m);
    if (t < 1 || l < 1 || m > 2)
        throw SymbolError("bad A atom A" + std::to_string(t) + "(" + std::to_string(l) + "," +
                          std::to_string(m) + ")");
    return SymbolAtom{'A', t, l, m};
}

SymbolAtom SymbolAtom::d(int t, int m) {
    if (t < 4 || m < 1 || m > 2) throw SymbolError("bad D atom D" + std::to_string(t));
    return SymbolAtom{'D', t, m, m};
}

bool SymbolAtom::operator<(const SymbolAtom& o) const {
    // display/order: larger graphs first, D before A on ties
    if (t != o.t) return t > o.t;
    if (series != o.series) return series == 'D';
    if (m != o.m) return m > o.m;
    return l > o.l;
}

std::string SymbolAtom::str() const {
    std::ostringstream os;
    os << series << t << "(";
    if (series == 'A' && t > 1)
        os << l << "," << m;
    else
        os << m;
    os << ")";
    return os.str();
}

void SingSymbol::add(const SymbolAtom& a, int count) { atoms[a] += count; }

std::string SingSymbol::str() const {
    if (atoms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [a, n] : atoms) {
        if (!first) os << "+";
        first = false;
        if (n > 1) os << n;
        os << a.str();
    }
    return os.str();
}

namespace {

struct SymParser {
    const std::string& s;
    const Env& env;
    size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& why) {
        throw SymbolError("bad symbol '" + s + "': " + why);
    }

    long long number() {
        skip();
        long long v = 0;
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            fail("expected number");
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            v = v * 10 + (s[pos++] - '0');
        return v;
    }

    long long size_field() {
        skip();
        if (pos < s.size() && s[pos] == '_') ++pos;
        skip();
        if (pos < s.size() && s[pos] == '{') {
            size_t close = s.find('}', pos);
            if (close == std::string::npos) fail("unterminated {");
            std::string inner = s.substr(pos + 1, close - pos - 1);
            pos = close + 1;
            return eval_expr(inner, env);
        }
        return number();
    }

    void term(SingSymbol& out) {
        skip();
        int count = 1;
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            count = static_cast<int>(number());
        skip();
        if (pos >= s.size() || (s[pos] != 'A' && s[pos] != 'D')) fail("expected A or D");
        char series = s[pos++];
        long long t = size_field();
        skip();
        if (pos >= s.size() || s[pos] != '(') fail("expected (");
        ++pos;
        long long w1 = number();
        long long w2 = w1;
        skip();
        if (pos < s.size() && s[pos] == ',') {
            ++pos;
            w2 = number();
        }
        skip();
        if (pos >= s.size() || s[pos] != ')') fail("expected )");
        ++pos;
        SymbolAtom atom = series == 'A'
                              ? SymbolAtom::a(static_cast<int>(t), static_cast<int>(w1),
                                              static_cast<int>(w2))
                              : SymbolAtom::d(static_cast<int>(t), static_cast<int>(w1));
        out.add(atom, count);
    }
};

}  // namespace

SingSymbol eval_symbol(const std::string& text, const Env& env) {
    SingSymbol out;
    SymParser p{text, env};
    p.skip();
    if (p.pos == text.size()) return out;
    p.term(out);
    for (;;) {
        p.skip();
        if (p.pos >= text.size()) break;
        if (text[p.pos] != '+') p.fail("expected +");
        ++p.pos;
        p.term(out);
    }
    return out;
}

}  // namespace dp3
