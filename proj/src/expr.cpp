#include "dp3/expr.hpp"

#include <cctype>

namespace dp3 {
namespace {

struct Parser {
    const std::string& s;
    const Env& env;
    size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& why) {
        throw ExprError("bad expression '" + s + "' at " + std::to_string(pos) + ": " + why);
    }

    long long atom() {
        skip();
        if (pos >= s.size()) fail("unexpected end");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            long long v = sum();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long long v = 0;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                v = v * 10 + (s[pos++] - '0');
            return v;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            std::string name = s.substr(start, pos - start);
            if (name == "max") {
                if (!eat('(')) fail("expected '(' after max");
                long long a = sum();
                if (!eat(',')) fail("expected ',' in max");
                long long b = sum();
                if (!eat(')')) fail("expected ')' after max");
                return a > b ? a : b;
            }
            auto it = env.find(name);
            if (it == env.end()) fail("unbound variable '" + name + "'");
            return it->second;
        }
        fail("unexpected character");
    }

    long long unary() {
        skip();
        if (eat('-')) return -unary();
        return atom();
    }

    long long product() {
        long long v = unary();
        for (;;) {
            skip();
            if (eat('*'))
                v *= unary();
            else
                return v;
        }
    }

    long long sum() {
        long long v = product();
        for (;;) {
            skip();
            if (pos < s.size() && s[pos] == '+') {
                ++pos;
                v += product();
            } else if (pos < s.size() && s[pos] == '-') {
                ++pos;
                v -= product();
            } else {
                return v;
            }
        }
    }
};

}  // namespace

long long eval_expr(const std::string& text, const Env& env) {
    Parser p{text, env};
    long long v = p.sum();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing input");
    return v;
}

Env with_s(Env env) {
    auto c = env.find("c");
    auto d = env.find("d");
    if (c != env.end() && d != env.end()) {
        long long s = c->second + d->second - 1;
        env["s"] = s > 0 ? s : 0;
    }
    return env;
}

}  // namespace dp3
