#include "dp3/lattice.hpp"

#include <sstream>

namespace dp3 {

static void require_same_base(const DivClass& x, const DivClass& y) {
    if (!(x.base == y.base))
        throw LatticeError("classes live on different base surfaces: " + x.base.str() +
                           " vs " + y.base.str());
}

DivClass DivClass::operator+(const DivClass& o) const {
    require_same_base(*this, o);
    DivClass r = *this;
    r.a += o.a;
    r.b += o.b;
    for (auto& [i, v] : o.exc) r.add_exc(i, v);
    return r;
}

DivClass DivClass::operator-(const DivClass& o) const {
    require_same_base(*this, o);
    DivClass r = *this;
    r.a -= o.a;
    r.b -= o.b;
    for (auto& [i, v] : o.exc) r.add_exc(i, -v);
    return r;
}

DivClass DivClass::operator*(long long k) const {
    DivClass r(base);
    if (k == 0) return r;
    r.a = a * k;
    r.b = b * k;
    for (auto& [i, v] : exc) r.exc[i] = v * k;
    return r;
}

std::string DivClass::str() const {
    std::ostringstream os;
    if (base.is_p2())
        os << a << "l";
    else
        os << a << "s+" << b << "l";
    for (auto& [i, v] : exc) {
        os << (v >= 0 ? "+" : "") << v << "e" << i;
    }
    return os.str();
}

long long intersection(const DivClass& x, const DivClass& y) {
    require_same_base(x, y);
    long long base_part;
    if (x.base.is_p2()) {
        base_part = x.a * y.a;
    } else {
        // (a1 s + b1 l).(a2 s + b2 l) with s^2 = -n, s.l = 1, l^2 = 0
        base_part = x.a * y.b + x.b * y.a - static_cast<long long>(x.base.n) * x.a * y.a;
    }
    long long e_part = 0;
    const auto& small = x.exc.size() <= y.exc.size() ? x.exc : y.exc;
    const auto& other = x.exc.size() <= y.exc.size() ? y.exc : x.exc;
    for (auto& [i, v] : small) {
        auto it = other.find(i);
        if (it != other.end()) e_part += v * it->second;
    }
    return base_part - e_part;
}

DivClass canonical_base(BaseSurface s) {
    if (s.is_p2()) return DivClass::line(-3);
    return DivClass::on_fn(s.n, -2, -(s.n + 2));
}

bool is_nef_on_base(const DivClass& c) {
    if (!c.base_only())
        throw LatticeError("nefness is only decided on the bare base surface");
    if (c.base.is_p2()) return c.a >= 0;
    // pair with fiber l (gives a) and minimal section sigma (gives b - n a)
    return c.a >= 0 && c.b - static_cast<long long>(c.base.n) * c.a >= 0;
}

bool is_big_nef_on_base(const DivClass& c) {
    if (!is_nef_on_base(c)) return false;
    return intersection(c, c) > 0;
}

long long arithmetic_genus(const DivClass& c, const DivClass& k_total) {
    long long t = intersection(c, c) + intersection(c, k_total);
    if (t % 2 != 0)
        throw LatticeError("adjunction is non-integral for class " + c.str() +
                           "; not a curve class");
    return t / 2 + 1;
}

}  // namespace dp3
