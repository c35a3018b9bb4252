#ifndef DP3_LATTICE_HPP
#define DP3_LATTICE_HPP

#include <map>
#include <stdexcept>
#include <string>

namespace dp3 {

struct LatticeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// P^2 or a Hirzebruch surface F_n.
struct BaseSurface {
    enum class Kind { ProjectivePlane, Hirzebruch };
    Kind kind = Kind::ProjectivePlane;
    int n = 0;  // degree of F_n, ignored for P^2

    static BaseSurface p2() { return {Kind::ProjectivePlane, 0}; }
    static BaseSurface fn(int n) {
        if (n < 0) throw LatticeError("F_n needs n >= 0");
        return {Kind::Hirzebruch, n};
    }
    bool is_p2() const { return kind == Kind::ProjectivePlane; }
    bool operator==(const BaseSurface&) const = default;
    std::string str() const {
        return is_p2() ? "P2" : (n == 0 ? "P1xP1" : "F" + std::to_string(n));
    }
};

// Divisor class on a blowup tower over a base surface.
//
// Base part: on P^2 the multiple of a line is stored in `a` (b unused);
// on F_n the class is a*sigma + b*l.  The exceptional part maps a blowup
// index to the coefficient of the corresponding total-transform class e_i
// (e_i^2 = -1, pairwise orthogonal, orthogonal to pullbacks).  The strict
// transform of a curve through a point therefore carries -1 there; the
// canonical class carries +1.  Absent index means coefficient 0.
struct DivClass {
    BaseSurface base;
    long long a = 0;
    long long b = 0;
    std::map<int, long long> exc;

    DivClass() = default;
    explicit DivClass(BaseSurface s, long long a_ = 0, long long b_ = 0)
        : base(s), a(a_), b(b_) {}

    static DivClass line(long long d) { return DivClass(BaseSurface::p2(), d); }
    static DivClass on_fn(int n, long long a, long long b) {
        return DivClass(BaseSurface::fn(n), a, b);
    }

    long long exc_coeff(int i) const {
        auto it = exc.find(i);
        return it == exc.end() ? 0 : it->second;
    }
    DivClass& add_exc(int i, long long v) {
        if (v != 0) {
            exc[i] += v;
            if (exc[i] == 0) exc.erase(i);
        }
        return *this;
    }

    bool is_zero() const { return a == 0 && b == 0 && exc.empty(); }
    bool base_only() const { return exc.empty(); }

    DivClass operator+(const DivClass& o) const;
    DivClass operator-(const DivClass& o) const;
    DivClass operator*(long long k) const;
    bool operator==(const DivClass&) const = default;

    std::string str() const;
};

// Symmetric intersection pairing.  Both classes must live on the same base
// surface; exceptional coordinates pair diagonally with e_i^2 = -1.
long long intersection(const DivClass& x, const DivClass& y);

// Canonical class of the bare base surface: -3l on P^2, -2s-(n+2)l on F_n.
DivClass canonical_base(BaseSurface s);

// Nefness on the bare base surface (exc part must be empty): on P^2 d >= 0,
// on F_n pairing with both the fiber and the minimal section nonnegative.
bool is_nef_on_base(const DivClass& c);

// Bigness for nef classes on the bare base surface (positivity of the top
// self-intersection on P^2/F_n).
bool is_big_nef_on_base(const DivClass& c);

// Arithmetic genus by adjunction: (c.c + c.K)/2 + 1 for a given total
// canonical class K (base canonical plus all exceptional classes of the
// tower).  Throws if the result is not an integer.
long long arithmetic_genus(const DivClass& c, const DivClass& k_total);

}  // namespace dp3

#endif
