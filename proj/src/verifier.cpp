#include "dp3/verifier.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace dp3 {

bool Report::pass() const {
    for (auto& c : checks)
        if (!c.pass) return false;
    return true;
}

bool Summary::global_pass() const {
    for (auto& c : global)
        if (!c.pass) return false;
    return true;
}

namespace {

Check make(const std::string& id, bool pass, const std::string& detail, const std::string& cite) {
    return Check{id, pass, detail, cite};
}

std::string num(long long v) { return std::to_string(v); }

bool is_section(const BaseSurface& base, const DivClass& c) {
    return !base.is_p2() && c.base_only() && c.a == 1 && c.b >= 0;
}
bool is_minimal_section(const BaseSurface& base, const DivClass& c) {
    return is_section(base, c) && c.b == 0;
}

DivClass fiber_class(const BaseSurface& base) {
    return base.is_p2() ? DivClass::line(1) : DivClass::on_fn(base.n, 0, 1);
}

long long coeff_of(const Tower::Weighted& d, const std::string& id) {
    for (auto& [cid, w] : d.comps)
        if (cid == id) return w;
    return 0;
}

// 2K+L on the bottom surface classified as big / fibration-like / trivial
enum class Positivity { Big, NonBigNontrivial, Trivial, NotNef };
Positivity positivity_2kl(const DivClass& two_k_plus_l) {
    if (!is_nef_on_base(two_k_plus_l)) return Positivity::NotNef;
    if (two_k_plus_l.a == 0 && two_k_plus_l.b == 0) return Positivity::Trivial;
    if (intersection(two_k_plus_l, two_k_plus_l) > 0) return Positivity::Big;
    return Positivity::NonBigNontrivial;
}

long long kind_genus(CurveKind k) { return k == CurveKind::Smooth ? 0 : 1; }

}  // namespace

WeightedDualGraph stage_graph(const Realization& r, int level) {
    const Tower::Weighted& d = level >= 2 ? r.E_M : r.E_Z;
    return build_dual_graph(r.tower, d, level);
}

std::vector<Check> verify_axioms(const Realization& r) {
    std::vector<Check> out;
    const TypeSpec& t = r.spec;
    const Tower& tw = r.tower;
    const BaseSurface& base = t.base;

    // (a) nef hypotheses of Prop 3.11, per family
    if (t.is_median()) {
        DivClass kl = canonical_base(base) + r.L_bottom;
        bool nef = is_nef_on_base(kl);
        long long kll = intersection(kl, r.L_bottom);
        out.push_back(make("P3.11-nef", nef && kll > 0,
                           "K_Z+L_Z=" + kl.str() + " nef=" + num(nef) +
                               ", (K_Z+L_Z.L_Z)=" + num(kll),
                           "Prop 3.11(1)"));
        DivClass two_kl = canonical_base(base) * 2 + r.L_bottom;
        long long against_fiber = intersection(two_kl, fiber_class(base));
        out.push_back(make("F-notnef", against_fiber < 0,
                           "(2K_Z+L_Z.l)=" + num(against_fiber), "Lemma 3.6(2)"));
        if (!base.is_p2() && base.n == 1) {
            long long v = intersection(two_kl, DivClass::on_fn(1, 1, 0));
            out.push_back(
                make("F4-negcurve", v >= 0, "(2K_Z+L_Z.sigma)=" + num(v), "Def 3.5 (F4)"));
        }
    } else {
        DivClass two_kl = canonical_base(base) * 2 + r.L_bottom;
        bool nef = is_nef_on_base(two_kl);
        DivClass kl = canonical_base(base) + r.L_bottom;
        long long kll = intersection(kl, r.L_bottom);
        out.push_back(make("P3.11-nef", nef && kll > 2 * r.degX,
                           "2K_X+L_X=" + two_kl.str() + " nef=" + num(nef) +
                               ", (K_X+L_X.L_X)=" + num(kll) + " vs 2degX=" + num(2 * r.degX),
                           "Prop 3.11(2)"));
        if (!base.is_p2() && base.n == 1) {
            // sigma is the only (-1)-curve on the bottom surface
            DivClass three_kl = canonical_base(base) * 3 + r.L_bottom;
            long long v = intersection(three_kl, DivClass::on_fn(1, 1, 0));
            out.push_back(
                make("B4-negcurve", v >= 0, "(3K_X+L_X.sigma)=" + num(v), "Def 3.8 (B4)"));
        }
    }

    // family shape of 2K+L on the bottom surface
    {
        DivClass two_kl = canonical_base(base) * 2 + r.L_bottom;
        Positivity p = positivity_2kl(two_kl);
        bool ok = false;
        std::string want;
        if (t.family == "median") {
            ok = true;  // covered by F-notnef above
            want = "n/a";
        } else if (t.family == "tet-big") {
            ok = p == Positivity::Big;
            want = "big";
        } else if (t.family == "tet-nonbig") {
            ok = p == Positivity::NonBigNontrivial && !base.is_p2();
            want = "non-big nontrivial on F_n";
        } else {
            ok = p == Positivity::Trivial;
            want = "trivial";
        }
        if (t.family != "median")
            out.push_back(make("family-2KL", ok,
                               "2K_X+L_X=" + two_kl.str() + ", expected " + want,
                               "Def 3.10"));
    }

    // (b) coefficients of E_M lie in {1,2}
    {
        bool ok = true;
        std::string bad;
        for (auto& [id, w] : r.E_M.comps)
            if (w < 1 || w > 2) {
                ok = false;
                bad += " " + id + "=" + num(w);
            }
        out.push_back(make("C2-coeff", ok, ok ? "all coefficients in {1,2}" : "bad:" + bad,
                           "Def 3.3 (C2)"));
    }

    // (c) simple normal crossing support
    {
        bool ok = true;
        std::string why;
        try {
            WeightedDualGraph g = stage_graph(r, 2);
            for (auto& v : g.vertices)
                if (v.sing != 0) {
                    ok = false;
                    why += " singular component " + v.id + ";";
                }
            for (auto& e : g.edges)
                if (e.box != 1) {
                    ok = false;
                    why += " tangential contact " + g.vertices[e.u].id + "/" +
                           g.vertices[e.v].id + " box " + num(e.box) + ";";
                }
            if (!g.triple_points.empty()) {
                ok = false;
                for (auto& p : g.triple_points) why += " triple point " + p + ";";
            }
        } catch (const std::exception& e) {
            ok = false;
            why = e.what();
        }
        out.push_back(make("C2-snc", ok, ok ? "support is SNC" : why, "Def 3.3 (C2)"));
    }

    // (e) E_M is nonzero effective
    out.push_back(make("C2-nonzero", !r.E_M.comps.empty(),
                       "E_M has " + num(static_cast<long long>(r.E_M.comps.size())) +
                           " components",
                       "Def 3.3 (C2)"));

    // (d) L_M is orthogonal to every component
    {
        bool ok = true;
        std::string bad;
        for (auto& [id, w] : r.E_M.comps) {
            long long v = intersection(r.L_M, tw.class_at(id, 2));
            if (v != 0) {
                ok = false;
                bad += " (L_M." + id + ")=" + num(v);
            }
        }
        out.push_back(
            make("C4-orth", ok, ok ? "(L_M.E_0)=0 for all components" : bad, "Def 3.3 (C4)"));
    }

    // fundamental-divisor relations at every stage
    {
        DivClass lhs_z = tw.canonical(1) * -3 - r.E_Z.cls;
        DivClass lhs_m = tw.canonical(2) * -3 - r.E_M.cls;
        bool ok = lhs_z == r.L_Z && lhs_m == r.L_M;
        out.push_back(make("L-rel", ok, ok ? "L ~ -3K-E on Z and M" : "relation broken",
                           "Def 3.3 (C3), Lemma 3.6(1)"));
    }

    // family side conditions: (F6)/(F7) for non-big medians, (B6)-(B8) for
    // tet-nonbig, (B9)-(B11) for tet-trivial on P^2
    if (t.is_median() && !base.is_p2()) {
        DivClass kl = canonical_base(base) + r.L_bottom;
        if (!is_big_nef_on_base(kl)) {
            bool f6 = true;
            std::string hit;
            for (auto& c : t.components) {
                if (!is_minimal_section(base, c.cls)) continue;
                long long deg = tw.branch_degree(c.id, 2);
                if (deg != 0) {
                    f6 = false;
                    hit = c.id + " carries " + num(deg);
                }
            }
            out.push_back(
                make("F6", f6, f6 ? "Delta_Z avoids the minimal section" : hit, "Def 3.7 (F6)"));

            bool f7 = true;
            std::string why = "no section in E_Z";
            long long sigma_coeff = 0;
            bool have_sigma = false;
            for (auto& c : t.components)
                if (is_minimal_section(base, c.cls)) {
                    have_sigma = true;
                    sigma_coeff = c.coeff;
                }
            for (auto& c : t.components) {
                if (!is_section(base, c.cls)) continue;
                why = "sections checked against coeff_sigma";
                if (!have_sigma) {
                    f7 = false;
                    why = "section " + c.id + " without sigma in E_Z";
                    break;
                }
                if (c.coeff > sigma_coeff) {
                    f7 = false;
                    why = "coeff_" + c.id + " exceeds coeff_sigma";
                    break;
                }
                if (c.coeff == sigma_coeff) {
                    long long d2 = intersection(c.cls, c.cls);
                    long long deg = tw.branch_degree(c.id, 2);
                    if (base.n + d2 < deg) {
                        f7 = false;
                        why = "n+(D^2)=" + num(base.n + d2) + " < deg(Delta_Z on " + c.id +
                              ")=" + num(deg);
                        break;
                    }
                }
            }
            out.push_back(make("F7", f7, why, "Def 3.7 (F7)"));
        }
    }

    if (t.family == "tet-nonbig") {
        bool b6 = true;
        std::string hit = "Delta_X avoids the minimal section";
        for (auto& c : t.components) {
            if (!is_minimal_section(base, c.cls)) continue;
            long long deg = tw.branch_degree(c.id, 1);
            if (deg != 0) {
                b6 = false;
                hit = c.id + " carries " + num(deg);
            }
        }
        if (base.n == 0 && r.degX != 0) {
            b6 = false;
            hit = "n=0 requires Delta_X empty";
        }
        out.push_back(make("B6", b6, hit, "Def 3.10 (B6)"));

        bool have_sigma = false;
        for (auto& c : t.components)
            if (is_minimal_section(base, c.cls)) have_sigma = true;
        bool ok = true;
        std::string why = "no section constraint violated";
        const bool b7_mode = !have_sigma || base.n == 0;
        for (auto& c : t.components) {
            if (!is_section(base, c.cls)) continue;
            long long d2 = intersection(c.cls, c.cls);
            long long deg = tw.branch_degree(c.id, 1);
            long long lhs = b7_mode ? d2 : base.n + d2;
            if (lhs < deg) {
                ok = false;
                why = "section " + c.id + ": " + num(lhs) + " < deg(Delta_X)=" + num(deg);
            }
        }
        out.push_back(make(b7_mode ? "B7" : "B8", ok, why,
                           b7_mode ? "Def 3.10 (B7)" : "Def 3.10 (B8)"));
    }

    if (t.family == "tet-trivial") {
        if (!base.is_p2()) {
            bool ok = (base.n == 0 || base.n == 2) && r.degX == 0;
            out.push_back(make("B-triv-base", ok,
                               "X=" + base.str() + ", degX=" + num(r.degX),
                               "Def 3.10 (C)"));
        } else {
            // identify the shape of E_X among the anti-canonical patterns
            std::vector<const ComponentSpec*> deg1w1, deg1w2, deg2, deg3;
            for (auto& c : t.components) {
                if (c.cls.a == 1 && c.coeff == 1) deg1w1.push_back(&c);
                if (c.cls.a == 1 && c.coeff == 2) deg1w2.push_back(&c);
                if (c.cls.a == 2) deg2.push_back(&c);
                if (c.cls.a == 3) deg3.push_back(&c);
            }
            auto cluster_locus_has = [&](const ClusterSpec& q, const std::string& id) {
                return std::find(q.locus.begin(), q.locus.end(), id) != q.locus.end();
            };
            if (deg2.size() == 1 && deg1w1.size() == 1) {  // E_X = C + l
                const std::string C = deg2[0]->id, l = deg1w1[0]->id;
                bool at_crossing = false;
                for (auto& q : tw.clusters())
                    if (q.stage == 1 && cluster_locus_has(q, C) && cluster_locus_has(q, l))
                        at_crossing = true;
                bool ok = at_crossing;
                std::string why = ok ? "Delta_X meets C and l" : "no cluster at C and l";
                bool tangent = false;
                for (auto& r2 : t.residual)
                    if ((r2.u == C && r2.v == l) || (r2.u == l && r2.v == C)) tangent = true;
                if (ok && tangent) {
                    long long away = 0;
                    const ClusterSpec* at_p = nullptr;
                    for (auto& q : tw.clusters()) {
                        if (q.stage != 1) continue;
                        if (cluster_locus_has(q, C) && cluster_locus_has(q, l))
                            at_p = &q;
                        else
                            away += q.length();
                    }
                    if (away >= 4) {
                        // on-l part of Delta_X away from the contact point
                        long long on_l_away = tw.branch_degree(l, 1) -
                                              (at_p ? tw.branch_degree_in(l, *at_p) : 0);
                        ok = on_l_away >= 1;
                        why = "deg(Delta_X-P)=" + num(away) +
                              ", Delta_X on l away from P: " + num(on_l_away);
                    }
                }
                out.push_back(make("B9", ok, why, "Def 3.10 (B9)"));
            } else if (deg1w1.size() == 3) {  // E_X = l1 + l2 + l3
                int crossing_clusters = 0;
                for (auto& q : tw.clusters()) {
                    if (q.stage != 1) continue;
                    int named = 0;
                    for (auto& c : deg1w1)
                        if (cluster_locus_has(q, c->id)) ++named;
                    if (named == 2) ++crossing_clusters;
                }
                out.push_back(make("B10", crossing_clusters >= 2,
                                   num(crossing_clusters) + " clusters at pairwise crossings",
                                   "Def 3.10 (B10)"));
            } else if (deg1w2.size() == 1 && deg1w1.size() == 1) {  // E_X = 2l1 + l2
                const std::string l1 = deg1w2[0]->id, l2 = deg1w1[0]->id;
                const ClusterSpec* at_p = nullptr;
                std::vector<const ClusterSpec*> on_l1_away;
                for (auto& q : tw.clusters()) {
                    if (q.stage != 1) continue;
                    bool h1 = cluster_locus_has(q, l1), h2 = cluster_locus_has(q, l2);
                    if (h1 && h2)
                        at_p = &q;
                    else if (h1)
                        on_l1_away.push_back(&q);
                }
                bool ok = true;
                std::string why;
                if (on_l1_away.size() > 1) {
                    ok = false;
                    why = "two points of Delta_X on l1 away from P; ";
                }
                if (on_l1_away.size() == 1) {
                    const ClusterSpec* p1 = on_l1_away[0];
                    if (p1->length() > 2) {
                        ok = false;
                        why += "mult_P1 > 2; ";
                    }
                    long long at_p_len = at_p ? at_p->length() : 0;
                    long long at_p_on_l2 = at_p ? tw.branch_degree_in(l2, *at_p) : 0;
                    if (at_p_len != at_p_on_l2) {
                        ok = false;
                        why += "mult_P != mult_P(Delta_X on l2); ";
                    }
                }
                if (r.degX == 4 && tw.branch_degree(l2, 1) != 3) {
                    ok = false;
                    why += "degX=4 needs deg(Delta_X on l2)=3; ";
                }
                if (r.degX >= 5 && on_l1_away.size() == 1) {
                    const ClusterSpec* p1 = on_l1_away[0];
                    long long pref = tw.branch_degree_in(l1, *p1);
                    if (pref != 2 && tw.branch_degree(l1, 1) != 1) {
                        ok = false;
                        why += "degX>=5 needs l1-contact 2 at P1 or deg(Delta_X on l1)=1; ";
                    }
                }
                out.push_back(make("B11", ok, ok ? "shape conditions hold" : why,
                                   "Def 3.10 (B11)"));
            }
        }
    }
    return out;
}

std::vector<Check> verify_identities(const Realization& r) {
    std::vector<Check> out;
    const TypeSpec& t = r.spec;
    const Tower& tw = r.tower;

    // degree identities
    {
        long long lz_ez = intersection(r.L_Z, r.E_Z.cls);
        out.push_back(make("L3.6-4", lz_ez == 2 * r.degZ,
                           "(L_Z.E_Z)=" + num(lz_ez) + ", 2degZ=" + num(2 * r.degZ),
                           "Lemma 3.6(4)"));
    }
    if (!t.is_median()) {
        long long lx_ex = intersection(r.L_bottom, r.E_bottom.cls);
        out.push_back(make("L3.9-3", lx_ex == 2 * (r.degX + r.degZ),
                           "(L_X.E_X)=" + num(lx_ex) + ", 2(degX+degZ)=" +
                               num(2 * (r.degX + r.degZ)),
                           "Lemma 3.9(3)"));
    }

    // component degree identities over nonsingular components
    {
        bool ok = true;
        std::string bad;
        for (auto& [id, w] : r.E_Z.comps) {
            if (tw.sing_unresolved(id, 1)) continue;
            long long lhs = intersection(r.L_Z, tw.class_at(id, 1));
            long long rhs = tw.branch_degree(id, 2);
            if (lhs != rhs) {
                ok = false;
                bad += " " + id + ":" + num(lhs) + "!=" + num(rhs);
            }
        }
        out.push_back(make("L3.6-4c", ok,
                           ok ? "(L_Z.E_0)=deg(Delta_Z on E_0) for all components" : bad,
                           "Lemma 3.6(4)"));
    }
    if (!t.is_median()) {
        bool ok = true;
        std::string bad;
        for (auto& [id, w] : r.E_bottom.comps) {
            if (tw.kind_of(id) != CurveKind::Smooth) continue;
            long long lhs = intersection(r.L_bottom, tw.class_at(id, 0));
            long long rhs = tw.branch_degree(id, 2) + 2 * tw.branch_degree(id, 1);
            if (lhs != rhs) {
                ok = false;
                bad += " " + id + ":" + num(lhs) + "!=" + num(rhs);
            }
        }
        out.push_back(make("L3.9-3c", ok,
                           ok ? "(L_X.E_0)=deg(Delta_Z on E_0^Z)+2deg(Delta_X on E_0)" : bad,
                           "Lemma 3.9(3)"));
    }

    // multiplicity windows at cluster base points
    {
        bool ok = true;
        std::string bad;
        for (auto& q : tw.clusters()) {
            if (q.stage != 2) continue;
            long long m = tw.mult_at(r.E_Z, q);
            if (m < 2 || m > 4) {
                ok = false;
                bad += " " + q.id + ":" + num(m);
            }
        }
        out.push_back(make("L3.6-5", ok,
                           ok ? "2 <= mult_Q(E_Z) <= 4 at all Delta_Z points" : bad,
                           "Lemma 3.6(5)"));
    }
    if (!t.is_median()) {
        bool ok = true;
        std::string bad;
        for (auto& q : tw.clusters()) {
            if (q.stage != 1) continue;
            long long m = tw.mult_at(r.E_bottom, q);
            if (m < 1 || m > 3) {
                ok = false;
                bad += " " + q.id + ":" + num(m);
            }
        }
        out.push_back(make("L3.9-4", ok,
                           ok ? "1 <= mult_P(E_X) <= 3 at all Delta_X points" : bad,
                           "Lemma 3.9(4)"));
    }

    // first chain-curve coefficients
    {
        bool ok = true;
        std::string bad;
        for (auto& q : tw.clusters()) {
            if (q.stage != 2) continue;
            long long lhs = coeff_of(r.E_M, chain_id(q.id, 1));
            long long rhs = tw.mult_at(r.E_Z, q) - 2;
            if (lhs != rhs) {
                ok = false;
                bad += " " + q.id + ":" + num(lhs) + "!=" + num(rhs);
            }
        }
        out.push_back(make("G1-EM", ok,
                           ok ? "coeff Gamma_{Q,1} E_M = mult_Q E_Z - 2" : bad,
                           "Lemma 3.6(5) proof"));
    }
    if (!t.is_median()) {
        bool ok = true;
        std::string bad;
        for (auto& q : tw.clusters()) {
            if (q.stage != 1) continue;
            long long lhs = coeff_of(r.E_Z, chain_id(q.id, 1));
            long long rhs = tw.mult_at(r.E_bottom, q) - 1;
            if (lhs != rhs) {
                ok = false;
                bad += " " + q.id + ":" + num(lhs) + "!=" + num(rhs);
            }
        }
        out.push_back(make("G1-EZ", ok,
                           ok ? "coeff Gamma_{P,1} E_Z = mult_P E_X - 1" : bad,
                           "Lemma 3.9(4) proof"));
    }

    // two-curve bound per stage
    {
        bool ok = true;
        std::string bad;
        auto check_stage = [&](const Tower::Weighted& d, int level, int stage, long long k) {
            for (size_t i = 0; i < d.comps.size(); ++i) {
                for (size_t j = i + 1; j < d.comps.size(); ++j) {
                    const std::string &a = d.comps[i].first, &b = d.comps[j].first;
                    if (tw.sing_unresolved(a, level) || tw.sing_unresolved(b, level)) continue;
                    long long c1c2 = intersection(tw.class_at(a, level), tw.class_at(b, level));
                    long long k1 = tw.branch_degree(a, stage);
                    long long k2 = tw.branch_degree(b, stage);
                    if (c1c2 < k1 + k2 - k) {
                        ok = false;
                        bad += " " + a + "/" + b + ":" + num(c1c2) + "<" + num(k1 + k2 - k);
                    }
                }
            }
        };
        check_stage(r.E_Z, 1, 2, r.degZ);
        if (!t.is_median()) check_stage(r.E_bottom, 0, 1, r.degX);
        out.push_back(make("P2.7", ok,
                           ok ? "(C1.C2) >= k1+k2-k for all component pairs" : bad,
                           "Prop 2.7"));
    }

    // declared curve kinds match adjunction on the base
    {
        bool ok = true;
        std::string bad;
        for (auto& c : t.components) {
            try {
                long long pa = arithmetic_genus(c.cls, canonical_base(t.base));
                if (pa != kind_genus(c.kind)) {
                    ok = false;
                    bad += " " + c.id + ":pa=" + num(pa);
                }
            } catch (const std::exception&) {
                ok = false;
                bad += " " + c.id + ":non-integral";
            }
        }
        out.push_back(make("kind-genus", ok,
                           ok ? "component kinds match arithmetic genus" : bad,
                           "Def 3.3 (C2) adjunction"));
    }

    // genus drop (Lemma 2.6) for every component of E_M
    {
        bool ok = true;
        std::string bad;
        for (auto& [id, w] : r.E_M.comps) {
            int birth = tw.birth_level(id);
            DivClass down = tw.class_at(id, birth);
            DivClass up = tw.class_at(id, 2);
            DivClass k_rel(tw.zero_class());
            if (birth == 0)
                k_rel = tw.canonical_rel(1) + tw.canonical_rel(2);
            else if (birth == 1)
                k_rel = tw.canonical_rel(2);
            else
                continue;  // born on M, nothing to drop
            long long pa_down = birth == 0 ? kind_genus(tw.kind_of(id)) : 0;
            try {
                long long pa_up = arithmetic_genus(up, tw.canonical(2));
                long long lhs = intersection(down, down) - intersection(up, up);
                long long rhs = intersection(k_rel, up) + 2 * pa_down - 2 * pa_up;
                if (lhs != rhs || pa_up != 0) {
                    ok = false;
                    bad += " " + id + ":" + num(lhs) + "!=" + num(rhs) + ",pa=" + num(pa_up);
                }
            } catch (const std::exception&) {
                ok = false;
                bad += " " + id + ":non-integral";
            }
        }
        out.push_back(make("L2.6", ok,
                           ok ? "genus drop identity holds for all strict transforms" : bad,
                           "Lemma 2.6"));
    }
    return out;
}

Check verify_symbols(const Realization& r, SingSymbol* computed_out) {
    SingSymbol expected = expected_symbol(r.spec);
    try {
        WeightedDualGraph g = stage_graph(r, 2);
        SingSymbol computed = classify_symbol_sum(g);
        if (computed_out) *computed_out = computed;
        bool ok = computed == expected;
        return make("P9.3-symbol", ok,
                    "computed " + computed.str() + ", expected " + expected.str(),
                    "Prop 9.3");
    } catch (const std::exception& e) {
        return make("P9.3-symbol", false, e.what(), "Prop 9.3");
    }
}

Report verify_type(const TypeSpec& t) {
    Report rep;
    rep.type_id = t.id;
    rep.family = t.family;
    try {
        rep.expected_em = expected_symbol(t).str();
    } catch (const std::exception& e) {
        rep.expected_em = std::string("error: ") + e.what();
    }
    try {
        Realization r = realize(t);
        auto ax = verify_axioms(r);
        auto id = verify_identities(r);
        rep.checks.insert(rep.checks.end(), ax.begin(), ax.end());
        rep.checks.insert(rep.checks.end(), id.begin(), id.end());
        SingSymbol computed;
        rep.checks.push_back(verify_symbols(r, &computed));
        rep.computed_em = computed.str();
    } catch (const std::exception& e) {
        rep.checks.push_back(make("realize", false, e.what(), "Prop 3.11(2) recipe"));
    }
    return rep;
}

std::vector<Check> verify_distinctness(const std::vector<TypeSpec>& concrete_tet_trivial) {
    std::vector<Check> out;
    std::map<std::string, std::set<std::string>> forms;  // median part -> canonical forms
    bool build_ok = true;
    std::string build_err;
    for (auto& t : concrete_tet_trivial) {
        if (t.family != "tet-trivial" || !t.base.is_p2()) continue;
        try {
            Realization r = realize(t);
            forms[t.median_part()].insert(canonical_form(stage_graph(r, 1)));
        } catch (const std::exception& e) {
            build_ok = false;
            build_err = t.id + ": " + e.what();
        }
    }
    bool within = build_ok;
    std::string why = build_ok ? "" : build_err;
    for (auto& [part, set] : forms)
        if (set.size() != 1) {
            within = false;
            why += " " + part + " has " + num(static_cast<long long>(set.size())) + " forms;";
        }
    out.push_back(make("P9.2-within", within,
                       within ? "E_Z graph constant within each median part" : why,
                       "Prop 9.2"));
    std::map<std::string, std::string> rep;
    bool distinct = true;
    std::string clash;
    for (auto& [part, set] : forms) {
        if (set.empty()) continue;
        auto& form = *set.begin();
        auto [it, fresh] = rep.emplace(form, part);
        if (!fresh) {
            distinct = false;
            clash += " " + part + "=" + it->second + ";";
        }
    }
    out.push_back(make("P9.2-distinct", distinct,
                       distinct ? "canonical E_Z forms pairwise distinct over " +
                                      num(static_cast<long long>(forms.size())) +
                                      " median parts"
                                : clash,
                       "Prop 9.2, Table 2"));
    return out;
}

Summary run_all(const std::vector<TypeSpec>& expanded) {
    Summary s;
    std::vector<TypeSpec> sorted = expanded;
    std::sort(sorted.begin(), sorted.end(),
              [](const TypeSpec& a, const TypeSpec& b) { return a.id < b.id; });
    std::vector<TypeSpec> trivial;
    for (auto& t : sorted) {
        s.reports.push_back(verify_type(t));
        if (s.reports.back().pass())
            ++s.passed;
        else
            ++s.failed;
        if (t.family == "tet-trivial") trivial.push_back(t);
    }
    if (!trivial.empty()) {
        auto d = verify_distinctness(trivial);
        s.global.insert(s.global.end(), d.begin(), d.end());
    }
    return s;
}

std::string report_json(const Report& r) {
    nlohmann::ordered_json j;
    j["type"] = r.type_id;
    j["family"] = r.family;
    j["pass"] = r.pass();
    j["computedEM"] = r.computed_em;
    j["expectedEM"] = r.expected_em;
    j["checks"] = nlohmann::ordered_json::array();
    for (auto& c : r.checks) {
        nlohmann::ordered_json jc;
        jc["id"] = c.id;
        jc["pass"] = c.pass;
        jc["detail"] = c.detail;
        jc["cite"] = c.cite;
        j["checks"].push_back(jc);
    }
    return j.dump(2);
}

std::string summary_text(const Summary& s) {
    std::map<std::string, std::pair<int, int>> per_family;
    for (auto& r : s.reports) {
        auto& [p, f] = per_family[r.family];
        (r.pass() ? p : f)++;
    }
    std::ostringstream os;
    for (auto& [fam, pf] : per_family)
        os << fam << ": " << pf.first << " passed, " << pf.second << " failed\n";
    for (auto& r : s.reports) {
        if (r.pass()) continue;
        os << "FAIL " << r.type_id << ":";
        for (auto& c : r.checks)
            if (!c.pass) os << " " << c.id;
        os << "\n";
    }
    for (auto& c : s.global)
        os << (c.pass ? "pass " : "FAIL ") << c.id << ": " << c.detail << "\n";
    os << "total: " << s.passed << " passed, " << s.failed << " failed\n";
    return os.str();
}

}  // namespace dp3
