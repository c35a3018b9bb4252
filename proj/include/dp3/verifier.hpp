#ifndef DP3_VERIFIER_HPP
#define DP3_VERIFIER_HPP

#include <string>
#include <vector>

#include "dp3/catalog.hpp"
#include "dp3/dualgraph.hpp"

namespace dp3 {

struct Check {
    std::string id;      // stable check id, e.g. "C2-coeff", "L3.6-4"
    bool pass = false;
    std::string detail;
    std::string cite;    // condition the check verifies
};

struct Report {
    std::string type_id;
    std::string family;
    std::vector<Check> checks;
    std::string computed_em;  // empty when realization failed
    std::string expected_em;

    bool pass() const;
};

// axiom checks (C1)-(C4) plus the family nef hypotheses
std::vector<Check> verify_axioms(const Realization& r);
// degree, component-degree, multiplicity-window, two-curve and genus-drop
// identities
std::vector<Check> verify_identities(const Realization& r);
// computed E_M symbol against the catalog's expected symbol
Check verify_symbols(const Realization& r, SingSymbol* computed = nullptr);

// dual graph of one stage divisor of a realization
WeightedDualGraph stage_graph(const Realization& r, int level);

Report verify_type(const TypeSpec& concrete_type);

struct Summary {
    std::vector<Report> reports;
    std::vector<Check> global;  // cross-type checks (tet-trivial distinctness)
    int passed = 0, failed = 0;

    bool all_pass() const { return failed == 0 && global_pass(); }
    bool global_pass() const;
};

// Prop 9.2: canonical E_Z forms of tet-trivial types on P^2 must agree
// within a median part and differ across median parts.
std::vector<Check> verify_distinctness(const std::vector<TypeSpec>& concrete_tet_trivial);

Summary run_all(const std::vector<TypeSpec>& catalog_expanded);

std::string report_json(const Report& r);
std::string summary_text(const Summary& s);

}  // namespace dp3

#endif
