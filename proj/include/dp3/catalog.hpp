#ifndef DP3_CATALOG_HPP
#define DP3_CATALOG_HPP

#include <optional>
#include <string>
#include <vector>

#include "dp3/blowup.hpp"
#include "dp3/expr.hpp"
#include "dp3/symbol.hpp"

namespace dp3 {

struct CatalogError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ComponentSpec {
    std::string id;
    DivClass cls;
    CurveKind kind = CurveKind::Smooth;
    long long coeff = 1;
};

// One cluster template from the catalog; lengths, branch prefixes and copy
// counts may be expressions in the type parameters.
struct ClusterTemplate {
    std::string id;
    int stage = 2;
    std::vector<std::string> locus;
    std::vector<std::string> avoid;
    std::string len = "1";
    std::map<std::string, std::string> branches;  // curve id -> prefix length
    std::string count = "1";
};

struct TangencySpec {
    std::string u, v;
    int mult = 2;
    std::string at;
};

struct ParamSpec {
    std::vector<std::string> names;
    std::vector<std::vector<long long>> domain;
};

// One catalog entry, parameterized or concrete.
struct TypeSpec {
    std::string id;
    std::string family;  // median | tet-big | tet-nonbig | tet-trivial
    BaseSurface base;
    std::vector<ComponentSpec> components;
    std::vector<ClusterTemplate> clustersX, clustersZ;
    std::vector<TangencySpec> residual;
    std::optional<ParamSpec> params;
    std::string expected_em;
    Env bound;  // parameter values for concrete specs

    bool concrete() const { return !params.has_value(); }
    bool is_median() const { return family == "median"; }
    Env env() const;
    // concrete id with the parameter suffix removed (groups tet-trivial
    // types sharing Delta_X data)
    std::string median_part() const;
};

struct Realization {
    TypeSpec spec;
    Tower tower;
    Tower::Weighted E_bottom;  // E_X for tetrads, E_Z for medians
    Tower::Weighted E_Z;
    Tower::Weighted E_M;
    DivClass L_bottom, L_Z, L_M;
    long long degX = 0, degZ = 0;
};

std::vector<TypeSpec> load_catalog_file(const std::string& path);
// loads median.json, tet_big.json, tet_nonbig.json, tet_trivial.json
std::vector<TypeSpec> load_catalog_dir(const std::string& dir);
std::string default_catalog_dir();

std::vector<TypeSpec> expand_parameters(const TypeSpec& t);
std::vector<TypeSpec> expand_all(const std::vector<TypeSpec>& catalog);

Realization realize(const TypeSpec& concrete_type);

SingSymbol expected_symbol(const TypeSpec& concrete_type);

// "[2]_{1K}" and "2_1K" name the same type
std::string normalize_type_id(const std::string& id);

}  // namespace dp3

#endif
