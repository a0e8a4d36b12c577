#pragma once

#include <string>
#include <vector>

#include "core/boundary.hpp"

namespace seglab {

struct CatalogEntry {
    int id = 0;
    BoundarySpec spec;
    std::string description;
};

inline constexpr int kCatalogSize = 9;

/// One of the nine built-in boundary configurations on [-1,1]^2.
/// Throws invalid_argument for ids outside 1..9.
const CatalogEntry& get_bc(int id);

const std::vector<CatalogEntry>& catalog();

struct CatalogValidation {
    int id = 0;
    std::string label;
    double max_product = 0.0;
    double min_value = 0.0;
};

/// Samples every catalog entry on the given grid and reports the boundary
/// extrema; never throws (violations show up in the numbers).
std::vector<CatalogValidation> validate_catalog(const Grid& grid);

/// Custom spec from a JSON document. Expression vocabulary:
///   {"const":v} {"var":"x"|"y"|"theta"} {"plus":e} {"cos":e} {"sin":e}
///   {"max":[e,e]} {"affine":{"a":v,"b":v,"of":e}}
/// Document: {"label":s, "components":[[{"edge":"x=-1"|...|"all","expr":e},...] x3]}
BoundarySpec custom_spec_from_json(const std::string& json_text);

/// Boundary data of the closed-form interval example: phi = (1,0,1) at the
/// left endpoint and (0,1,1) at the right.
BoundarySpec line_example_spec();

} // namespace seglab
