#ifndef HYPERDET_JSON_IO_HPP
#define HYPERDET_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "hyperdet/detrep.hpp"
#include "hyperdet/intersect.hpp"
#include "hyperdet/poly.hpp"

namespace hyperdet {

using Json = nlohmann::ordered_json;

// Polynomial: { "degree": d, "terms": [ { "exp": [i,j,k], "re": x, "im": y }, ... ] }
// Zero terms are omitted; "im" is omitted when exactly zero.
Json poly_to_json(const HomogeneousPoly& p);
HomogeneousPoly poly_from_json(const Json& j);

// Point set: { "points": [ { "coords": [[re,im],[re,im],[re,im]] }, ... ],
//              "S_indices": [...] }
Json pointset_to_json(const IntersectionSet& set);
IntersectionSet pointset_from_json(const Json& j, const Tolerances& tol = {});

// Basis file: { "entries": [ <polynomial>, ... ] }
Json basis_to_json(const std::vector<HomogeneousPoly>& entries);
std::vector<HomogeneousPoly> basis_from_json(const Json& j);

// Representation: { "d", "c", "M1", "M2", "M3", "diagnostics" } with matrices
// as nested [[re,im]] arrays.
Json representation_to_json(const Representation& rep);
struct LoadedRepresentation {
  HermitianPencil pencil;
  double c = 0.0;
  bool has_direction = false;
  Direction direction_used;
};
LoadedRepresentation representation_from_json(const Json& j);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace hyperdet

#endif
