#pragma once

#include <json.hpp>

#include "xstates/bloch.hpp"
#include "xstates/group.hpp"
#include "xstates/invariants.hpp"
#include "xstates/xgeometry.hpp"

namespace xstates {

// Complex numbers are [re, im] pairs throughout.
nlohmann::json complex_to_json(Scalar z);
/// Throws InvalidArgument unless j is a two-element numeric array.
Scalar complex_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const MatX& m);

nlohmann::json to_json(const BlochState& b);
nlohmann::json to_json(const DensityMatrix& d);
/// Same layout as a BlochState; only admissible words can appear.
nlohmann::json to_json(const XFiberPoint& p);
nlohmann::json to_json(const SectionPoint2& s);
nlohmann::json to_json(const LocalRotation& g);
nlohmann::json to_json(const WeylElement& w);
nlohmann::json to_json(const Invariants2& p);
nlohmann::json to_json(const QuotientCoords& q);

/// {"n", "components"} with uppercase words; throws InvalidArgument on any malformed field.
BlochState bloch_from_json(const nlohmann::json& j);
/// {"n", "matrix"}; the trace check of to_bloch is not applied here.
DensityMatrix density_from_json(const nlohmann::json& j);
/// Accepts either state format.
BlochState state_from_json(const nlohmann::json& j);

}  // namespace xstates
