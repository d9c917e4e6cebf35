#pragma once

// JSON forms of matrices and angle sets.
//
//   matrix: {"field": "real|complex|quaternion", "n": N, "entries": [[...], ...]}
//           row-major full matrix; a real entry is a number, a complex entry [re, im], a
//           quaternion entry [z_re, z_im, w_re, w_im].
//   angles: {"field": ..., "n": N, "rows": [[theta...], ...]}   rows for factor rows 2..N.

#include <variant>

#include <json.hpp>

#include "corrlab/matrix.hpp"
#include "corrlab/parametrisation.hpp"

namespace corrlab {

using AnyMatrix = std::variant<Matrix<double>, Matrix<Complex>, Matrix<Quaternion>>;

template <FieldScalar T>
nlohmann::json matrix_to_json(const Matrix<T>& m);
nlohmann::json any_matrix_to_json(const AnyMatrix& m);

// Throws InvalidInput on a malformed document.
AnyMatrix matrix_from_json(const nlohmann::json& doc);

nlohmann::json angles_to_json(const AngleSet& angles);
// Throws InvalidInput on a malformed document or an angle outside (0, pi).
AngleSet angles_from_json(const nlohmann::json& doc);

Field field_of(const AnyMatrix& m);

}  // namespace corrlab
