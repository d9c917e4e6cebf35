#include "corrlab/json_io.hpp"

#include <string>

#include "corrlab/error.hpp"

namespace corrlab {
namespace {

using nlohmann::json;

Field read_field(const json& doc) {
  if (!doc.is_object() || !doc.contains("field") || !doc["field"].is_string())
    throw InvalidInput("document needs a string \"field\"");
  try {
    return field_from_string(doc["field"].get<std::string>());
  } catch (const UsageError& e) {
    throw InvalidInput(e.what());
  }
}

std::size_t read_dim(const json& doc) {
  if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long long>() < 1)
    throw InvalidInput("document needs a positive integer \"n\"");
  return static_cast<std::size_t>(doc["n"].get<long long>());
}

template <FieldScalar T>
T read_scalar(const json& v) {
  constexpr int beta = ScalarTraits<T>::beta;
  double comps[4] = {};
  if (beta == 1 && v.is_number()) {
    comps[0] = v.get<double>();
  } else {
    if (!v.is_array() || v.size() != static_cast<std::size_t>(beta))
      throw InvalidInput("matrix entry must have " + std::to_string(beta) + " real component(s)");
    for (int s = 0; s < beta; ++s) {
      if (!v[s].is_number()) throw InvalidInput("matrix entry component is not a number");
      comps[s] = v[s].get<double>();
    }
  }
  return ScalarTraits<T>::from_components(std::span<const double>(comps, beta));
}

template <FieldScalar T>
json write_scalar(const T& x) {
  constexpr int beta = ScalarTraits<T>::beta;
  double comps[4];
  ScalarTraits<T>::to_components(x, std::span<double>(comps, beta));
  if constexpr (beta == 1) {
    return comps[0];
  } else {
    return json(std::vector<double>(comps, comps + beta));
  }
}

}  // namespace

template <FieldScalar T>
nlohmann::json matrix_to_json(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(write_scalar(m(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"field", std::string(to_string(ScalarTraits<T>::field))}, {"n", m.rows()}, {"entries", std::move(rows)}};
}

template json matrix_to_json<double>(const Matrix<double>&);
template json matrix_to_json<Complex>(const Matrix<Complex>&);
template json matrix_to_json<Quaternion>(const Matrix<Quaternion>&);

json any_matrix_to_json(const AnyMatrix& m) {
  return std::visit([](const auto& x) { return matrix_to_json(x); }, m);
}

Field field_of(const AnyMatrix& m) {
  return std::visit([](const auto& x) { return ScalarTraits<typename std::decay_t<decltype(x)>::value_type>::field; }, m);
}

AnyMatrix matrix_from_json(const json& doc) {
  const Field field = read_field(doc);
  const std::size_t n = read_dim(doc);
  if (!doc.contains("entries") || !doc["entries"].is_array() || doc["entries"].size() != n)
    throw InvalidInput("\"entries\" must be an array of n rows");
  return dispatch_field(field, [&]<class T>(std::type_identity<T>) -> AnyMatrix {
    Matrix<T> m(n, n);
    const auto& rows = doc["entries"];
    for (std::size_t i = 0; i < n; ++i) {
      if (!rows[i].is_array() || rows[i].size() != n) throw InvalidInput("each row of \"entries\" must have n entries");
      for (std::size_t j = 0; j < n; ++j) m(i, j) = read_scalar<T>(rows[i][j]);
    }
    return m;
  });
}

json angles_to_json(const AngleSet& angles) {
  return {{"field", std::string(to_string(angles.field()))}, {"n", angles.dim()}, {"rows", angles.rows()}};
}

AngleSet angles_from_json(const json& doc) {
  const Field field = read_field(doc);
  const std::size_t n = read_dim(doc);
  if (!doc.contains("rows") || !doc["rows"].is_array()) throw InvalidInput("angle document needs \"rows\"");
  std::vector<std::vector<double>> rows;
  for (const auto& r : doc["rows"]) {
    if (!r.is_array()) throw InvalidInput("each angle row must be an array");
    std::vector<double> row;
    for (const auto& v : r) {
      if (!v.is_number()) throw InvalidInput("angles must be numbers");
      row.push_back(v.get<double>());
    }
    rows.push_back(std::move(row));
  }
  try {
    return AngleSet::from_rows(field, n, rows);
  } catch (const UsageError& e) {
    throw InvalidInput(e.what());
  }
}

}  // namespace corrlab
