#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "singhh/algebra.hpp"
#include "singhh/util.hpp"

namespace singhh {

struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FieldDesc {
  bool is_q = true;
  std::uint32_t p = 0;
};

inline FieldDesc parse_field_desc(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw BadInput("field descriptor must be an object with 'kind'");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "Q") return {true, 0};
  if (kind == "Fp") {
    if (!j.contains("p")) throw BadInput("Fp field needs 'p'");
    std::uint32_t p = j.at("p").get<std::uint32_t>();
    for (std::uint32_t d = 2; d * d <= p; ++d)
      if (p % d == 0) throw BadInput("p must be prime");
    if (p < 2) throw BadInput("p must be prime");
    return {false, p};
  }
  throw BadInput("unknown field kind: " + kind);
}

template <class F>
typename F::Elem parse_scalar(const F& K, const nlohmann::json& j) {
  if (j.is_string()) return K.parse(j.get<std::string>());
  if (j.is_number_integer()) return K.from_long(j.get<long>());
  throw BadInput("scalar must be a string or integer");
}

template <class F>
nlohmann::json scalar_json(const F& K, const typename F::Elem& v) {
  return K.to_string(v);
}

template <class F>
SVec<F> parse_coords(const F& K, const nlohmann::json& j) {
  if (!j.is_array()) throw BadInput("coordinate list must be an array");
  SVec<F> out;
  for (std::uint32_t i = 0; i < j.size(); ++i) {
    auto v = parse_scalar(K, j[i]);
    if (!K.is_zero(v)) out.emplace_back(i, v);
  }
  return out;
}

template <class F>
nlohmann::json coords_json(const F& K, const SVec<F>& v, std::uint32_t dim) {
  nlohmann::json arr = nlohmann::json::array();
  std::size_t k = 0;
  for (std::uint32_t i = 0; i < dim; ++i) {
    if (k < v.size() && v[k].first == i)
      arr.push_back(K.to_string(v[k++].second));
    else
      arr.push_back(K.to_string(K.zero()));
  }
  return arr;
}

template <class F>
Algebra<F> parse_algebra(const F& K, const nlohmann::json& j) {
  if (!j.contains("dim")) throw BadInput("algebra needs 'dim'");
  std::uint32_t d = j.at("dim").get<std::uint32_t>();
  if (d == 0) throw BadInput("dim must be positive");
  std::vector<std::string> labels;
  if (j.contains("basis")) {
    for (auto& b : j.at("basis")) labels.push_back(b.get<std::string>());
    if (labels.size() != d) throw BadInput("basis length != dim");
  } else {
    for (std::uint32_t i = 0; i < d; ++i) labels.push_back("e" + std::to_string(i));
  }
  if (!j.contains("unit")) throw BadInput("algebra needs 'unit'");
  SVec<F> unit = parse_coords(K, j.at("unit"));
  std::vector<std::vector<SVec<F>>> table(d, std::vector<SVec<F>>(d));
  if (j.contains("products")) {
    for (auto& prod : j.at("products")) {
      std::uint32_t i = prod.at("i").get<std::uint32_t>();
      std::uint32_t jj = prod.at("j").get<std::uint32_t>();
      if (i >= d || jj >= d) throw BadInput("product index out of range");
      table[i][jj] = parse_coords(K, prod.at("value"));
    }
  }
  std::string name = j.value("name", "");
  return Algebra<F>(K, d, std::move(labels), std::move(unit), std::move(table),
                    name);
}

template <class F>
nlohmann::json algebra_json(const Algebra<F>& A, const nlohmann::json& field) {
  const F& K = A.field();
  nlohmann::json j;
  j["name"] = A.name();
  j["field"] = field;
  j["dim"] = A.dim();
  j["basis"] = A.labels();
  j["unit"] = coords_json(K, A.unit(), A.dim());
  nlohmann::json prods = nlohmann::json::array();
  for (std::uint32_t i = 0; i < A.dim(); ++i)
    for (std::uint32_t jj = 0; jj < A.dim(); ++jj) {
      const auto& v = A.basis_product(i, jj);
      if (v.empty()) continue;
      prods.push_back({{"i", i}, {"j", jj}, {"value", coords_json(K, v, A.dim())}});
    }
  j["products"] = prods;
  return j;
}

// Content hash of the canonical serialized form; keys cache entries and
// report headers.
template <class F>
std::string algebra_hash(const Algebra<F>& A, const nlohmann::json& field) {
  return hex64(fnv1a(algebra_json(A, field).dump()));
}

}  // namespace singhh
