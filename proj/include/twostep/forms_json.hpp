#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "twostep/forms.hpp"

namespace twostep {

/// {"n": int, "t": int, "forms": [t integer n x n matrices]}. Entries must be integers.
inline nlohmann::json formtuple_to_json(const FormTuple<RationalField>& phi) {
  nlohmann::json forms = nlohmann::json::array();
  for (const auto& f : phi.forms()) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < phi.n(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t j = 0; j < phi.n(); ++j) {
        const Rational& q = f.matrix()(i, j);
        if (q.get_den() != 1 || !q.get_num().fits_slong_p())
          throw std::invalid_argument("formtuple_to_json: entry " + q.get_str() + " is not a machine integer");
        row.push_back(q.get_num().get_si());
      }
      rows.push_back(std::move(row));
    }
    forms.push_back(std::move(rows));
  }
  return {{"n", phi.n()}, {"t", phi.t()}, {"forms", std::move(forms)}};
}

inline FormTuple<RationalField> formtuple_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("t") || !j.contains("forms"))
    throw std::invalid_argument("form tuple JSON needs keys n, t, forms");
  if (!j["n"].is_number_unsigned() || !j["t"].is_number_unsigned())
    throw std::invalid_argument("form tuple JSON: n and t must be non-negative integers");
  const auto n = j["n"].get<std::size_t>();
  const auto t = j["t"].get<std::size_t>();
  const auto& forms = j["forms"];
  if (!forms.is_array() || forms.size() != t)
    throw std::invalid_argument("form tuple JSON: expected " + std::to_string(t) + " forms");
  const RationalField q;
  std::vector<AlternatingForm<RationalField>> out;
  for (std::size_t k = 0; k < t; ++k) {
    const auto& rows = forms[k];
    if (!rows.is_array() || rows.size() != n)
      throw std::invalid_argument("form tuple JSON: form " + std::to_string(k + 1) + " is not " + std::to_string(n) + "x" +
                                  std::to_string(n));
    Matrix<RationalField> m(q, n, n);
    for (std::size_t r = 0; r < n; ++r) {
      if (!rows[r].is_array() || rows[r].size() != n)
        throw std::invalid_argument("form tuple JSON: ragged row in form " + std::to_string(k + 1));
      for (std::size_t c = 0; c < n; ++c) {
        if (!rows[r][c].is_number_integer())
          throw std::invalid_argument("form tuple JSON: non-integer entry in form " + std::to_string(k + 1));
        m(r, c) = q.from_int(rows[r][c].get<long>());
      }
    }
    if (!is_alternating(m))
      throw std::invalid_argument("form tuple JSON: form " + std::to_string(k + 1) + " is not alternating");
    out.emplace_back(std::move(m));
  }
  return FormTuple<RationalField>(q, n, std::move(out));
}

inline FormTuple<RationalField> load_formtuple(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return formtuple_from_json(j);
}

}  // namespace twostep
