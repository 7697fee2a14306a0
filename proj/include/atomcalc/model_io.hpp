#pragma once

// JSON model files.  A model carries one algebra over one field, any
// number of named right modules, and optionally a commutative local
// product base with a central embedding for the localization layer.
//
//   {
//     "field": {"p": 2},                  // p = 0 means the rationals
//     "algebra": {
//       "dim": 3,
//       "unit": [1, 0, 1],
//       "constants": [[i, j, k, v], ...]  // e_i e_j = sum_k v e_k
//     },
//     "modules": {
//       "S1": {"dim": 1, "actions": [[[1]], [[0]], [[0]]]}
//     },
//     "base_ring": {                      // optional
//       "factors": [{"dim": ..., "unit": [...], "constants": [...]}, ...],
//       "central_map": [[[...], ...], ...],  // factor i: dim_i x dim rows
//       "modules": {"V": {"factor": 0, "dim": 1, "actions": [[[1]], [[0]]]}}
//     }
//   }
//
// Quadruples omitted from "constants" are zero; duplicates are rejected.
// All entries are integers (reduced mod p over a prime field).  Errors
// name the JSON path and the offending entry.

#include <cstdint>
#include <fstream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "atomcalc/algebra.hpp"
#include "atomcalc/error.hpp"
#include "atomcalc/noeth.hpp"

namespace atomcalc {

using Json = nlohmann::ordered_json;

// Stable 64-bit content hash (FNV-1a), embedded in reports so that output
// can be traced back to the exact input bytes.
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

template <typename Scalar>
struct Model {
  FieldSpec field;
  std::shared_ptr<Algebra<Scalar>> alg;
  std::vector<std::string> module_names;  // file order
  std::vector<RightModule<Scalar>> module_values;
  std::optional<NoethAlgebra<Scalar>> noeth;
  std::vector<std::string> base_module_names;
  std::vector<size_t> base_module_factor;
  std::vector<RightModule<Scalar>> base_module_values;

  // Modules point into alg / noeth storage: movable, not copyable.
  Model() = default;
  Model(Model&&) noexcept = default;
  Model& operator=(Model&&) noexcept = default;
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;

  const RightModule<Scalar>* find_module(const std::string& name) const {
    for (size_t i = 0; i < module_names.size(); ++i)
      if (module_names[i] == name) return &module_values[i];
    return nullptr;
  }
  const RightModule<Scalar>* find_base_module(const std::string& name) const {
    for (size_t i = 0; i < base_module_names.size(); ++i)
      if (base_module_names[i] == name) return &base_module_values[i];
    return nullptr;
  }
};

struct LoadedModel {
  FieldSpec field;
  std::uint64_t hash = 0;
  std::string name;
  std::variant<Model<Fp>, Model<Rational>> value;
};

namespace model_detail {

inline bool small_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline const Json& member(const Json& j, const char* key,
                          const std::string& where) {
  if (!j.is_object()) throw ModelError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end())
    throw ModelError(where + ": missing \"" + std::string(key) + "\"");
  return *it;
}

inline long long to_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ModelError(where + ": expected an integer");
  return j.get<long long>();
}

inline Index to_index(const Json& j, Index bound, const std::string& where) {
  long long v = to_int(j, where);
  if (v < 0 || v >= static_cast<long long>(bound))
    throw ModelError(where + ": index " + std::to_string(v) +
                     " out of range for dimension " + std::to_string(bound));
  return static_cast<Index>(v);
}

template <typename Scalar>
MatrixX<Scalar> to_matrix(const Json& j, Index rows, Index cols,
                          const FieldSpec& f, const std::string& where) {
  if (!j.is_array() || static_cast<Index>(j.size()) != rows)
    throw ModelError(where + ": expected " + std::to_string(rows) + " rows");
  MatrixX<Scalar> m = zeros<Scalar>(rows, cols, f);
  for (Index r = 0; r < rows; ++r) {
    const Json& jr = j[static_cast<size_t>(r)];
    if (!jr.is_array() || static_cast<Index>(jr.size()) != cols)
      throw ModelError(where + "[" + std::to_string(r) + "]: expected " +
                       std::to_string(cols) + " entries");
    for (Index c = 0; c < cols; ++c)
      m(r, c) = scalar_from<Scalar>(
          to_int(jr[static_cast<size_t>(c)], where + "[" + std::to_string(r) +
                                                 "][" + std::to_string(c) + "]"),
          f);
  }
  return m;
}

template <typename Scalar>
Algebra<Scalar> build_algebra(const Json& j, const FieldSpec& f,
                              const std::string& where) {
  long long dim = to_int(member(j, "dim", where), where + ".dim");
  if (dim < 1 || dim > 128)
    throw ModelError(where + ".dim: must be between 1 and 128");
  Index n = static_cast<Index>(dim);

  const Json& ju = member(j, "unit", where);
  if (!ju.is_array() || static_cast<Index>(ju.size()) != n)
    throw ModelError(where + ".unit: expected " + std::to_string(n) +
                     " coordinates");
  RowVecX<Scalar> unit = zeros<Scalar>(1, n, f);
  for (Index i = 0; i < n; ++i)
    unit(i) = scalar_from<Scalar>(
        to_int(ju[static_cast<size_t>(i)],
               where + ".unit[" + std::to_string(i) + "]"),
        f);

  const Json& jc = member(j, "constants", where);
  if (!jc.is_array()) throw ModelError(where + ".constants: expected an array");
  std::vector<MatrixX<Scalar>> rm(static_cast<size_t>(n),
                                  zeros<Scalar>(n, n, f));
  std::set<std::tuple<Index, Index, Index>> seen;
  for (size_t q = 0; q < jc.size(); ++q) {
    std::string at = where + ".constants[" + std::to_string(q) + "]";
    const Json& jq = jc[q];
    if (!jq.is_array() || jq.size() != 4)
      throw ModelError(at + ": expected a quadruple [i, j, k, value]");
    Index i = to_index(jq[0], n, at);
    Index jj = to_index(jq[1], n, at);
    Index k = to_index(jq[2], n, at);
    long long v = to_int(jq[3], at);
    if (!seen.insert({i, jj, k}).second)
      throw ModelError(at + ": duplicate entry for (" + std::to_string(i) +
                       ", " + std::to_string(jj) + ", " + std::to_string(k) +
                       ")");
    rm[static_cast<size_t>(jj)](i, k) = scalar_from<Scalar>(v, f);
  }

  Algebra<Scalar> A(f, std::move(rm), std::move(unit));
  try {
    A.validate();
  } catch (const ModelError& e) {
    throw ModelError(where + ": " + e.what());
  }
  return A;
}

template <typename Scalar>
RightModule<Scalar> build_module(const Json& j, const Algebra<Scalar>* alg,
                                 const std::string& where) {
  const FieldSpec& f = alg->field();
  long long dim = to_int(member(j, "dim", where), where + ".dim");
  if (dim < 0 || dim > 512)
    throw ModelError(where + ".dim: must be between 0 and 512");
  Index m = static_cast<Index>(dim);

  const Json& ja = member(j, "actions", where);
  if (!ja.is_array() || static_cast<Index>(ja.size()) != alg->dim())
    throw ModelError(where + ".actions: expected one matrix per basis element (" +
                     std::to_string(alg->dim()) + ")");
  std::vector<MatrixX<Scalar>> act;
  act.reserve(ja.size());
  for (Index jb = 0; jb < alg->dim(); ++jb)
    act.push_back(to_matrix<Scalar>(ja[static_cast<size_t>(jb)], m, m, f,
                                    where + ".actions[" + std::to_string(jb) +
                                        "]"));

  RightModule<Scalar> M(alg, std::move(act));
  try {
    M.validate();
  } catch (const ModelError& e) {
    throw ModelError(where + ": " + e.what());
  }
  return M;
}

template <typename Scalar>
Model<Scalar> build_model(const Json& j, const FieldSpec& f,
                          std::uint64_t budget) {
  Model<Scalar> m;
  m.field = f;
  m.alg = std::make_shared<Algebra<Scalar>>(
      build_algebra<Scalar>(member(j, "algebra", "model"), f, "algebra"));

  if (j.contains("modules")) {
    const Json& jm = j.at("modules");
    if (!jm.is_object()) throw ModelError("modules: expected an object");
    for (const auto& [name, jv] : jm.items()) {
      m.module_names.push_back(name);
      m.module_values.push_back(
          build_module<Scalar>(jv, m.alg.get(), "modules." + name));
    }
  }

  if (j.contains("base_ring")) {
    const Json& jb = j.at("base_ring");
    const Json& jf = member(jb, "factors", "base_ring");
    if (!jf.is_array() || jf.empty())
      throw ModelError("base_ring.factors: expected a nonempty array");
    std::vector<Algebra<Scalar>> factors;
    for (size_t i = 0; i < jf.size(); ++i)
      factors.push_back(build_algebra<Scalar>(
          jf[i], f, "base_ring.factors[" + std::to_string(i) + "]"));
    std::vector<Index> fdims;
    for (const auto& F : factors) fdims.push_back(F.dim());

    BaseRing<Scalar> base;
    try {
      base = make_base_ring<Scalar>(std::move(factors), budget);
    } catch (const ModelError& e) {
      throw ModelError("base_ring: " + std::string(e.what()));
    }

    const Json& jc = member(jb, "central_map", "base_ring");
    if (!jc.is_array() || jc.size() != fdims.size())
      throw ModelError("base_ring.central_map: expected one matrix per factor");
    std::vector<MatrixX<Scalar>> cmap;
    for (size_t i = 0; i < jc.size(); ++i)
      cmap.push_back(to_matrix<Scalar>(
          jc[i], fdims[i], m.alg->dim(), f,
          "base_ring.central_map[" + std::to_string(i) + "]"));

    try {
      m.noeth.emplace(
          make_noeth_algebra<Scalar>(m.alg, std::move(base), std::move(cmap)));
    } catch (const ModelError& e) {
      throw ModelError("base_ring: " + std::string(e.what()));
    }

    if (jb.contains("modules")) {
      const Json& jbm = jb.at("modules");
      if (!jbm.is_object())
        throw ModelError("base_ring.modules: expected an object");
      for (const auto& [name, jv] : jbm.items()) {
        std::string at = "base_ring.modules." + name;
        size_t factor = static_cast<size_t>(
            to_index(member(jv, "factor", at),
                     static_cast<Index>(m.noeth->base.count()), at + ".factor"));
        m.base_module_names.push_back(name);
        m.base_module_factor.push_back(factor);
        m.base_module_values.push_back(build_module<Scalar>(
            jv, &m.noeth->base.factors[factor], at));
      }
    }
  }

  return m;
}

}  // namespace model_detail

inline LoadedModel load_model_text(const std::string& text,
                                   const std::string& name,
                                   std::uint64_t budget = 1000000) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(name + ": " + e.what());
  }

  const Json& jf = model_detail::member(j, "field", "model");
  long long p = model_detail::to_int(model_detail::member(jf, "p", "field"),
                                     "field.p");
  if (p < 0 || (p != 0 && !model_detail::small_prime(static_cast<std::uint64_t>(p))))
    throw ModelError("field.p: must be 0 (the rationals) or a prime");
  if (p > 1000000)
    throw ModelError("field.p: prime too large for dense enumeration");

  try {
    if (p == 0) {
      FieldSpec f{0};
      return LoadedModel{f, fnv1a64(text), name,
                         model_detail::build_model<Rational>(j, f, budget)};
    }
    FieldSpec f{static_cast<std::uint32_t>(p)};
    return LoadedModel{f, fnv1a64(text), name,
                       model_detail::build_model<Fp>(j, f, budget)};
  } catch (const ModelError& e) {
    throw ModelError(name + ": " + e.what());
  }
}

inline LoadedModel load_model(const std::string& path,
                              std::uint64_t budget = 1000000) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_model_text(buf.str(), path, budget);
}

}  // namespace atomcalc
