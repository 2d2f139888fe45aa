#pragma once

// JSON schemas for elements, endomorphisms, reports, certificates, verdicts
// and constructor specs. Parse failures raise ParseError naming the path of
// the offending node, e.g. "$.explicit.1.terms[0].coef".

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "supergrass/constructors.hpp"
#include "supergrass/errors.hpp"
#include "supergrass/exterior.hpp"
#include "supergrass/grading.hpp"
#include "supergrass/identities.hpp"
#include "supergrass/isomorphism.hpp"
#include "supergrass/linmap.hpp"
#include "supergrass/model.hpp"
#include "supergrass/scalar.hpp"
#include "supergrass/superpoly.hpp"

namespace supergrass::json_io {

using json = nlohmann::ordered_json;

namespace detail {

inline const json& field(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path + "." + key, "missing");
  return *it;
}

inline const json* optional_field(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

inline int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < -(1 << 30) || v > (1 << 30)) throw ParseError(path, "integer out of range");
  return static_cast<int>(v);
}

inline std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected a string");
  return j.get<std::string>();
}

inline std::vector<int> as_int_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline int as_index_key(const std::string& key, const std::string& path) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(key, &used);
  } catch (const std::exception&) {
    throw ParseError(path, "key is not a generator index");
  }
  if (used != key.size()) throw ParseError(path, "key is not a generator index");
  return value;
}

// Rethrows library errors raised while building a value as parse errors at
// the given path.
template <class F>
auto at_path(const std::string& path, F&& build) -> decltype(build()) {
  try {
    return build();
  } catch (const ParseError& e) {
    if (!e.path().empty()) throw;
    throw ParseError(path, e.what());
  } catch (const Error& e) {
    throw ParseError(path, e.what());
  }
}

}  // namespace detail

// Element ---------------------------------------------------------------

inline json to_json(const Element& a) {
  json terms = json::array();
  for (const Term& t : a.terms()) terms.push_back({{"indices", t.monomial.indices()}, {"coef", to_string(t.coef)}});
  return {{"N", a.n()}, {"terms", std::move(terms)}};
}

// "N" may be omitted when the caller supplies the truncation.
inline Element element_from_json(const json& j, const std::string& path = "$", std::optional<int> n = std::nullopt) {
  int trunc = 0;
  if (const json* nj = detail::optional_field(j, path, "N")) {
    trunc = detail::as_int(*nj, path + ".N");
    if (n && *n != trunc) throw ParseError(path + ".N", "expected N=" + std::to_string(*n));
  } else if (n) {
    trunc = *n;
  } else {
    throw ParseError(path + ".N", "missing");
  }
  detail::at_path(path + ".N", [&] {
    check_truncation(trunc);
    return 0;
  });
  const json& terms = detail::field(j, path, "terms");
  if (!terms.is_array()) throw ParseError(path + ".terms", "expected an array");
  std::vector<Term> out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string tp = path + ".terms[" + std::to_string(i) + "]";
    const std::vector<int> indices = detail::as_int_list(detail::field(terms[i], tp, "indices"), tp + ".indices");
    const Monomial m = detail::at_path(tp + ".indices", [&] {
      for (int idx : indices) check_generator(idx, trunc);
      return Monomial::of(std::span<const int>(indices));
    });
    const json& coef = detail::field(terms[i], tp, "coef");
    Scalar c;
    if (coef.is_number_integer())
      c = Scalar(coef.get<std::int64_t>());
    else
      c = detail::at_path(tp + ".coef", [&] { return parse_scalar(detail::as_string(coef, tp + ".coef")); });
    out.push_back(Term{m, std::move(c)});
  }
  return Element::from_terms(trunc, std::move(out));
}

inline json images_to_json(std::span<const Element> images) {
  json out = json::object();
  for (std::size_t i = 0; i < images.size(); ++i) out[std::to_string(i + 1)] = to_json(images[i]);
  return out;
}

// Endomorphism ----------------------------------------------------------

inline json to_json(const Endomorphism& phi) {
  json exp = json::object();
  for (const auto& [i, img] : phi.explicit_images()) exp[std::to_string(i)] = to_json(img);
  json tail = {{"kind", to_string(phi.tail().kind)}};
  if (phi.tail().kind == TailKind::PrefixNegation) tail["prefix"] = phi.tail().prefix.indices();
  return {{"N", phi.n()}, {"explicit", std::move(exp)}, {"tail", std::move(tail)}};
}

inline TailKind tail_kind_from_string(const std::string& s, const std::string& path) {
  for (TailKind k : {TailKind::Identity, TailKind::Negation, TailKind::PrefixNegation, TailKind::ParitySign,
                     TailKind::PairSwap})
    if (to_string(k) == s) return k;
  throw ParseError(path, "unknown tail kind '" + s + "'");
}

// Relation failures surface as ParseError at the root path unless
// verification is skipped.
inline Endomorphism endomorphism_from_json(const json& j, const std::string& path = "$", bool verify = true) {
  const int n = detail::as_int(detail::field(j, path, "N"), path + ".N");
  detail::at_path(path + ".N", [&] {
    check_truncation(n);
    return 0;
  });
  std::map<int, Element> images;
  if (const json* exp = detail::optional_field(j, path, "explicit")) {
    if (!exp->is_object()) throw ParseError(path + ".explicit", "expected an object");
    for (const auto& [key, value] : exp->items()) {
      const std::string ip = path + ".explicit." + key;
      images.emplace(detail::as_index_key(key, ip), element_from_json(value, ip, n));
    }
  }
  TailRule tail = TailRule::identity();
  if (const json* tj = detail::optional_field(j, path, "tail")) {
    const std::string tp = path + ".tail";
    tail.kind = tail_kind_from_string(detail::as_string(detail::field(*tj, tp, "kind"), tp + ".kind"), tp + ".kind");
    if (tail.kind == TailKind::PrefixNegation) {
      const auto idx = detail::as_int_list(detail::field(*tj, tp, "prefix"), tp + ".prefix");
      tail.prefix = detail::at_path(tp + ".prefix", [&] {
        for (int i : idx) check_generator(i, n);
        return Monomial::of(std::span<const int>(idx));
      });
    }
  }
  Endomorphism phi = detail::at_path(path, [&] { return make_endomorphism(std::move(images), tail, n); });
  return verify ? detail::at_path(path, [&] { return verify_relations(phi); }) : phi;
}

// Reports ---------------------------------------------------------------

inline json to_json(const IndexSetDescriptor& d) {
  return {{"explicit", d.explicit_part}, {"tail", d.tail_membership}, {"infinite", d.infinite()}};
}

inline json to_json(const ClassificationReport& r) {
  return {{"type", to_string(r.type)},
          {"s_case", r.s_case ? json(to_string(*r.s_case)) : json(nullptr)},
          {"I_plus", to_json(r.i_plus)},
          {"I_minus", to_json(r.i_minus)},
          {"J", to_json(r.j)},
          {"canonical", r.canonical}};
}

inline json to_json(const Certificate& c) {
  return {{"model", to_string(c.model)},
          {"f", images_to_json(c.f.images())},
          {"g", images_to_json(c.g.images())},
          {"verified", c.verified}};
}

inline json to_json(const Assignment& a) {
  json out = json::object();
  for (const auto& [v, value] : a) out[to_string(v)] = to_json(value);
  return out;
}

inline json to_json(const Verdict& v) {
  json witness = nullptr;
  if (v.witness)
    witness = {{"polynomial", to_string(v.witness->polynomial)},
               {"assignment", to_json(v.witness->assignment)},
               {"value", to_json(v.witness->value)},
               {"value_text", to_string(v.witness->value)}};
  return {{"polynomial", to_string(v.polynomial)},
          {"holds", v.holds},
          {"authoritative", v.authoritative},
          {"mode", to_string(v.mode)},
          {"params",
           {{"N", v.n}, {"max_len", v.max_len}, {"trials", v.trials}, {"seed", v.seed}, {"slack_ok", v.slack_ok}}},
          {"evaluations", v.evaluations},
          {"witness", std::move(witness)}};
}

// Constructor specs -----------------------------------------------------
//
//   {"kind": "homogeneous", "model": "E_2" | "E_2*" | "E_inf" | "E_can"}
//   {"kind": "method1", "i_plus": [..], "i_minus": [..],
//    "d": {"<j>": {"terms": [..]}}, "tail": "identity" | "negation"}
//   {"kind": "method2", "k": 2, "t": 1}
//   {"kind": "triangular", "n": 1, "p": {"terms": [..]}}
//   {"kind": "tau", "generators": [{"n": 1, "p": ..}, ..], "mask": 5}
//   {"kind": "swap"}
//   {"kind": "example", "name": "example-3-1" | "example-3-1-psi" | "prop-minus"}
//
// Every spec may carry "N"; otherwise the caller's truncation is used.

inline HomogeneousModel model_from_string(const std::string& s, const std::string& path) {
  if (s == "E_inf") return HomogeneousModel::e_inf();
  if (s == "E_can") return HomogeneousModel::e_can();
  if (s.size() > 2 && s.rfind("E_", 0) == 0) {
    const bool star = s.back() == '*';
    const std::string digits = s.substr(2, s.size() - 2 - (star ? 1 : 0));
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos && digits.size() <= 2) {
      const int k = std::stoi(digits);
      return star ? HomogeneousModel::e_kstar(k) : HomogeneousModel::e_k(k);
    }
  }
  throw ParseError(path, "unknown model '" + s + "'");
}

inline int spec_truncation(const json& j, std::optional<int> fallback, const std::string& path = "$") {
  if (const json* nj = detail::optional_field(j, path, "N")) return detail::as_int(*nj, path + ".N");
  if (!fallback) throw ParseError(path + ".N", "missing");
  return *fallback;
}

inline TriangularSpec triangular_spec_from_json(const json& j, int n, const std::string& path) {
  TriangularSpec s;
  s.n = detail::as_int(detail::field(j, path, "n"), path + ".n");
  s.p = element_from_json(detail::field(j, path, "p"), path + ".p", n);
  return s;
}

// All gradings a spec describes: one, or 2^M for a tau spec without a mask.
inline std::vector<Grading> gradings_from_spec(const json& j, std::optional<int> fallback_n) {
  const std::string kind = detail::as_string(detail::field(j, "$", "kind"), "$.kind");
  const int n = spec_truncation(j, fallback_n);
  detail::at_path("$.N", [&] {
    check_truncation(n);
    return 0;
  });

  if (kind == "homogeneous") {
    const auto model = model_from_string(detail::as_string(detail::field(j, "$", "model"), "$.model"), "$.model");
    return {detail::at_path("$", [&] { return homogeneous(model, n); })};
  }
  if (kind == "method1") {
    Method1Spec spec;
    if (const json* p = detail::optional_field(j, "$", "i_plus")) spec.i_plus = detail::as_int_list(*p, "$.i_plus");
    if (const json* m = detail::optional_field(j, "$", "i_minus"))
      spec.i_minus = detail::as_int_list(*m, "$.i_minus");
    const json& d = detail::field(j, "$", "d");
    if (!d.is_object()) throw ParseError("$.d", "expected an object");
    for (const auto& [key, value] : d.items())
      spec.d.emplace(detail::as_index_key(key, "$.d." + key), element_from_json(value, "$.d." + key, n));
    TailKind tail = TailKind::Identity;
    if (const json* t = detail::optional_field(j, "$", "tail")) {
      tail = tail_kind_from_string(detail::as_string(*t, "$.tail"), "$.tail");
      if (tail != TailKind::Identity && tail != TailKind::Negation)
        throw ParseError("$.tail", "method1 tail must be identity or negation");
    }
    return {detail::at_path("$", [&] { return method1(spec, n, tail); })};
  }
  if (kind == "method2") {
    const int k = detail::as_int(detail::field(j, "$", "k"), "$.k");
    const int t = detail::as_int(detail::field(j, "$", "t"), "$.t");
    return {detail::at_path("$", [&] { return method2(k, t, n); })};
  }
  if (kind == "triangular") {
    const TriangularSpec s = triangular_spec_from_json(j, n, "$");
    return {detail::at_path("$", [&] { return triangular_grading(s, n); })};
  }
  if (kind == "tau") {
    const json& gens = detail::field(j, "$", "generators");
    if (!gens.is_array()) throw ParseError("$.generators", "expected an array");
    std::vector<TriangularSpec> specs;
    for (std::size_t i = 0; i < gens.size(); ++i)
      specs.push_back(triangular_spec_from_json(gens[i], n, "$.generators[" + std::to_string(i) + "]"));
    const auto group = detail::at_path("$", [&] { return tau_group(specs, n); });
    std::vector<Grading> out;
    if (const json* mj = detail::optional_field(j, "$", "mask")) {
      const int mask = detail::as_int(*mj, "$.mask");
      if (mask < 0 || static_cast<std::size_t>(mask) >= group.size()) throw ParseError("$.mask", "mask out of range");
      out.push_back(group[static_cast<std::size_t>(mask)].grading());
    } else {
      for (const TauElement& e : group) out.push_back(e.grading());
    }
    return out;
  }
  if (kind == "swap") return {detail::at_path("$", [&] { return from_involution(swap_example(n)); })};
  if (kind == "example") {
    const std::string name = detail::as_string(detail::field(j, "$", "name"), "$.name");
    if (name == "example-3-1") return {detail::at_path("$", [&] { return example_3_1(n); })};
    if (name == "example-3-1-psi") return {detail::at_path("$", [&] { return example_3_1_psi(n); })};
    if (name == "prop-minus") return {detail::at_path("$", [&] { return prop_minus(n); })};
    throw ParseError("$.name", "unknown example '" + name + "'");
  }
  throw ParseError("$.kind", "unknown constructor kind '" + kind + "'");
}

// A grading from either a constructor spec (has "kind") or an endomorphism.
inline Grading grading_from_json(const json& j, std::optional<int> fallback_n) {
  if (j.is_object() && j.contains("kind")) {
    auto all = gradings_from_spec(j, fallback_n);
    if (all.size() != 1) throw ParseError("$.mask", "tau spec needs a mask to select one element");
    return std::move(all.front());
  }
  const Endomorphism phi = endomorphism_from_json(j);
  return detail::at_path("$", [&] { return from_involution(phi); });
}

}  // namespace supergrass::json_io
