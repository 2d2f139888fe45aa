#pragma once

// Command-line front end. run() takes the arguments after the program name
// and writes one report to `out`. Exit codes: 0 success or identity holds,
// 1 verified false or witness found, 2 usage or input error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "supergrass/supergrass.hpp"

namespace supergrass::cli {

using json = json_io::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitUsage = 2;

struct CommonOptions {
  std::optional<int> n;
  std::optional<int> max_len;
  std::string mode = "exhaustive";
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  int trials = 100;
};

namespace detail {

// Inline JSON when the argument starts with '{', otherwise a file path.
inline json load_json(const std::string& source) {
  std::string text;
  if (!source.empty() && source.front() == '{') {
    text = source;
  } else {
    std::ifstream in(source);
    if (!in) throw ParseError(source, "cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("$", std::string("malformed JSON: ") + e.what());
  }
}

inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv("SUPERGRASS_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument(std::string("SUPERGRASS_SEED is not an unsigned integer: ") + env);
  }
}

inline IdentityOptions identity_options(const CommonOptions& o, int n) {
  IdentityOptions opt;
  opt.max_len = o.max_len ? *o.max_len : std::max(0, n - 2);
  if (o.mode == "exhaustive")
    opt.mode = Mode::ExhaustiveMultilinear;
  else if (o.mode == "random")
    opt.mode = Mode::Randomized;
  else
    throw InvalidArgument("--mode must be exhaustive or random");
  opt.trials = o.trials;
  opt.seed = resolve_seed(o.seed);
  return opt;
}

inline bool is_element_json(const json& j) {
  return j.is_object() && j.contains("terms") && j.contains("N") && j.size() == 2;
}

inline void render_text(const json& j, std::ostream& out, const std::string& indent) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (is_element_json(value)) {
        out << indent << key << ": " << to_string(json_io::element_from_json(value)) << "\n";
      } else if (value.is_structured()) {
        out << indent << key << ":\n";
        render_text(value, out, indent + "  ");
      } else {
        out << indent << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& value : j) {
      if (is_element_json(value)) {
        out << indent << "- " << to_string(json_io::element_from_json(value)) << "\n";
      } else if (value.is_structured()) {
        out << indent << "-\n";
        render_text(value, out, indent + "  ");
      } else {
        out << indent << "- " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
      }
    }
  } else {
    out << indent << j.dump() << "\n";
  }
}

inline void emit(const json& report, const CommonOptions& o, std::ostream& out) {
  if (o.format == "text")
    render_text(report, out, "");
  else
    out << report.dump(2) << "\n";
}

inline json elements_to_json(const std::vector<Element>& xs) {
  json out = json::array();
  for (const Element& x : xs) out.push_back(json_io::to_json(x));
  return out;
}

inline json grading_summary(const Grading& g) {
  json j = {{"phi", json_io::to_json(g.phi())},
            {"involution", is_involution(g.phi())},
            {"classification", json_io::to_json(g.classification())}};
  if (auto tag = g.model_tag()) j["model"] = to_string(*tag);
  return j;
}

inline json certificate_json(const Grading& g, bool& ok) {
  auto cert = standard_equivalence(g);
  ok = ok && cert && cert->verified;
  return cert ? json_io::to_json(*cert) : json(nullptr);
}

inline int require_n(const CommonOptions& o, int fallback, int minimum) {
  const int n = o.n ? *o.n : std::max(fallback, minimum);
  check_truncation(n);
  return n;
}

// Demos -------------------------------------------------------------------

inline int demo(const std::string& name, const CommonOptions& o, int k, int t, std::ostream& out) {
  json report = {{"demo", name}};
  bool ok = true;

  if (name == "example-3-1" || name == "example-3-1-psi") {
    const bool psi = name == "example-3-1-psi";
    const int n = require_n(o, 8, psi ? 9 : 4);
    const Grading g = psi ? example_3_1_psi(n) : example_3_1(n);
    report["N"] = n;
    report.update(grading_summary(g));
    report["certificate"] = certificate_json(g, ok);
    const Verdict v = is_identity(product_identity(2), g, identity_options(o, n));
    report["verdicts"] = json::array({json_io::to_json(v)});
    ok = ok && v.holds;
  } else if (name == "prop-minus") {
    const int n = require_n(o, 8, 2);
    const Grading g = prop_minus(n);
    report["N"] = n;
    report.update(grading_summary(g));
    report["canonical"] = g.classification().canonical;
    report["certificate"] = certificate_json(g, ok);
  } else if (name == "swap") {
    const int n = require_n(o, 4, 2);
    const Grading g = from_involution(swap_example(n));
    const HomogeneousGenerators hg = find_homogeneous_generators(g);
    report["N"] = n;
    report.update(grading_summary(g));
    report["homogeneous_generators"] = {{"plus", elements_to_json(hg.plus)}, {"minus", elements_to_json(hg.minus)}};
  } else if (name == "method2") {
    const int n = require_n(o, 8, k + t + 1);
    const Grading g = method2(k, t, n);
    report["N"] = n;
    report["k"] = k;
    report["t"] = t;
    report.update(grading_summary(g));
    report["certificate"] = certificate_json(g, ok);
  } else if (name == "tau") {
    const int n = require_n(o, 7, 6);
    std::vector<TriangularSpec> specs = {
        {1, Element::generator(n, 4)},
        {2, Element::generator(n, 5)},
        {3, Element::monomial(n, Monomial::of({4, 5, 6}))},
    };
    const auto group = tau_group(specs, n);
    report["N"] = n;
    json elements = json::array();
    for (const TauElement& e : group) {
      const Grading g = e.grading();
      json entry = {{"mask", e.mask}, {"factors", e.factors.size()}, {"involution", is_involution(e.map)}};
      ok = ok && is_involution(e.map);
      entry["certificate_model"] = nullptr;
      if (auto cert = standard_equivalence(g)) {
        entry["certificate_model"] = to_string(cert->model);
        entry["verified"] = cert->verified;
        ok = ok && cert->verified;
      } else {
        ok = false;
      }
      elements.push_back(std::move(entry));
    }
    bool distinct = true;
    bool commuting = true;
    for (std::size_t a = 0; a < group.size(); ++a)
      for (std::size_t b = a + 1; b < group.size(); ++b) {
        distinct = distinct && !equal(group[a].map, group[b].map);
        commuting = commuting && equal(compose(group[a].map, group[b].map), compose(group[b].map, group[a].map));
      }
    report["elements"] = std::move(elements);
    report["pairwise_distinct"] = distinct;
    report["pairwise_commuting"] = commuting;
    ok = ok && distinct && commuting;
  } else {
    throw InvalidArgument("unknown demo '" + name +
                          "'; expected example-3-1, example-3-1-psi, prop-minus, swap, method2 or tau");
  }
  emit(report, o, out);
  return ok ? kExitOk : kExitFalse;
}

inline void add_common(CLI::App* cmd, CommonOptions& o, bool identity_flags) {
  cmd->add_option("--N,--n", o.n, "truncation N");
  cmd->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  if (!identity_flags) return;
  cmd->add_option("--max-len", o.max_len, "longest monomial in substitutions (default N-2)");
  cmd->add_option("--mode", o.mode, "exhaustive or random")->check(CLI::IsMember({"exhaustive", "random"}));
  cmd->add_option("--seed", o.seed, "seed for random mode (fallback: SUPERGRASS_SEED)");
  cmd->add_option("--trials", o.trials, "trials for random mode");
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Z2-gradings of truncated Grassmann algebras", "supergrass"};
  app.require_subcommand(1);
  CommonOptions o;

  std::string spec;
  auto* construct = app.add_subcommand("construct", "build gradings from a constructor spec");
  construct->add_option("--spec", spec, "JSON constructor spec (file or inline)")->required();
  detail::add_common(construct, o, false);

  std::string map_src;
  auto* verify = app.add_subcommand("verify", "check Grassmann relations and involutivity of a map");
  verify->add_option("--map", map_src, "endomorphism JSON or constructor spec")->required();
  detail::add_common(verify, o, false);

  std::string grading_src;
  auto* classify = app.add_subcommand("classify", "classify a grading in the standard basis");
  classify->add_option("--grading", grading_src, "endomorphism JSON or constructor spec")->required();
  detail::add_common(classify, o, false);

  std::string element_src;
  auto* grade = app.add_subcommand("grade", "degree and homogeneous parts of an element");
  grade->add_option("--grading", grading_src, "endomorphism JSON or constructor spec")->required();
  grade->add_option("--element", element_src, "element JSON (file or inline)")->required();
  detail::add_common(grade, o, false);

  std::string poly;
  auto* check_identity = app.add_subcommand("check-identity", "test a graded polynomial identity");
  check_identity->add_option("--poly", poly, "polynomial, e.g. \"z1 z2\" or \"[y1,y2]\"")->required();
  check_identity->add_option("--grading", grading_src, "endomorphism JSON or constructor spec")->required();
  detail::add_common(check_identity, o, true);

  std::string target_src;
  std::string f_src;
  std::string g_src;
  auto* check_iso = app.add_subcommand("check-iso", "equivalence certificate or explicit isomorphism check");
  check_iso->add_option("--grading", grading_src, "grading with construction metadata (source when --target is set)")
      ->required();
  check_iso->add_option("--target", target_src, "target grading");
  check_iso->add_option("--f", f_src, "images of f: source -> target, {\"<i>\": Element}");
  check_iso->add_option("--g", g_src, "images of g: target -> source, {\"<i>\": Element}");
  detail::add_common(check_iso, o, false);

  std::string demo_name;
  int k = 2;
  int t = 1;
  auto* demo = app.add_subcommand("demo", "named examples");
  demo->add_option("name", demo_name, "example-3-1 | example-3-1-psi | prop-minus | swap | method2 | tau")->required();
  demo->add_option("--k", k, "method2 k");
  demo->add_option("--t", t, "method2 t");
  detail::add_common(demo, o, true);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*construct) {
      json report = {{"command", "construct"}};
      json list = json::array();
      for (const Grading& g : json_io::gradings_from_spec(detail::load_json(spec), o.n)) list.push_back(detail::grading_summary(g));
      report["gradings"] = std::move(list);
      detail::emit(report, o, out);
      return kExitOk;
    }
    if (*verify) {
      const json j = detail::load_json(map_src);
      const Endomorphism phi = j.contains("kind") ? json_io::grading_from_json(j, o.n).phi()
                                                  : json_io::endomorphism_from_json(j, "$", false);
      json report = {{"command", "verify"}, {"N", phi.n()}};
      bool ok = true;
      std::optional<Endomorphism> verified;
      try {
        verified = verify_relations(phi);
        report["relations"] = true;
      } catch (const RelationViolation& e) {
        report["relations"] = false;
        report["relation_failure"] = e.what();
        ok = false;
      }
      if (verified) {
        const auto bad = involution_failure(*verified);
        report["involution"] = !bad;
        if (bad) report["involution_failure_index"] = *bad;
        ok = ok && !bad;
      }
      detail::emit(report, o, out);
      return ok ? kExitOk : kExitFalse;
    }
    if (*classify) {
      const Grading g = json_io::grading_from_json(detail::load_json(grading_src), o.n);
      json report = {{"command", "classify"}, {"N", g.n()}};
      report.update(detail::grading_summary(g));
      const HomogeneousGenerators hg = find_homogeneous_generators(g);
      report["homogeneous_generators"] = {{"plus", detail::elements_to_json(hg.plus)},
                                          {"minus", detail::elements_to_json(hg.minus)}};
      detail::emit(report, o, out);
      return kExitOk;
    }
    if (*grade) {
      const Grading g = json_io::grading_from_json(detail::load_json(grading_src), o.n);
      const Element a = json_io::element_from_json(detail::load_json(element_src), "$", g.n());
      json report = {{"command", "grade"},
                     {"element", json_io::to_json(a)},
                     {"degree", to_string(degree_of(g, a))},
                     {"even_part", json_io::to_json(project(g, a, 0))},
                     {"odd_part", json_io::to_json(project(g, a, 1))}};
      detail::emit(report, o, out);
      return kExitOk;
    }
    if (*check_identity) {
      const Grading g = json_io::grading_from_json(detail::load_json(grading_src), o.n);
      const SuperPolynomial p = parse_polynomial(poly);
      const Verdict v = is_identity(p, g, detail::identity_options(o, g.n()));
      json report = json_io::to_json(v);
      report["command"] = "check-identity";
      detail::emit(report, o, out);
      return v.holds ? kExitOk : kExitFalse;
    }
    if (*check_iso) {
      const Grading source = json_io::grading_from_json(detail::load_json(grading_src), o.n);
      json report = {{"command", "check-iso"}, {"N", source.n()}};
      bool ok = true;
      if (target_src.empty()) {
        report["certificate"] = detail::certificate_json(source, ok);
      } else {
        if (f_src.empty() || g_src.empty()) throw InvalidArgument("--target needs both --f and --g");
        const Grading target = json_io::grading_from_json(detail::load_json(target_src), o.n);
        auto read_images = [&](const std::string& src, const char* label) {
          const json j = detail::load_json(src);
          if (!j.is_object()) throw ParseError(std::string("$") + label, "expected an object");
          std::map<int, Element> images;
          for (const auto& [key, value] : j.items()) {
            const std::string path = std::string("$.") + key;
            images.emplace(json_io::detail::as_index_key(key, path),
                           json_io::element_from_json(value, path, source.n()));
          }
          return images;
        };
        const GradedMap f = graded_map(source, target, read_images(f_src, "f"));
        const GradedMap g = graded_map(target, source, read_images(g_src, "g"));
        ok = is_graded_iso(f, g);
        report["preserves_degree_f"] = preserves_degree(f);
        report["preserves_degree_g"] = preserves_degree(g);
        report["is_graded_iso"] = ok;
      }
      detail::emit(report, o, out);
      return ok ? kExitOk : kExitFalse;
    }
    if (*demo) return detail::demo(demo_name, o, k, t, out);
  } catch (const RelationViolation& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "usage error: no command\n";
  return kExitUsage;
}

}  // namespace supergrass::cli
