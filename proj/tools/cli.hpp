#pragma once

// The `ultranorm` command line. Kept in a header so the tests can drive
// run() in-process with string streams.
//
// Exit codes: 0 success, 1 domain error (structured error JSON on stdout),
// 2 usage error (unknown flag, malformed value; message on stderr).

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ultranorm/ultranorm.hpp"

namespace ultranorm::cli {

namespace detail {

inline std::optional<std::size_t> env_cap() {
  const char* raw = std::getenv("ULTRANORM_MAX_ENUM");
  if (!raw || !*raw) return std::nullopt;
  try {
    return static_cast<std::size_t>(std::stoull(raw));
  } catch (const std::exception&) {
    throw ParseError(raw, "ULTRANORM_MAX_ENUM is not a count");
  }
}

inline std::size_t resolve_cap(std::optional<std::size_t> flag, std::size_t fallback) {
  if (flag) return *flag;
  if (auto env = env_cap()) return *env;
  return fallback;
}

inline std::string approx(const Magnitude& m) {
  std::ostringstream os;
  os << std::setprecision(10) << m.to_double();
  return os.str();
}

inline Json vectors_to_json(const std::vector<Vector>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(coords_to_json(v));
  return out;
}

inline std::string render_text(const Json& j) {
  std::ostringstream os;
  for (const auto& [key, value] : j.items()) {
    os << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
  return os.str();
}

inline Json error_json(const Error& e) {
  Json err = {{"kind", e.kind()}, {"message", e.what()}};
  if (const auto* d = dynamic_cast<const DecompositionFailure*>(&e)) {
    err["probe"] = coords_to_json(d->probe());
    err["image"] = coords_to_json(d->image());
  }
  if (const auto* u = dynamic_cast<const UnderDetermined*>(&e); u && u->axis()) err["axis"] = *u->axis();
  if (const auto* t = dynamic_cast<const EnumerationTooLarge*>(&e)) err["k"] = t->size_exponent();
  return {{"error", std::move(err)}};
}

inline Json read_json(const std::string& path, std::istream& in) {
  try {
    if (path == "-") return Json::parse(in);
    std::ifstream file(path);
    if (!file) throw ParseError(path, "cannot open file");
    return Json::parse(file);
  } catch (const Json::exception& e) {
    throw ParseError(path, std::string("invalid JSON (") + e.what() + ")");
  }
}

inline std::vector<Vector> parse_point_list(const FieldSpec& field, const std::string& text) {
  std::vector<Vector> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto semi = text.find(';', start);
    const auto piece = text.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
    if (!piece.empty()) out.push_back(Vector::parse(field, piece));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return out;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in = std::cin) {
  CLI::App app{"Exact computations in normed spaces over ultrametric valued fields", "ultranorm"};
  app.require_subcommand(1);

  std::string format = "json";
  std::string field_text, norm_text = "one", weights_text;
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  };
  auto add_field = [&](CLI::App* sub) { sub->add_option("--field", field_text, "padic:P, gf:Q or trivial:q")->required(); };
  auto add_norm = [&](CLI::App* sub) {
    sub->add_option("--weights", weights_text, "Comma-separated positive rationals for wsup");
    return sub->add_option("--norm", norm_text, "one, sup or wsup")->check(CLI::IsMember({"one", "sup", "wsup"}));
  };

  std::string vec_text, x_text, y_text, z_text, a_text, c_text, d1_text, d2_text, probes_path, points_text, v0_text, e0_text;
  std::optional<std::size_t> cap;
  std::uint32_t q = 2;
  std::size_t n = 2, samples = 1000, grid = 48, per_axis = 5;
  std::uint64_t seed = 1;
  bool centred = false, timing = false;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

  auto* norm_cmd = app.add_subcommand("norm", "Norm of a vector");
  add_field(norm_cmd), add_norm(norm_cmd), add_format(norm_cmd);
  norm_cmd->add_option("--vec", vec_text, "Comma-separated coordinates")->required();

  auto* distance_cmd = app.add_subcommand("distance", "Distance ||x - y||");
  add_field(distance_cmd), add_norm(distance_cmd), add_format(distance_cmd);
  distance_cmd->add_option("--x", x_text)->required();
  distance_cmd->add_option("--y", y_text)->required();

  auto* between_cmd = app.add_subcommand("between", "Is z metrically between x and y under ||.||_1");
  add_field(between_cmd), add_format(between_cmd);
  between_cmd->add_option("--x", x_text)->required();
  between_cmd->add_option("--z", z_text)->required();
  between_cmd->add_option("--y", y_text)->required();

  auto* segment_cmd = app.add_subcommand("segment", "Enumerate the metric segment [x, y]");
  add_field(segment_cmd), add_format(segment_cmd);
  segment_cmd->add_option("--x", x_text)->required();
  segment_cmd->add_option("--y", y_text)->required();
  segment_cmd->add_option("--cap", cap, "Maximum number of points");

  auto* minimize_cmd = app.add_subcommand("minimize", "Minimise ||c - x||_1 + ||x - a||_1");
  add_field(minimize_cmd), add_format(minimize_cmd);
  minimize_cmd->add_option("--a", a_text)->required();
  minimize_cmd->add_option("--c", c_text)->required();
  auto* d1_opt = minimize_cmd->add_option("--d1", d1_text, "Filter witnesses by ||c - b||_1 (plane only)");
  auto* d2_opt = minimize_cmd->add_option("--d2", d2_text, "Filter witnesses by ||b - a||_1 (plane only)");
  d1_opt->needs(d2_opt);
  d2_opt->needs(d1_opt);
  minimize_cmd->add_option("--cap", cap, "Maximum number of points");

  auto* verify_cmd = app.add_subcommand("verify", "Check that a probe map preserves distances");
  add_norm(verify_cmd), add_format(verify_cmd);
  verify_cmd->add_option("--probes", probes_path, "Probe map JSON file, or - for stdin")->required();

  auto* decompose_cmd = app.add_subcommand("decompose", "Recover (translation, sigma, taus) from a probe map");
  add_format(decompose_cmd);
  decompose_cmd->add_option("--probes", probes_path, "Probe map JSON file, or - for stdin")->required();

  auto* counter_cmd = app.add_subcommand("counterexample", "Probe map of the non-axial sup-norm isometry T");
  add_field(counter_cmd), add_format(counter_cmd);
  auto* counter_norm = add_norm(counter_cmd);
  counter_norm->description("sup (default) or wsup");
  counter_cmd->add_option("--n", n, "Dimension");
  counter_cmd->add_option("--v0", v0_text, "Default (1/p, 0, ..., 0)");
  counter_cmd->add_option("--e0", e0_text, "Default (1, 0, ..., 0)");
  counter_cmd->add_option("--points", points_text, "Semicolon-separated probe points");
  counter_cmd->add_option("--grid", grid, "Size of the generated probe grid");
  counter_cmd->add_option("--seed", seed);

  auto* enumerate_cmd = app.add_subcommand("enumerate", "Brute-force the isometry group of F_q^n");
  add_norm(enumerate_cmd), add_format(enumerate_cmd);
  enumerate_cmd->add_option("--q", q)->required();
  enumerate_cmd->add_option("--n", n)->required();
  enumerate_cmd->add_flag("--centred", centred, "Only maps fixing the origin");
  enumerate_cmd->add_option("--jobs", jobs, "Worker threads");
  enumerate_cmd->add_option("--cap", cap, "Maximum q^n");
  enumerate_cmd->add_flag("--timing", timing, "Include wall-clock duration");

  auto* check_between_cmd = app.add_subcommand("check-betweenness", "Exhaustive betweenness equivalence over F_q^n");
  add_format(check_between_cmd);
  check_between_cmd->add_option("--q", q)->required();
  check_between_cmd->add_option("--n", n)->required();
  check_between_cmd->add_option("--cap", cap, "Maximum number of triples");

  auto* check_axioms_cmd = app.add_subcommand("check-axioms", "Randomised valuation and norm axiom checks");
  add_field(check_axioms_cmd), add_norm(check_axioms_cmd), add_format(check_axioms_cmd);
  check_axioms_cmd->add_option("--n", n, "Dimension");
  check_axioms_cmd->add_option("--samples", samples);
  check_axioms_cmd->add_option("--seed", seed);

  std::vector<const char*> argv{"ultranorm"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  auto emit = [&](const Json& j) {
    if (format == "text") out << detail::render_text(j);
    else out << j.dump() << '\n';
  };

  try {
    const auto field = [&] { return FieldSpec::parse(field_text); };
    const auto norm_spec = [&] { return NormSpec::parse(norm_text, weights_text); };

    if (*norm_cmd) {
      const auto value = norm(Vector::parse(field(), vec_text), norm_spec());
      Json j = {{"value", value.to_string()}};
      if (format == "text") j["approx"] = detail::approx(value);
      emit(j);
    } else if (*distance_cmd) {
      const auto f = field();
      const auto value = distance(Vector::parse(f, x_text), Vector::parse(f, y_text), norm_spec());
      Json j = {{"value", value.to_string()}};
      if (format == "text") j["approx"] = detail::approx(value);
      emit(j);
    } else if (*between_cmd) {
      const auto f = field();
      emit({{"between", is_metrically_between(Vector::parse(f, x_text), Vector::parse(f, z_text), Vector::parse(f, y_text))}});
    } else if (*segment_cmd) {
      const auto f = field();
      const auto seg = segment(Vector::parse(f, x_text), Vector::parse(f, y_text), detail::resolve_cap(cap, kDefaultSegmentCap));
      emit({{"k", seg.k}, {"segment", detail::vectors_to_json(seg.points)}});
    } else if (*minimize_cmd) {
      const auto f = field();
      const auto a = Vector::parse(f, a_text);
      const auto c = Vector::parse(f, c_text);
      const auto result = minimize_two_point(a, c, detail::resolve_cap(cap, kDefaultSegmentCap));
      Json j = {{"minimum", result.minimum.to_string()}, {"k", result.witnesses.k}, {"witnesses", detail::vectors_to_json(result.witnesses.points)}};
      if (*d1_opt) {
        j["matching"] = detail::vectors_to_json(uniqueness_check(a, c, Magnitude::parse(d1_text), Magnitude::parse(d2_text)));
      }
      emit(j);
    } else if (*verify_cmd) {
      const auto report = verify_isometry(probe_map_from_json(detail::read_json(probes_path, in)), norm_spec());
      Json witnesses = Json::array();
      for (const auto& v : report.violations) {
        witnesses.push_back({{"a", coords_to_json(v.a)},
                             {"b", coords_to_json(v.b)},
                             {"domain_distance", v.domain_distance.to_string()},
                             {"image_distance", v.image_distance.to_string()}});
      }
      Json j = {{"ok", report.ok()},
                {"pairs_checked", report.pairs_checked},
                {"violations", report.violation_count},
                {"witnesses", std::move(witnesses)},
                {"injective", report.injective}};
      if (report.surjective) j["surjective"] = *report.surjective;
      emit(j);
    } else if (*decompose_cmd) {
      emit(isometry_to_json(decompose(probe_map_from_json(detail::read_json(probes_path, in)))));
    } else if (*counter_cmd) {
      const auto f = field();
      if (f.kind() != FieldKind::padic) throw HypothesisViolation("needs a p-adic field; under the trivial valuation every nonzero sup-norm is 1");
      const auto spec = counter_norm->count() ? norm_spec() : NormSpec::sup_norm();
      const auto v0 = v0_text.empty() ? Vector::on_axis(f, n, 0, Scalar(f, 1, f.prime())) : Vector::parse(f, v0_text);
      const auto e0 = e0_text.empty() ? Vector::on_axis(f, v0.size(), 0, Scalar::one(f)) : Vector::parse(f, e0_text);
      std::vector<Vector> probes;
      if (!points_text.empty()) {
        probes = detail::parse_point_list(f, points_text);
      } else {
        Rng rng(seed);
        probes = probe_grid(f, v0.size(), grid, per_axis, rng);
      }
      emit(probe_map_to_json(make_remark2_counterexample(f, std::move(probes), v0, e0, spec)));
    } else if (*enumerate_cmd) {
      const auto spec = norm_spec();
      const auto result = enumerate_isometries(q, n, spec, centred, detail::resolve_cap(cap, kDefaultEnumerationPoints), jobs);
      const auto formula = result.formula();
      const auto closure = group_closure_check(result);
      Json j = {{"q", q},
                {"n", n},
                {"norm", spec.name()},
                {"centred", centred},
                {"isometries", result.isometry_count},
                {"axial", result.axial_count},
                {"non_axial", result.non_axial.size()},
                {"formula", formula ? Json(*formula) : Json(nullptr)},
                {"match", formula ? Json(*formula == result.isometry_count) : Json(nullptr)},
                {"group", closure.ok()},
                {"nodes", result.nodes_visited}};
      if (result.search_space) j["search_space"] = *result.search_space;
      if (timing) j["duration_ms"] = std::chrono::duration<double, std::milli>(result.duration).count();
      emit(j);
    } else if (*check_between_cmd) {
      const auto report = exhaustive_betweenness_check(q, n, detail::resolve_cap(cap, kDefaultTripleCap));
      Json j = {{"q", q}, {"n", n}, {"triples", report.triples}, {"between", report.between}, {"mismatches", report.mismatches}, {"ok", report.ok()}};
      if (report.first_mismatch) {
        const auto& [x, z, y] = *report.first_mismatch;
        j["first_mismatch"] = {coords_to_json(x), coords_to_json(z), coords_to_json(y)};
      }
      emit(j);
    } else if (*check_axioms_cmd) {
      const auto f = field();
      const auto spec = norm_spec();
      Rng rng(seed);
      const auto pairs = random_scalar_pairs(f, samples, rng);
      const auto norm_samples = random_norm_samples(f, spec.kind() == NormKind::weighted_sup ? spec.weights().size() : n, samples, rng);
      const auto val = check_valuation_axioms(f, pairs);
      const auto nrm = check_norm_axioms(spec, f, norm_samples);
      auto summarize = [](const AxiomReport& r) {
        Json violations = Json::array();
        for (const auto& v : r.violations) violations.push_back({{"axiom", v.axiom}, {"witness", v.witness}});
        return Json{{"samples", r.samples}, {"checks", r.checks}, {"failures", r.failures}, {"violations", std::move(violations)}};
      };
      emit({{"field", f.to_string()}, {"norm", spec.name()}, {"valuation", summarize(val)}, {"normed_space", summarize(nrm)}, {"ok", val.ok() && nrm.ok()}});
    }
  } catch (const ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    out << detail::error_json(e).dump() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace ultranorm::cli
