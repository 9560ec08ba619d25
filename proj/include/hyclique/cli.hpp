#pragma once

// Command-line frontend. `run_cli` is the whole program minus `main`, so the
// tests drive it directly.
//
//   analyze <file>
//   bounds --n N [--m M] [--v V] [--c P/Q]
//   certify <file> (--L j1,j2,... | --m M)
//   extract <file> --m M [--threshold P/Q]
//   search --n N --max-vertices V --mode chi3|tau-n --budget SECONDS [--seed S] [--node-limit K]
//   verify-subset <file> [--k-max K]
//
// Exit codes: 0 ok, 1 violation, 2 input error.

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hyclique/algebra.hpp"
#include "hyclique/bounds.hpp"
#include "hyclique/chi_tau.hpp"
#include "hyclique/core.hpp"
#include "hyclique/extraction.hpp"
#include "hyclique/report.hpp"
#include "hyclique/search.hpp"

namespace hyclique {

namespace cli_detail {

inline ParseResult load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return parse_hypergraph(in);
}

inline void note_duplicates(Report& r, const ParseResult& parsed) {
  if (parsed.duplicate_warnings > 0) {
    r.warnings.push_back(std::to_string(parsed.duplicate_warnings) + " duplicate edge(s) merged");
  }
}

inline std::vector<int> parse_levels(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    BigInt v = detail::parse_integer(tok);
    if (v < 0 || v > 1'000'000) throw InputError("intersection size '" + tok + "' out of range");
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw InputError("--L needs at least one value");
  return out;
}

inline Report analyze(const std::string& path) {
  Report r{"analyze", Status::Ok, Json::object(), {}};
  auto parsed = load(path);
  note_duplicates(r, parsed);
  const Hypergraph& h = parsed.graph;
  const std::size_t n = h.uniformity();
  Json& p = r.payload;
  p["file"] = path;
  p["uniformity"] = n;
  p["vertices"] = h.vertex_count();
  p["covered_vertices"] = h.covered_vertex_count();
  p["edges"] = h.edge_count();
  p["duplicates_removed"] = parsed.duplicate_warnings;

  auto verdict = is_clique(h);
  p["clique"] = verdict.is_clique;
  if (verdict.witness) p["disjoint_witness"] = {verdict.witness->first, verdict.witness->second};

  std::optional<std::size_t> chi;
  try {
    auto coloring = chromatic_number(h, 4);
    chi = coloring.chi;
    if (coloring.chi) {
      p["chi"] = *coloring.chi;
      p["coloring"] = coloring.coloring;
    } else {
      p["chi"] = "exceeds cap 4";
    }
  } catch (const HypothesisError& e) {
    p["chi"] = nullptr;
    r.warnings.push_back(e.what());
  }

  auto cover = covering_number(h);
  p["tau"] = cover.tau;
  p["transversal"] = vertices_json(cover.transversal.members());

  Json checks = Json::object();
  bool ok = true;
  if (verdict.is_clique && n >= 2) {
    auto three = clique_three_coloring(h);
    p["three_coloring"] = Json{{"colors", *three.chi}, {"valid", is_proper_coloring(h, three.coloring)}};
    bool chi_range = chi && (*chi == 2 || *chi == 3);
    checks["chi_in_2_3"] = chi_range;
    bool tau_le_n = cover.tau <= n;
    checks["tau_le_n"] = tau_le_n;
    ok = ok && chi_range && tau_le_n;
    if (chi && *chi == 3) {
      bool tau_is_n = cover.tau == n;
      checks["chi3_implies_tau_n"] = tau_is_n;
      // Vertex count of a 3-chromatic clique is at most 4^n.
      BigInt four_n = ipow(BigInt(4), static_cast<unsigned>(n));
      bool vertex_bound = BigInt(h.covered_vertex_count()) <= four_n;
      checks["vertices_le_4_pow_n"] = vertex_bound;
      p["four_pow_n"] = four_n.str();
      ok = ok && tau_is_n && vertex_bound;
    }
  }
  p["checks"] = checks;
  if (!ok) r.status = Status::Violation;
  return r;
}

inline Report bounds(int n, std::optional<int> m, std::optional<std::int64_t> v, std::optional<std::string> c_text) {
  Report r{"bounds", Status::Ok, Json::object(), {}};
  std::optional<Rational> c;
  if (c_text) c = parse_rational(*c_text);
  BoundReport b = bound_report(n, m, v, c);
  r.payload = to_json(b);
  r.warnings = b.warnings;
  bool ok = b.t1_ok() && b.A_envelope_ok;
  if (m) {
    r.payload["spectrum"] = to_json(spectrum(n, *m));
    auto amp = amplification_check(*m, 8 * *m);
    r.payload["amplification"] = to_json(amp);
    auto chain = amplification_chain_check(n, *m);
    r.payload["chain_ok"] = !chain.has_value();
    if (chain) r.warnings.push_back("chain inequality '" + chain->which + "' fails at l = " + std::to_string(chain->l));
    ok = ok && amp.holds && amp.decreasing_at_kmax && !chain;
  }
  if (v && n >= 3 && *v >= n) r.payload["t4_finite"] = to_json(theorem4_finite(n, *v));
  if (!ok) r.status = Status::Violation;
  return r;
}

inline Report certify(const std::string& path, std::optional<std::string> levels_text, std::optional<int> m) {
  Report r{"certify", Status::Ok, Json::object(), {}};
  if (levels_text.has_value() == m.has_value()) throw InputError("certify needs exactly one of --L or --m");
  auto parsed = load(path);
  note_duplicates(r, parsed);
  const Hypergraph& h = parsed.graph;
  std::optional<Spectrum> sp;
  std::vector<int> levels;
  if (m) {
    sp = spectrum(static_cast<int>(h.uniformity()), *m);
    levels = sp->allowed_intersections();
  } else {
    levels = parse_levels(*levels_text);
  }
  auto cert = rank_certificate(h.edges(), levels, h.vertex_count(), h.uniformity(), sp);
  r.payload = to_json(cert);
  if (sp && BigInt(h.vertex_count()) <= ipow(BigInt(sp->n), static_cast<unsigned>(sp->m))) {
    bool tight_le_a = cert.dim_bound <= *cert.a_bound;
    r.payload["dim_bound_le_A"] = tight_le_a;
    if (!tight_le_a) r.status = Status::Violation;
  }
  if (!cert.sound()) r.status = Status::Violation;
  if (!cert.diag_ok) r.warnings.push_back("some pairwise intersection lies outside L");
  return r;
}

inline Report extract(const std::string& path, int m, std::optional<std::string> threshold) {
  Report r{"extract", Status::Ok, Json::object(), {}};
  auto parsed = load(path);
  note_duplicates(r, parsed);
  std::optional<Rational> t;
  if (threshold) t = parse_rational(*threshold);
  auto trace = run_extraction(parsed.graph, m, t);
  r.payload = to_json(trace);
  if (trace.termination == Termination::Exhausted) {
    r.warnings.push_back("stopped before |W| = k: every outside pair intersects inside Q");
  }
  if (trace.custom_threshold && !trace.bound_holds) r.warnings.push_back("|E| exceeds the assembled bound");
  return r;
}

inline Report search(const SearchOptions& options) {
  Report r{"search", Status::Ok, Json::object(), {}};
  auto record = extremal_search(options);
  r.payload = to_json(record);
  if (options.mode == SearchMode::Chi3 && record.best_instance) {
    BigInt upper = ipow(BigInt(options.n), static_cast<unsigned>(options.n));
    bool ok = BigInt(record.best_size) <= upper;
    r.payload["best_le_n_pow_n"] = ok;
    if (!ok) r.status = Status::Violation;
  }
  const char* env = std::getenv("HYCLIQUE_RECORDS_DIR");
  std::filesystem::path dir = env && *env ? std::filesystem::path(env) : std::filesystem::path("records");
  if (auto written = write_record(record, dir)) r.payload["record_file"] = written->string();
  if (!record.exhaustive) r.warnings.push_back("search truncated by budget; best_size is a lower bound");
  return r;
}

inline Report verify_subset(const std::string& path, std::optional<std::size_t> k_max) {
  Report r{"verify-subset", Status::Ok, Json::object(), {}};
  auto parsed = load(path);
  note_duplicates(r, parsed);
  auto report = verify_subset_bound(parsed.graph, k_max.value_or(parsed.graph.uniformity()));
  r.payload = to_json(report);
  if (!report.all_ok) r.status = Status::Violation;
  return r;
}

}  // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact laboratory for n-uniform intersecting hypergraphs with chromatic number 3", "hyclique"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "Emit the report as JSON");

  std::string file;
  int n = 0;
  std::optional<int> m;
  std::optional<std::int64_t> v;
  std::optional<std::string> c_text, levels_text, threshold;
  std::optional<std::size_t> k_max;
  int max_vertices = 0;
  std::string mode = "chi3";
  double budget = 10.0;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> node_limit;

  auto* analyze = app.add_subcommand("analyze", "Uniformity, clique test, chi, tau and structural checks");
  analyze->add_option("file", file, "Hypergraph file")->required();

  auto* bounds = app.add_subcommand("bounds", "Exact bound evaluation");
  bounds->add_option("--n", n, "Uniformity")->required()->check(CLI::Range(1, 100000));
  bounds->add_option("--m", m, "Vertex exponent m (|V| <= n^m)");
  bounds->add_option("--v", v, "Vertex count for the counting bound");
  bounds->add_option("--c", c_text, "Rational constant P/Q");

  auto* certify = app.add_subcommand("certify", "Polynomial rank certificate for a restricted-intersection family");
  certify->add_option("file", file, "Family in hypergraph format")->required();
  certify->add_option("--L", levels_text, "Allowed intersections j1,j2,...");
  certify->add_option("--m", m, "Use Q \\ {n} from the spectrum for (n, m)");

  auto* extract = app.add_subcommand("extract", "Replay the greedy extraction chain");
  extract->add_option("file", file, "Hypergraph file")->required();
  extract->add_option("--m", m, "Vertex exponent m")->required();
  extract->add_option("--threshold", threshold, "Custom total threshold T as P/Q (default |E| - A)");

  auto* search = app.add_subcommand("search", "Budgeted extremal search");
  search->add_option("--n", n, "Uniformity")->required();
  search->add_option("--max-vertices", max_vertices, "Vertex cap")->required();
  search->add_option("--mode", mode, "chi3 or tau-n")->required()->check(CLI::IsMember({"chi3", "tau-n"}));
  search->add_option("--budget", budget, "Seconds")->required()->check(CLI::PositiveNumber);
  search->add_option("--seed", seed, "Candidate-order seed (0 keeps natural order)");
  search->add_option("--node-limit", node_limit, "Deterministic node budget");

  auto* verify = app.add_subcommand("verify-subset", "Check |E(W)| <= n^{n-|W|} by enumeration");
  verify->add_option("file", file, "Hypergraph file")->required();
  verify->add_option("--k-max", k_max, "Largest |W| (default n)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 2;
  }

  Report report;
  try {
    if (*analyze) {
      report = cli_detail::analyze(file);
    } else if (*bounds) {
      report = cli_detail::bounds(n, m, v, c_text);
    } else if (*certify) {
      report = cli_detail::certify(file, levels_text, m);
    } else if (*extract) {
      report = cli_detail::extract(file, *m, threshold);
    } else if (*search) {
      SearchOptions options;
      options.n = n;
      options.v_cap = max_vertices;
      options.mode = parse_search_mode(mode);
      options.budget = std::chrono::duration<double>(budget);
      options.seed = seed;
      options.node_limit = node_limit;
      report = cli_detail::search(options);
    } else if (*verify) {
      report = cli_detail::verify_subset(file, k_max);
    }
  } catch (const InputError& e) {
    report = Report{app.get_subcommands().front()->get_name(), Status::InputError, Json::object(), {e.what()}};
  } catch (const HypothesisError& e) {
    report = Report{app.get_subcommands().front()->get_name(), Status::Violation, Json::object(), {e.what()}};
  } catch (const InvariantViolation& e) {
    report = Report{app.get_subcommands().front()->get_name(), Status::Violation, Json::object(),
                    {std::string("invariant violated: ") + e.what()}};
  }

  if (json) {
    out << to_json(report).dump(2) << "\n";
  } else {
    print_human(out, report);
  }
  if (report.status == Status::InputError) {
    for (const auto& w : report.warnings) err << "error: " << w << "\n";
  }
  return exit_code(report.status);
}

}  // namespace hyclique
