#pragma once

// Machine-readable reports: every CLI command produces one Report whose
// payload is a JSON object with a stable per-command schema. Exact values are
// strings ("p" or "p/q"); each is paired with a rounded decimal.

#include "json.hpp"

#include <ostream>
#include <string>
#include <vector>

#include "hyclique/algebra.hpp"
#include "hyclique/bounds.hpp"
#include "hyclique/extraction.hpp"
#include "hyclique/interval.hpp"
#include "hyclique/search.hpp"

namespace hyclique {

using Json = nlohmann::ordered_json;

enum class Status { Ok, Violation, InputError };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::Ok:
      return "ok";
    case Status::Violation:
      return "violation";
    case Status::InputError:
      return "input-error";
  }
  return "input-error";
}

inline Status parse_status(const std::string& s) {
  if (s == "ok") return Status::Ok;
  if (s == "violation") return Status::Violation;
  if (s == "input-error") return Status::InputError;
  throw InputError("unknown status '" + s + "'");
}

inline int exit_code(Status s) {
  switch (s) {
    case Status::Ok:
      return 0;
    case Status::Violation:
      return 1;
    case Status::InputError:
      return 2;
  }
  return 2;
}

struct Report {
  std::string command;
  Status status = Status::Ok;
  Json payload = Json::object();
  std::vector<std::string> warnings;

  bool operator==(const Report&) const = default;
};

inline Json to_json(const Report& r) {
  return Json{{"command", r.command}, {"status", to_string(r.status)}, {"payload", r.payload}, {"warnings", r.warnings}};
}

inline Report report_from_json(const Json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  r.status = parse_status(j.at("status").get<std::string>());
  r.payload = j.at("payload");
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

// ---------------------------------------------------------------------------
// Value encoders

inline Json exact_json(const Rational& x) { return Json{{"exact", to_exact(x)}, {"decimal", to_decimal(x)}}; }
inline Json exact_json(const BigInt& x) { return exact_json(Rational(x)); }

inline Json interval_json(const Interval& x) {
  return Json{{"lo", to_exact(x.lo())}, {"hi", to_exact(x.hi())}, {"approx", x.approx()}};
}

inline Json vertices_json(const std::vector<Vertex>& w) {
  Json a = Json::array();
  for (Vertex x : w) a.push_back(x);
  return a;
}

inline Json to_json(const Spectrum& s) {
  return Json{{"n", s.n}, {"m", s.m}, {"q", s.q}, {"Q", s.Q}, {"tau_amp", exact_json(s.tau_amp)}};
}

inline Json to_json(const CountingReport& t) {
  return Json{{"c", exact_json(t.c)},
              {"d", interval_json(t.d)},
              {"closed_bound", interval_json(t.closed_bound)},
              {"a_raw", t.a_raw},
              {"a_clamped", t.a_clamped},
              {"finite_bound", exact_json(t.finite_bound)},
              {"hypothesis_holds", t.hypothesis_holds}};
}

inline Json to_json(const BoundReport& r) {
  Json j;
  j["n"] = r.n;
  j["t1_lower"] = exact_json(r.t1_lower);
  j["t1_upper"] = exact_json(r.t1_upper);
  j["t1_ok"] = r.t1_ok();
  if (r.m) {
    j["m"] = *r.m;
    j["q"] = *r.q;
    j["A"] = exact_json(*r.A);
    j["A_envelope"] = exact_json(Rational(*r.A_envelope_times_m, BigInt(*r.m)));
    j["A_envelope_ok"] = r.A_envelope_ok;
    j["A_prime"] = interval_json(*r.A_prime);
    j["t3_bound"] = exact_json(*r.t3_bound);
    j["t3_beats_t1"] = r.t3_beats_t1();
  }
  if (r.c) j["c"] = exact_json(*r.c);
  if (r.t2_form) j["t2_form"] = interval_json(*r.t2_form);
  Json subset = Json::array();
  for (std::size_t k = 0; k < r.subset_bounds.size(); ++k) {
    subset.push_back(Json{{"k", k + 1}, {"bound", to_exact(r.subset_bounds[k])}});
  }
  j["subset_bounds"] = subset;
  if (r.t4) j["t4"] = to_json(*r.t4);
  return j;
}

inline Json to_json(const CountingFinite& t) {
  Json j{{"n", t.n}, {"v", t.v}, {"a_star", t.a_star}, {"a_given", t.a_given}, {"bound", exact_json(t.bound)}};
  if (t.default_choice) {
    j["default_choice"] = Json{{"c", exact_json(t.default_choice->c)},
                             {"a_raw", t.default_choice->a_raw},
                             {"a_clamped", t.default_choice->a_clamped},
                             {"value", exact_json(t.default_choice->value)}};
  }
  return j;
}

inline Json to_json(const AmplificationCheck& a) {
  return Json{{"m", a.m},
              {"k_max", a.k_max},
              {"sup_value", exact_json(a.sup_value)},
              {"argmax", a.argmax},
              {"holds", a.holds},
              {"decreasing_at_kmax", a.decreasing_at_kmax}};
}

inline Json to_json(const RankCertificate& c) {
  Json j{{"s", c.s},
         {"v", c.v},
         {"n", c.n},
         {"L", c.L},
         {"dim_bound", exact_json(c.dim_bound)},
         {"columns", c.columns},
         {"rank", c.rank},
         {"independent", c.independent},
         {"within_bound", c.within_bound},
         {"diag_ok", c.diag_ok},
         {"eval_rank", c.eval_rank},
         {"sound", c.sound()}};
  if (c.loose_dim_bound) j["loose_dim_bound"] = exact_json(*c.loose_dim_bound);
  if (c.a_bound) j["a_bound"] = exact_json(*c.a_bound);
  if (c.witness) {
    j["witness"] = Json{{"mu", c.witness->first}, {"nu", c.witness->second}, {"intersection", *c.witness_intersection}};
  }
  return j;
}

inline Json to_json(const ExtractionStep& s) {
  return Json{{"kind", s.kind == StepKind::AddOne ? "add-one" : "add-two"},
              {"added", vertices_json(s.added)},
              {"j_before", s.j_before},
              {"j_after", s.j_after},
              {"B1", s.b1},
              {"B2", s.b2},
              {"l", s.l},
              {"e1_size", s.e1_size},
              {"e2_size", s.e2_size},
              {"claimed_factor", exact_json(s.claimed_factor)},
              {"achieved_factor", exact_json(s.achieved_factor)},
              {"worst_split", interval_json(s.worst_split)}};
}

inline Json to_json(const ExtractionTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) steps.push_back(to_json(s));
  Json j{{"n", t.n},
         {"m", t.m},
         {"edges", t.edge_count},
         {"threshold_total", exact_json(t.threshold_total)},
         {"custom_threshold", t.custom_threshold},
         {"k_target", t.k_target},
         {"start", t.start},
         {"steps", steps},
         {"W_final", vertices_json(t.w_final)},
         {"k", t.k},
         {"j_final", t.j_final},
         {"threshold_used", exact_json(t.threshold_used)},
         {"termination", t.termination == Termination::ReachedK ? "reached-k" : "exhausted"},
         {"A", exact_json(t.A)},
         {"assembled_bound", exact_json(t.assembled_bound)},
         {"bound_holds", t.bound_holds},
         {"t3_bound", exact_json(t.t3_bound)}};
  if (t.exhausted_diag_ok) j["exhausted_diag_ok"] = *t.exhausted_diag_ok;
  return j;
}

inline Json to_json(const SearchRecord& r) {
  Json j{{"n", r.n},
         {"mode", to_string(r.mode)},
         {"best_size", r.best_size},
         {"exhaustive", r.exhaustive},
         {"v_cap", r.v_cap},
         {"elapsed_seconds", r.elapsed.count()},
         {"nodes", r.nodes},
         {"classes", r.classes}};
  if (r.best_instance) j["best_instance"] = render(*r.best_instance);
  if (r.structural_cross_check) j["structural_cross_check"] = *r.structural_cross_check;
  return j;
}

inline Json to_json(const SubsetBoundReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back(Json{{"k", e.k},
                           {"max", e.max_count},
                           {"witness", vertices_json(e.witness)},
                           {"bound", to_exact(e.bound)},
                           {"ok", e.ok}});
  }
  return Json{{"entries", entries}, {"all_ok", r.all_ok}};
}

// ---------------------------------------------------------------------------
// Human-readable rendering

namespace detail {

inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_object() && v.contains("exact")) {
    std::string exact = v["exact"].get<std::string>();
    std::string dec = v["decimal"].get<std::string>();
    return exact == dec ? exact : exact + "  (~" + dec + ")";
  }
  if (v.is_object() && v.contains("lo") && v.contains("approx")) {
    return "~" + v["approx"].get<std::string>() + "  (certified interval)";
  }
  return v.dump();
}

inline void print_human(std::ostream& out, const Json& obj, int indent) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const Json& v = it.value();
    out << std::string(static_cast<std::size_t>(indent), ' ') << it.key() << ":";
    bool nested = v.is_object() && !v.contains("exact") && !v.contains("lo");
    if (nested) {
      out << "\n";
      print_human(out, v, indent + 2);
    } else if (v.is_string() && v.get<std::string>().find('\n') != std::string::npos) {
      out << "\n";
      std::string text = v.get<std::string>();
      std::size_t start = 0;
      while (start < text.size()) {
        auto end = text.find('\n', start);
        out << std::string(static_cast<std::size_t>(indent + 2), ' ') << text.substr(start, end - start) << "\n";
        start = end == std::string::npos ? text.size() : end + 1;
      }
    } else {
      out << " " << scalar_text(v) << "\n";
    }
  }
}

}  // namespace detail

inline void print_human(std::ostream& out, const Report& r) {
  out << "command: " << r.command << "\n";
  out << "status: " << to_string(r.status) << "\n";
  detail::print_human(out, r.payload, 0);
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
}

}  // namespace hyclique
