#pragma once

// Reports produced by the command line driver, and their canonical JSON form.

#include "transition/gallery.hpp"
#include "transition/holonomy.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace transition {

using Json = nlohmann::json;

/// Serializes with sorted keys, no whitespace, floats as %.17g and
/// non-finite floats as null. Parsing the output and serializing again gives
/// the same bytes.
std::string canonical_json(const Json& j);

struct CheckOutcome {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tol = 0.0;
  std::string detail;
};

struct Report {
  std::string kind;  // "check", "limit" or "holonomy"
  Json body = Json::object();
  std::vector<CheckOutcome> checks;

  bool passed() const;
  Json to_json() const;
  /// Short human-readable summary, one item per line.
  std::string text() const;
};

struct CheckOptions {
  bool exact = false;
  /// Text of t, parsed as a rational in exact mode.
  std::string t_text;
  double tol = 0.0;  // 0 means default_tol()
};

Report check_report(const FamilyRecord& f, double t, const CheckOptions& opt);
Report limit_report(const FamilyRecord& f, Rescaling r, Side side);
Report holonomy_report(const PairingScheme& s, double t, const LoopWord& w);
/// Holonomy of the rescaled limits of the word's letters.
Report limit_holonomy_report(const PairingScheme& s, const LoopWord& w, Rescaling r, Side side);

/// CSV with columns object,kind,x0,...,x4: one row per wall (coefficients)
/// and per vertex (chart x0 = 1 when x0 != 0, canonical otherwise).
std::string plot_csv(const Polytope& p);

}  // namespace transition
