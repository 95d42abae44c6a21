// Command line driver: evaluates families, takes limits, computes holonomy,
// runs the acceptance suite and writes plot data.
//
// Exit codes: 0 success, 1 a check failed, 2 usage error, 3 internal error.

#include "transition/suite.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>

namespace {

using namespace transition;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

double parse_t(const std::string& text) {
  try {
    return parse_rational(text).convert_to<double>();
  } catch (const std::exception&) {
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) throw UsageError("cannot read t = '" + text + "'");
  return v;
}

int emit(const Report& r, bool json) {
  if (json) {
    std::cout << canonical_json(r.to_json()) << "\n";
  } else {
    std::cout << r.text();
  }
  return r.passed() ? 0 : 1;
}

int cmd_list() {
  std::cout << "families\n";
  for (const auto& f : catalog()) {
    std::cout << "  " << f.name << "  dim " << f.dim << "  t in " << f.domain.text << "  " << to_string(f.geometry_pos)
              << " / " << to_string(f.geometry_zero) << " / " << to_string(f.geometry_neg) << "\n";
  }
  std::cout << "pairing schemes\n";
  for (const auto& s : scheme_catalog()) {
    std::cout << "  " << s.name << "  on " << s.family << "  loop \"" << s.default_loop << "\"  " << s.description
              << "\n";
  }
  return 0;
}

int cmd_suite(const std::vector<int>& expect_fail, std::uint64_t seed) {
  const std::set<int> known(expect_fail.begin(), expect_fail.end());
  int unexpected = 0;
  for (const auto& r : run_suite(SuiteOptions{seed})) {
    const bool expected = known.count(r.id) > 0;
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.id << " " << r.name << (expected ? " [known failure]" : "")
              << ": " << r.detail << "\n";
    if (r.passed == expected) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric transitions of polytope families"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "seed for randomized checks")->capture_default_str();

  std::string name;
  std::string t_text;
  bool exact = false;
  bool json = false;
  std::string rescale;
  std::string side = "pos";
  std::string loop;
  std::string chart = "x0";
  std::string out;
  std::vector<int> expect_fail;

  app.add_subcommand("list", "list families and pairing schemes");

  auto* check = app.add_subcommand("check", "evaluate a family and run its checks");
  check->add_option("family", name, "family name")->required();
  check->add_option("--t", t_text, "parameter value (decimal or p/q)")->required();
  check->add_flag("--exact", exact, "also compute in Q(sqrt 2); t must be rational");
  check->add_flag("--json", json, "print the report as canonical JSON");

  auto* limit = app.add_subcommand("limit", "rescaled limit of every wall");
  limit->add_option("family", name, "family name")->required();
  limit->add_option("--rescale", rescale, "gamma or eta")->required()->check(CLI::IsMember({"gamma", "eta"}));
  limit->add_option("--side", side, "pos or neg")->check(CLI::IsMember({"pos", "neg"}))->capture_default_str();
  limit->add_flag("--json", json, "print the report as canonical JSON");

  auto* hol = app.add_subcommand("holonomy", "holonomy of a loop in a pairing scheme");
  hol->add_option("scheme", name, "pairing scheme name")->required();
  hol->add_option("--t", t_text, "parameter value");
  hol->add_option("--loop", loop, "word in pairing labels, e.g. \"LR TB LR^-1 TB^-1\"");
  auto* hol_rescale =
      hol->add_option("--rescale", rescale, "take the limit of the letters instead")->check(CLI::IsMember({"gamma", "eta"}));
  hol->add_option("--side", side, "pos or neg")->check(CLI::IsMember({"pos", "neg"}));
  hol->add_flag("--json", json, "print the report as canonical JSON");
  hol->get_option("--t")->excludes(hol_rescale);

  auto* suite = app.add_subcommand("suite", "run the acceptance criteria");
  suite->add_option("--expect-fail", expect_fail, "criterion known to fail")->check(CLI::Range(1, 11));

  auto* plot = app.add_subcommand("plot", "CSV of walls and vertices");
  plot->add_option("family", name, "family name")->required();
  plot->add_option("--t", t_text, "parameter value")->required();
  plot->add_option("--chart", chart, "affine chart")->check(CLI::IsMember({"x0"}))->capture_default_str();
  plot->add_option("--out", out, "output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("list")) return cmd_list();
    if (app.got_subcommand("suite")) return cmd_suite(expect_fail, seed);
    if (app.got_subcommand("check")) {
      const FamilyRecord& f = make_family(name);
      CheckOptions opt;
      opt.exact = exact;
      opt.t_text = t_text;
      return emit(check_report(f, parse_t(t_text), opt), json);
    }
    if (app.got_subcommand("limit")) {
      return emit(limit_report(make_family(name), rescaling_from_string(rescale), side_from_string(side)), json);
    }
    if (app.got_subcommand("holonomy")) {
      const PairingScheme& s = pairing_scheme(name);
      LoopWord w = LoopWord::parse(loop.empty() ? s.default_loop : loop);
      if (!rescale.empty()) {
        return emit(limit_holonomy_report(s, w, rescaling_from_string(rescale), side_from_string(side)), json);
      }
      if (t_text.empty()) throw UsageError("holonomy needs --t or --rescale");
      return emit(holonomy_report(s, parse_t(t_text), w), json);
    }
    if (app.got_subcommand("plot")) {
      std::string csv = plot_csv(make_family(name).at(parse_t(t_text)));
      std::ofstream os(out);
      if (!os) throw UsageError("cannot write " + out);
      os << csv;
      std::cout << "wrote " << out << "\n";
      return 0;
    }
  } catch (const std::invalid_argument& e) {  // unknown names, malformed words and values
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {  // t outside a family's domain
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
