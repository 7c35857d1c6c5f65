// defspace: command line front end of the workbench.
//
//   defspace deform verify remark.dsw --s 2 --json out.json
//   defspace polyptych --n 3 --dot p3.dot
//
// Exit status: 0 all checks pass, 1 some check failed, 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "defspace/workbench_run.hpp"

using namespace defspace;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

WorkbenchDocument load(const std::string& path) {
  std::string text = read_input(path);
  try {
    return parse_document(text);
  } catch (const ParseError& e) {
    throw UsageError((path.empty() || path == "-" ? std::string("<stdin>") : path) + ":" + std::to_string(e.line()) +
                     ":" + std::to_string(e.column()) + ": " + e.message());
  }
}

std::string pick_datum(const WorkbenchDocument& doc, const std::string& requested) {
  if (!requested.empty()) {
    if (!doc.find_datum(requested)) throw UsageError("no datum named " + requested);
    return requested;
  }
  if (doc.data.size() == 1) return doc.data.front().name;
  if (doc.data.empty()) throw UsageError("document declares no datum");
  throw UsageError("document declares several data, choose one with --datum");
}

std::set<int> pick_subset(const WorkbenchDocument& doc, const std::string& datum, const std::string& text) {
  std::vector<int> v;
  try {
    v = parse_int_list(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--s: ") + e.what());
  }
  const int n = static_cast<int>(doc.find_datum(datum)->chain.size());
  std::set<int> S(v.begin(), v.end());
  for (int s : S) {
    if (s < 1 || s > n) throw UsageError("--s: index " + std::to_string(s) + " outside 1.." + std::to_string(n));
  }
  return S;
}

std::vector<std::string> pick_ideals(const WorkbenchDocument& doc, const std::vector<std::string>& requested) {
  if (requested.empty()) {
    std::vector<std::string> all;
    for (const auto& d : doc.ideals) all.push_back(d.name);
    return all;
  }
  for (const auto& n : requested) {
    if (!doc.find_ideal(n)) throw UsageError("no ideal named " + n);
  }
  return requested;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deformation spaces, panels and the polyptych"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string json_path;
  app.add_option("--json", json_path, "Write the results as JSON to this file");

  std::string file;
  std::string datum;
  std::string subset;
  std::vector<std::string> ideal_names;
  int k = 1;
  AssumptionBounds bounds;
  int degree = 6;
  int n = 0;
  std::string dot_path;

  auto doc_input = [&](CLI::App* sub) { sub->add_option("file", file, "Workbench document, - for standard input"); };

  auto* gb = app.add_subcommand("gb", "Reduced bases of the named ideals");
  doc_input(gb);
  gb->add_option("--ideal", ideal_names, "Ideals to show (default: all)");

  auto* mono = app.add_subcommand("mono", "Monomial identities on pairs of named ideals");
  doc_input(mono);
  mono->add_option("--ideal", ideal_names, "Ideals to pair (default: all)");

  auto* dil = app.add_subcommand("dilatate", "Presentation of the deformation space");
  doc_input(dil);
  dil->add_option("--datum", datum, "Datum name");

  auto* deform = app.add_subcommand("deform", "Checks on a deformation datum");
  deform->require_subcommand(1);
  deform->fallthrough();
  auto* verify = deform->add_subcommand("verify", "Compare the full space with the S-panel");
  auto* assume = deform->add_subcommand("assume", "Bounded check of the ideal identities over S above k");
  auto* strata = deform->add_subcommand("strata", "Compare the S-stratum with the strata of the S-panel");
  for (auto* sub : {verify, assume, strata}) {
    doc_input(sub);
    sub->add_option("--datum", datum, "Datum name");
    sub->add_option("--s", subset, "Subset of 1..n, comma separated")->required();
  }
  assume->add_option("--k", k, "Index k outside S")->required();
  assume->add_option("--bound", bounds.theta_bound, "Largest |theta|")->capture_default_str();
  assume->add_option("--e", bounds.e_bound, "Largest family size")->capture_default_str();
  strata->add_option("--degree", degree, "Hilbert function degree")->capture_default_str();

  auto* poly = app.add_subcommand("polyptych", "Enumerate the panels of length n");
  poly->add_option("--n", n, "Length")->required()->check(CLI::Range(0, 5));
  poly->add_option("--dot", dot_path, "Write the panelization graph as DOT");

  app.add_subcommand("selftest", "Built-in reference computations");

  auto* check = app.add_subcommand("check", "Run the check statements of a document");
  doc_input(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::vector<CheckResult> results;
  try {
    if (*gb) {
      auto doc = load(file);
      results = run_gb(doc, pick_ideals(doc, ideal_names));
    } else if (*mono) {
      auto doc = load(file);
      results = run_mono(doc, pick_ideals(doc, ideal_names));
    } else if (*dil) {
      auto doc = load(file);
      results = run_dilatate(doc, pick_datum(doc, datum));
    } else if (*deform) {
      auto doc = load(file);
      std::string name = pick_datum(doc, datum);
      std::set<int> S = pick_subset(doc, name, subset);
      if (*verify) {
        if (S.empty() || S.size() == doc.find_datum(name)->chain.size()) {
          throw UsageError("--s must be a nonempty proper subset for verify");
        }
        results = run_verify(doc, name, S);
      } else if (*assume) {
        results = run_assume(doc, name, S, k, bounds);
      } else {
        results = run_strata(doc, name, S, degree);
      }
    } else if (*poly) {
      if (dot_path.empty()) {
        results = run_polyptych(n);
      } else {
        std::ofstream dot(dot_path);
        if (!dot) throw UsageError("cannot write " + dot_path);
        results = run_polyptych(n, &dot);
      }
    } else if (*check) {
      results = run_checks(load(file));
    } else {
      results = run_selftest();
    }
  } catch (const UsageError& e) {
    std::cerr << "defspace: " << e.what() << '\n';
    return 2;
  }

  print_text(std::cout, results);
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) {
      std::cerr << "defspace: cannot write " << json_path << '\n';
      return 2;
    }
    out << emit_json(results) << '\n';
  }
  return exit_code(results);
}
