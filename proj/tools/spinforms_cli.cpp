#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "spinforms/spinforms.hpp"

namespace sf = spinforms;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  std::string command;
  std::string mode = "exact";
  bool mode_given = false;
  std::uint64_t seed = 1;
  int samples = 100;
  int grid = 0; // 0: keep the section's own grid
  std::string report;
  std::string mutate;
  std::string input;
  std::string structure = "spin7";
  std::string witness;
  bool with_connection = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void print_summary(const sf::ResidualReport &r) {
  std::cout << r.title << "\n";
  for (const auto &e : r.entries) {
    std::cout << "  " << (e.pass ? "PASS " : "FAIL ") << e.name << ": " << e.value;
    if (!e.note.empty()) std::cout << " (" << e.note << ")";
    std::cout << "\n";
  }
}

json envelope(const RunConfig &cfg, const std::string &mode) {
  json j;
  j["schema"] = 1;
  j["command"] = cfg.command;
  j["mode"] = mode;
  j["seed"] = cfg.seed;
  j["samples"] = cfg.samples;
  if (!cfg.input.empty()) j["input"] = cfg.input;
  if (!cfg.mutate.empty()) j["mutate"] = cfg.mutate;
  return j;
}

int emit(const RunConfig &cfg, json doc, const std::vector<sf::ResidualReport> &reports) {
  bool passed = true;
  json arr = json::array();
  for (const auto &r : reports) {
    arr.push_back(sf::report_to_json(r));
    passed = passed && r.passed();
  }
  doc["reports"] = arr;
  doc["passed"] = passed;
  if (cfg.report == "-") {
    std::cout << doc.dump(2) << "\n";
  } else {
    for (const auto &r : reports) print_summary(r);
    std::cout << (passed ? "PASS" : "FAIL") << "\n";
    if (!cfg.report.empty()) {
      std::ofstream out(cfg.report);
      if (!out) throw UsageError("cannot write report to " + cfg.report);
      out << doc.dump(2) << "\n";
    }
  }
  return passed ? kExitPass : kExitFail;
}

template <sf::FieldScalar S> int verify_identities(const RunConfig &cfg) {
  sf::IdentityConfig ic;
  ic.seed = cfg.seed;
  ic.samples = cfg.samples;
  if (!cfg.mutate.empty()) ic.mutation = sf::parse_mutation(cfg.mutate);
  return emit(cfg, envelope(cfg, sf::to_string(sf::mode_of<S>())), {sf::verify_identities<S>(ic)});
}

sf::Mode file_mode(const RunConfig &cfg, sf::Mode detected) {
  if (cfg.mode_given && sf::parse_mode(cfg.mode) != detected)
    throw UsageError(std::string("--mode ") + cfg.mode + " conflicts with the input file, which is " +
                     sf::to_string(detected));
  return detected;
}

template <sf::FieldScalar S> int fm_check(const RunConfig &cfg, const json &doc) {
  auto section = sf::section_from_json<S>(doc);
  if (cfg.grid > 0) section.grid = cfg.grid;
  sf::SweepOptions opt;
  opt.with_connection = cfg.with_connection;
  const auto &sd = sf::Spin7Data<S>::standard();
  const auto summary = sf::equivalence_sweep(sd, section, opt);
  json env = envelope(cfg, sf::to_string(sf::mode_of<S>()));
  env["case"] = sf::to_string(section.kind);
  env["grid"] = section.grid;
  env["points"] = summary.points;
  env["agreement"] = summary.all_agree();
  return emit(cfg, env, {summary.report});
}

template <sf::FieldScalar S> int decompose(const RunConfig &cfg, const json &doc) {
  const auto xi = sf::form_from_json<S>(doc);
  sf::ResidualReport rep;
  auto norm = [](const S &sq) { return std::sqrt(std::max(0.0, sf::ScalarTraits<S>::to_double(sq))); };
  auto sq_note = [](const S &sq) { return "squared norm " + sf::ScalarTraits<S>::to_string(sq); };
  const S total = sf::norm_squared(xi);
  std::vector<std::pair<std::string, S>> parts;
  if (cfg.structure == "spin7") {
    if (xi.dim() != 8) throw UsageError("decompose: spin7 needs a form on R^8");
    if (xi.grade() != 2 && xi.grade() != 4 && xi.grade() != 6)
      throw UsageError("decompose: spin7 supports grades 2, 4 and 6");
    const int k = xi.grade();
    const auto &sd = sf::Spin7Data<S>::standard();
    const auto p = sf::project7(sd, k, xi);
    const std::string rest = k == 4 ? "complement (1 + 27 + 35)" : "complement (21)";
    parts = {{"pi^" + std::to_string(k) + "_7", sf::norm_squared(p)}, {rest, sf::norm_squared(sf::Form<S>(xi - p))}};
    rep.title = "Spin(7) decomposition of a " + std::to_string(k) + "-form";
  } else if (cfg.structure == "g2") {
    if (xi.dim() != 7) throw UsageError("decompose: g2 needs a form on R^7");
    if (xi.grade() != 2) throw UsageError("decompose: g2 supports grade 2 only");
    const auto split = sf::g2_project2(sf::G2Data<S>::standard(), xi);
    parts = {{"pi^2_7", sf::norm_squared(split.p7)}, {"pi^2_14", sf::norm_squared(split.p14)}};
    rep.title = "G2 decomposition of a 2-form";
  } else {
    throw UsageError("decompose: --structure must be g2 or spin7");
  }
  const char *anchor = "irreducible decomposition";
  rep.add({"|xi|", anchor, "|xi|", norm(total), 0, true, sq_note(total)});
  S sum(0);
  for (const auto &[name, sq] : parts) {
    rep.add({"|" + name + " xi|", anchor, name + " xi", norm(sq), 0, true, sq_note(sq)});
    sum = sum + sq;
  }
  const S defect = total - sum;
  bool ok;
  if constexpr (sf::is_exact_v<S>) ok = sf::is_zero(defect);
  else ok = std::abs(defect) <= 1e-9 * std::max(1.0, total);
  rep.add({"Pythagoras", anchor, "|xi|^2 = sum of the squared component norms",
           sf::ScalarTraits<S>::magnitude(defect), sf::is_exact_v<S> ? 0.0 : 1e-9, ok, ""});
  json env = envelope(cfg, sf::to_string(sf::mode_of<S>()));
  env["structure"] = cfg.structure;
  env["grade"] = xi.grade();
  return emit(cfg, env, {rep});
}

int counterexample_search(const RunConfig &cfg) {
  if (cfg.mode_given && cfg.mode != "float") throw UsageError("counterexample-search runs in float mode only");
  sf::SearchOptions opt;
  opt.seed = cfg.seed;
  opt.restarts = cfg.samples;
  const auto res = sf::counterexample_search(sf::Spin7Data<double>::standard(), opt);
  sf::ResidualReport rep;
  rep.title = "search for F with first dDT residual zero and second nonzero";
  const char *anchor = "first dDT equation does not imply the second";
  std::string note = std::to_string(res.restarts_used) + " restarts, " + std::to_string(res.converged) +
                     " reached the first equation";
  rep.add({"witness found", anchor, "|pi^2_7(F + *F^3/6)| < 1e-9 and |pi^4_7(F^2)| > 1e-6", res.found ? 1.0 : 0.0,
           0, res.found, note});
  if (res.found) {
    rep.add({"first residual", anchor, "|pi^2_7(F + *F^3/6)|", res.first_norm, opt.first_tolerance,
             res.first_norm < opt.first_tolerance, ""});
    rep.add({"second residual", anchor, "|pi^4_7(F^2)|", res.second_norm, opt.second_threshold,
             res.second_norm > opt.second_threshold, ""});
    rep.add({"Jacobian determinant", anchor, "det(df) = 1", res.det, 1e-9, std::abs(res.det - 1) < 1e-9, ""});
  }
  json env = envelope(cfg, "float");
  if (res.found) {
    json w;
    w["jacobian"] = res.jacobian;
    w["first_norm"] = res.first_norm;
    w["second_norm"] = res.second_norm;
    w["det"] = res.det;
    w["seed"] = cfg.seed;
    env["witness"] = w;
    if (!cfg.witness.empty()) {
      std::ofstream out(cfg.witness);
      if (!out) throw UsageError("cannot write witness to " + cfg.witness);
      out << w.dump(2) << "\n";
    }
  }
  return emit(cfg, env, {rep});
}

int dispatch(const RunConfig &cfg) {
  if (cfg.command == "verify-identities") {
    if (sf::parse_mode(cfg.mode) == sf::Mode::exact) return verify_identities<sf::Rational>(cfg);
    return verify_identities<double>(cfg);
  }
  if (cfg.command == "counterexample-search") return counterexample_search(cfg);
  const json doc = sf::read_json_file(cfg.input);
  if (cfg.command == "fm-check") {
    const auto m = file_mode(cfg, sf::section_file_mode(doc));
    return m == sf::Mode::exact ? fm_check<sf::Rational>(cfg, doc) : fm_check<double>(cfg, doc);
  }
  const auto m = file_mode(cfg, sf::form_file_mode(doc));
  return m == sf::Mode::exact ? decompose<sf::Rational>(cfg, doc) : decompose<double>(cfg, doc);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exterior-algebra checks for G2 and Spin(7) deformed Donaldson-Thomas connections"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App *sub) {
    sub->add_option("--mode", cfg.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--seed", cfg.seed, "seed for every random input");
    sub->add_option("--samples", cfg.samples, "number of random samples (restarts for the search)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--report", cfg.report, "write the JSON report here ('-' prints it instead of the summary)");
  };

  auto *verify = app.add_subcommand("verify-identities", "run the identity suite");
  common(verify);
  verify->add_option("--mutate", cfg.mutate, "fault injection, e.g. phi:flip-sign:e246");

  auto *fm = app.add_subcommand("fm-check", "equivalence sweep over a graph section");
  common(fm);
  fm->add_option("section", cfg.input, "section JSON file")->required();
  fm->add_option("--grid", cfg.grid, "grid points per base axis (overrides the file)")->check(CLI::PositiveNumber);
  fm->add_flag("--with-connection", cfg.with_connection, "include the base connection A");

  auto *dec = app.add_subcommand("decompose", "norms of the irreducible components of a form");
  common(dec);
  dec->add_option("form", cfg.input, "form JSON file")->required();
  dec->add_option("--structure", cfg.structure, "g2 or spin7")->check(CLI::IsMember({"g2", "spin7"}));

  auto *search = app.add_subcommand("counterexample-search", "look for a linear section solving only the first equation");
  common(search);
  search->add_option("--witness", cfg.witness, "write the witness JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  for (auto *sub : {verify, fm, dec, search})
    if (sub->parsed()) {
      cfg.command = sub->get_name();
      cfg.mode_given = sub->count("--mode") > 0;
    }
  if (cfg.command == "counterexample-search" && !cfg.mode_given) cfg.mode = "float";

  try {
    return dispatch(cfg);
  } catch (const sf::InputError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const sf::ContractViolation &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception &e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return kExitUsage;
  }
}
