#include "realform/cli.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "realform/harness.hpp"
#include "realform/reducible.hpp"
#include "realform/serialize.hpp"

namespace realform {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitNumerical = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Tolerance tolerance_from(double rel_flag) {
  Tolerance tol;
  if (const char* env = std::getenv("REALFORM_TOL")) {
    try {
      tol.rel = std::stod(env);
    } catch (...) {
      throw ParameterError("REALFORM_TOL is not a number");
    }
  }
  if (rel_flag > 0) tol.rel = rel_flag;
  if (tol.rel <= 0) throw ParameterError("tolerance must be positive");
  tol.abs = 1e-12;
  return tol;
}

int exit_code_for(const Error& err) {
  if (dynamic_cast<const NotApplicableError*>(&err) ||
      dynamic_cast<const SemisimplicityError*>(&err))
    return kExitPrecondition;
  if (dynamic_cast<const ParseError*>(&err) || dynamic_cast<const ParameterError*>(&err) ||
      dynamic_cast<const ValidationError*>(&err) || dynamic_cast<const ContractError*>(&err))
    return kExitInvalidInput;
  return kExitNumerical;
}

const char* error_class(const Error& err) {
  if (dynamic_cast<const ParseError*>(&err)) return "parse";
  if (dynamic_cast<const ParameterError*>(&err)) return "parameter";
  if (dynamic_cast<const ValidationError*>(&err)) return "validation";
  if (dynamic_cast<const ContractError*>(&err)) return "contract";
  if (dynamic_cast<const NotApplicableError*>(&err)) return "not-applicable";
  if (dynamic_cast<const SemisimplicityError*>(&err)) return "semi-simplicity";
  if (dynamic_cast<const DegenerateFormError*>(&err)) return "degenerate-form";
  if (dynamic_cast<const PairingError*>(&err)) return "pairing";
  if (dynamic_cast<const ConditioningError*>(&err)) return "conditioning";
  if (dynamic_cast<const IndeterminateError*>(&err)) return "indeterminate";
  if (dynamic_cast<const NumericalFailureError*>(&err)) return "numerical-failure";
  return "error";
}

json trial_to_json(const TrialReport& report) {
  json doc;
  doc["seed"] = report.seed;
  doc["tag"] = report.seeded.name();
  doc["recovered"] = report.recovered ? json(report.recovered->name()) : json(nullptr);
  doc["max_residual"] = report.max_residual;
  doc["irreducible"] = report.irreducible;
  doc["skipped"] = report.skipped;
  doc["pass"] = report.pass;
  doc["elapsed_s"] = report.elapsed_seconds;
  if (!report.detail.empty()) doc["detail"] = report.detail;
  return doc;
}

struct Options {
  std::string rep_path;
  std::string matrix_path;
  std::string involution = "phi1";
  std::string target;
  std::string decompose_op;
  std::string kind = "GL";
  std::string tag;
  bool reducible = false;
  int max_word_len = kDefaultWordCap;
  double tol_rel = -1;
  int trials = 1;
  std::uint64_t seed = 0;
  int jobs = 1;
  int generators = 2;
};

GroupKind kind_from_flag(const std::string& text, int n) {
  if (text == "GL") return {GroupFamily::GL, n};
  if (text == "SL") return {GroupFamily::SL, n};
  if (text == "O") return {GroupFamily::O, n};
  if (text == "SO") return {GroupFamily::SO, n};
  if (text == "Sp") return {GroupFamily::Sp, n};
  throw ParameterError("unknown group kind: " + text);
}

int do_classify(const Options& opt, std::ostream& out) {
  const Tolerance tol = tolerance_from(opt.tol_rel);
  const Representation rep = load_representation(read_file(opt.rep_path), tol);
  const Involution which = opt.involution == "phi2" ? Involution::Phi2 : Involution::Phi1;
  const ConjugationCertificate cert = opt.reducible
                                          ? classify_semisimple(rep, which, tol)
                                          : classify_irreducible(rep, which, tol);
  out << certificate_to_json(cert).dump(2) << "\n";
  return kExitOk;
}

int do_coords(const Options& opt, std::ostream& out) {
  const Tolerance tol = tolerance_from(opt.tol_rel);
  const Representation rep = load_representation(read_file(opt.rep_path), tol);
  const WordList words =
      word_list(rep.num_generators(), rep.dimension(), opt.max_word_len);
  out << coordinates_to_json(trace_coordinates(rep, words)).dump(2) << "\n";
  return kExitOk;
}

int do_check(const Options& opt, std::ostream& out) {
  const Tolerance tol = tolerance_from(opt.tol_rel);
  const auto tag = parse_real_form(opt.target);
  ResidualReport report;
  const std::string text = read_file(opt.rep_path);
  if (tag) {
    const Representation rep = load_representation(text, tol);
    for (int g = 0; g < rep.num_generators(); ++g) {
      const ResidualReport one = validate_membership(rep.generator(g), *tag, tol);
      for (const ResidualEntry& entry : one.entries) {
        report.entries.push_back({"generator " + std::to_string(g) + ": " + entry.equation,
                                  entry.value, entry.threshold, entry.pass});
        report.pass = report.pass && entry.pass;
        report.max_value = std::max(report.max_value, entry.value);
      }
    }
  } else {
    // ambient kinds are valid targets too, e.g. "Sp" with the document's n
    const Representation rep = load_representation(text, tol);
    const GroupKind kind = kind_from_flag(opt.target, rep.dimension());
    for (int g = 0; g < rep.num_generators(); ++g) {
      const ResidualReport one = validate_membership(rep.generator(g), kind, tol);
      for (const ResidualEntry& entry : one.entries) {
        report.entries.push_back({"generator " + std::to_string(g) + ": " + entry.equation,
                                  entry.value, entry.threshold, entry.pass});
        report.pass = report.pass && entry.pass;
        report.max_value = std::max(report.max_value, entry.value);
      }
    }
  }
  out << residual_report_to_json(report).dump(2) << "\n";
  return kExitOk;
}

int do_decompose(const Options& opt, std::ostream& out) {
  const Tolerance tol = tolerance_from(opt.tol_rel);
  const CMatrix m = load_matrix(read_file(opt.matrix_path));
  json doc;
  if (opt.decompose_op == "polar") {
    const GroupKind kind = kind_from_flag(opt.kind, static_cast<int>(m.rows()));
    const PolarPair pair = polar_in_group(m, kind, tol);
    doc["unitary"] = matrix_to_json(pair.unitary);
    doc["positive"] = matrix_to_json(pair.positive);
  } else if (opt.decompose_op == "sympeig") {
    const SymplecticEig eig = symplectic_eig(m, tol);
    doc["vectors"] = matrix_to_json(eig.vectors);
    doc["diagonal"] = std::vector<double>(eig.diagonal.data(),
                                          eig.diagonal.data() + eig.diagonal.size());
  } else if (opt.decompose_op == "kpq") {
    const KpqReduction red = reduce_to_Kpq(m, tol);
    doc["transform"] = matrix_to_json(red.transform);
    doc["signature"] = {red.signature.positive, red.signature.negative};
  } else if (opt.decompose_op == "antisymp") {
    doc["transform"] = matrix_to_json(antisymplectic_reduce(m, tol));
  } else if (opt.decompose_op == "antiorth") {
    doc["transform"] = matrix_to_json(antiorthogonal_reduce(m, tol));
  } else if (opt.decompose_op == "hilbert90") {
    const Hilbert90 split = hilbert90(m, tol);
    doc["factor"] = matrix_to_json(split.factor);
    doc["condition"] = split.condition;
  } else {
    throw ParameterError("unknown decomposition: " + opt.decompose_op);
  }
  out << doc.dump(2) << "\n";
  return kExitOk;
}

int do_roundtrip(const Options& opt, std::ostream& out) {
  const Tolerance tol = tolerance_from(opt.tol_rel);
  const auto tag = parse_real_form(opt.tag);
  if (!tag) throw ParameterError("unknown real form tag: " + opt.tag);
  if (opt.trials < 1) throw ParameterError("need at least one trial");
  const int jobs = std::max(1, opt.jobs);

  std::vector<TrialReport> reports(opt.trials);
  std::atomic<int> next{0};
  const auto worker = [&] {
    while (true) {
      const int index = next.fetch_add(1);
      if (index >= opt.trials) break;
      reports[index] = roundtrip_trial(*tag, opt.generators,
                                       opt.seed + static_cast<std::uint64_t>(index), tol);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
  }
  // emission in trial-index order regardless of completion order
  for (const TrialReport& report : reports) out << trial_to_json(report).dump() << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"classify matrix-group representations into real forms"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* classify = app.add_subcommand("classify", "conjugate into a real form");
  classify->add_option("rep", opt.rep_path, "representation JSON file")->required();
  classify->add_option("--involution", opt.involution, "phi1 or phi2")
      ->check(CLI::IsMember({"phi1", "phi2"}));
  classify->add_flag("--reducible", opt.reducible, "use the semi-simple classification");
  classify->add_option("--tol", opt.tol_rel, "relative tolerance");

  CLI::App* coords = app.add_subcommand("coords", "character coordinates");
  coords->add_option("rep", opt.rep_path, "representation JSON file")->required();
  coords->add_option("--max-word-len", opt.max_word_len, "maximum word length");
  coords->add_option("--tol", opt.tol_rel, "relative tolerance");

  CLI::App* check = app.add_subcommand("check", "membership residual report");
  check->add_option("rep", opt.rep_path, "representation JSON file")->required();
  check->add_option("--target", opt.target, "real form tag or ambient kind")->required();
  check->add_option("--tol", opt.tol_rel, "relative tolerance");

  CLI::App* decompose = app.add_subcommand("decompose", "structured decompositions");
  decompose
      ->add_option("op", opt.decompose_op,
                   "polar|sympeig|kpq|antisymp|antiorth|hilbert90")
      ->required()
      ->check(CLI::IsMember({"polar", "sympeig", "kpq", "antisymp", "antiorth", "hilbert90"}));
  decompose->add_option("matrix", opt.matrix_path, "matrix JSON file")->required();
  decompose->add_option("--kind", opt.kind, "ambient kind for polar (GL|SL|O|SO|Sp)");
  decompose->add_option("--tol", opt.tol_rel, "relative tolerance");

  CLI::App* roundtrip = app.add_subcommand("roundtrip", "seeded round-trip trials");
  roundtrip->add_option("--tag", opt.tag, "real form tag")->required();
  roundtrip->add_option("--trials", opt.trials, "number of trials");
  roundtrip->add_option("--seed", opt.seed, "base seed");
  roundtrip->add_option("--jobs", opt.jobs, "worker threads");
  roundtrip->add_option("--generators", opt.generators, "generators per sample");
  roundtrip->add_option("--tol", opt.tol_rel, "relative tolerance");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends
      out << app.help() << "\n";
      return kExitOk;
    }
    err << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
    return kExitInvalidInput;
  }

  try {
    if (app.got_subcommand(classify)) return do_classify(opt, out);
    if (app.got_subcommand(coords)) return do_coords(opt, out);
    if (app.got_subcommand(check)) return do_check(opt, out);
    if (app.got_subcommand(decompose)) return do_decompose(opt, out);
    if (app.got_subcommand(roundtrip)) return do_roundtrip(opt, out);
    err << json{{"error", "usage"}, {"message", "missing subcommand"}}.dump() << "\n";
    return kExitInvalidInput;
  } catch (const Error& e) {
    err << json{{"error", error_class(e)}, {"message", e.what()}}.dump() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return kExitNumerical;
  }
}

}  // namespace realform
