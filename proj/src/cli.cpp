#include "kboxkit/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "kboxkit/analysis.hpp"
#include "kboxkit/construct.hpp"
#include "kboxkit/error.hpp"
#include "kboxkit/extend.hpp"
#include "kboxkit/random_instances.hpp"
#include "kboxkit/serialize.hpp"

namespace kboxkit::cli {

namespace {

struct Options {
  std::string out_path;
  std::string mode_text = "exact";
  int k = 0;
};

lp::Mode effective_mode(const Options& opts) {
  if (const char* env = std::getenv("KBOXKIT_MODE"); env != nullptr && *env != '\0') return lp::parse_mode(env);
  return lp::parse_mode(opts.mode_text);
}

void emit(const Options& opts, std::ostream& out, const std::string& text) {
  if (opts.out_path.empty()) {
    out << text;
  } else {
    write_file(opts.out_path, text);
  }
}

void require_k(const GridMesh& mesh, int k) {
  if (k < 1 || k > mesh.dim()) {
    throw invalid_parameter("--k must lie in [1, " + std::to_string(mesh.dim()) + "], got " + std::to_string(k));
  }
}

Json sure_loss_json(const SureLossError& e) {
  Json j;
  j["status"] = "asl-violated";
  j["message"] = e.what();
  j["violating_union"] = to_json(e.witness());
  return j;
}

int exit_for(const Error& e) {
  return e.kind() == ErrorKind::InternalInvariant ? kInternal : kPrecondition;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"kboxkit: sure loss, coherence and k-increasing constructions for bounds on grids"};
  app.require_subcommand(1);
  Options opts;
  std::function<int()> action;

  auto add_common = [&](CLI::App* cmd, bool with_k) {
    cmd->add_option("--out", opts.out_path, "Write the report to this file instead of stdout");
    cmd->add_option("--mode", opts.mode_text, "exact or float (KBOXKIT_MODE overrides)")
        ->check(CLI::IsMember({"exact", "float"}));
    if (with_k) cmd->add_option("--k", opts.k, "Order of the boxes")->required();
  };

  // gen
  std::string family_text;
  int gen_n = 0, gen_g = 0;
  std::string label;
  auto* gen = app.add_subcommand("gen", "Sample a built-in family on a uniform grid");
  gen->add_option("family", family_text, "product, min, lukasiewicz, drastic or frank(theta)")->required();
  gen->add_option("n", gen_n, "Dimension")->required();
  gen->add_option("g", gen_g, "Points per axis")->required();
  gen->add_option("--label", label, "Label stored in the file");
  add_common(gen, false);
  gen->callback([&] {
    action = [&] {
      GridFunction f = sample_family(parse_family(family_text), make_uniform_mesh(gen_n, gen_g));
      if (!label.empty()) f.label = label;
      emit(opts, out, dump(to_json(f)));
      return int(kSatisfied);
    };
  });

  // structural
  std::string path_a, path_b;
  std::string require_class = "any";
  auto* structural = app.add_subcommand("structural", "Groundedness, monotonicity and marginal checks");
  structural->add_option("file", path_a, "Grid function JSON")->required();
  structural->add_option("--require", require_class, "Exit 1 unless the function is in this class")
      ->check(CLI::IsMember({"any", "standardized", "semicopula"}));
  add_common(structural, false);
  structural->callback([&] {
    action = [&] {
      StructuralReport report = structural_check(load_grid_function(path_a));
      emit(opts, out, dump(to_json(report)));
      const BoundClass cls = parse_bound_class(require_class);
      const bool ok = cls == BoundClass::Any || (cls == BoundClass::Standardized && report.standardized()) ||
                      (cls == BoundClass::Semicopula && report.semicopula());
      return int(ok ? kSatisfied : kViolated);
    };
  });

  std::string class_text = "standardized";
  auto add_pair = [&](CLI::App* cmd) {
    cmd->add_option("lower", path_a, "Lower bound JSON")->required();
    cmd->add_option("upper", path_b, "Upper bound JSON")->required();
  };
  auto add_class = [&](CLI::App* cmd) {
    cmd->add_option("--class", class_text, "Structural class of the bounds")
        ->check(CLI::IsMember({"any", "standardized", "semicopula"}));
  };

  // check-asl
  auto* check = app.add_subcommand("check-asl", "Decide avoidance of sure loss");
  add_pair(check);
  add_class(check);
  add_common(check, true);
  check->callback([&] {
    action = [&] {
      GridFunction a = load_grid_function(path_a), b = load_grid_function(path_b);
      require_k(a.mesh, opts.k);
      AslVerdict verdict = check_asl(a, b, opts.k, parse_bound_class(class_text), effective_mode(opts));
      emit(opts, out, dump(to_json(verdict)));
      return int(verdict.satisfied ? kSatisfied : kViolated);
    };
  });

  // construct
  std::string direction_text = "below";
  std::string order_text = "lex";
  auto* construct = app.add_subcommand("construct", "Sweep the bounds into a k-increasing function");
  add_pair(construct);
  construct->add_option("--direction", direction_text, "below or above")
      ->check(CLI::IsMember({"below", "above"}));
  construct->add_option("--order", order_text, "lex or file:<path> (JSON array of nodes)");
  add_common(construct, true);
  construct->callback([&] {
    action = [&] {
      GridFunction a = load_grid_function(path_a), b = load_grid_function(path_b);
      require_k(a.mesh, opts.k);
      std::optional<std::vector<NodeIndex>> order;
      if (order_text.rfind("file:", 0) == 0) {
        order = load_order(order_text.substr(5), a.mesh);
      } else if (order_text != "lex") {
        throw invalid_parameter("--order must be 'lex' or 'file:<path>'");
      }
      try {
        SweepTrace trace = sweep(a, b, opts.k, parse_direction(direction_text), order, effective_mode(opts));
        KIncreasingReport check = check_k_increasing(trace.result, opts.k);
        Json j = to_json(trace);
        j["k_increasing"] = to_json(check);
        emit(opts, out, dump(j));
        if (!check.passed && effective_mode(opts) == lp::Mode::Exact) {
          err << "error: sweep result is not k-increasing\n";
          return int(kInternal);
        }
        return int(kSatisfied);
      } catch (const SureLossError& e) {
        emit(opts, out, dump(sure_loss_json(e)));
        return int(kViolated);
      }
    };
  });

  // coherence
  std::string side_text = "upper";
  auto* coherence = app.add_subcommand("coherence", "Per-node coherence of one bound");
  add_pair(coherence);
  coherence->add_option("--side", side_text, "upper or lower")->check(CLI::IsMember({"upper", "lower"}));
  add_class(coherence);
  add_common(coherence, true);
  coherence->callback([&] {
    action = [&] {
      GridFunction a = load_grid_function(path_a), b = load_grid_function(path_b);
      require_k(a.mesh, opts.k);
      try {
        CoherenceReport report = check_coherence(a, b, opts.k, parse_side(side_text), parse_bound_class(class_text),
                                                 effective_mode(opts));
        emit(opts, out, dump(to_json(report)));
        return int(report.coherent ? kSatisfied : kViolated);
      } catch (const SureLossError& e) {
        emit(opts, out, dump(sure_loss_json(e)));
        return int(kViolated);
      }
    };
  });

  // functionals
  std::vector<std::string> node_texts;
  bool sum_inequality = false;
  auto* functionals = app.add_subcommand("functionals", "Tabulate the infimum functionals per node");
  add_pair(functionals);
  functionals->add_option("--node", node_texts, "Restrict to these nodes, given as comma-separated axis indices");
  functionals->add_flag("--sum-inequality", sum_inequality,
                        "Report P_neg + P_pos >= B - A per node instead (exit 1 on a violation)");
  add_common(functionals, true);
  functionals->callback([&] {
    action = [&] {
      GridFunction a = load_grid_function(path_a), b = load_grid_function(path_b);
      require_k(a.mesh, opts.k);
      if (sum_inequality) {
        try {
          SumInequalityReport report = check_sum_inequality(a, b, opts.k, effective_mode(opts));
          emit(opts, out, dump(to_json(report)));
          return int(report.violations.empty() ? kSatisfied : kViolated);
        } catch (const SureLossError& e) {
          emit(opts, out, dump(sure_loss_json(e)));
          return int(kViolated);
        }
      }
      std::vector<NodeIndex> nodes;
      for (const auto& text : node_texts) {
        NodeIndex node;
        std::stringstream ss(text);
        std::string part;
        while (std::getline(ss, part, ',')) {
          try {
            node.push_back(std::stoi(part));
          } catch (const std::exception&) {
            throw parse_error("malformed node '" + text + "'");
          }
        }
        if (!a.mesh.contains(node)) throw invalid_parameter("node '" + text + "' is not a mesh node");
        nodes.push_back(std::move(node));
      }
      emit(opts, out, dump(to_json(functional_table(a, b, opts.k, effective_mode(opts), nodes))));
      return int(kSatisfied);
    };
  });

  // extend-eval
  std::string ext_text = "sup";
  std::vector<std::string> point_texts;
  std::string csv_path;
  auto* extend = app.add_subcommand("extend-eval", "Evaluate the cube extension of a grid function");
  extend->add_option("base", path_a, "Grid function JSON")->required();
  extend->add_option("--ext", ext_text, "sup, inf or lipschitz")->check(CLI::IsMember({"sup", "inf", "lipschitz"}));
  auto* point_opt = extend->add_option("--point", point_texts, "Query point as comma-separated rationals");
  auto* csv_opt = extend->add_option("--csv", csv_path, "CSV file with one query point per line");
  point_opt->excludes(csv_opt);
  add_common(extend, false);
  extend->callback([&] {
    action = [&] {
      ExtendedFunction ext(load_grid_function(path_a), parse_extension_mode(ext_text));
      std::ostringstream result;
      if (!csv_path.empty()) {
        std::ifstream in(csv_path);
        if (!in) throw Error(ErrorKind::IoError, "cannot open '" + csv_path + "' for reading");
        evaluate_csv(ext, in, result);
      } else {
        if (point_texts.empty()) throw invalid_parameter("give --point or --csv");
        std::ostringstream lines;
        for (const auto& p : point_texts) lines << p << '\n';
        std::istringstream in(lines.str());
        evaluate_csv(ext, in, result);
      }
      emit(opts, out, result.str());
      return int(kSatisfied);
    };
  });

  // fuzz
  std::uint64_t seed = 1;
  int fuzz_n = 2, fuzz_g = 3, count = 10;
  auto* fuzz = app.add_subcommand("fuzz", "Random standardized pairs: duality and sweep checks");
  fuzz->add_option("--seed", seed, "Random seed");
  fuzz->add_option("--n", fuzz_n, "Dimension");
  fuzz->add_option("--g", fuzz_g, "Points per axis");
  fuzz->add_option("--count", count, "Number of instances")->check(CLI::PositiveNumber);
  add_common(fuzz, true);
  fuzz->callback([&] {
    action = [&] {
      const GridMesh mesh = make_uniform_mesh(fuzz_n, fuzz_g);
      require_k(mesh, opts.k);
      const lp::Mode mode = effective_mode(opts);
      Rng rng(seed);
      Json summary;
      summary["seed"] = seed;
      summary["n"] = fuzz_n;
      summary["g"] = fuzz_g;
      summary["k"] = opts.k;
      Json instances = Json::array();
      int satisfied = 0, failures = 0;
      for (int i = 0; i < count; ++i) {
        BoundPair pair = random_standardized_pair(rng, mesh);
        Json e;
        e["index"] = i;
        e["kind"] = to_string(pair.kind);
        AslVerdict verdict = check_asl(pair.lower, pair.upper, opts.k, BoundClass::Standardized, mode);
        e["satisfied"] = verdict.satisfied;
        e["min_l"] = rational_json(verdict.min_l_value);
        if (verdict.satisfied) {
          ++satisfied;
          bool ok = true;
          for (Direction d : {Direction::Below, Direction::Above}) {
            SweepTrace trace = sweep(pair.lower, pair.upper, opts.k, d, std::nullopt, mode);
            ok = ok && check_k_increasing(trace.result, opts.k).passed;
          }
          e["sweeps_k_increasing"] = ok;
          if (!ok) ++failures;
        }
        instances.push_back(std::move(e));
      }
      summary["satisfied"] = satisfied;
      summary["violated"] = count - satisfied;
      summary["failures"] = failures;
      summary["instances"] = std::move(instances);
      emit(opts, out, dump(summary));
      return int(failures == 0 ? kSatisfied : kInternal);
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? int(kSatisfied) : int(kPrecondition);
  }

  try {
    return action ? action() : int(kPrecondition);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return kInternal;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace kboxkit::cli
