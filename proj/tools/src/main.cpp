#include "commands.hpp"
#include "text.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <stdexcept>

namespace {

using namespace weylwalk::cli;

// Folds "--config <file>" into the argument list: each key=value line becomes
// "--key value" unless the flag also appears on the command line, which wins.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw std::invalid_argument("--config needs a file");
      path = args[++i];
    } else if (args[i].starts_with("--config=")) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty()) return rest;

  std::set<std::string> given;
  for (const std::string& a : rest)
    if (a.starts_with("--")) given.insert(a.substr(0, a.find('=')));
  std::size_t head = 0;
  while (head < rest.size() && !rest[head].starts_with("-")) ++head;
  std::vector<std::string> out(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(head));
  for (auto [key, value] : parse_key_values(read_file(path))) {
    std::replace(key.begin(), key.end(), '_', '-');
    const std::string flag = "--" + key;
    if (given.count(flag)) continue;
    if (value == "true") {
      out.push_back(flag);
    } else if (value != "false") {
      out.push_back(flag);
      out.push_back(value);
    }
  }
  out.insert(out.end(), rest.begin() + static_cast<std::ptrdiff_t>(head), rest.end());
  return out;
}

// Writes to --out when given, otherwise to stdout.
template <class F>
void emit(const std::string& path, F write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot write '" + path + "'");
  write(file);
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affine Weyl groups, the building of PGL_n over F_q((t)) and random walks on it"};
  app.name("weylwalk");
  app.require_subcommand(1);
  bool stamp = false;
  std::string out_path;
  app.add_flag("--stamp", stamp, "Record a UTC timestamp in the output");
  app.set_help_all_flag("--help-all");
  app.add_option("--config", "key=value file with defaults for the subcommand flags");

  auto* rootsys = app.add_subcommand("rootsys", "Root system data")->require_subcommand(1);
  auto* show = rootsys->add_subcommand("show", "Print simple roots, coroots, coweights and W0 data as JSON");
  std::string type = "A";
  int rank = 1;
  show->add_option("--type", type, "A or C")->capture_default_str();
  show->add_option("--rank", rank)->capture_default_str();
  show->add_option("--out", out_path);

  auto* oracle = app.add_subcommand("oracle", "Exact reference computations")->require_subcommand(1);
  auto* decompose = oracle->add_subcommand("decompose", "Cartan and Iwasawa valuations of a matrix over F_q(t)");
  int q = 2;
  std::string matrix;
  decompose->add_option("--q", q)->capture_default_str();
  decompose->add_option("matrix,--matrix", matrix, "JSON rows of entries, e.g. [[\"t^-1\",\"0\"],[\"0\",\"1\"]]")
      ->required();
  decompose->add_option("--out", out_path);

  auto* ccount = oracle->add_subcommand("c-count", "Sphere counts c_{nu,mu} by Busemann offset");
  std::string nu = "w1";
  std::uint64_t basepoints = 0;
  std::uint64_t seed = 0;
  ccount->add_option("--rank", rank)->capture_default_str();
  ccount->add_option("--q", q)->capture_default_str();
  ccount->add_option("--nu", nu, "e.g. w1, w1+w2, 2w1")->capture_default_str();
  ccount->add_option("--basepoints", basepoints, "Also check this many random basepoints")->capture_default_str();
  ccount->add_option("--seed", seed)->capture_default_str();
  ccount->add_option("--out", out_path);

  auto* bld = app.add_subcommand("building", "Building enumeration")->require_subcommand(1);
  auto* sphere = bld->add_subcommand("sphere", "Sphere around o with its Busemann offset histogram (CSV)");
  sphere->add_option("--rank", rank)->capture_default_str();
  sphere->add_option("--q", q)->capture_default_str();
  sphere->add_option("--nu", nu)->capture_default_str();
  sphere->add_option("--out", out_path);

  auto* walk = app.add_subcommand("walk", "Simulate trajectories and write a CSV dataset")->require_subcommand(1);
  WalkOptions wo;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--rank", wo.rank)->capture_default_str();
    sub->add_option("--q", wo.q)->capture_default_str();
    sub->add_option("--steps", wo.steps)->capture_default_str();
    sub->add_option("--trajectories", wo.trajectories)->capture_default_str();
    sub->add_option("--seed", wo.seed)->capture_default_str();
    sub->add_option("--checkpoint-every", wo.checkpoint_every, "0 records only the endpoints")->capture_default_str();
    sub->add_option("--first-trajectory", wo.first_trajectory)->capture_default_str();
    sub->add_option("--threads", wo.threads, "Worker count; 0 uses WEYLWALK_THREADS or all cores")
        ->capture_default_str();
    sub->add_option("--out", out_path);
  };
  auto* group = walk->add_subcommand("group", "Right random walk g_1 ... g_n o");
  add_common(group);
  group->add_option("--generators", wo.generators, "Lines 'p=<rational> m=<json matrix>'; default: all R_V uniformly");
  auto* iso = walk->add_subcommand("iso", "Semi-isotropic nearest-neighbour walk");
  add_common(iso);
  iso->add_option("--kernel", wo.kernel, "Lines 'nu=<i> mu=<coords> p=<rational>'");
  iso->add_option("--preset", wo.preset, "isotropic or drift-free, used without --kernel")->capture_default_str();
  auto* reduced = walk->add_subcommand("reduced", "Reduced chain (Xbar, Y) for one coordinate");
  add_common(reduced);
  reduced->add_option("--p-up", wo.p_up, "P[+1] of the Xbar increment")->capture_default_str();
  reduced->add_option("--p-down", wo.p_down, "P[-1]; defaults to --p-up");
  reduced->add_option("--kernel", wo.kernel, "Project this kernel's factor walk instead");
  reduced->add_option("--coordinate", wo.coordinate, "Coordinate used with --kernel")->capture_default_str();

  auto* analyze_cmd = app.add_subcommand("analyze", "Estimate speed and drift of a dataset and write a JSON report");
  AnalyzeOptions ao;
  analyze_cmd->add_option("--in", ao.in)->required();
  analyze_cmd->add_option("--report", out_path);
  analyze_cmd->add_option("--lambda", ao.lambda, "Target speed; default from the recorded kernel");
  analyze_cmd->add_option("--threshold", ao.threshold, "Y threshold for reduced chains")->capture_default_str();

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (show->parsed()) {
      emit(out_path, [&](std::ostream& os) { rootsys_show(os, type, rank, stamp); });
    } else if (decompose->parsed()) {
      emit(out_path, [&](std::ostream& os) { oracle_decompose(os, q, matrix, stamp); });
    } else if (ccount->parsed()) {
      emit(out_path, [&](std::ostream& os) { oracle_ccount(os, rank, q, nu, basepoints, seed, stamp); });
    } else if (sphere->parsed()) {
      emit(out_path, [&](std::ostream& os) { building_sphere(os, rank, q, nu, stamp); });
    } else if (group->parsed() || iso->parsed() || reduced->parsed()) {
      wo.kind = group->parsed() ? "group" : iso->parsed() ? "iso" : "reduced";
      wo.stamp = stamp;
      emit(out_path, [&](std::ostream& os) { walk_command(os, wo); });
    } else if (analyze_cmd->parsed()) {
      ao.stamp = stamp;
      emit(out_path, [&](std::ostream& os) { analyze(os, ao); });
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
