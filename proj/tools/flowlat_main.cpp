#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "flowlat/counting.hpp"
#include "flowlat/errors.hpp"
#include "flowlat/flow.hpp"
#include "flowlat/guard.hpp"
#include "flowlat/invariants.hpp"
#include "flowlat/normality.hpp"

namespace {

using flowlat::BigInt;
using ordered_json = nlohmann::ordered_json;

std::string join_invocation(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

flowlat::Tree load_tree(const std::string& source) {
  if (source.rfind("builtin:", 0) == 0 || source.find('(') != std::string::npos) {
    return flowlat::tree_from_source(source);
  }
  std::ifstream in(source);
  if (!in) throw flowlat::input_error("cannot read tree file '" + source + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return flowlat::parse_tree(buffer.str());
}

void write_output(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw flowlat::input_error("cannot open output file '" + out_path + "'");
  out << payload;
}

ordered_json base_json(const std::string& invocation) {
  ordered_json j;
  j["version"] = flowlat::kVersion;
  j["invocation"] = invocation;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattice polytopes of group-based models on trees: vertices, exact "
               "Ehrhart/Hilbert counts, normality and toric-intersection checks"};
  app.require_subcommand(1);
  const std::string invocation = join_invocation(argc, argv);

  std::string tree_source;
  std::string group_spec;
  std::string out_path;
  std::string file_path;
  int threads = 1;
  std::function<void()> run;

  auto add_tree_group = [&](CLI::App* cmd) {
    cmd->add_option("--tree", tree_source, "tree: file path, Newick text, or builtin:<name>")
        ->required();
    cmd->add_option("--group", group_spec, "group spec, e.g. Z2 or Z2xZ2")->required();
    cmd->add_option("--out", out_path, "write output to this file instead of stdout");
    cmd->add_option("--threads", threads, "worker cap for parallel enumeration")
        ->check(CLI::PositiveNumber);
  };

  // vertices ----------------------------------------------------------------
  auto* vertices_cmd = app.add_subcommand("vertices", "emit the polytope vertex matrix");
  add_tree_group(vertices_cmd);
  vertices_cmd->callback([&] {
    run = [&] {
      const auto tree = load_tree(tree_source);
      const auto group = flowlat::parse_group(group_spec);
      const auto vm = flowlat::vertex_matrix(tree, group);
      std::string payload = "# rows=" + std::to_string(vm.rows) + " cols=" +
                            std::to_string(vm.cols) + " order=edge-major\n";
      for (int c = 0; c < vm.cols; ++c) {
        for (int r = 0; r < vm.rows; ++r) {
          if (r) payload += ' ';
          payload += vm.at(r, c) ? '1' : '0';
        }
        payload += '\n';
      }
      write_output(out_path, payload);
    };
  });

  // count -------------------------------------------------------------------
  auto* count_cmd = app.add_subcommand("count", "exact Ehrhart or Hilbert count of a dilation");
  add_tree_group(count_cmd);
  int dilation = 0;
  std::string kind = "ehrhart";
  std::string method = "fiber";
  std::int64_t mod = 0;
  count_cmd->add_option("--dilation", dilation, "dilation n >= 0")->required();
  count_cmd->add_option("--kind", kind, "ehrhart | hilbert")
      ->check(CLI::IsMember({"ehrhart", "hilbert"}));
  count_cmd->add_option("--method", method, "direct | fiber")
      ->check(CLI::IsMember({"direct", "fiber"}));
  count_cmd->add_option("--mod", mod, "also report the count modulo this value");
  count_cmd->callback([&] {
    run = [&] {
      if (dilation < 0) throw flowlat::input_error("dilation must be nonnegative");
      if (mod < 0) throw flowlat::input_error("modulus must be positive");
      const auto tree = load_tree(tree_source);
      const auto group = flowlat::parse_group(group_spec);
      BigInt count;
      if (kind == "ehrhart") {
        count = method == "direct" ? flowlat::ehrhart_count(tree, group, dilation)
                                   : flowlat::ehrhart_via_fibers(tree, group, dilation, threads);
      } else {
        count = method == "direct" ? flowlat::hilbert_count(tree, group, dilation)
                                   : flowlat::hilbert_via_fibers(tree, group, dilation, threads);
      }
      ordered_json j = base_json(invocation);
      j["tree"] = tree_source;
      j["group"] = group.spec();
      j["n"] = dilation;
      j["kind"] = kind;
      j["method"] = method;
      j["count"] = flowlat::to_decimal(count);
      if (mod > 0) {
        j["mod"] = mod;
        j["count_mod"] = flowlat::to_decimal(count % mod);
      }
      write_output(out_path, j.dump(2) + "\n");
    };
  });

  // normality ---------------------------------------------------------------
  auto* normality_cmd = app.add_subcommand("normality", "bounded normality check");
  add_tree_group(normality_cmd);
  int max_n = 3;
  normality_cmd->add_option("--max-n", max_n, "check dilations 2..N (default 3)");
  normality_cmd->callback([&] {
    run = [&] {
      const auto tree = load_tree(tree_source);
      const auto group = flowlat::parse_group(group_spec);
      const auto report = flowlat::normality_check(tree, group, max_n);
      ordered_json j = base_json(invocation);
      j["tree"] = tree_source;
      j["group"] = group.spec();
      j["bound"] = report.bound;
      j["verdict"] = report.normal ? ("normal-up-to-" + std::to_string(report.bound))
                                   : std::string("non-normal");
      if (report.witness) {
        j["witness"]["dilation"] = report.witness->dilation;
        j["witness"]["point"] = report.witness->point;
      }
      write_output(out_path, j.dump(2) + "\n");
    };
  });

  // very-ample ----------------------------------------------------------------
  auto* ample_cmd = app.add_subcommand("very-ample", "bounded very-ampleness check");
  add_tree_group(ample_cmd);
  int max_deg = 3;
  ample_cmd->add_option("--max-deg", max_deg, "search dilations up to D (default 3)");
  ample_cmd->callback([&] {
    run = [&] {
      const auto tree = load_tree(tree_source);
      const auto group = flowlat::parse_group(group_spec);
      const auto report = flowlat::very_ample_check(tree, group, max_deg);
      ordered_json j = base_json(invocation);
      j["tree"] = tree_source;
      j["group"] = group.spec();
      j["bound"] = report.bound;
      j["verdict"] = report.witness ? std::string("not-very-ample")
                                    : ("inconclusive-up-to-" + std::to_string(report.bound));
      if (report.witness) {
        j["witness"]["vertex"] = report.witness->vertex;
        j["witness"]["dilation"] = report.witness->dilation;
        j["witness"]["point"] = report.witness->point;
      }
      write_output(out_path, j.dump(2) + "\n");
    };
  });

  // intersect -----------------------------------------------------------------
  auto* intersect_cmd =
      app.add_subcommand("intersect", "toric-intersection dimension check for a claw tree");
  int claw_n = 0;
  int first_k = 0;
  bool pairs_only = false;
  intersect_cmd->add_option("--claw", claw_n, "claw size n >= 4")->required();
  intersect_cmd->add_option("--group", group_spec, "group spec")->required();
  intersect_cmd->add_option("--first", first_k, "use only the first k prolongations");
  intersect_cmd->add_flag("--pairs-only", pairs_only,
                          "restrict to splits whose smaller side has two leaves");
  intersect_cmd->add_option("--out", out_path, "write output to this file instead of stdout");
  intersect_cmd->callback([&] {
    run = [&] {
      const auto group = flowlat::parse_group(group_spec);
      const auto report = flowlat::intersect_claw(claw_n, group, first_k, pairs_only);
      ordered_json j = base_json(invocation);
      // The verdict compares torus dimensions only; it says nothing
      // scheme-theoretic about the intersection.
      j["check"] = "torus-dimension";
      j["claw"] = report.claw_size;
      j["group"] = group.spec();
      j["sockets"] = report.sockets;
      j["claw_rank"] = report.claw_rank;
      j["kernel_sum_dimension"] = report.kernel_sum_dimension;
      j["torus_dimension"] = report.torus_dimension;
      j["prolongations_used"] = report.prolongations_used;
      j["prolongations_available"] = report.prolongations_available;
      j["equals_claw"] = report.equals_claw;
      write_output(out_path, j.dump(2) + "\n");
    };
  });

  // verify-binomial -------------------------------------------------------------
  auto* verify_cmd = app.add_subcommand("verify-binomial", "check a binomial pair file");
  verify_cmd->add_option("--file", file_path, "binomial pair file")->required();
  verify_cmd->add_option("--out", out_path, "write output to this file instead of stdout");
  verify_cmd->callback([&] {
    run = [&] {
      std::ifstream in(file_path);
      if (!in) throw flowlat::input_error("cannot read binomial file '" + file_path + "'");
      const auto pair = flowlat::read_binomial(in);
      ordered_json j = base_json(invocation);
      j["file"] = file_path;
      j["degree"] = pair.degree;
      j["group"] = pair.group.spec();
      j["valid"] = flowlat::verify_binomial(pair);
      write_output(out_path, j.dump(2) + "\n");
    };
  });

  // subdivide ---------------------------------------------------------------
  auto* subdivide_cmd =
      app.add_subcommand("subdivide", "find a subdivision witness for a claw binomial");
  subdivide_cmd->add_option("--file", file_path, "binomial pair file")->required();
  subdivide_cmd->add_option("--out", out_path, "write output to this file instead of stdout");
  subdivide_cmd->callback([&] {
    run = [&] {
      std::ifstream in(file_path);
      if (!in) throw flowlat::input_error("cannot read binomial file '" + file_path + "'");
      const auto pair = flowlat::read_binomial(in);
      const auto witness = flowlat::find_subdivision(pair);
      ordered_json j = base_json(invocation);
      j["file"] = file_path;
      j["found"] = witness.has_value();
      if (witness) {
        j["rows"] = witness->rows;
        j["prolongation"] = witness->prolongation.to_newick();
      }
      write_output(out_path, j.dump(2) + "\n");
    };
  });

  // conjecture ----------------------------------------------------------------
  auto* conjecture_cmd = app.add_subcommand("conjecture", "evidence gatherers for conjectures");
  auto* jc_cmd = conjecture_cmd->add_subcommand(
      "jc-quadrics", "degree-2 subdivision cover for the binary model on a claw");
  conjecture_cmd->require_subcommand(1);
  jc_cmd->add_option("--claw", claw_n, "claw size, 4..10")->required();
  jc_cmd->add_option("--out", out_path, "write output to this file instead of stdout");
  jc_cmd->callback([&] {
    run = [&] {
      const auto report = flowlat::jc_quadric_cover(claw_n);
      ordered_json j = base_json(invocation);
      j["claw"] = report.claw_size;
      j["binomials"] = report.binomial_count;
      j["all_covered"] = report.all_covered;
      j["three_splits_sufficient"] = report.three_splits_sufficient;
      write_output(out_path, j.dump(2) + "\n");
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    run();
  } catch (const flowlat::guard_error& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return 3;
  } catch (const flowlat::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
