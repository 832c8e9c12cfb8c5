// ast3: build, verify and tabulate association schemes on triples arising
// from two-transitive affine (semi)linear group actions on GF(p^alpha)^k.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ast/artifact.hpp"
#include "ast/closedform.hpp"
#include "ast/common.hpp"
#include "ast/report.hpp"

namespace {

struct options {
  uint32_t p = 0, alpha = 1, omega = 1, k = 2;
  std::string variant_s = "asl";
  std::string regularity_s;  // empty = auto: full iff N <= 64
  bool oracle = false;
  std::string format_s = "json";
  std::string out_path;
  unsigned workers = 0;
  uint64_t seed = ast::default_sampling_seed;
  std::string artifact_a, artifact_b;
};

void add_spec_flags(CLI::App* cmd, options& o, bool required) {
  auto* p = cmd->add_option("-p", o.p, "field characteristic (prime)");
  cmd->add_option("-a", o.alpha, "degree alpha: the field is GF(p^alpha)");
  cmd->add_option("-w", o.omega, "subfield degree omega: H fixes GF(p^omega)");
  cmd->add_option("-k", o.k, "dimension of the point space GF(p^alpha)^k");
  cmd->add_option("--variant", o.variant_s, "acting group family")
      ->check(CLI::IsMember({"asl", "agl"}));
  if (required) p->required();
}

void add_output_flags(CLI::App* cmd, options& o) {
  cmd->add_option("--format", o.format_s, "report format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("-o", o.out_path, "output path");
  cmd->add_option("--workers", o.workers, "worker threads (0 = hardware)");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  os.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!os) throw ast::io_error("cannot write " + path);
}

void emit(const std::string& report, const std::string& out_path) {
  std::cout << report;
  if (!out_path.empty()) write_file(out_path, report);
}

ast::group_spec spec_from(const options& o) {
  if (o.p == 0)
    throw std::invalid_argument("spec flags (-p, -a, -w, -k) are required");
  return ast::make_spec(o.p, o.alpha, o.omega, o.k,
                        ast::variant_from_name(o.variant_s));
}

int cmd_build(const options& o) {
  ast::group_spec g = spec_from(o);
  ast::triple_partition tp = ast::label_all_triples(g, o.workers);
  std::string art =
      o.out_path.empty() ? ast::default_artifact_name(g) : o.out_path;
  ast::write_artifact(art, ast::header_for(g), tp);
  ast::name_table nt = ast::build_name_table(g, tp);
  write_file(art + ".json", ast::render_scheme(g, tp, nt, nullptr, nullptr,
                                               ast::out_format::json));
  std::cout << ast::render_scheme(g, tp, nt, nullptr, nullptr,
                                  ast::format_from_name(o.format_s));
  return 0;
}

int cmd_verify(const options& o) {
  std::optional<ast::artifact> art;
  if (!o.artifact_a.empty()) art = ast::read_artifact(o.artifact_a);
  ast::group_spec g =
      art ? ast::spec_from_header(art->header) : spec_from(o);
  ast::triple_partition tp = art ? std::move(art->partition)
                                 : ast::label_all_triples(g, o.workers);

  ast::verify_summary vs;
  vs.mode = o.regularity_s.empty()
                ? (tp.labels.size() <= 64ull * 64 * 64 ? ast::regularity_mode::full
                                                       : ast::regularity_mode::sampled)
                : (o.regularity_s == "full" ? ast::regularity_mode::full
                                            : ast::regularity_mode::sampled);
  vs.valency = ast::verify_valency_condition(tp, o.workers);
  ast::regularity_options ropt;
  ropt.mode = vs.mode;
  ropt.seed = o.seed;
  ropt.workers = o.workers;
  vs.regularity = ast::verify_principal_regularity(tp, ropt);
  vs.s3 = ast::verify_s3_closure(tp, o.workers);
  vs.trivial = ast::verify_trivial_relations(tp, o.workers);
  if (o.oracle) {
    ast::triple_partition ground = ast::bfs_orbit_oracle(g);
    vs.oracle_checked = true;
    vs.oracle_equal = ast::compare_partitions(tp, ground).verdict ==
                      ast::compare_verdict::equal;
  }
  std::string report =
      ast::render_verify(g, vs, ast::format_from_name(o.format_s));
  std::cout << report;
  if (!o.out_path.empty()) write_file(o.out_path, report);
  return vs.all_pass() ? 0 : 2;
}

int cmd_params(const options& o) {
  ast::group_spec g = spec_from(o);
  ast::triple_partition tp = ast::label_all_triples(g, o.workers);
  ast::name_table nt = ast::build_name_table(g, tp);
  std::vector<ast::intersection_entry> tensor =
      ast::reference_intersection_numbers(tp);
  emit(ast::render_scheme(g, tp, nt, &tensor, nullptr,
                          ast::format_from_name(o.format_s)),
       o.out_path);
  return 0;
}

int cmd_crosscheck(const options& o) {
  if (o.variant_s != "asl")
    throw std::invalid_argument("crosscheck applies to the asl variant");
  ast::group_spec g = spec_from(o);
  ast::triple_partition tp = ast::label_all_triples(g, o.workers);
  ast::name_table nt = ast::build_name_table(g, tp);
  ast::crosscheck_report rep = ast::run_crosscheck(g, tp, o.workers);
  emit(ast::render_scheme(g, tp, nt, nullptr, &rep,
                          ast::format_from_name(o.format_s)),
       o.out_path);
  return rep.clean ? 0 : 3;
}

int cmd_compare(const options& o) {
  if (o.artifact_a.empty() != o.artifact_b.empty())
    throw std::invalid_argument("compare needs two artifacts or spec flags");
  ast::out_format fmt = ast::format_from_name(o.format_s);
  if (!o.artifact_a.empty()) {
    ast::artifact aa = ast::read_artifact(o.artifact_a);
    ast::artifact ab = ast::read_artifact(o.artifact_b);
    ast::group_spec ga = ast::spec_from_header(aa.header);
    ast::group_spec gb = ast::spec_from_header(ab.header);
    ast::compare_result cr =
        ast::compare_partitions(aa.partition, ab.partition);
    emit(ast::render_compare(ga, gb, cr, fmt), o.out_path);
    return 0;
  }
  if (o.p == 0)
    throw std::invalid_argument("compare needs two artifacts or spec flags");
  // flag form: the asl partition against the agl one for the same field
  ast::group_spec ga = ast::make_spec(o.p, o.alpha, o.omega, o.k,
                                      ast::variant::asl);
  ast::group_spec gb = ast::make_spec(o.p, o.alpha, o.omega, o.k,
                                      ast::variant::agl);
  ast::triple_partition ta = ast::label_all_triples(ga, o.workers);
  ast::triple_partition tb = ast::label_all_triples(gb, o.workers);
  ast::compare_result cr = ast::compare_partitions(ta, tb);
  emit(ast::render_compare(ga, gb, cr, fmt), o.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"association schemes on triples from affine semilinear actions"};
  app.require_subcommand(1);
  options o;

  CLI::App* build = app.add_subcommand("build", "build a partition artifact");
  add_spec_flags(build, o, true);
  add_output_flags(build, o);

  CLI::App* verify =
      app.add_subcommand("verify", "check the defining conditions");
  verify->add_option("artifact", o.artifact_a, "partition artifact to verify");
  add_spec_flags(verify, o, false);
  add_output_flags(verify, o);
  verify->add_option("--regularity", o.regularity_s, "regularity sweep mode")
      ->check(CLI::IsMember({"full", "sampled"}));
  verify->add_flag("--oracle", o.oracle,
                   "also compare against the BFS orbit oracle (N <= 64)");
  verify->add_option("--seed", o.seed, "sampling seed for sampled regularity");

  CLI::App* params =
      app.add_subcommand("params", "tabulate valencies and intersection numbers");
  add_spec_flags(params, o, true);
  add_output_flags(params, o);

  CLI::App* crosscheck = app.add_subcommand(
      "crosscheck", "compare brute-force parameters against the closed forms");
  add_spec_flags(crosscheck, o, true);
  add_output_flags(crosscheck, o);

  CLI::App* compare =
      app.add_subcommand("compare", "compare two partitions as set partitions");
  compare->add_option("artifact_a", o.artifact_a, "first artifact");
  compare->add_option("artifact_b", o.artifact_b, "second artifact");
  add_spec_flags(compare, o, false);
  add_output_flags(compare, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (build->parsed()) return cmd_build(o);
    if (verify->parsed()) return cmd_verify(o);
    if (params->parsed()) return cmd_params(o);
    if (crosscheck->parsed()) return cmd_crosscheck(o);
    return cmd_compare(o);
  } catch (const ast::bound_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const ast::io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
