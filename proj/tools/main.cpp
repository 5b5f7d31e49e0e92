#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coxtwist/battery.hpp"
#include "coxtwist/cells.hpp"
#include "coxtwist/homology.hpp"
#include "coxtwist/twisted.hpp"
#include "json.hpp"

namespace {

using namespace coxtwist;

struct Options {
  std::string system_path;
  std::string instance_name;
  std::uint64_t seed = kDefaultSeed;
  BuildCaps caps;
  std::string format = "text";
  std::string which;
  std::string interval;
  std::string suite = "quick";
  int samples = 0;
};

struct Instance {
  std::string label;
  SystemSpec spec;
  DiagramAutomorphism theta;
  std::unique_ptr<GroupTable> group;
  std::unique_ptr<TwistedTable> twisted;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read system file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<std::string, std::string> resolve_source(const Options& opt) {
  if (!opt.system_path.empty() && !opt.instance_name.empty())
    throw ParseError("--system and --instance are mutually exclusive");
  if (!opt.system_path.empty()) return {opt.system_path, read_file(opt.system_path)};
  if (!opt.instance_name.empty()) {
    const CatalogEntry* e = catalog_lookup(opt.instance_name);
    if (!e) throw ParseError("unknown catalog instance: " + opt.instance_name);
    return {e->name, e->json};
  }
  throw ParseError("one of --system or --instance is required");
}

Instance load_instance(const Options& opt) {
  auto [label, text] = resolve_source(opt);
  Instance inst;
  inst.label = label;
  inst.spec = parse_system_spec(text);
  inst.theta = validate_automorphism(inst.spec.matrix, inst.spec.theta);
  inst.group = std::make_unique<GroupTable>(build_group(inst.spec.matrix, opt.caps));
  inst.twisted = std::make_unique<TwistedTable>(enumerate_twisted(*inst.group, inst.theta));
  return inst;
}

void header(std::ostream& os, const std::string& command, const Instance& inst,
            const Options& opt, const std::string& extra = "") {
  os << "# coxtwist " << command << "\tsystem=" << inst.label << "\tseed=" << opt.seed;
  if (!extra.empty()) os << '\t' << extra;
  os << '\n';
}

std::string join_names(const CoxeterMatrix& cm, const std::vector<int>& word) {
  if (word.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += '.';
    out += cm.generators[static_cast<std::size_t>(word[i])];
  }
  return out;
}

std::string genset_label(const CoxeterMatrix& cm, GenSet J) {
  std::string out = "{";
  bool first = true;
  for (int s : genset_to_list(J)) {
    if (!first) out += ',';
    out += cm.generators[static_cast<std::size_t>(s)];
    first = false;
  }
  return out + "}";
}

int cmd_enumerate(const Options& opt) {
  Instance inst = load_instance(opt);
  const TwistedTable& t = *inst.twisted;
  header(std::cout, "enumerate", inst, opt,
         "members=" + std::to_string(t.size()) +
             "\trho-max=" + std::to_string(t.rho(t.top())));
  std::cout << "# columns: member\trho\tdescents\tunderline\tword\n";
  for (std::uint32_t m = 0; m < t.size(); ++m) {
    std::cout << m << '\t' << t.rho(m) << '\t'
              << genset_to_list(t.twisted_descent_set(m)).size() << '\t'
              << join_names(inst.spec.matrix, t.underline_word(m)) << '\t'
              << inst.group->word_label(t.element(m)) << '\n';
  }
  return 0;
}

int cmd_poset(const Options& opt) {
  Instance inst = load_instance(opt);
  FinitePoset p = [&] {
    if (opt.which == "bruhat") return inst.group->bruhat_poset();
    if (opt.which == "two-sided-weak") return inst.group->two_sided_weak_poset();
    if (opt.which == "bruhat-twisted") return bruhat_poset_twisted(*inst.twisted);
    if (opt.which == "weak-twisted") return weak_poset_twisted(*inst.twisted);
    throw ParseError("unknown poset kind: " + opt.which);
  }();
  if (opt.format == "dot") {
    std::cout << p.to_dot();
  } else {
    header(std::cout, "poset", inst, opt, "which=" + opt.which);
    std::cout << p.to_text();
  }
  return 0;
}

int cmd_poly(const Options& opt) {
  Instance inst = load_instance(opt);
  GThetaGraph graph = g_theta_graph(*inst.twisted);
  FaceComplex fc = build_face_poset(*inst.twisted, graph);
  header(std::cout, "poly", inst, opt);
  std::istringstream ss(opt.which.empty() ? "f,h,des" : opt.which);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "f")
      std::cout << "f\t" << fc.f_polynomial().to_string() << '\n';
    else if (item == "h")
      std::cout << "h\t" << fc.h_polynomial().to_string() << '\n';
    else if (item == "des")
      std::cout << "des\t" << descent_polynomial(*inst.twisted).to_string() << '\n';
    else
      throw ParseError("unknown polynomial: " + item);
  }
  return 0;
}

int cmd_complex(const Options& opt) {
  Instance inst = load_instance(opt);
  GThetaGraph graph = g_theta_graph(*inst.twisted);
  FaceComplex fc = build_face_poset(*inst.twisted, graph);
  if (opt.format == "dot") {
    std::cout << fc.poset().to_dot();
    return 0;
  }
  std::size_t facets = 0;
  int dim = -1;
  for (const auto& cell : fc.cells()) {
    dim = std::max(dim, cell.dim);
    if (cell.dim == fc.gen_count() - 1) ++facets;
  }
  header(std::cout, "complex", inst, opt,
         "cells=" + std::to_string(fc.cells().size()) + "\tfacets=" + std::to_string(facets) +
             "\tdim=" + std::to_string(dim));
  std::cout << "# columns: cell\tdim\tlabels\tmin\tsize\n";
  for (std::size_t i = 0; i < fc.cells().size(); ++i) {
    const Cell& cell = fc.cells()[i];
    std::cout << i << '\t' << cell.dim << '\t' << genset_label(inst.spec.matrix, cell.J) << '\t'
              << cell.min_elem << '\t' << cell.vertices.size() << '\n';
  }
  std::cout << "# f\t" << fc.f_polynomial().to_string() << '\n';
  std::cout << "# h\t" << fc.h_polynomial().to_string() << '\n';
  auto boolean = fc.check_boolean_intervals();
  std::cout << "# boolean\t" << (boolean.ok ? "ok" : "FAIL " + boolean.detail) << '\n';
  auto thin = fc.check_thin();
  std::cout << "# thin\t" << (thin.ok ? "ok" : "FAIL " + thin.detail) << '\n';
  return boolean.ok && thin.ok ? 0 : 5;
}

int cmd_shell(const Options& opt) {
  Instance inst = load_instance(opt);
  GThetaGraph graph = g_theta_graph(*inst.twisted);
  FaceComplex fc = build_face_poset(*inst.twisted, graph);
  const int samples = opt.samples > 0 ? opt.samples : 5;
  header(std::cout, "shell", inst, opt, "samples=" + std::to_string(samples));
  std::vector<int> first_dims;
  bool all_ok = true;
  for (int i = 0; i < samples; ++i) {
    auto ext = fc.weak_poset().linear_extension(opt.seed + static_cast<std::uint64_t>(i));
    std::vector<std::uint32_t> order(ext.begin(), ext.end());
    auto rep = fc.verify_shelling(order);
    if (rep.ok) {
      std::ostringstream dims;
      for (std::size_t k = 0; k < rep.restriction_dims.size(); ++k) {
        if (k) dims << ',';
        dims << rep.restriction_dims[k];
      }
      std::cout << "sample\t" << i << "\tok\tdims=" << dims.str() << '\n';
      if (i == 0) first_dims = rep.restriction_dims;
    } else {
      all_ok = false;
      std::cout << "sample\t" << i << "\tFAIL\t"
                << (rep.violation ? rep.violation->what : "not shellable") << '\n';
    }
  }
  if (!all_ok) {
    std::cout << "# result\tfail\n";
    return 5;
  }
  std::vector<long long> hist(static_cast<std::size_t>(fc.gen_count()) + 1, 0);
  for (int d : first_dims) ++hist[static_cast<std::size_t>(d + 1)];
  Polynomial h_shell = polynomial_from_histogram(hist);
  Polynomial h = fc.h_polynomial();
  std::cout << "# h-from-shelling\t" << h_shell.to_string() << '\n';
  std::cout << "# h\t" << h.to_string() << '\n';
  bool match = h_shell == h;
  std::cout << "# match\t" << (match ? "yes" : "no") << '\n';
  return match ? 0 : 5;
}

int cmd_homology(const Options& opt) {
  Instance inst = load_instance(opt);
  FinitePoset br = bruhat_poset_twisted(*inst.twisted);
  int u = 0, v = static_cast<int>(inst.twisted->top());
  if (!opt.interval.empty()) {
    auto colon = opt.interval.find(':');
    if (colon == std::string::npos) throw ParseError("interval must be formatted as U:V");
    try {
      u = std::stoi(opt.interval.substr(0, colon));
      v = std::stoi(opt.interval.substr(colon + 1));
    } catch (const std::exception&) {
      throw ParseError("interval endpoints must be member indices");
    }
  }
  if (u < 0 || v < 0 || u >= br.size() || v >= br.size())
    throw ParseError("interval endpoint out of range");
  if (!br.less(u, v)) throw ParseError("interval is empty: the endpoints do not satisfy u < v");
  auto check = verify_sphere_interval(br, u, v);
  int diff = br.rank_of(v) - br.rank_of(u);
  header(std::cout, "homology", inst, opt,
         "interval=" + std::to_string(u) + ":" + std::to_string(v));
  std::cout << "# rank-difference\t" << diff << '\n';
  std::cout << "# expected-sphere-dim\t" << check.expected_dim << '\n';
  if (check.vacuous) {
    std::cout << "# open interval is empty\n";
  } else {
    std::cout << check.profile.to_text();
  }
  std::cout << "# sphere\t" << (check.ok ? "yes" : "no") << '\n';
  return check.ok ? 0 : 5;
}

int cmd_verify(const Options& opt) {
  BatterySettings settings;
  if (opt.suite == "full")
    settings.full = true;
  else if (opt.suite != "quick")
    throw ParseError("unknown suite: " + opt.suite);
  settings.seed = opt.seed;
  settings.shelling_samples = opt.samples;
  settings.caps = opt.caps;

  std::vector<CheckResult> results;
  if (!opt.system_path.empty()) {
    results = run_battery_on(opt.system_path, read_file(opt.system_path), settings);
  } else if (!opt.instance_name.empty()) {
    const CatalogEntry* e = catalog_lookup(opt.instance_name);
    if (!e) throw ParseError("unknown catalog instance: " + opt.instance_name);
    results = run_battery_on(e->name, e->json, settings);
  } else {
    results = run_battery(settings);
  }

  std::cout << "# coxtwist verify\tsuite=" << opt.suite << "\tseed=" << opt.seed << '\n';
  const CheckResult* failed = nullptr;
  for (const auto& r : results) {
    std::cout << (r.ok ? "ok" : "FAIL") << '\t' << r.instance << '\t' << r.check << '\t'
              << r.detail << '\n';
    if (!r.ok) failed = &r;
  }
  if (failed) {
    nlohmann::json record{{"instance", failed->instance},
                          {"check", failed->check},
                          {"detail", failed->detail}};
    std::cout << "# result\tfail\t" << record.dump() << '\n';
    return 5;
  }
  std::cout << "# result\tpass\tchecks=" << results.size() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"twisted involutions in finite Coxeter groups"};
  app.set_help_all_flag("--help-all");
  app.fallthrough();
  app.require_subcommand(1);

  app.add_option("--system", opt.system_path, "path to a system JSON file");
  app.add_option("--instance", opt.instance_name, "name of a built-in catalog instance");
  app.add_option("--seed", opt.seed, "seed for sampled checks and extensions");
  app.add_option("--element-cap", opt.caps.element_cap, "abort when the group exceeds this size");
  app.add_option("--root-cap", opt.caps.root_cap, "abort when the root system exceeds this size");

  auto* enumerate = app.add_subcommand("enumerate", "list the twisted involutions");
  auto* poset = app.add_subcommand("poset", "print an order as text or DOT");
  poset->add_option("--which", opt.which, "bruhat|bruhat-twisted|weak-twisted|two-sided-weak")
      ->default_val("bruhat-twisted");
  poset->add_option("--format", opt.format, "text|dot")->default_val("text");
  auto* poly = app.add_subcommand("poly", "print f, h and descent polynomials");
  poly->add_option("--which", opt.which, "comma list from f,h,des");
  auto* complex_cmd = app.add_subcommand("complex", "print the cell census and structure checks");
  complex_cmd->add_option("--format", opt.format, "text|dot")->default_val("text");
  auto* shell = app.add_subcommand("shell", "shell the complex along sampled weak-order extensions");
  shell->add_option("--samples", opt.samples, "number of sampled extensions");
  auto* homology = app.add_subcommand("homology", "homology of an open Bruhat interval");
  homology->add_option("--interval", opt.interval, "U:V member indices (default: whole poset)");
  auto* verify = app.add_subcommand("verify", "run the invariant battery");
  verify->add_option("--suite", opt.suite, "quick|full")->default_val("quick");
  verify->add_option("--samples", opt.samples, "override the shelling sample count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (enumerate->parsed()) return cmd_enumerate(opt);
    if (poset->parsed()) return cmd_poset(opt);
    if (poly->parsed()) return cmd_poly(opt);
    if (complex_cmd->parsed()) return cmd_complex(opt);
    if (shell->parsed()) return cmd_shell(opt);
    if (homology->parsed()) return cmd_homology(opt);
    if (verify->parsed()) return cmd_verify(opt);
  } catch (const ParseError& e) {
    std::cerr << "coxtwist: error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "coxtwist: error: " << e.what() << '\n';
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "coxtwist: limit: " << e.what() << '\n';
    return 3;
  } catch (const InternalError& e) {
    std::cerr << "coxtwist: internal error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "coxtwist: internal error: " << e.what() << '\n';
    return 4;
  }
  return 2;
}
