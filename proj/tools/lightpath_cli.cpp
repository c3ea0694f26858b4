// Command-line front end: instance parsing, labeling generation and
// verification, optical simulation, HP decision, and physical design reports.
//
// Exit codes: 0 success (or YES), 1 decision is NO, 2 usage error,
// 3 input error, 4 resource-limit refusal.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lightpath/lightpath.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitResource = 4;

struct Options {
  bool json = false;
  bool quiet = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lightpath::ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt15(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

void emit(const Options& opt, const std::string& text) {
  if (!opt.quiet) std::cout << text;
}

// Resolves --labels/--arc-delay into a delay system bound to the graph.
lightpath::DelaySystem resolve_system(const lightpath::DirectedGraph& g,
                                      const std::string& labels_spec, std::int64_t arc_delay,
                                      bool arc_delay_given) {
  if (labels_spec == "closed-form")
    return lightpath::closed_form_system(g.node_count, arc_delay);
  if (arc_delay_given)
    throw CLI::ValidationError("--arc-delay", "cannot combine with a delay-system file");
  auto sys = lightpath::parse_delay_system(read_file(labels_spec));
  if (static_cast<int>(sys.node_delays.size()) != g.node_count)
    throw lightpath::ParseError("delay system has " + std::to_string(sys.node_delays.size()) +
                                " nodes, graph has " + std::to_string(g.node_count));
  return sys;
}

std::string join(const std::vector<std::int64_t>& v, const char* sep) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? sep : "") << v[i];
  return out.str();
}

std::string join(const std::vector<int>& v, const char* sep) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? sep : "") << v[i];
  return out.str();
}

int cmd_label(const Options& opt, int n, bool search, std::int64_t max_bound,
              bool max_bound_given) {
  std::vector<std::int64_t> labels;
  std::uint64_t ties = 1;
  if (search) {
    auto result = max_bound_given ? lightpath::search_minimal_system(n, max_bound)
                                  : lightpath::search_minimal_system(n);
    if (!result.found) {
      std::cerr << "no delaying system with max label <= "
                << (max_bound_given ? max_bound : (std::int64_t{1} << n)) << "\n";
      return kExitInput;
    }
    labels = result.labels;
    ties = result.tie_count;
  } else {
    labels = lightpath::closed_form_labels(n);
  }
  if (opt.json) {
    nlohmann::json j = {{"labels", labels}};
    if (search) j["tie_count"] = ties;
    emit(opt, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    for (auto d : labels) out << d << "\n";
    if (search && ties > 1)
      out << "# note: " << ties << " sequences share this maximum; reported the "
          << "lexicographically smallest\n";
    emit(opt, out.str());
  }
  return kExitOk;
}

int cmd_verify(const Options& opt, const std::string& file) {
  auto sys = lightpath::parse_delay_system(read_file(file));
  auto report = lightpath::verify_uniqueness(sys);
  if (opt.json) {
    nlohmann::json j = {{"unique", report.is_unique},
                        {"representation_count", report.representation_count.get_str()}};
    if (report.counterexample) j["counterexample"] = *report.counterexample;
    emit(opt, j.dump(2) + "\n");
  } else if (report.is_unique) {
    emit(opt, "unique: yes (1 representation)\n");
  } else {
    emit(opt, "unique: no; counterexample a=(" + join(*report.counterexample, ",") + ")\n");
  }
  return kExitOk;
}

int cmd_decide(const Options& opt, const std::string& graph_file, const std::string& labels_spec,
               std::int64_t arc_delay, bool arc_delay_given, bool use_trace,
               std::int64_t max_target) {
  auto g = lightpath::parse_graph(read_file(graph_file));
  auto sys = resolve_system(g, labels_spec, arc_delay, arc_delay_given);

  lightpath::Verdict verdict;
  if (use_trace) {
    // trace engine: aggregate explicit rays instead of the spectrum DP
    auto report = lightpath::verify_uniqueness(sys);
    if (!report.is_unique)
      throw lightpath::DomainError("delaying system is not unique; counterexample a=(" +
                                   join(*report.counterexample, ",") + ")");
    auto trace = lightpath::ray_trace(g, sys, 10'000'000);
    if (trace.truncated) throw lightpath::ResourceError("ray trace truncated; use spectrum mode");
    verdict.target_time = lightpath::total_target_time(g, sys);
    lightpath::DetectorModel detector;
    double intensity_at_target = 0.0;
    for (const auto& ray : trace.rays) {
      if (ray.arrival_time != verdict.target_time) continue;
      verdict.answer = true;
      verdict.arrivals_at_target += 1;
      intensity_at_target += ray.intensity;
      if (!verdict.witness) verdict.witness = ray.path;
    }
    verdict.detectable = verdict.answer && intensity_at_target * detector.gain >= detector.min_signal;
  } else {
    verdict = lightpath::decide_hp(g, sys, {}, max_target);
  }

  if (opt.json) {
    emit(opt, lightpath::verdict_to_json(verdict).dump(2) + "\n");
  } else if (verdict.answer) {
    std::ostringstream out;
    out << "YES @ t=" << verdict.target_time << " (" << verdict.arrivals_at_target.get_str()
        << " arrival" << (verdict.arrivals_at_target == 1 ? "" : "s") << ", "
        << (verdict.detectable ? "detectable" : "below detector threshold") << ")\n";
    if (verdict.witness) out << "witness: " << join(*verdict.witness, " ") << "\n";
    emit(opt, out.str());
  } else {
    emit(opt, "NO\n");
  }
  return verdict.answer ? kExitOk : kExitNo;
}

int cmd_spectrum(const Options& opt, const std::string& graph_file,
                 const std::string& labels_spec, std::int64_t arc_delay, bool arc_delay_given,
                 const std::string& out_file, std::int64_t max_target) {
  auto g = lightpath::parse_graph(read_file(graph_file));
  auto sys = resolve_system(g, labels_spec, arc_delay, arc_delay_given);
  auto spectrum = lightpath::arrival_spectrum(g, sys, max_target);
  std::string payload = opt.json ? lightpath::spectrum_to_json(spectrum).dump(2) + "\n"
                                 : lightpath::spectrum_to_text(spectrum);
  if (!out_file.empty()) {
    std::ofstream out(out_file, std::ios::binary);
    if (!out) throw lightpath::ParseError("cannot write file: " + out_file);
    out << payload;
  } else {
    emit(opt, payload);
  }
  return kExitOk;
}

int cmd_trace(const Options& opt, const std::string& graph_file, const std::string& labels_spec,
              std::int64_t arc_delay, bool arc_delay_given, std::size_t max_rays) {
  auto g = lightpath::parse_graph(read_file(graph_file));
  auto sys = resolve_system(g, labels_spec, arc_delay, arc_delay_given);
  auto trace = lightpath::ray_trace(g, sys, max_rays);
  if (opt.json) {
    nlohmann::json rays = nlohmann::json::array();
    for (const auto& ray : trace.rays)
      rays.push_back(
          {{"path", ray.path}, {"time", ray.arrival_time}, {"intensity", ray.intensity}});
    emit(opt, nlohmann::json{{"rays", rays}, {"truncated", trace.truncated}}.dump(2) + "\n");
  } else {
    std::ostringstream out;
    for (const auto& ray : trace.rays) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", ray.intensity);
      out << join(ray.path, ",") << " @" << ray.arrival_time << " intensity " << buf << "\n";
    }
    if (trace.truncated) out << "# truncated at max-rays\n";
    emit(opt, out.str());
  }
  return kExitOk;
}

int cmd_design(const Options& opt, const std::string& arg, const lightpath::PhysicalConfig& cfg,
               std::int64_t arc_delay, std::optional<double> budget_time,
               std::optional<double> budget_cable) {
  std::ostringstream out;
  if (budget_time)
    out << "max_nodes_time_budget: " << lightpath::max_nodes_for_time_budget(*budget_time, cfg)
        << "\n";
  if (budget_cable)
    out << "max_nodes_cable_budget: "
        << lightpath::max_nodes_for_cable_budget(*budget_cable, cfg) << "\n";

  nlohmann::json j;
  if (!arg.empty()) {
    lightpath::DelaySystem sys;
    int max_outdeg = -1;
    long long n = 0;
    if (lightpath::detail::parse_int(arg, n)) {
      if (n < 1) throw CLI::ValidationError("design", "node count must be positive");
      sys = lightpath::closed_form_system(static_cast<int>(n), arc_delay);
    } else {
      auto g = lightpath::parse_graph(read_file(arg));
      sys = lightpath::closed_form_system(g.node_count, arc_delay);
      auto deg = lightpath::outdegrees(g);
      max_outdeg = *std::max_element(deg.begin() + 1, deg.end());
    }
    auto report = lightpath::cable_lengths(sys, cfg, max_outdeg);
    if (opt.json) {
      j = lightpath::design_report_to_json(report);
    } else {
      out << "unit_length_m: " << fmt15(report.unit_length_m) << "\n";
      out << "node_cable_lengths_m:";
      for (double len : report.node_cable_lengths_m) out << " " << fmt15(len);
      out << "\n";
      out << "arc_cable_length_m: " << fmt15(report.arc_cable_length_m) << "\n";
      out << "longest_cable_m: " << fmt15(report.longest_cable_m) << "\n";
      out << "total_fiber_m: " << fmt15(report.total_fiber_m) << "\n";
      out << "target_time_s: " << fmt15(report.target_time_s) << "\n";
      out << "worst_case_intensity: " << fmt15(report.worst_case_intensity) << "\n";
      out << "detectable: " << (report.detectable ? "yes" : "no") << "\n";
    }
  }
  if (opt.json) {
    if (budget_time) j["max_nodes_time_budget"] = lightpath::max_nodes_for_time_budget(*budget_time, cfg);
    if (budget_cable)
      j["max_nodes_cable_budget"] = lightpath::max_nodes_for_cable_budget(*budget_cable, cfg);
    emit(opt, j.dump(2) + "\n");
  } else {
    emit(opt, out.str());
  }
  return kExitOk;
}

int cmd_oracle(const Options& opt, const std::string& graph_file) {
  auto g = lightpath::parse_graph(read_file(graph_file));
  auto answer = lightpath::hamiltonian_oracle(g);
  if (opt.json) {
    nlohmann::json j = {{"answer", answer.exists ? "YES" : "NO"}};
    if (answer.witness) j["witness"] = *answer.witness;
    emit(opt, j.dump(2) + "\n");
  } else if (answer.exists) {
    emit(opt, "YES\nwitness: " + join(*answer.witness, " ") + "\n");
  } else {
    emit(opt, "NO\n");
  }
  return answer.exists ? kExitOk : kExitNo;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delay-labeled optical Hamiltonian-path device: simulator and design toolkit"};
  app.require_subcommand(1);
  app.fallthrough(); // allow --json/--quiet after the subcommand name

  Options opt;
  app.add_flag("--json", opt.json, "emit JSON instead of text");
  app.add_flag("--quiet", opt.quiet, "suppress stdout (exit code only)");

  // label
  int label_n = 0;
  bool label_search = false, label_closed = false;
  std::int64_t label_bound = 0;
  auto* label = app.add_subcommand("label", "generate a delaying system for n nodes");
  label->add_option("n", label_n, "number of nodes")->required();
  auto* closed_flag = label->add_flag("--closed-form", label_closed, "closed-form sequence");
  label->add_flag("--search", label_search, "minimal-maximum backtracking search")
      ->excludes(closed_flag);
  auto* bound_opt = label->add_option("--max-bound", label_bound, "search bound on the max label");

  // verify
  std::string verify_file;
  auto* verify = app.add_subcommand("verify", "check the uniqueness property of a system file");
  verify->add_option("system-file", verify_file, "delay-system file")->required();

  // shared decide/spectrum/trace options
  std::string decide_graph, decide_labels = "closed-form";
  std::int64_t decide_arc = 0;
  bool decide_trace = false;
  std::int64_t max_target = lightpath::kDefaultTargetCeiling;
  auto* decide = app.add_subcommand("decide", "decide Hamiltonian-path existence optically");
  decide->add_option("graph-file", decide_graph, "instance file")->required();
  decide->add_option("--labels", decide_labels, "\"closed-form\" or a delay-system file");
  auto* decide_arc_opt = decide->add_option("--arc-delay", decide_arc, "uniform arc delay (units)");
  decide->add_flag("--trace", decide_trace, "use the explicit ray tracer");
  decide->add_option("--max-target", max_target, "refusal ceiling for the target time");

  std::string spec_graph, spec_labels = "closed-form", spec_out;
  std::int64_t spec_arc = 0;
  auto* spectrum = app.add_subcommand("spectrum", "dump the arrival-time spectrum");
  spectrum->add_option("graph-file", spec_graph, "instance file")->required();
  spectrum->add_option("--labels", spec_labels, "\"closed-form\" or a delay-system file");
  auto* spec_arc_opt = spectrum->add_option("--arc-delay", spec_arc, "uniform arc delay (units)");
  spectrum->add_option("--out", spec_out, "write to file instead of stdout");
  spectrum->add_option("--max-target", max_target, "refusal ceiling for the target time");

  std::string trace_graph, trace_labels = "closed-form";
  std::int64_t trace_arc = 0;
  std::size_t trace_max_rays = 100000;
  auto* trace = app.add_subcommand("trace", "explicit ray expansion (small n)");
  trace->add_option("graph-file", trace_graph, "instance file")->required();
  trace->add_option("--labels", trace_labels, "\"closed-form\" or a delay-system file");
  auto* trace_arc_opt = trace->add_option("--arc-delay", trace_arc, "uniform arc delay (units)");
  trace->add_option("--max-rays", trace_max_rays, "truncation bound on expanded rays");

  // design
  std::string design_arg;
  lightpath::PhysicalConfig cfg;
  std::int64_t design_arc = 0;
  std::optional<double> budget_time, budget_cable;
  double budget_time_v = 0, budget_cable_v = 0;
  auto* design = app.add_subcommand("design", "physical design report and feasibility limits");
  design->add_option("graph-or-n", design_arg, "instance file or node count");
  design->add_option("--rise-time", cfg.rise_time, "oscilloscope rise time (s)");
  design->add_option("--vacuum-speed", cfg.vacuum_speed, "speed of light (m/s)");
  design->add_option("--speed-fraction", cfg.speed_fraction, "fraction of vacuum speed in fiber");
  design->add_option("--arc-delay", design_arc, "uniform arc delay (units)");
  auto* bt = design->add_option("--budget-time", budget_time_v, "time budget (s)");
  auto* bc = design->add_option("--budget-cable", budget_cable_v, "longest cable budget (m)");

  // oracle
  std::string oracle_graph;
  auto* oracle = app.add_subcommand("oracle", "classical ground-truth decision");
  oracle->add_option("graph-file", oracle_graph, "instance file")->required();

  try {
    app.parse(argc, argv);

    if (app.got_subcommand(label)) {
      if (label_n < 1) throw CLI::ValidationError("label", "n must be >= 1");
      return cmd_label(opt, label_n, label_search, label_bound, bound_opt->count() > 0);
    }
    if (app.got_subcommand(verify)) return cmd_verify(opt, verify_file);
    if (app.got_subcommand(decide))
      return cmd_decide(opt, decide_graph, decide_labels, decide_arc, decide_arc_opt->count() > 0,
                        decide_trace, max_target);
    if (app.got_subcommand(spectrum))
      return cmd_spectrum(opt, spec_graph, spec_labels, spec_arc, spec_arc_opt->count() > 0,
                          spec_out, max_target);
    if (app.got_subcommand(trace))
      return cmd_trace(opt, trace_graph, trace_labels, trace_arc, trace_arc_opt->count() > 0,
                       trace_max_rays);
    if (app.got_subcommand(design)) {
      if (bt->count() > 0) budget_time = budget_time_v;
      if (bc->count() > 0) budget_cable = budget_cable_v;
      if (design_arg.empty() && !budget_time && !budget_cable)
        throw CLI::ValidationError("design", "give a graph file, a node count, or a budget");
      // config sanity maps to usage errors here, not input errors
      try {
        cfg.validate();
      } catch (const lightpath::DomainError& e) {
        throw CLI::ValidationError("design", e.what());
      }
      return cmd_design(opt, design_arg, cfg, design_arc, budget_time, budget_cable);
    }
    if (app.got_subcommand(oracle)) return cmd_oracle(opt, oracle_graph);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help
    app.exit(e);
    return kExitUsage;
  } catch (const lightpath::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const lightpath::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const lightpath::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
