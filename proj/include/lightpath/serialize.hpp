#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lightpath/errors.hpp"
#include "lightpath/graph.hpp"
#include "lightpath/labeling.hpp"
#include "lightpath/physics.hpp"
#include "lightpath/simulate.hpp"

namespace lightpath {

namespace detail {

inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

} // namespace detail

/// Parses the delay-system file format:
///   arc_delay <c>
///   <node-id> <delay>   (one line per node)
/// '#' starts a comment. Node ids must form 1..n, each exactly once.
inline DelaySystem parse_delay_system(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool have_arc = false;
  std::int64_t arc_delay = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs; // (node id, delay)
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = detail::strip_comment(raw);
    if (line.empty()) continue;
    auto toks = detail::split_ws(line);
    if (!have_arc) {
      std::int64_t c;
      long long parsed;
      if (toks.size() != 2 || toks[0] != "arc_delay" || !detail::parse_int(toks[1], parsed))
        throw ParseError("expected \"arc_delay <c>\"", lineno);
      c = parsed;
      if (c < 0) throw ParseError("arc delay must be nonnegative", lineno);
      arc_delay = c;
      have_arc = true;
    } else {
      long long id, d;
      if (toks.size() != 2 || !detail::parse_int(toks[0], id) || !detail::parse_int(toks[1], d))
        throw ParseError("expected \"<node-id> <delay>\"", lineno);
      if (d < 0) throw ParseError("node delay must be nonnegative", lineno);
      pairs.emplace_back(id, d);
    }
  }
  if (!have_arc) throw ParseError("missing \"arc_delay <c>\" header", lineno);
  if (pairs.empty()) throw ParseError("no node delays given", lineno);

  DelaySystem sys;
  sys.arc_delay = arc_delay;
  sys.node_delays.assign(pairs.size(), -1);
  for (const auto& [id, d] : pairs) {
    if (id < 1 || id > static_cast<std::int64_t>(pairs.size()))
      throw ParseError("node id " + std::to_string(id) + " outside 1.." +
                       std::to_string(pairs.size()));
    auto& slot = sys.node_delays[static_cast<std::size_t>(id - 1)];
    if (slot >= 0) throw ParseError("duplicate delay for node " + std::to_string(id));
    slot = d;
  }
  return sys;
}

/// Text export: "<time> <count> <intensity>" per entry, sorted by time.
inline std::string spectrum_to_text(const ArrivalSpectrum& spectrum) {
  std::ostringstream out;
  for (const auto& [t, entry] : spectrum.entries)
    out << t << ' ' << entry.walk_count.get_str() << ' '
        << detail::format_double(entry.intensity) << '\n';
  return out.str();
}

// Walk counts are exact big integers; JSON carries them as decimal strings.

inline nlohmann::json spectrum_to_json(const ArrivalSpectrum& spectrum) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [t, entry] : spectrum.entries)
    entries.push_back({{"time", t},
                       {"count", entry.walk_count.get_str()},
                       {"intensity", entry.intensity}});
  return {{"target_time", spectrum.target_time},
          {"cutoff", spectrum.cutoff},
          {"entries", entries}};
}

inline ArrivalSpectrum spectrum_from_json(const nlohmann::json& j) {
  ArrivalSpectrum spectrum;
  spectrum.target_time = j.at("target_time").get<std::int64_t>();
  spectrum.cutoff = j.at("cutoff").get<std::int64_t>();
  for (const auto& e : j.at("entries")) {
    SpectrumEntry entry;
    entry.walk_count = BigCount(e.at("count").get<std::string>());
    entry.intensity = e.at("intensity").get<double>();
    spectrum.entries.emplace(e.at("time").get<std::int64_t>(), std::move(entry));
  }
  return spectrum;
}

inline nlohmann::json verdict_to_json(const Verdict& verdict) {
  nlohmann::json j = {{"answer", verdict.answer ? "YES" : "NO"},
                      {"target_time", verdict.target_time},
                      {"arrivals_at_target", verdict.arrivals_at_target.get_str()},
                      {"detectable", verdict.detectable}};
  if (verdict.witness) j["witness"] = *verdict.witness;
  return j;
}

inline Verdict verdict_from_json(const nlohmann::json& j) {
  Verdict verdict;
  verdict.answer = j.at("answer").get<std::string>() == "YES";
  verdict.target_time = j.at("target_time").get<std::int64_t>();
  verdict.arrivals_at_target = BigCount(j.at("arrivals_at_target").get<std::string>());
  verdict.detectable = j.at("detectable").get<bool>();
  if (j.contains("witness")) verdict.witness = j.at("witness").get<std::vector<int>>();
  return verdict;
}

inline nlohmann::json design_report_to_json(const DesignReport& report) {
  return {{"unit_length_m", report.unit_length_m},
          {"node_cable_lengths_m", report.node_cable_lengths_m},
          {"arc_cable_length_m", report.arc_cable_length_m},
          {"longest_cable_m", report.longest_cable_m},
          {"total_fiber_m", report.total_fiber_m},
          {"target_time_s", report.target_time_s},
          {"worst_case_intensity", report.worst_case_intensity},
          {"detectable", report.detectable}};
}

inline DesignReport design_report_from_json(const nlohmann::json& j) {
  DesignReport report;
  report.unit_length_m = j.at("unit_length_m").get<double>();
  report.node_cable_lengths_m = j.at("node_cable_lengths_m").get<std::vector<double>>();
  report.arc_cable_length_m = j.at("arc_cable_length_m").get<double>();
  report.longest_cable_m = j.at("longest_cable_m").get<double>();
  report.total_fiber_m = j.at("total_fiber_m").get<double>();
  report.target_time_s = j.at("target_time_s").get<double>();
  report.worst_case_intensity = j.at("worst_case_intensity").get<double>();
  report.detectable = j.at("detectable").get<bool>();
  return report;
}

} // namespace lightpath
