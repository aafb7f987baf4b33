//===--- harness.cpp - scenario runner, metrics comparison, reports -------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "refweave/harness.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace refweave {

FileTree load_tree(const std::string& dir) {
  FileTree tree;
  fs::path root(dir);
  if (!fs::exists(root)) throw IOFailure(dir + " does not exist");
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    if (!in) throw IOFailure(entry.path().string());
    std::ostringstream ss;
    ss << in.rdbuf();
    tree[fs::relative(entry.path(), root).generic_string()] = ss.str();
  }
  return tree;
}

void write_tree(const std::string& dir, const FileTree& tree) {
  fs::path root(dir);
  fs::create_directories(root);
  for (const auto& [path, text] : tree) {
    fs::path p = root / path;
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IOFailure(p.string());
    out << text;
  }
}

MergeScenario load_scenario(const std::string& dir) {
  fs::path root(dir);
  MergeScenario s;
  s.id = root.filename().string();
  if (s.id.empty()) s.id = root.parent_path().filename().string();
  fs::path manifest = root / "manifest.txt";
  if (fs::exists(manifest)) {
    std::ifstream in(manifest);
    std::string line;
    while (std::getline(in, line)) {
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      if (line.substr(0, eq) == "id") s.id = line.substr(eq + 1);
    }
  }
  for (const char* part : {"base", "left", "right"})
    if (!fs::is_directory(root / part))
      throw LayoutError(dir + " is missing " + part + "/");
  s.base = load_tree((root / "base").string());
  s.left = load_tree((root / "left").string());
  s.right = load_tree((root / "right").string());
  auto loadCommits = [&](const char* name, std::vector<FileTree>& out) {
    fs::path cd = root / name;
    if (!fs::is_directory(cd)) return;
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(cd))
      if (e.is_directory()) names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    for (const auto& n : names) out.push_back(load_tree((cd / n).string()));
  };
  loadCommits("left_commits", s.leftCommits);
  loadCommits("right_commits", s.rightCommits);
  if (fs::is_directory(root / "expected"))
    s.expected = load_tree((root / "expected").string());
  return s;
}

std::string statusName(ScenarioStatus s) {
  switch (s) {
  case ScenarioStatus::Baseline: return "baseline";
  case ScenarioStatus::Resolved: return "Resolved";
  case ScenarioStatus::Changed: return "Changed";
  case ScenarioStatus::Unchanged: return "Unchanged";
  case ScenarioStatus::Timeout: return "Timeout";
  }
  return "?";
}

namespace {

GranularityDelta deltaOf(int baseline, int candidate) {
  GranularityDelta d;
  if (candidate < baseline) d.direction = "reduced";
  else if (candidate > baseline) d.direction = "increased";
  else d.direction = "equal";
  if (baseline > 0)
    d.pct = 100.0 * std::abs(baseline - candidate) / (double)baseline;
  else if (candidate == baseline)
    d.pct = 0.0;
  return d;
}

} // namespace

void compare(const ScenarioReport& baseline, ScenarioReport& candidate) {
  candidate.files = deltaOf(baseline.metrics.conflictingFiles, candidate.metrics.conflictingFiles);
  candidate.blocks = deltaOf(baseline.metrics.conflictBlocks, candidate.metrics.conflictBlocks);
  candidate.loc = deltaOf(baseline.metrics.conflictingLOC, candidate.metrics.conflictingLOC);
  if (candidate.status == ScenarioStatus::Timeout) return;
  if (candidate.metrics == baseline.metrics) {
    candidate.status = ScenarioStatus::Unchanged;
  } else if (candidate.metrics == ConflictMetrics{} && candidate.refConflictCount == 0) {
    candidate.status = ScenarioStatus::Resolved;
  } else {
    candidate.status = ScenarioStatus::Changed;
  }
}

ScenarioReport run_scenario(const MergeScenario& scenario, const std::string& tool,
                            const MergeOptions& opts) {
  ScenarioReport rep;
  rep.id = scenario.id;
  rep.tool = tool;
  if (tool == "plain") {
    MergedTree t = plain_merge(scenario);
    rep.metrics = metrics(t);
    rep.status = ScenarioStatus::Baseline;
    return rep;
  }
  try {
    MergeOutcome out = merge_scenario(scenario, opts);
    rep.metrics = out.textualMetrics;
    rep.refConflictCount = (int)out.refConflicts.size();
    if (scenario.expected) {
      FileTree got = out.mergedTree.texts();
      int diff = 0;
      for (const auto& [path, text] : *scenario.expected) {
        auto it = got.find(path);
        if (it == got.end() || it->second != text) ++diff;
      }
      for (const auto& [path, text] : got)
        if (!scenario.expected->count(path)) ++diff;
      rep.expectedDiffFiles = diff;
    }
  } catch (const TimeoutError&) {
    rep.status = ScenarioStatus::Timeout;
  }
  return rep;
}

ScenarioReport run_scenario_dir(const std::string& dir, const std::string& tool,
                                const MergeOptions& opts) {
  return run_scenario(load_scenario(dir), tool, opts);
}

BenchResult bench(const std::string& corpusDir, const std::vector<std::string>& tools,
                  const MergeOptions& opts, int jobs) {
  std::vector<std::string> dirs;
  for (const auto& e : fs::directory_iterator(corpusDir))
    if (e.is_directory()) dirs.push_back(e.path().string());
  std::sort(dirs.begin(), dirs.end());

  bool runPlain = std::find(tools.begin(), tools.end(), "plain") != tools.end();
  bool runRef = std::find(tools.begin(), tools.end(), "refweave") != tools.end();

  std::vector<std::pair<ScenarioReport, ScenarioReport>> rows(dirs.size());
  if (jobs <= 0) jobs = (int)std::thread::hardware_concurrency();
  if (jobs <= 0) jobs = 1;
  std::atomic<size_t> next{0};
  auto worker = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= dirs.size()) return;
      MergeScenario s = load_scenario(dirs[i]);
      ScenarioReport plainRep = run_scenario(s, "plain", opts);
      ScenarioReport refRep;
      if (runRef) {
        refRep = run_scenario(s, "refweave", opts);
        compare(plainRep, refRep);
      }
      rows[i] = {std::move(plainRep), std::move(refRep)};
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs && t < (int)dirs.size(); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  BenchResult res;
  res.rows = std::move(rows);

  std::ostringstream table;
  table << "scenario                        plain f/b/loc   refweave f/b/loc  refc  status\n";
  int resolved = 0, changed = 0, unchanged = 0, timeout = 0;
  std::ostringstream jsonl;
  for (const auto& [p, r] : res.rows) {
    char line[256];
    std::snprintf(line, sizeof line, "%-30s  %3d/%3d/%4d   ", p.id.c_str(),
                  p.metrics.conflictingFiles, p.metrics.conflictBlocks,
                  p.metrics.conflictingLOC);
    table << line;
    if (runRef) {
      std::snprintf(line, sizeof line, "%3d/%3d/%4d      %2d    %s",
                    r.metrics.conflictingFiles, r.metrics.conflictBlocks,
                    r.metrics.conflictingLOC, r.refConflictCount,
                    statusName(r.status).c_str());
      table << line;
      switch (r.status) {
      case ScenarioStatus::Resolved: ++resolved; break;
      case ScenarioStatus::Changed: ++changed; break;
      case ScenarioStatus::Unchanged: ++unchanged; break;
      case ScenarioStatus::Timeout: ++timeout; break;
      default: break;
      }
    }
    table << "\n";

    nlohmann::json rec;
    rec["id"] = p.id;
    if (runPlain)
      rec["plain"] = {{"files", p.metrics.conflictingFiles},
                      {"blocks", p.metrics.conflictBlocks},
                      {"loc", p.metrics.conflictingLOC}};
    if (runRef) {
      nlohmann::json rj = {{"files", r.metrics.conflictingFiles},
                           {"blocks", r.metrics.conflictBlocks},
                           {"loc", r.metrics.conflictingLOC},
                           {"refConflicts", r.refConflictCount},
                           {"status", statusName(r.status)}};
      auto deltaJson = [](const GranularityDelta& d) {
        nlohmann::json j = {{"direction", d.direction}};
        if (d.pct) j["pct"] = *d.pct;
        return j;
      };
      rj["delta"] = {{"files", deltaJson(r.files)},
                     {"blocks", deltaJson(r.blocks)},
                     {"loc", deltaJson(r.loc)}};
      if (r.expectedDiffFiles) rj["expectedDiffFiles"] = *r.expectedDiffFiles;
      rec["refweave"] = rj;
    }
    jsonl << rec.dump() << "\n";
  }
  if (runRef) {
    table << "total " << res.rows.size() << " scenarios: " << resolved << " Resolved, "
          << changed << " Changed, " << unchanged << " Unchanged, " << timeout
          << " Timeout\n";
  }
  res.table = table.str();
  res.jsonl = jsonl.str();
  return res;
}

} // namespace refweave
