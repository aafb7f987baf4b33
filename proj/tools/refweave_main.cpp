//===--- refweave_main.cpp - command line front end -----------------------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "refweave/detect.hpp"
#include "refweave/harness.hpp"
#include "refweave/parse.hpp"
#include "refweave/pipeline.hpp"
#include "refweave/print.hpp"

using namespace refweave;

namespace {

Program loadProgram(const std::string& dir) {
  FileTree tree = load_tree(dir);
  std::vector<SourceFile> files;
  for (const auto& [path, text] : tree)
    if (path.size() > 3 && path.compare(path.size() - 3, 3, ".mj") == 0)
      files.push_back(parse_file(path, text));
  return Program::build(std::move(files));
}

int cmdDetect(const std::string& dirA, const std::string& dirB) {
  Program a = loadProgram(dirA);
  Program b = loadProgram(dirB);
  for (const Refactoring& r : detect_between(a, b))
    std::cout << serialize(r) << "\n";
  return 0;
}

int cmdMerge(const std::string& scenarioDir, bool plain, double timeoutSecs,
             const std::string& outDir) {
  MergeScenario scenario = load_scenario(scenarioDir);
  MergeOptions opts;
  opts.plain = plain;
  opts.timeoutSecs = timeoutSecs;
  MergeOutcome outcome;
  try {
    outcome = merge_scenario(scenario, opts);
  } catch (const TimeoutError& e) {
    std::cout << "TIMEOUT " << e.what() << "\n";
    return 1;
  }
  if (!outDir.empty()) {
    write_tree(outDir, outcome.mergedTree.texts());
    std::ofstream rep(outDir + "/report.txt");
    rep << renderReport(outcome);
  }
  std::cout << renderReport(outcome);
  return outcome.clean() ? 0 : 1;
}

int cmdBench(const std::string& corpusDir, const std::string& toolsCsv,
             const std::string& reportPath, int jobs, double timeoutSecs) {
  std::vector<std::string> tools;
  std::stringstream ss(toolsCsv);
  std::string t;
  while (std::getline(ss, t, ',')) tools.push_back(t);
  MergeOptions opts;
  opts.timeoutSecs = timeoutSecs;
  BenchResult res = bench(corpusDir, tools, opts, jobs);
  std::cout << res.table;
  if (!reportPath.empty()) {
    std::ofstream out(reportPath);
    out << res.jsonl;
  }
  return 0;
}

int cmdPrint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    return 2;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  SourceFile f = parse_file(path, ss.str());
  std::cout << print_unit(f.unit);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"refweave: refactoring-aware three-way merging for MJ sources"};
  app.require_subcommand(1);

  auto* det = app.add_subcommand("detect", "detect refactorings between two source trees");
  std::string dirA, dirB;
  det->add_option("dirA", dirA, "older tree")->required();
  det->add_option("dirB", dirB, "newer tree")->required();

  auto* mrg = app.add_subcommand("merge", "merge one scenario directory");
  std::string scenarioDir, outDir;
  bool plain = false;
  double timeoutSecs = 900;
  mrg->add_option("scenario", scenarioDir, "scenario directory")->required();
  mrg->add_flag("--plain", plain, "textual merge only, no refactoring handling");
  mrg->add_option("--timeout-secs", timeoutSecs, "wall clock budget per scenario");
  mrg->add_option("--out", outDir, "write the merged tree and report here");

  auto* ben = app.add_subcommand("bench", "run a corpus of scenarios and compare tools");
  std::string corpusDir, toolsCsv = "plain,refweave", reportPath;
  int jobs = 0;
  ben->add_option("corpus", corpusDir, "corpus directory")->required();
  ben->add_option("--tools", toolsCsv, "comma-separated: plain,refweave");
  ben->add_option("--report", reportPath, "write line-delimited JSON records here");
  ben->add_option("--jobs", jobs, "worker pool size (default: hardware)");
  ben->add_option("--timeout-secs", timeoutSecs, "wall clock budget per scenario");

  auto* pr = app.add_subcommand("print", "parse one .mj file and print its canonical form");
  std::string printPath;
  pr->add_option("file", printPath, ".mj file")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (det->parsed()) return cmdDetect(dirA, dirB);
    if (mrg->parsed()) return cmdMerge(scenarioDir, plain, timeoutSecs, outDir);
    if (ben->parsed()) return cmdBench(corpusDir, toolsCsv, reportPath, jobs, timeoutSecs);
    if (pr->parsed()) return cmdPrint(printPath);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
