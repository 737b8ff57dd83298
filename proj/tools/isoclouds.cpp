// Command-line front end: read point clouds from CSV/XYZ files, compute
// invariants, and evaluate the exact metrics between clouds or over whole
// directories. Reports go to stdout, diagnostics to stderr.
//
// Exit codes: 0 success, 2 parse error, 3 input mismatch, 4 genericity
// failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "isoclouds/isoclouds.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace isoclouds;

namespace {

struct Tolerances {
  double rel_tol = 1e-9;
  double quantum = 1e-9;
  double tau_dep = 1e-9;

  WmiOptions wmi_options() const { return WmiOptions{quantum, tau_dep}; }
};

json matrix_to_json(const Matrix& M) {
  json rows = json::array();
  for (int i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

void print_matrix(const Matrix& M) {
  for (int i = 0; i < M.rows(); ++i) {
    for (int j = 0; j < M.cols(); ++j) std::printf(j ? " %.12g" : "  %.12g", M(i, j));
    std::printf("\n");
  }
}

json flow_to_json(const FlowMatrix& f) {
  json entries = json::array();
  for (int i = 0; i < f.rows; ++i)
    for (int j = 0; j < f.cols; ++j) {
      Rational r = f.at(i, j);
      if (r.num == 0) continue;
      entries.push_back(json{{"from", i},
                             {"to", j},
                             {"num", r.num},
                             {"den", r.den},
                             {"value", r.value()}});
    }
  return json{{"denominator", f.denom}, {"entries", std::move(entries)}};
}

int thread_budget(std::size_t njobs) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("ISOCLOUDS_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) hw = static_cast<unsigned>(v);
  }
  return static_cast<int>(std::min<std::size_t>(hw, std::max<std::size_t>(njobs, 1)));
}

struct CloudSummary {
  PointCloud cloud;
  CenteredCloud centered;
  CovarianceSpectrum spectrum;
  GenericityReport genericity;
};

CloudSummary summarize(const std::string& path, const Tolerances& tol) {
  PointCloud cloud = read_cloud_file(path);
  CenteredCloud c = center(cloud);
  CovarianceSpectrum s = eigen_sym(covariance(c));
  GenericityReport rep = is_principally_generic(s, tol.rel_tol);
  return CloudSummary{std::move(cloud), std::move(c), std::move(s), rep};
}

int cmd_invariant(const std::string& file, bool as_json, bool full, const Tolerances& tol) {
  CloudSummary s = summarize(file, tol);
  const int n = s.cloud.dim(), m = s.cloud.size();

  json out{{"schema", 1}, {"command", "invariant"}, {"file", file},
           {"n", n},      {"m", m},                 {"generic", s.genericity.is_generic},
           {"gap", s.genericity.gap},               {"threshold", s.genericity.threshold}};
  out["eigenvalues"] = s.spectrum.eigenvalues;

  if (s.genericity.is_generic) {
    Pcm p = pcm(s.centered, s.spectrum, tol.rel_tol);
    out["invariant"] = "pcm";
    if (as_json) out["pcm"] = matrix_to_json(p.matrix);
    if (!as_json) {
      std::printf("file: %s\nn: %d  m: %d\n", file.c_str(), n, m);
      std::printf("eigenvalues:");
      for (double l : s.spectrum.eigenvalues) std::printf(" %.12g", l);
      std::printf("\ngap: %.12g\ngeneric: true\ninvariant: pcm\n", s.genericity.gap);
      if (full) print_matrix(p.matrix);
    }
  } else {
    WmiDistribution w = wmi(s.centered, tol.wmi_options());
    out["invariant"] = "wmi";
    out["entries"] = w.entries.size();
    if (as_json) {
      json entries = json::array();
      for (const auto& e : w.entries)
        entries.push_back(json{{"weight_num", e.weight.num},
                               {"weight_den", e.weight.den},
                               {"weight", e.weight.value()},
                               {"matrix", matrix_to_json(e.matrix)}});
      out["wmi"] = std::move(entries);
    } else {
      std::printf("file: %s\nn: %d  m: %d\n", file.c_str(), n, m);
      std::printf("eigenvalues:");
      for (double l : s.spectrum.eigenvalues) std::printf(" %.12g", l);
      std::printf("\ngap: %.12g\ngeneric: false\ninvariant: wmi\nentries: %zu\n",
                  s.genericity.gap, w.entries.size());
      for (const auto& e : w.entries) {
        std::printf("weight: %lld/%lld\n", e.weight.num, e.weight.den);
        if (full) print_matrix(e.matrix);
      }
    }
  }
  if (as_json) std::printf("%s\n", out.dump().c_str());
  return 0;
}

struct DistResult {
  double value = 0.0;
  std::string branch;  // orientation branch that realized the value
  std::optional<MetricReport> report;
};

DistResult dist_value(const std::string& metric, const std::string& orientation,
                      const CloudSummary& a, const CloudSummary& b, const Tolerances& tol) {
  DistResult r;
  if (metric == "sm") {
    if (a.cloud.dim() != b.cloud.dim()) throw InvalidInput("sm: dimension mismatch");
    if (a.cloud.size() != b.cloud.size()) throw InvalidInput("sm: point count mismatch");
    if (!a.genericity.is_generic || !b.genericity.is_generic)
      throw NotGeneric("sm requires principally generic clouds; use --metric lac or emd");
    Pcm pa = pcm(a.centered, a.spectrum, tol.rel_tol);
    Pcm pb = pcm(b.centered, b.spectrum, tol.rel_tol);
    r.value = sm_matrices(pa.matrix, pb.matrix);
    r.branch = "full";
    return r;
  }

  WmiDistribution wa = wmi(a.centered, tol.wmi_options());
  WmiDistribution wb = wmi(b.centered, tol.wmi_options());
  if (metric == "lac") {
    MetricReport direct = lac(wa, wb);
    r.value = direct.value;
    r.branch = "rigid";
    r.report = std::move(direct);
    if (orientation == "full") {
      MetricReport mirrored = lac(mirror_wmi(wa), wb);
      if (mirrored.value < r.value) {
        r.value = mirrored.value;
        r.branch = "mirror";
        r.report = std::move(mirrored);
      }
    }
    return r;
  }
  // emd
  MetricReport direct = emd_wmi(wa, wb);
  r.value = direct.value;
  r.branch = "rigid";
  r.report = std::move(direct);
  if (orientation == "full") {
    MetricReport mirrored = emd_wmi(mirror_wmi(wa), wb);
    if (mirrored.value < r.value) {
      r.value = mirrored.value;
      r.branch = "mirror";
      r.report = std::move(mirrored);
    }
  }
  return r;
}

int cmd_dist(const std::string& file_a, const std::string& file_b, const std::string& metric,
             const std::string& orientation, bool witness, bool as_json, const Tolerances& tol) {
  CloudSummary a = summarize(file_a, tol);
  CloudSummary b = summarize(file_b, tol);
  DistResult r = dist_value(metric, orientation, a, b, tol);

  double iso_tol = tol.rel_tol * std::max(a.centered.radius, b.centered.radius);
  if (metric != "sm") iso_tol += tol.quantum;
  bool isometric = r.value <= iso_tol;

  if (as_json) {
    json out{{"schema", 1},       {"command", "dist"},
             {"a", file_a},       {"b", file_b},
             {"metric", metric},  {"orientation", orientation},
             {"value", r.value},  {"isometric", isometric}};
    if (metric != "sm") out["branch"] = r.branch;
    if (witness && r.report) {
      if (!r.report->assignment.empty()) out["assignment"] = r.report->assignment;
      if (r.report->flow) out["flow"] = flow_to_json(*r.report->flow);
    }
    std::printf("%s\n", out.dump().c_str());
  } else {
    std::printf("metric: %s\nvalue: %.12g\nisometric: %s\n", metric.c_str(), r.value,
                isometric ? "true" : "false");
    if (witness && r.report) {
      if (!r.report->assignment.empty()) {
        std::printf("assignment:");
        for (int j : r.report->assignment) std::printf(" %d", j);
        std::printf("\n");
      }
      if (r.report->flow) {
        const FlowMatrix& f = *r.report->flow;
        std::printf("flow (denominator %lld):\n", f.denom);
        for (int i = 0; i < f.rows; ++i)
          for (int j = 0; j < f.cols; ++j) {
            Rational q = f.at(i, j);
            if (q.num != 0) std::printf("  %d -> %d : %lld/%lld\n", i, j, q.num, q.den);
          }
      }
    }
  }
  return 0;
}

int cmd_matrix(const std::string& dir, const std::string& metric, const std::string& orientation,
               bool as_json, const Tolerances& tol) {
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == ".csv" || ext == ".xyz") files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InvalidInput("matrix: no .csv or .xyz files in " + dir);

  std::vector<CloudSummary> clouds;
  clouds.reserve(files.size());
  for (const auto& f : files) clouds.push_back(summarize(f, tol));

  for (std::size_t i = 1; i < clouds.size(); ++i)
    if (clouds[i].cloud.dim() != clouds[0].cloud.dim())
      throw InvalidInput("matrix: mixed dimensions, offending file " + files[i]);
  if (metric == "sm" || metric == "lac")
    for (std::size_t i = 1; i < clouds.size(); ++i)
      if (clouds[i].cloud.size() != clouds[0].cloud.size())
        throw InvalidInput("matrix: " + metric + " needs equal point counts, offending file " +
                           files[i]);
  if (metric == "sm")
    for (std::size_t i = 0; i < clouds.size(); ++i)
      if (!clouds[i].genericity.is_generic)
        throw NotGeneric("matrix: sm requires principally generic clouds, offending file " +
                         files[i] + "; use --metric lac or emd");

  const std::size_t nf = files.size();
  std::vector<std::pair<int, int>> jobs;
  for (std::size_t i = 0; i < nf; ++i)
    for (std::size_t j = i + 1; j < nf; ++j) jobs.emplace_back(static_cast<int>(i), static_cast<int>(j));

  std::vector<double> cell(jobs.size(), 0.0);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t t = next.fetch_add(1);
      if (t >= jobs.size()) return;
      auto [i, j] = jobs[t];
      cell[t] = dist_value(metric, orientation, clouds[i], clouds[j], tol).value;
    }
  };
  int nthreads = thread_budget(jobs.size());
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::vector<std::vector<double>> M(nf, std::vector<double>(nf, 0.0));
  for (std::size_t t = 0; t < jobs.size(); ++t) {
    auto [i, j] = jobs[t];
    M[i][j] = M[j][i] = cell[t];
  }

  std::vector<std::string> labels;
  labels.reserve(nf);
  for (const auto& f : files) labels.push_back(fs::path(f).filename().string());

  if (as_json) {
    json out{{"schema", 1}, {"command", "matrix"}, {"metric", metric},
             {"orientation", orientation}};
    out["files"] = labels;
    json rows = json::array();
    for (const auto& row : M) rows.push_back(row);
    out["matrix"] = std::move(rows);
    std::printf("%s\n", out.dump().c_str());
  } else {
    std::printf("file");
    for (const auto& l : labels) std::printf(",%s", l.c_str());
    std::printf("\n");
    for (std::size_t i = 0; i < nf; ++i) {
      std::printf("%s", labels[i].c_str());
      for (std::size_t j = 0; j < nf; ++j) std::printf(",%.12g", M[i][j]);
      std::printf("\n");
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"isometry invariants and exact metrics for unlabeled point clouds"};
  app.require_subcommand(1);

  Tolerances tol;
  std::string metric = "lac", orientation = "full";
  bool as_json = false, full = false, witness = false, as_csv = false;

  auto add_tolerances = [&](CLI::App* cmd) {
    cmd->add_option("--rel-tol", tol.rel_tol, "relative genericity/isometry tolerance");
    cmd->add_option("--quantum", tol.quantum, "equivalence-collapse grid for WMI matrices");
    cmd->add_option("--tau-dep", tol.tau_dep, "linear-dependence threshold relative to r_A");
  };

  std::string inv_file;
  CLI::App* inv = app.add_subcommand("invariant", "genericity report and PCM or WMI summary");
  inv->add_option("file", inv_file, "cloud file (.csv or .xyz)")->required();
  inv->add_flag("--json", as_json, "machine-readable output");
  inv->add_flag("--full", full, "print full matrices");
  add_tolerances(inv);

  std::string dist_a, dist_b;
  CLI::App* dist = app.add_subcommand("dist", "metric between two clouds");
  dist->add_option("a", dist_a, "first cloud file")->required();
  dist->add_option("b", dist_b, "second cloud file")->required();
  dist->add_option("--metric", metric, "sm | lac | emd")
      ->check(CLI::IsMember({"sm", "lac", "emd"}));
  dist->add_option("--orientation", orientation, "rigid | full")
      ->check(CLI::IsMember({"rigid", "full"}));
  dist->add_flag("--witness", witness, "print the optimal assignment or flow");
  dist->add_flag("--json", as_json, "machine-readable output");
  add_tolerances(dist);

  std::string matrix_dir;
  CLI::App* mtx = app.add_subcommand("matrix", "pairwise distance matrix over a directory");
  mtx->add_option("dir", matrix_dir, "directory of cloud files")->required();
  mtx->add_option("--metric", metric, "sm | lac | emd")
      ->check(CLI::IsMember({"sm", "lac", "emd"}));
  mtx->add_option("--orientation", orientation, "rigid | full")
      ->check(CLI::IsMember({"rigid", "full"}));
  mtx->add_flag("--json", as_json, "machine-readable output");
  mtx->add_flag("--csv", as_csv, "comma-separated output (default)");
  add_tolerances(mtx);

  CLI11_PARSE(app, argc, argv);
  (void)as_csv;

  try {
    if (inv->parsed()) return cmd_invariant(inv_file, as_json, full, tol);
    if (dist->parsed()) return cmd_dist(dist_a, dist_b, metric, orientation, witness, as_json, tol);
    if (mtx->parsed()) return cmd_matrix(matrix_dir, metric, orientation, as_json, tol);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const NotGeneric& e) {
    std::cerr << "genericity failure: " << e.what() << "\n";
    return 4;
  } catch (const InvalidInput& e) {
    std::cerr << "input mismatch: " << e.what() << "\n";
    return 3;
  } catch (const TooLarge& e) {
    std::cerr << "input too large: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
