// Acceptance runner: one PASS/FAIL line per primary criterion.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>

#include "checks.hpp"
#include "conformance.hpp"
#include "skytrace/ulog/parser.hpp"
#include "synthetic.hpp"

namespace {

using namespace skytrace;
using namespace skytrace::testing;

CheckResult parser_conformance() {
  CheckResult r;
  std::string note;
  for (const auto& name : sample_logs()) {
    ++r.cases;
    const auto log = ulog::parse_log(ulog::read_file(data_dir() / (name + ".ulg")));
    for (const auto& d : compare_with_oracle(log, load_json(data_dir() / (name + ".oracle.json")))) r.fail(name + ": " + d);
    note += name + " (" + std::to_string(log.series().size()) + " series) ";
  }
  const auto big = large_log(32u * 1024u * 1024u);
  const auto t0 = std::chrono::steady_clock::now();
  const auto log = ulog::parse_log(big);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ++r.cases;
  if (seconds >= 5.0) r.fail("32 MiB log took " + std::to_string(seconds) + " s");
  char buf[96];
  std::snprintf(buf, sizeof buf, "; %.1f MiB parsed in %.2f s", big.size() / 1048576.0, seconds);
  r.note = note + "match reference digests" + buf;
  return r;
}

CheckResult fuzz_totality() {
  const auto report = run_fuzz(100'000, 20240601);
  CheckResult r;
  r.cases = report.cases;
  r.failures = report.failures;
  r.note = std::to_string(report.parsed) + " parsed, " + std::to_string(report.typed_errors) + " typed errors, " +
           std::to_string(report.failures.size()) + " other";
  return r;
}

CheckResult simplification() {
  auto r = check_simplification(1000, 42);
  const auto budget = check_chart_budget();
  r.cases += budget.cases;
  for (const auto& f : budget.failures) r.fail(f);
  r.note = "1000 random polylines; " + budget.note;
  return r;
}

int report(const char* name, const std::function<CheckResult()>& check) {
  CheckResult r;
  try {
    r = check();
  } catch (const std::exception& e) {
    r.fail(std::string("exception: ") + e.what());
  }
  std::printf("%s  %-22s %zu cases%s%s\n", r.ok() ? "PASS" : "FAIL", name, r.cases, r.note.empty() ? "" : "; ",
              r.note.c_str());
  for (const auto& f : r.failures) std::printf("      - %s\n", f.c_str());
  std::fflush(stdout);
  return r.ok() ? 0 : 1;
}

}  // namespace

int main() {
  int failed = 0;
  failed += report("parser-conformance", parser_conformance);
  failed += report("fuzz-totality", fuzz_totality);
  failed += report("simplification", simplification);
  failed += report("windowing-algebra", [] { return check_windowing(10'000, 99); });
  failed += report("color-invariants", check_colors);
  failed += report("scenario-rc-loss", check_rc_loss);
  failed += report("zero-persistence", [] {
    return check_zero_persistence({std::filesystem::current_path(), std::filesystem::temp_directory_path(), data_dir()});
  });
  std::printf("summary: %d of 7 criteria passed\n", 7 - failed);
  return failed ? 1 : 0;
}
