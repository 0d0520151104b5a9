#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "sheafkit/io/io.hpp"
#include "sheafkit/suites/suites.hpp"

using namespace sheafkit;

namespace {

struct Run {
  suites::SuiteReport report;
  double seconds = 0;
};

Run timed(const std::string& id) {
  auto start = std::chrono::steady_clock::now();
  auto r = suites::run_suite(id);
  std::chrono::duration<double> d = std::chrono::steady_clock::now() - start;
  return {std::move(r), d.count()};
}

struct Criterion {
  int number;
  std::vector<std::string> suites;
  double budget;
  std::function<std::string(const std::vector<suites::SuiteReport>&)> extra;  // empty when satisfied
};

std::string at_least(const suites::SuiteReport& r, const std::string& name, std::size_t n) {
  auto c = r.count(name);
  if (c >= n) return {};
  return r.id + " " + name + " " + std::to_string(c) + " < " + std::to_string(n);
}

std::string exactly(const suites::SuiteReport& r, const std::string& name, std::size_t n) {
  auto c = r.count(name);
  if (c == n) return {};
  return r.id + " " + name + " " + std::to_string(c) + " != " + std::to_string(n);
}

constexpr std::size_t kCorpus = 1 + 1 + 4 + 29 + 355;

std::string full_report() {
  std::string out;
  for (const auto& id : suites::suite_ids()) out += io::suite_to_json(suites::run_suite(id)).dump() + "\n";
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, {"T2.2", "T2.3"}, 60, [](const auto& r) { return at_least(r[0], "diagrams", 200) + at_least(r[1], "diagrams", 200); }},
      {2, {"L3.2.1"}, 30, [](const auto& r) { return at_least(r[0], "categories", 50); }},
      {3, {"T5.3.1"}, 60, [](const auto& r) { return exactly(r[0], "algebras", kCorpus); }},
      {4, {"T5.4.1"}, 120,
       [](const auto& r) {
         auto n = r[0].count("presheaves") + r[0].count("copresheaves");
         return n >= 100 ? std::string() : "only " + std::to_string(n) + " inputs";
       }},
      {5, {"T5.4.2"}, 300, [](const auto& r) { return at_least(r[0], "triples", 20); }},
      {6, {"T6.1.1"}, 120,
       [](const auto& r) { return exactly(r[0], "spaces", kCorpus) + at_least(r[0], "continuous maps", 1); }},
      {7, {"T6.1.3", "T6.1.3p"}, 60,
       [](const auto& r) { return exactly(r[0], "spaces", kCorpus) + exactly(r[1], "spaces", kCorpus); }},
      {8, {"T6.1.2"}, 60,
       [](const auto& r) { return exactly(r[0], "spaces", kCorpus) + at_least(r[0], "separatable spaces", 1); }},
      {9, {"L6.3.1"}, 60, [](const auto& r) { return exactly(r[0], "cosheaves", kCorpus); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    std::vector<suites::SuiteReport> reports;
    double seconds = 0;
    std::string why;
    for (const auto& id : c.suites) {
      auto run = timed(id);
      seconds += run.seconds;
      if (!run.report.ok()) {
        why += id + " " + std::to_string(run.report.passed) + "/" + std::to_string(run.report.cases);
        if (!run.report.failures.empty()) why += " (" + run.report.failures.front() + ")";
        why += "; ";
      }
      reports.push_back(std::move(run.report));
    }
    why += c.extra(reports);
    if (seconds >= c.budget) why += "took " + std::to_string(seconds) + " s; ";
    bool ok = why.empty();
    failed += !ok;
    std::string cases;
    for (const auto& r : reports) cases += (cases.empty() ? "" : " ") + r.id + "=" + std::to_string(r.cases);
    std::printf("criterion %d: %s [%s] %.2fs/%.0fs%s%s\n", c.number, ok ? "PASS" : "FAIL", cases.c_str(), seconds,
                c.budget, ok ? "" : " ", why.c_str());
  }

  auto first = full_report();
  auto second = full_report();
  bool same = first == second;
  failed += !same;
  std::printf("criterion 10: %s [%zu bytes per run] two full runs %s\n", same ? "PASS" : "FAIL", first.size(),
              same ? "byte-identical" : "differ");
  return failed == 0 ? 0 : 1;
}
