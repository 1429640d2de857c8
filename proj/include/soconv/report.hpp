#pragma once

// Machine-readable run reports: one record per executed check, plus the
// configuration block. Canonical serialization excludes wall-clock fields so
// that identical (config, seed) runs compare bit-for-bit.

#include <functional>
#include <string>
#include <vector>

#include "soconv/core.hpp"

namespace soconv {

enum class CheckStatus { Pass, Fail, Skip };

struct CheckRecord {
  std::string name;
  std::string anchor;
  CheckStatus status = CheckStatus::Pass;
  double max_error = 0.0;
  uint64_t count = 0;
  int64_t runtime_ms = 0;
  std::string note;
};

struct SuiteConfig {
  int l = 2;
  int q = 3;
  uint64_t seed = 0xC0FFEE;
  Tolerance tol;
  std::string cache_dir;
  bool slow = false;
  bool allow_noncuspidal = false;
  uint64_t budget = 10'000'000;
  std::vector<std::string> suites{"all"};

  void validate() const;
  bool wants(const std::string& suite) const;
};

class Report {
 public:
  explicit Report(SuiteConfig cfg) : cfg_(std::move(cfg)) {}

  const SuiteConfig& config() const { return cfg_; }
  const std::vector<CheckRecord>& checks() const { return checks_; }

  // Runs `body`, recording a pass, or a fail with the thrown message.
  // The body updates max_error / count / note on the record it receives.
  bool run_check(const std::string& name, const std::string& anchor,
                 const std::function<void(CheckRecord&)>& body);
  void skip(const std::string& name, const std::string& anchor, const std::string& why);

  int failures() const;
  int passes() const;
  int skips() const;

  // include_volatile=false drops runtime fields (canonical form).
  std::string to_json(bool include_volatile) const;
  void write(const std::string& path) const;

 private:
  SuiteConfig cfg_;
  std::vector<CheckRecord> checks_;
};

// Check-level assertion helpers. They throw Error, which run_check converts
// into a failed record.
void check_true(bool cond, const std::string& msg);
void check_count(CheckRecord& rec, bool cond, const std::string& msg);
void check_near(CheckRecord& rec, CScalar got, CScalar want, double tol, const std::string& msg);
void check_small(CheckRecord& rec, double err, double tol, const std::string& msg);

}  // namespace soconv
