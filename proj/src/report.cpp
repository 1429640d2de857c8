#include "soconv/report.hpp"

#include <chrono>
#include <fstream>

#include <nlohmann/json.hpp>

#include "soconv/errors.hpp"

namespace soconv {

using ordered_json = nlohmann::ordered_json;

void SuiteConfig::validate() const {
  if (!Fq::is_odd_prime(q)) throw ConfigError("q must be an odd prime >= 3");
  if (l < 2) throw ConfigError("l must be >= 2");
  if (l > 7) throw ConfigError("l must be <= 7");
  if (tol.eq_abs <= 0 || tol.gamma_rel <= 0 || tol.eig_gap <= 0)
    throw ConfigError("tolerances must be positive");
  static const std::vector<std::string> known{"weyl",    "groups", "bessel",
                                              "zeta",    "gamma",  "multone",
                                              "cells",   "converse", "all"};
  for (const auto& s : suites) {
    bool ok = false;
    for (const auto& k : known) ok = ok || s == k;
    if (!ok) throw ConfigError("unknown suite: " + s);
  }
}

bool SuiteConfig::wants(const std::string& suite) const {
  for (const auto& s : suites)
    if (s == "all" || s == suite) return true;
  return false;
}

bool Report::run_check(const std::string& name, const std::string& anchor,
                       const std::function<void(CheckRecord&)>& body) {
  CheckRecord rec;
  rec.name = name;
  rec.anchor = anchor;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(rec);
    rec.status = CheckStatus::Pass;
  } catch (const std::exception& e) {
    rec.status = CheckStatus::Fail;
    rec.note = e.what();
  }
  rec.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  checks_.push_back(std::move(rec));
  return checks_.back().status == CheckStatus::Pass;
}

void Report::skip(const std::string& name, const std::string& anchor, const std::string& why) {
  CheckRecord rec;
  rec.name = name;
  rec.anchor = anchor;
  rec.status = CheckStatus::Skip;
  rec.note = why;
  checks_.push_back(std::move(rec));
}

int Report::failures() const {
  int n = 0;
  for (const auto& c : checks_)
    if (c.status == CheckStatus::Fail) ++n;
  return n;
}

int Report::passes() const {
  int n = 0;
  for (const auto& c : checks_)
    if (c.status == CheckStatus::Pass) ++n;
  return n;
}

int Report::skips() const {
  int n = 0;
  for (const auto& c : checks_)
    if (c.status == CheckStatus::Skip) ++n;
  return n;
}

std::string Report::to_json(bool include_volatile) const {
  ordered_json j;
  j["config"] = {{"l", cfg_.l},
                 {"q", cfg_.q},
                 {"seed", cfg_.seed},
                 {"tol_eq", cfg_.tol.eq_abs},
                 {"tol_gamma", cfg_.tol.gamma_rel},
                 {"tol_eig_gap", cfg_.tol.eig_gap},
                 {"slow", cfg_.slow},
                 {"allow_noncuspidal", cfg_.allow_noncuspidal},
                 {"suites", cfg_.suites}};
  j["seed"] = cfg_.seed;
  j["versions"] = {{"code", "0.1.0"}, {"cache_format", "SOCF1"}};
  ordered_json arr = ordered_json::array();
  for (const auto& c : checks_) {
    ordered_json r;
    r["name"] = c.name;
    r["anchor"] = c.anchor;
    r["status"] = c.status == CheckStatus::Pass   ? "pass"
                  : c.status == CheckStatus::Fail ? "fail"
                                                  : "skip";
    r["max_error"] = c.max_error;
    r["count"] = c.count;
    if (include_volatile) r["runtime_ms"] = c.runtime_ms;
    if (!c.note.empty()) r["note"] = c.note;
    arr.push_back(std::move(r));
  }
  j["checks"] = std::move(arr);
  j["summary"] = {{"pass", passes()}, {"fail", failures()}, {"skip", skips()}};
  return j.dump(2);
}

void Report::write(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  out << to_json(true) << "\n";
}

void check_true(bool cond, const std::string& msg) {
  if (!cond) throw ConsistencyError(msg);
}

void check_count(CheckRecord& rec, bool cond, const std::string& msg) {
  ++rec.count;
  if (!cond) throw ConsistencyError(msg);
}

void check_near(CheckRecord& rec, CScalar got, CScalar want, double tol,
                const std::string& msg) {
  double err = std::abs(got - want);
  rec.max_error = std::max(rec.max_error, err);
  ++rec.count;
  if (!(err < tol))
    throw ConsistencyError(msg + " (error " + std::to_string(err) + ")");
}

void check_small(CheckRecord& rec, double err, double tol, const std::string& msg) {
  rec.max_error = std::max(rec.max_error, err);
  ++rec.count;
  if (!(err < tol))
    throw ConsistencyError(msg + " (error " + std::to_string(err) + ")");
}

}  // namespace soconv
