#pragma once

// Machine-checked verification reports.
//
// A check that disagrees with a published claim is a discrepancy, not a
// failure; "fail" is reserved for internal inconsistencies of the tool.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace wreathkit {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Status { pass, fail, discrepancy };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::discrepancy:
      return "discrepancy-vs-paper";
  }
  return "fail";
}

struct Check {
  std::string name;
  std::string expected;
  std::string observed;
  Status status = Status::pass;
};

class VerificationReport {
 public:
  VerificationReport(std::string subject, std::string spec, std::uint64_t seed = 0)
      : subject_(std::move(subject)), spec_(std::move(spec)), seed_(seed),
        start_(std::chrono::steady_clock::now()) {}

  const std::string& subject() const noexcept { return subject_; }
  const std::string& spec() const noexcept { return spec_; }
  std::uint64_t seed() const noexcept { return seed_; }

  void add(Check c) { checks_.push_back(std::move(c)); }

  void add(std::string name, std::string expected, std::string observed, Status status) {
    add(Check{std::move(name), std::move(expected), std::move(observed), status});
  }

  // pass when expected == observed, otherwise `on_mismatch`.
  Status expect(std::string name, const std::string& expected, const std::string& observed,
                Status on_mismatch) {
    const Status s = expected == observed ? Status::pass : on_mismatch;
    add(std::move(name), expected, observed, s);
    return s;
  }

  // Appends another report's checks under a name prefix.
  void merge(const VerificationReport& other, const std::string& prefix) {
    for (const auto& c : other.checks_) add(prefix + c.name, c.expected, c.observed, c.status);
    if (!other.details_.is_null()) details_[prefix.empty() ? "merged" : prefix] = other.details_;
  }

  // Sorted by name; stable for equal names.
  std::vector<Check> checks() const {
    std::vector<Check> sorted = checks_;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Check& a, const Check& b) { return a.name < b.name; });
    return sorted;
  }

  nlohmann::json& details() { return details_; }
  const nlohmann::json& details() const { return details_; }

  bool any(Status s) const {
    return std::any_of(checks_.begin(), checks_.end(), [&](const Check& c) { return c.status == s; });
  }

  std::size_t count(Status s) const {
    return static_cast<std::size_t>(
        std::count_if(checks_.begin(), checks_.end(), [&](const Check& c) { return c.status == s; }));
  }

  // 0 all pass, 1 internal failure, 3 discrepancy with a published claim.
  int exit_code() const {
    if (any(Status::fail)) return 1;
    if (any(Status::discrepancy)) return 3;
    return 0;
  }

  void finish() {
    runtime_ms_ = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start_)
                      .count();
  }

  std::int64_t runtime_ms() const noexcept { return runtime_ms_; }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["subject"] = subject_;
    j["spec"] = spec_;
    j["seed"] = seed_;
    j["runtime_ms"] = runtime_ms_;
    j["tool_version"] = kToolVersion;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks()) {
      j["checks"].push_back({{"name", c.name},
                             {"expected", c.expected},
                             {"observed", c.observed},
                             {"status", to_string(c.status)}});
    }
    if (!details_.is_null()) j["details"] = details_;
    return j;
  }

  std::string to_text() const {
    std::string s = subject_ + " [" + spec_ + "] seed=" + std::to_string(seed_) + "\n";
    for (const auto& c : checks()) {
      s += "  " + to_string(c.status) + "  " + c.name + ": expected " + c.expected + ", observed " +
           c.observed + "\n";
    }
    s += "  " + std::to_string(count(Status::pass)) + " pass, " +
         std::to_string(count(Status::discrepancy)) + " discrepancy-vs-paper, " +
         std::to_string(count(Status::fail)) + " fail (" + std::to_string(runtime_ms_) + " ms)\n";
    return s;
  }

 private:
  std::string subject_;
  std::string spec_;
  std::uint64_t seed_;
  std::chrono::steady_clock::time_point start_;
  std::int64_t runtime_ms_ = 0;
  std::vector<Check> checks_;
  nlohmann::json details_;
};

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace wreathkit
