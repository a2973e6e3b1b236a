#include <gtest/gtest.h>

#include "wreathkit/report.hpp"

using namespace wreathkit;

TEST(Report, ExitCodes) {
  VerificationReport r("subject", "S3*S3");
  EXPECT_EQ(r.exit_code(), 0);
  r.expect("a", "1", "1", Status::discrepancy);
  EXPECT_EQ(r.exit_code(), 0);
  r.expect("b", "1", "2", Status::discrepancy);
  EXPECT_EQ(r.exit_code(), 3);
  r.expect("c", "1", "2", Status::fail);
  EXPECT_EQ(r.exit_code(), 1);
  EXPECT_EQ(r.count(Status::pass), 1u);
}

TEST(Report, JsonShapeAndOrdering) {
  VerificationReport r("subject", "S3*S3", 42);
  r.add("zeta", "x", "x", Status::pass);
  r.add("alpha", "x", "y", Status::discrepancy);
  r.finish();
  const auto j = r.to_json();
  EXPECT_EQ(j["subject"], "subject");
  EXPECT_EQ(j["spec"], "S3*S3");
  EXPECT_EQ(j["seed"], 42);
  EXPECT_EQ(j["tool_version"], kToolVersion);
  EXPECT_TRUE(j["runtime_ms"].is_number_integer());
  ASSERT_EQ(j["checks"].size(), 2u);
  EXPECT_EQ(j["checks"][0]["name"], "alpha");
  EXPECT_EQ(j["checks"][0]["status"], "discrepancy-vs-paper");
  EXPECT_EQ(j["checks"][1]["status"], "pass");
  EXPECT_FALSE(j.contains("details"));
  r.details()["k"] = 1;
  EXPECT_EQ(r.to_json()["details"]["k"], 1);
}

TEST(Report, MergePrefixesNames) {
  VerificationReport a("a", "S3*S3");
  VerificationReport b("b", "S3*S3");
  b.add("x", "1", "1", Status::pass);
  b.details()["d"] = true;
  a.merge(b, "part/");
  EXPECT_EQ(a.checks().at(0).name, "part/x");
  EXPECT_TRUE(a.details()["part/"]["d"].get<bool>());
}

TEST(Report, TextMirrorsChecks) {
  VerificationReport r("subject", "S3*S3");
  r.add("n", "10", "10", Status::pass);
  const std::string text = r.to_text();
  EXPECT_NE(text.find("pass  n: expected 10, observed 10"), std::string::npos);
  EXPECT_NE(text.find("1 pass, 0 discrepancy-vs-paper, 0 fail"), std::string::npos);
}
