#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "json.hpp"

#include "fockstat/errors.hpp"
#include "fockstat/report.hpp"
#include "fockstat/verify.hpp"

namespace fockstat {
namespace {

using json = nlohmann::json;

TEST(ReportPoint, FockStateTwo) {
  const auto r = report_point({Family::ebs, 2, 0.0, 5});
  EXPECT_EQ(r.stats.mean_photon, 2.0);
  ASSERT_TRUE(r.stats.mandel_q.has_value());
  EXPECT_EQ(*r.stats.mandel_q, -1.0);
  EXPECT_EQ(r.stats.var_x, 1.25);
  EXPECT_EQ(r.stats.var_p, 1.25);
  ASSERT_EQ(r.routes.size(), 2u);
  EXPECT_EQ(r.routes[0].value->value, 2.0);
  EXPECT_FALSE(r.routes[1].value.has_value());  // hypergeometric form is singular at eta = 0
  EXPECT_FALSE(r.routes[1].error.empty());
}

TEST(ReportPoint, BinomialQ) {
  const auto r = report_point({Family::bs, 0, 0.5, 10});
  EXPECT_NEAR(*r.stats.mandel_q, -0.25, 1e-12);
  EXPECT_NEAR(*r.ratio_mandel_q, -0.25, 1e-12);
}

TEST(ReportPoint, EnbsAllRoutesGiveFourThirds) {
  const auto r = report_point({Family::enbs, 1, 0.5, 1});
  ASSERT_EQ(r.routes.size(), 3u);
  for (const auto& route : r.routes) {
    ASSERT_TRUE(route.value.has_value()) << to_string(route.route);
    EXPECT_NEAR(route.value->value, 4.0 / 3.0, 1e-13) << to_string(route.route);
  }
  EXPECT_LT(r.max_route_discrepancy, 1e-10);
}

TEST(ReportPoint, RejectsInvalidParameters) {
  EXPECT_THROW((void)report_point({Family::enbs, 1, 1.0, 3}), DomainError);
  EXPECT_THROW((void)report_point({Family::ebs, 1, 0.5, 0}), DomainError);
}

TEST(ReportRendering, TextAndJson) {
  const auto r = report_point({Family::ebs, 2, 0.0, 5});
  const auto text = render_text(r);
  EXPECT_NE(text.find("Mandel Q     -1"), std::string::npos) << text;
  EXPECT_NE(text.find("unavailable"), std::string::npos);

  const auto j = json::parse(render_json(r));
  EXPECT_EQ(j["family"], "EBS");
  EXPECT_EQ(j["statistics"]["mandel_q"], -1.0);
  EXPECT_TRUE(j["normalization"]["routes"][1]["value"].is_null());

  const auto vacuum = json::parse(render_json(report_point({Family::bs, 0, 0.0, 3})));
  EXPECT_TRUE(vacuum["statistics"]["mandel_q"].is_null());
  EXPECT_NE(render_text(report_point({Family::bs, 0, 0.0, 3})).find("undefined"), std::string::npos);
}

TEST(VerifySuite, FastLevelPasses) {
  const auto summary = verify_suite(VerifyLevel::fast);
  EXPECT_TRUE(summary.passed()) << render_summary(summary);
  EXPECT_EQ(summary.checks.size(), 7u);
  double total = 0.0;
  for (const auto& c : summary.checks) total += c.seconds;
  EXPECT_LT(total, 10.0);
  EXPECT_NE(render_summary(summary).find("7/7 checks passed"), std::string::npos);
}

}  // namespace
}  // namespace fockstat
