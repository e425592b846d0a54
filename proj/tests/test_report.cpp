#include <sstream>

#include <gtest/gtest.h>

#include "kantian/report.hpp"
#include "test_util.hpp"

using namespace kantian;
using kantian::testing::vec;

TEST(Report, CsvNumber) {
  EXPECT_EQ(csv_number(0.0), "0");
  EXPECT_EQ(csv_number(-0.0), "0");
  EXPECT_EQ(csv_number(1.25), "1.25");
  EXPECT_EQ(csv_number(1.0 / 3), "0.333333333333");
}

TEST(Report, ConfigEcho) {
  std::ostringstream os;
  write_config_echo(os, {{"command", "frontier"}, {"points", "11"}});
  EXPECT_EQ(os.str(), "# command=frontier\n# points=11\n");
}

TEST(Report, FrontierHeader) {
  std::ostringstream os;
  write_frontier_csv(os, 2, {});
  EXPECT_EQ(os.str(), "m_1,m_2,x_1,x_2,U_1,U_2,cert_residual\n");
}

TEST(Report, PlanErrorRow) {
  std::ostringstream os;
  write_plan_header(os, 2);
  write_plan_error_row(os, vec({1, 2}), "error");
  const std::string s = os.str();
  EXPECT_NE(s.find("x_p_1,x_p_2,c_1,c_2,eps,theta,residual_max,argmax_1,argmax_2,verdict\n"),
            std::string::npos);
  EXPECT_NE(s.find("1,2,"), std::string::npos);
  EXPECT_EQ(s.substr(s.size() - 6), "error\n");
}
