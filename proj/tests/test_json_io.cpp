#include <gtest/gtest.h>

#include "commcyc/json_io.hpp"

using namespace commcyc;

TEST(JsonIo, PgfRoundTrip) {
  for (auto pgf : {uniform_cycles_pgf(5), one_cycle_pgf(6), two_cycles_pgf(3), transpositions_pgf(4)}) {
    auto j = to_json(pgf);
    auto back = pgf_from_json(json::parse(j.dump()));
    EXPECT_EQ(back.poly, pgf.poly);
    EXPECT_EQ(back.m, pgf.m);
    EXPECT_EQ(back.ground_size, pgf.ground_size);
    EXPECT_EQ(back.source, pgf.source);
  }
}

TEST(JsonIo, PgfLayout) {
  auto j = to_json(one_cycle_pgf(3));
  EXPECT_EQ(j.dump(), R"({"M":3,"ground_size":3,"source":"one_cycle","coeffs":["0/1","1/2","0/1","1/2"]})");
  EXPECT_THROW(pgf_from_json(json::parse(R"({"M":1,"source":"x","coeffs":[]})")), std::invalid_argument);
  EXPECT_THROW(pgf_from_json(json::parse(R"({"M":1,"source":"uniform","coeffs":["1/0"]})")), std::invalid_argument);
}

TEST(JsonIo, BernoulliRoundTrip) {
  auto exact = bernoulli_decomposition(transpositions_pgf(3));
  auto back = bernoulli_from_json(json::parse(to_json(exact).dump()));
  ASSERT_EQ(back.terms.size(), 3u);
  EXPECT_EQ(*back.terms[1].exact, Rational(1, 3));
  EXPECT_EQ(back.terms[1].multiplier, 2u);
  EXPECT_EQ(expand_exact(back), transpositions_pgf(3).poly);

  auto numeric = bernoulli_decomposition(one_cycle_pgf(7));
  auto nb = bernoulli_from_json(json::parse(to_json(numeric).dump()));
  EXPECT_EQ(nb.offset, 1u);
  ASSERT_EQ(nb.terms.size(), numeric.terms.size());
  for (std::size_t i = 0; i < nb.terms.size(); ++i) EXPECT_DOUBLE_EQ(nb.terms[i].p, numeric.terms[i].p);
}

TEST(JsonIo, BernoulliValidation) {
  EXPECT_THROW(bernoulli_from_json(json::parse(R"({"offset":0,"terms":[{"p":1.5,"multiplier":1}]})")),
               std::invalid_argument);
  EXPECT_THROW(bernoulli_from_json(json::parse(R"({"offset":0,"terms":[{"p":0.5,"multiplier":3}]})")),
               std::invalid_argument);
  EXPECT_THROW(bernoulli_from_json(json::parse(R"({"offset":0,"terms":[{"p":"0/1","multiplier":1}]})")),
               std::invalid_argument);
}

TEST(JsonIo, MomentReportFields) {
  auto r = mc_tr_G_squared_phase(2, 100, 42);
  auto j = to_json(r);
  for (const char* key : {"identity", "N", "M", "K", "estimate", "std_error", "target", "z", "samples", "seed",
                          "estimate_imag", "z_imag", "partitions", "target_source"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["target"], "0/1");
  EXPECT_EQ(j["samples"], 100);
  EXPECT_EQ(j["seed"], 42);

  MomentReport none;
  none.estimate = std::numeric_limits<double>::infinity();
  auto jn = to_json(none);
  EXPECT_TRUE(jn["target"].is_null());
  EXPECT_TRUE(jn["z"].is_null());
  EXPECT_TRUE(jn["estimate"].is_null());
}
