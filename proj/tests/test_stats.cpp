// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "botlens/random.hpp"
#include "botlens/stats/correlation.hpp"
#include "botlens/stats/descriptive.hpp"
#include "botlens/stats/rank_frequency.hpp"
#include "botlens/stats/special.hpp"
#include "botlens/stats/tests.hpp"
#include "oracles.hpp"

using namespace botlens;
using namespace botlens::stats;
using Catch::Approx;

TEST_CASE("mean_sd uses the population convention", "[stats][descriptive]") {
  std::vector<double> ones{1, 1, 1};
  auto a = mean_sd(ones);
  CHECK(a.mean == 1.0);
  CHECK(a.sd == 0.0);

  std::vector<double> two{0, 2};
  auto b = mean_sd(two);
  CHECK(b.mean == 1.0);
  CHECK(b.sd == 1.0);

  CHECK_THROWS_AS(mean_sd(std::vector<double>{}), DataError);
}

TEST_CASE("mean_sd recovers a skewed generator mean within 3 standard errors", "[stats][descriptive]") {
  // tweets-per-user regime: mean 2.86, sd 10.3
  Rng rng(20170505);
  std::vector<double> xs(10000);
  for (auto& x : xs) x = rng.lognormal_mean_sd(2.86, 10.3);
  auto ms = mean_sd(xs);
  const double se = 10.3 / std::sqrt(static_cast<double>(xs.size()));
  CHECK(std::fabs(ms.mean - 2.86) < 3.0 * se);
}

TEST_CASE("incomplete beta and Student t match reference values", "[stats][special]") {
  // scipy.special.betainc / scipy.stats.t.sf
  CHECK(incomplete_beta(2.5, 0.5, 0.3) == Approx(0.018927124071945658).epsilon(1e-10));
  CHECK(incomplete_beta(0.5, 3.0, 0.9) == Approx(0.9996750253207289).epsilon(1e-10));
  CHECK(student_t_two_sided(2.0, 3.5) == Approx(0.1261385225759135).epsilon(1e-10));
  CHECK(student_t_two_sided(10.0, 50.0) == Approx(1.607733468833539e-13).epsilon(1e-8));
  CHECK(student_t_two_sided(0.3, 1.0) == Approx(0.8144528418445154).epsilon(1e-10));
  CHECK(student_t_two_sided(0.0, 7.0) == 1.0);
  CHECK_THROWS_AS(incomplete_beta(0.0, 1.0, 0.5), NumericError);
}

TEST_CASE("welch_t on the hand-computed fixture", "[stats][welch]") {
  // mean(a)=2.5, s_a^2=5/3; mean(b)=4, s_b^2=5/2
  // t = -1.5/sqrt(5/12 + 1/2), df = (11/12)^2 / ((5/12)^2/3 + (1/2)^2/4)
  const double t_oracle = -1.5 / std::sqrt(5.0 / 12.0 + 0.5);
  const double df_oracle = (11.0 / 12.0) * (11.0 / 12.0) / ((25.0 / 144.0) / 3.0 + 0.25 / 4.0);
  CHECK(t_oracle == Approx(-1.5666989036012806).epsilon(1e-12));
  CHECK(df_oracle == Approx(6.980769230769232).epsilon(1e-12));

  std::vector<double> a{1, 2, 3, 4}, b{2, 3, 4, 5, 6};
  auto r = welch_t(a, b);
  CHECK(r.method == TestMethod::welch_t);
  CHECK(r.statistic == Approx(t_oracle).epsilon(1e-12));
  REQUIRE(r.df.has_value());
  CHECK(*r.df == Approx(df_oracle).epsilon(1e-12));
  CHECK(r.p_value == Approx(0.1612858562893043).epsilon(1e-9));
  CHECK(r.n1 == 4);
  CHECK(r.n2 == 5);
}

TEST_CASE("welch_t second fixture and pooled variant", "[stats][welch]") {
  std::vector<double> a{10.1, 12.3, 9.8, 11.4, 10.9, 13.0}, b{8.2, 7.9, 9.5, 8.8, 7.1, 9.9, 8.4, 7.7};
  auto r = welch_t(a, b);
  CHECK(r.statistic == Approx(4.646492126107443).epsilon(1e-10));
  CHECK(*r.df == Approx(8.961691970813972).epsilon(1e-10));
  CHECK(r.p_value == Approx(0.0012218885337509883).epsilon(1e-8));

  std::vector<double> c{1, 2, 3, 4}, d{2, 3, 4, 5, 6};
  auto p = pooled_t(c, d);
  CHECK(p.method == TestMethod::pooled_t);
  CHECK(p.statistic == Approx(-1.5275252316519465).epsilon(1e-12));
  CHECK(*p.df == 7.0);
  CHECK(p.p_value == Approx(0.1704706607870538).epsilon(1e-9));
}

TEST_CASE("welch_t symmetry and degenerate input", "[stats][welch]") {
  std::vector<double> a{3, 1, 4, 1, 5, 9, 2, 6}, b{2, 7, 1, 8, 2, 8};
  auto ab = welch_t(a, b);
  auto ba = welch_t(b, a);
  CHECK(ab.statistic == -ba.statistic);
  CHECK(ab.p_value == ba.p_value);

  auto same = welch_t(a, a);
  CHECK(same.statistic == 0.0);
  CHECK(same.p_value == 1.0);

  std::vector<double> flat1{2, 2, 2}, flat2{5, 5, 5};
  CHECK_THROWS_AS(welch_t(flat1, flat2), NumericError);
  CHECK_THROWS_AS(welch_t(std::vector<double>{1}, b), DataError);

  // one constant sample is fine
  auto half = welch_t(flat1, b);
  CHECK(std::isfinite(half.statistic));
}

TEST_CASE("welch_t flags p-values that underflow", "[stats][welch]") {
  std::vector<double> a, b;
  for (int i = 0; i < 5000; ++i) {
    a.push_back(1000.0 + (i % 7));
    b.push_back(0.0 + (i % 5));
  }
  auto r = welch_t(a, b);
  CHECK(r.p_value == 0.0);
  CHECK(r.underflow);
}

TEST_CASE("welch_t p-values are uniform under the null", "[stats][welch][slow]") {
  Rng rng(424242);
  std::vector<double> ps;
  std::vector<double> a(100000), b(100000);
  for (int rep = 0; rep < 200; ++rep) {
    for (auto& x : a) x = rng.normal();
    for (auto& x : b) x = rng.normal();
    ps.push_back(welch_t(a, b).p_value);
  }
  std::sort(ps.begin(), ps.end());
  double d = 0.0;
  const double n = static_cast<double>(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    d = std::max(d, std::fabs((i + 1) / n - ps[i]));
    d = std::max(d, std::fabs(ps[i] - i / n));
  }
  // Kolmogorov-Smirnov critical value at alpha = 0.001: 1.95 / sqrt(n)
  CHECK(d < 1.95 / std::sqrt(n));
}

TEST_CASE("mann_whitney_u exact small fixture", "[stats][mwu]") {
  std::vector<double> a{1, 2}, b{3, 4};
  auto r = mann_whitney_u(a, b);
  CHECK(r.method == TestMethod::mann_whitney_exact);
  CHECK(r.statistic == 0.0);
  CHECK(r.p_value == Approx(2.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("mann_whitney_u identical multisets give U = n1 n2 / 2", "[stats][mwu]") {
  std::vector<double> a{5, 1, 3, 3, 8, 2};
  auto r = mann_whitney_u(a, a);
  CHECK(r.statistic == 18.0);
  CHECK(r.p_value == 1.0);
}

TEST_CASE("mann_whitney_u exact p equals full enumeration", "[stats][mwu]") {
  Rng rng(7);
  for (std::size_t n = 2; n <= 12; ++n) {
    for (std::size_t n1 = 1; n1 < n; ++n1) {
      for (int rep = 0; rep < 3; ++rep) {
        // tie-free: distinct values shuffled
        std::vector<double> values(n);
        for (std::size_t i = 0; i < n; ++i) values[i] = static_cast<double>(i) * 1.5 + 0.25;
        rng.shuffle(values);
        std::vector<double> a(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(n1));
        std::vector<double> b(values.begin() + static_cast<std::ptrdiff_t>(n1), values.end());
        auto r = mann_whitney_u(a, b);
        REQUIRE(r.method == TestMethod::mann_whitney_exact);
        CHECK(std::fabs(r.p_value - oracle::enumerated_mwu_p(a, b)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("mann_whitney_u normal approximation matches reference", "[stats][mwu]") {
  // scipy.stats.mannwhitneyu(method="asymptotic", use_continuity=True)
  std::vector<double> x{1.5, 2.2, 3.1, 4.8, 5.0, 7.7, 20, 21, 22, 23, 24, 25, 26, 27, 28, 29, 30};
  std::vector<double> y{2.0, 6.1, 6.5, 8.8, 9.1, 10.4, 11.2, 40, 41, 42, 43};
  auto r = mann_whitney_u(x, y);
  CHECK(r.method == TestMethod::mann_whitney_normal);
  CHECK(r.statistic == 84.0);
  CHECK(r.p_value == Approx(0.6720301298311282).epsilon(1e-10));

  std::vector<double> t1{1, 2, 2, 3, 3, 3, 4, 5, 6, 7, 8}, t2{2, 3, 4, 4, 5, 6, 6, 7, 8, 9, 9, 10};
  auto tied = mann_whitney_u(t1, t2);
  CHECK(tied.method == TestMethod::mann_whitney_normal);
  CHECK(tied.statistic == 35.0);
  CHECK(tied.p_value == Approx(0.058849041233449).epsilon(1e-10));
}

TEST_CASE("mann_whitney_u is invariant under a common increasing transform", "[stats][mwu]") {
  Rng rng(99);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> a(15 + rep), b(22);
    for (auto& v : a) v = std::floor(rng.uniform() * 30);
    for (auto& v : b) v = std::floor(rng.uniform() * 30) + 3;
    auto ta = a, tb = b;
    for (auto& v : ta) v = std::exp(v / 7.0) + 2.0;
    for (auto& v : tb) v = std::exp(v / 7.0) + 2.0;
    auto r1 = mann_whitney_u(a, b);
    auto r2 = mann_whitney_u(ta, tb);
    CHECK(r1.statistic == r2.statistic);
    CHECK(r1.p_value == r2.p_value);
  }
}

TEST_CASE("pearson closed forms and invariances", "[stats][pearson]") {
  std::vector<double> x{1, 2, 3}, y{1, 2, 4};
  // sxy = 3, sxx = 2, syy = 14/3
  CHECK(pearson(x, y) == Approx(3.0 / std::sqrt(2.0 * 14.0 / 3.0)).epsilon(1e-14));
  CHECK(pearson(x, y) == Approx(0.9819805060619655).epsilon(1e-14));
  CHECK(pearson(x, x) == Approx(1.0).epsilon(1e-15));
  std::vector<double> neg{-1, -2, -3};
  CHECK(pearson(x, neg) == Approx(-1.0).epsilon(1e-15));

  Rng rng(3);
  std::vector<double> u(50), v(50);
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = rng.normal();
    v[i] = 0.5 * u[i] + rng.normal();
  }
  auto affine = u;
  for (auto& e : affine) e = 3.0 * e + 11.0;
  auto flipped = v;
  for (auto& e : flipped) e = -e;
  CHECK(pearson(affine, v) == Approx(pearson(u, v)).epsilon(1e-12));
  CHECK(pearson(u, flipped) == Approx(-pearson(u, v)).epsilon(1e-12));

  std::vector<double> flat{4, 4, 4};
  auto d = pearson_detail(x, flat);
  CHECK(d.degenerate);
  CHECK(d.rho == 0.0);
  CHECK_THROWS_AS(pearson(x, std::vector<double>{1, 2}), DataError);
}

TEST_CASE("correlation_matrix is symmetric with unit diagonal", "[stats][pearson]") {
  Rng rng(11);
  std::vector<std::vector<double>> cols(5, std::vector<double>(40));
  for (std::size_t i = 0; i < 40; ++i) {
    double base = rng.normal();
    for (std::size_t c = 0; c < 5; ++c) cols[c][i] = base * static_cast<double>(c) + rng.normal();
  }
  cols[4].assign(40, 2.0);
  auto m = correlation_matrix({"a", "b", "c", "d", "e"}, cols);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(m.rho[i][i] == 1.0);
    for (std::size_t j = 0; j < 5; ++j) {
      CHECK(m.rho[i][j] == m.rho[j][i]);
      CHECK(std::fabs(m.rho[i][j]) <= 1.0 + 1e-12);
    }
  }
  CHECK(m.degenerate[4]);
  CHECK_FALSE(m.degenerate[0]);
  CHECK(m.rho[0][4] == 0.0);
}

TEST_CASE("rank_frequency orders by count then entity", "[stats][rank]") {
  std::map<std::string, std::uint64_t> counts{{"a", 3}, {"b", 1}, {"c", 3}};
  auto rf = rank_frequency(counts);
  REQUIRE(rf.rows.size() == 3);
  CHECK(rf.rows[0] == RankRow{1, "a", 3});
  CHECK(rf.rows[1] == RankRow{2, "c", 3});
  CHECK(rf.rows[2] == RankRow{3, "b", 1});
  auto ll = rf.log_log();
  CHECK(ll[0].first == 0.0);
  CHECK(ll[0].second == Approx(std::log10(3.0)));

  CHECK(rank_frequency(std::map<std::string, std::uint64_t>{}).rows.empty());

  auto top = rank_frequency(counts, 1);
  REQUIRE(top.rows.size() == 1);
  CHECK(top.rows[0].entity == "a");
}

TEST_CASE("rank_frequency on a random fixture is a sorted permutation", "[stats][rank]") {
  Rng rng(1000);
  std::unordered_map<std::string, std::uint64_t> counts;
  for (int i = 0; i < 1000; ++i) counts["e" + std::to_string(i)] = rng.below(50);
  auto rf = rank_frequency(counts);
  REQUIRE(rf.rows.size() == 1000);
  for (std::size_t i = 0; i < rf.rows.size(); ++i) {
    CHECK(rf.rows[i].rank == i + 1);
    CHECK(counts.at(rf.rows[i].entity) == rf.rows[i].count);
    if (i > 0) {
      CHECK(rf.rows[i - 1].count >= rf.rows[i].count);
      if (rf.rows[i - 1].count == rf.rows[i].count) CHECK(rf.rows[i - 1].entity < rf.rows[i].entity);
    }
  }
}
