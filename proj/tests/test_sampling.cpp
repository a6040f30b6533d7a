#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "abar/abar_plus.hpp"
#include "abar/errors.hpp"
#include "abar/ks.hpp"
#include "abar/random.hpp"
#include "abar/sampling.hpp"
#include "fixtures/seeds.hpp"

using namespace abar;

namespace {

constexpr std::size_t kN = 100000;

KsResult ks_against(std::vector<double> values, const std::function<double(double)>& f) {
  std::sort(values.begin(), values.end());
  return ks_statistic(values, f);
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double gamma15_cdf(double theta, double y) {
  const double x = y / theta;
  double term = 1.0 / std::tgamma(2.5);
  double sum = term;
  for (int n = 1; n < 4000; ++n) {
    term *= x / (1.5 + n);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return std::pow(x, 1.5) * std::exp(-x) * sum;
}

}  // namespace

TEST_CASE("norm3 sampler") {
  RandomStream stream(fixture_seeds::kNorm3Ks, 0);
  const auto batch = sample_norm3({3.0, 0.0, 4.0}, 1.0, kN, stream);
  CHECK(batch.params.a() == 5.0);
  CHECK(batch.n() == kN);
  REQUIRE(batch.mean_vector.has_value());
  CHECK(batch.mean_vector->a3 == 4.0);
  const AbarParams p(5.0, 1.0);
  const auto ks = ks_against(batch.values, [&](double y) { return cdf(p, y); });
  CHECK(ks.threshold == doctest::Approx(1.628 / std::sqrt(1e5)));
  CHECK(ks.passes());

  for (const auto& [a, sigma] : std::vector<std::pair<double, double>>{{0.0, 1.0},
                                                                       {5.0, 1.0},
                                                                       {5.0, 2.0}}) {
    RandomStream s(fixture_seeds::kNorm3Ks, 1);
    const auto b = sample_norm3({a, 0.0, 0.0}, sigma, kN, s);
    const AbarParams q(a, sigma);
    CAPTURE(a);
    CAPTURE(sigma);
    CHECK(ks_against(b.values, [&](double y) { return cdf(q, y); }).passes());
  }

  SUBCASE("sample mean of 10^6 draws") {
    RandomStream s(fixture_seeds::kNorm3Ks, 2);
    const auto b = sample_norm3({5.0, 0.0, 0.0}, 2.0, 1000000, s);
    CHECK(std::fabs(mean_of(b.values) / mean(AbarParams(5.0, 2.0)) - 1.0) <= 0.005);
  }
  CHECK_THROWS_AS(sample_norm3({1.0, 0.0, 0.0}, 0.0, 10, stream), DomainError);
  CHECK_THROWS_AS(sample_norm3({1.0, 0.0, 0.0}, 1.0, 0, stream), InputError);
}

TEST_CASE("rotational invariance") {
  RandomStream s1(fixture_seeds::kNorm3Ks, 10);
  RandomStream s2(fixture_seeds::kNorm3Ks, 11);
  const auto direct = sample_norm3({3.0, 0.0, 4.0}, 1.0, kN, s1);
  const auto rotated = sample_norm3_rotated({3.0, 0.0, 4.0}, 1.0, kN, s2);
  CHECK(rotated.params.a() == 5.0);
  CHECK(ks_two_sample(direct.values, rotated.values).passes());

  RandomStream t1(99, 0), t2(99, 0);
  CHECK(sample_norm3({2.5, 0.0, 0.0}, 1.0, 1000, t1).values ==
        sample_norm3_rotated({2.5, 0.0, 0.0}, 1.0, 1000, t2).values);

  RandomStream z1(fixture_seeds::kNorm3Ks, 12), z2(fixture_seeds::kNorm3Ks, 13);
  const AbarParams maxwell(0.0, 1.0);
  auto maxwell_cdf = [&](double y) { return cdf(maxwell, y); };
  CHECK(ks_against(sample_norm3({0.0, 0.0, 0.0}, 1.0, kN, z1).values, maxwell_cdf).passes());
  CHECK(ks_against(sample_norm3_rotated({0.0, 0.0, 0.0}, 1.0, kN, z2).values, maxwell_cdf)
            .passes());
}

TEST_CASE("inverse-CDF sampler") {
  const AbarParams p(5.0, 1.0);
  RandomStream s1(fixture_seeds::kInverseCdf, 0);
  RandomStream s2(fixture_seeds::kInverseCdf, 1);
  const auto inv = sample_inverse_cdf(p, kN, s1);
  const auto direct = sample_norm3({5.0, 0.0, 0.0}, 1.0, kN, s2);
  CHECK(inv.method == SampleMethod::inverse_cdf);
  CHECK(ks_two_sample(inv.values, direct.values).passes());
  CHECK(ks_against(inv.values, [&](double y) { return cdf(p, y); }).passes());

  const std::vector<double> half = {0.5};
  CHECK(inverse_cdf_values(p, half)[0] == quantile(p, 0.5));

  SUBCASE("each value inverts its uniform") {
    RandomStream u(fixture_seeds::kInverseCdf, 2);
    RandomStream v(fixture_seeds::kInverseCdf, 2);
    const auto b = sample_inverse_cdf(p, 2000, u);
    for (double y : b.values) {
      CHECK(std::fabs(cdf(p, y) - v.uniform()) <= 1e-10);
    }
  }
  SUBCASE("second moment of 10^6 draws") {
    RandomStream s(fixture_seeds::kInverseCdf, 3);
    const auto b = sample_inverse_cdf(AbarParams(2.0, 1.0), 1000000, s);
    double m2 = 0.0;
    for (double y : b.values) m2 += y * y;
    CHECK(std::fabs(m2 / 1e6 / 7.0 - 1.0) <= 0.01);
  }
}

TEST_CASE("Abar+ sampler") {
  SUBCASE("mean of 10^6 draws") {
    RandomStream s(fixture_seeds::kPlus, 0);
    const auto b = sample_plus(AbarParams(5.0, 2.0), 1000000, s);
    CHECK(b.family == Family::abar_plus);
    CHECK(std::all_of(b.values.begin(), b.values.end(), [](double v) { return v >= 0.0; }));
    CHECK(std::fabs(mean_of(b.values) / 37.0 - 1.0) <= 0.01);
  }
  SUBCASE("KS against the Gamma(3/2, 2) law at a = 0") {
    RandomStream s(fixture_seeds::kPlus, 1);
    const auto b = sample_plus(AbarParams(0.0, 1.0), kN, s);
    CHECK(ks_against(b.values, [](double y) { return gamma15_cdf(2.0, y); }).passes());
  }
  SUBCASE("squared Abar draws follow plus_cdf") {
    RandomStream s(fixture_seeds::kPlus, 2);
    const AbarParams p(3.0, 1.5);
    const auto b = sample_plus(p, kN, s);
    CHECK(ks_against(b.values, [&](double y) { return plus_cdf(p, y); }).passes());
    RandomStream t(fixture_seeds::kPlus, 3);
    const auto inv = sample(Family::abar_plus, p, SampleMethod::inverse_cdf, kN, t);
    CHECK(ks_against(inv.values, [&](double y) { return plus_cdf(p, y); }).passes());
  }
}

TEST_CASE("reproducibility and sharding") {
  const AbarParams p(2.0, 0.5);
  for (auto method : {SampleMethod::norm3, SampleMethod::inverse_cdf}) {
    RandomStream a(5, 3), b(5, 3);
    CHECK(sample(Family::abar, p, method, 500, a).values ==
          sample(Family::abar, p, method, 500, b).values);
  }

  const auto sharded = sample_sharded(Family::abar, p, SampleMethod::norm3, 1003, 77, 4);
  REQUIRE(sharded.n() == 1003);
  std::vector<double> expected;
  for (std::size_t i = 0; i < 4; ++i) {
    RandomStream s(77, i);
    const auto part = sample(Family::abar, p, SampleMethod::norm3, 1003 / 4 + (i < 3 ? 1 : 0), s);
    expected.insert(expected.end(), part.values.begin(), part.values.end());
  }
  CHECK(sharded.values == expected);
  CHECK(sample_sharded(Family::abar, p, SampleMethod::norm3, 1003, 77, 4).values ==
        sharded.values);
  CHECK_THROWS_AS(sample_sharded(Family::abar, p, SampleMethod::norm3, 10, 1, 0), InputError);
}

TEST_CASE("CSV serialization") {
  RandomStream s(1, 2);
  const auto b = sample_norm3({3.0, 0.0, 4.0}, 1.0, 3, s);
  const std::string csv = to_csv(b);
  CHECK(csv.rfind("# family=abar a=5 sigma=1 method=norm3 seed=1 stream_id=2 n=3\n"
                  "# mean_vector=3,0,4\nvalue\n",
                  0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  CHECK(parse_family("abar_plus") == Family::abar_plus);
  CHECK_THROWS_AS(parse_family("gamma"), InputError);
  CHECK_THROWS_AS(parse_method("box_muller"), InputError);
}
