#include <doctest.h>

#include <cmath>
#include <set>

#include "cslab/fourier.hpp"
#include "cslab/metrics.hpp"
#include "cslab/seeding.hpp"
#include "cslab/signal_model.hpp"
#include "oracles.hpp"

using namespace cslab;

TEST_SUITE("signal_model") {

TEST_CASE("trig basis matches the explicit orthonormal matrix") {
  for (std::size_t dim : {1u, 2u, 7u, 8u, 64u, 65u}) {
    const Eigen::MatrixXd psi = oracle::trig_basis(dim);
    const auto n = static_cast<Eigen::Index>(dim);
    CHECK((psi.transpose() * psi - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
    std::mt19937_64 rng(dim);
    const Eigen::VectorXd a = oracle::gaussian_vector(dim, rng);
    CHECK((fourier::synthesize(a) - psi * a).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::VectorXd x = oracle::gaussian_vector(dim, rng);
    CHECK((fourier::analyze(x) - psi.transpose() * x).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("bin layout round-trips") {
  for (std::size_t dim : {1u, 2u, 9u, 16u}) {
    for (std::size_t k = 0; k < dim; ++k) {
      const auto info = fourier::bin_info(dim, k);
      CHECK(fourier::bin_index(dim, info.kind, info.frequency) == k);
    }
  }
  CHECK_THROWS_AS(fourier::bin_index(8, fourier::BinKind::sine, 0), std::invalid_argument);
  CHECK_THROWS_AS(fourier::bin_index(9, fourier::BinKind::nyquist, 4), std::invalid_argument);
}

TEST_CASE("synthesize: zero, DC and isometry") {
  const SparseSpectrum zero({}, Eigen::VectorXd::Zero(8));
  CHECK(synthesize(zero).samples.cwiseAbs().maxCoeff() == 0.0);

  Eigen::VectorXd dc = Eigen::VectorXd::Zero(4);
  dc[0] = 1.0;
  const SampleVector x = synthesize(SparseSpectrum({0}, dc));
  CHECK(x.samples.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((x.samples.array() - x.samples[0]).abs().maxCoeff() < 1e-15);
  CHECK(x.nyquist_rate == 4.0);

  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(64);
    const Support s{3, 17, 40};
    for (auto k : s) a[static_cast<Eigen::Index>(k)] = oracle::gaussian_vector(1, rng)[0];
    const SampleVector y = synthesize(SparseSpectrum(s, a));
    CHECK(std::abs(y.samples.norm() / a.norm() - 1.0) < 1e-10);
    CHECK((y.samples - oracle::trig_basis(64) * a).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("SparseSpectrum invariants") {
  Eigen::VectorXd a = Eigen::VectorXd::Zero(8);
  a[2] = 1.0;
  CHECK_NOTHROW(SparseSpectrum({2}, a));
  CHECK_THROWS_AS(SparseSpectrum({3}, a), std::invalid_argument);
  CHECK_THROWS_AS(SparseSpectrum({2, 9}, a), std::invalid_argument);
  CHECK_THROWS_AS(SparseSpectrum({2, 2}, a), std::invalid_argument);
  CHECK_THROWS_AS(SparseSpectrum({}, Eigen::VectorXd()), std::invalid_argument);
}

TEST_CASE("generate_bandlimited") {
  const SparseSpectrum s = generate_bandlimited(1024, 4, std::nullopt, 1);
  REQUIRE(s.sparsity() == 4);
  for (std::size_t i = 1; i < 4; ++i) CHECK(s.support()[i] == s.support()[0] + i);
  std::size_t nonzero = 0;
  for (Eigen::Index k = 0; k < 1024; ++k) nonzero += s.coeffs()[k] != 0.0;
  CHECK(nonzero == 4);

  const SparseSpectrum full = generate_bandlimited(16, 16, 0, 5);
  Support expect(16);
  for (std::size_t i = 0; i < 16; ++i) expect[i] = i;
  CHECK(full.support() == expect);

  CHECK(generate_bandlimited(256, 6, std::nullopt, 42) == generate_bandlimited(256, 6, std::nullopt, 42));
  CHECK_THROWS_AS(generate_bandlimited(8, 9, std::nullopt, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_bandlimited(8, 4, 5, 1), std::invalid_argument);
  CHECK_NOTHROW(generate_bandlimited(8, 4, 4, 1));
}

TEST_CASE("band placement is uniform over admissible starts") {
  const std::size_t dim = 645 * 4;
  const std::size_t width = 4;
  const std::size_t starts = dim - width + 1;
  const int bins = 20;
  std::vector<double> observed(bins, 0.0), expected(bins, 0.0);
  for (std::size_t s = 0; s < starts; ++s) expected[s * bins / starts] += 1.0;
  const int draws = 10000;
  for (int seed = 0; seed < draws; ++seed) {
    const auto sp = generate_bandlimited(dim, width, std::nullopt, splitmix64(seed));
    observed[sp.support()[0] * bins / starts] += 1.0;
  }
  double chi2 = 0.0;
  for (int b = 0; b < bins; ++b) {
    const double e = expected[b] * draws / static_cast<double>(starts);
    chi2 += (observed[b] - e) * (observed[b] - e) / e;
  }
  // 99th percentile of chi-square with 19 degrees of freedom.
  CHECK(chi2 < 36.19);
}

TEST_CASE("par") {
  CHECK(par(Eigen::Vector4d(2.5, 2.5, 2.5, 2.5)) == doctest::Approx(1.0));
  CHECK(par(Eigen::Vector4d(1, 0, 0, 0)) == doctest::Approx(2.0));
  CHECK(par(Eigen::Vector2d(3, 4)) == doctest::Approx(4.0 * std::sqrt(2.0) / 5.0));
  CHECK(par(Eigen::Vector2d(3, 4)) == doctest::Approx(1.1314).epsilon(1e-4));
  CHECK_THROWS_AS(par(Eigen::VectorXd::Zero(5)), std::domain_error);

  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rep % 50;
    const Eigen::VectorXd x = oracle::gaussian_vector(n, rng);
    const double g = par(x);
    CHECK(g >= 1.0 - 1e-12);
    CHECK(g <= std::sqrt(static_cast<double>(n)) + 1e-12);
  }
}

TEST_CASE("add_signal_noise") {
  const SparseSpectrum s = generate_bandlimited(64, 4, std::nullopt, 3);
  CHECK(add_signal_noise(s, 0.0, 11) == s.coeffs());
  CHECK(add_signal_noise(s, 1.0, 11) == add_signal_noise(s, 1.0, 11));

  const SparseSpectrum zero({}, Eigen::VectorXd::Zero(10000));
  const Eigen::VectorXd n = add_signal_noise(zero, 1.0, 5);
  const double mean = n.mean();
  const double var = (n.array() - mean).square().sum() / (n.size() - 1);
  CHECK(var == doctest::Approx(1.0).epsilon(0.05));

  // Componentwise mean over many draws.
  const SparseSpectrum small({}, Eigen::VectorXd::Zero(16));
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(16);
  for (int t = 0; t < 10000; ++t) acc += add_signal_noise(small, 1.0, splitmix64(1000 + t));
  CHECK((acc / 10000.0).cwiseAbs().maxCoeff() < 0.05);
}

TEST_CASE("noise variance inversion hits the ISNR target on average") {
  std::vector<double> isnr_db;
  for (int t = 0; t < 1000; ++t) {
    const auto s = generate_bandlimited(512, 4, std::nullopt, splitmix64(t));
    const double var = noise_variance_for_isnr(s, 40.0);
    isnr_db.push_back(to_db(isnr(s, add_signal_noise(s, var, splitmix64(t + 77777)))));
  }
  CHECK(std::abs(oracle::energy_mean_db(isnr_db) - 40.0) < 0.5);
}

TEST_CASE("NoiseSpec validation") {
  CHECK_NOTHROW((NoiseSpec{0.0, 0.0}.validate()));
  CHECK_THROWS_AS((NoiseSpec{-1.0, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((NoiseSpec{0.0, -1e-9}.validate()), std::invalid_argument);
}

}
