#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <limits>
#include <random>
#include <tuple>

#include "oracles.hpp"
#include "urasim/analytics.hpp"
#include "urasim/codec.hpp"

using namespace urasim;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Q(x) references frozen from a high-precision erfc evaluation.
struct QRef {
  double x;
  double q;
};
constexpr QRef kQRefs[] = {
    {0.5, 0.30853753872598689636},
    {1.0, 0.15865525393145705141},
    {1.5, 0.066807201268858066004},
    {2.0, 0.0227501319481792072},
    {2.4494897427831780982, 0.0071529392177148197629},
    {3.0, 0.0013498980316300945267},
    {5.0, 2.8665157187919391167e-7},
    {8.0, 6.2209605742717841235e-16},
};

}  // namespace

TEST_CASE("q_function matches high-precision references") {
  CHECK(analytics::q_function(0.0) == 0.5);
  CHECK(analytics::q_function(kInf) == 0.0);
  for (const auto& ref : kQRefs) {
    CHECK(std::abs(analytics::q_function(ref.x) / ref.q - 1.0) <= 1e-10);
  }
}

TEST_CASE("symbol error probability concentrates the B-bit energy") {
  CHECK(analytics::symbol_error_prob(0.0, 12) ==
        doctest::Approx(0.0071529392177148198).epsilon(1e-12));
  CHECK(analytics::symbol_error_prob(kInf, 12) == 0.0);
  CHECK(analytics::symbol_error_prob(-kInf, 12) == 0.5);
  CHECK_THROWS_AS((void)analytics::symbol_error_prob(0.0, 0), std::invalid_argument);
}

TEST_CASE("type probabilities at the worked corners") {
  CHECK(analytics::p_type_a(1, 0, 8, 0.0, 0.0) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(analytics::p_type_a(2, 1, 4, 0.0, 0.0) == doctest::Approx(0.28125).epsilon(1e-14));
  CHECK(analytics::p_type_a(3, 2, 64, 0.1, 1.0) == 0.0);
  CHECK(analytics::p_type_a(0, 2, 8, 0.0, 0.0) == 0.0);

  CHECK(analytics::p_type_b(2, 0, 8, 0.0, 0.5) == 0.0);
  CHECK(analytics::p_type_b(0, 1, 2, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(analytics::p_type_b(2, 1, 4, 0.0, 0.02) == doctest::Approx(2.8125e-3).epsilon(1e-12));

  CHECK(analytics::p_type_c(3, 2, 16, 0.2, 0.0) == 0.0);
  CHECK(analytics::p_type_c(0, 0, 16, 0.25, 0.5) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(analytics::p_type_c(2, 1, 4, 0.01, 0.02) == doctest::Approx(8.4375e-5).epsilon(1e-12));
}

TEST_CASE("closed forms equal the placement enumeration") {
  for (const std::uint64_t n : {2ull, 4ull, 6ull}) {
    for (int dl = 0; dl <= 3; ++dl) {
      for (int di = 0; dl + di <= 3; ++di) {
        for (const double pe : {0.0, 0.1}) {
          const auto oracle = test::enumerate_type_probs(n, dl, di, pe, 0.5, 0.5);
          CHECK(std::abs(analytics::p_type_a(dl, di, n, pe, 0.5) - oracle.p_a) <= 1e-12);
          CHECK(std::abs(analytics::p_type_b(dl, di, n, pe, 0.5) - oracle.p_b) <= 1e-12);
          CHECK(std::abs(analytics::p_type_c(dl, di, n, pe, 0.5) - oracle.p_c) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("pupe at the worked corners") {
  const auto lone = analytics::pupe_analytical(1, 0, 4096, kInf, 12, 0.0, 0.0);
  CHECK(lone.pupe == doctest::Approx(0.0).epsilon(1e-15));

  const auto pair = analytics::pupe_analytical(2, 0, 8, kInf, 3, 0.0, 0.0);
  CHECK(pair.p_a == doctest::Approx(0.21875).epsilon(1e-14));
  CHECK(pair.pupe == doctest::Approx(0.125).epsilon(1e-14));

  CHECK_THROWS_AS((void)analytics::pupe_analytical(0, 1, 8, 0.0, 3, 0.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("spoofing at the worked corners") {
  CHECK(analytics::spoofing_analytical(2, 1, 8, 0.0, 3, 0.0, 0.0) == 0.0);  // p_fa = 0
  CHECK_THROWS_AS((void)analytics::spoofing_analytical(2, 0, 8, 0.0, 3, 0.0, 0.0),
                  std::invalid_argument);

  // d_l = 0 forces min(PN, 0) = 0
  CHECK(analytics::evaluate(0, 1, 8, 0.0, 0.0, 0.5).spoof == 0.0);

  const auto point = analytics::evaluate(2, 1, 4, 0.0, 0.0, 0.02);
  CHECK(point.p_a == doctest::Approx(0.28125).epsilon(1e-14));
  CHECK(point.p_b == doctest::Approx(2.8125e-3).epsilon(1e-12));
  CHECK(point.p_c == 0.0);
  CHECK(point.spoof == doctest::Approx(0.01125).epsilon(1e-12));
}

TEST_CASE("degenerate P = 0 point is pinned") {
  const auto point = analytics::evaluate(2, 1, 8, 1.0, 0.0, 0.0);  // every symbol flips
  CHECK(point.p_total == 0.0);
  CHECK(point.pupe == 1.0);
  CHECK(point.spoof == 0.0);
}

TEST_CASE("probability outputs stay in range over random inputs") {
  std::mt19937_64 rng{1234};
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const int dl = static_cast<int>(rng() % 60);
    const int di = static_cast<int>(rng() % 30);
    const std::uint64_t n = 1ull << (1 + rng() % 20);
    const double pe = unit(rng), pmd = unit(rng), pfa = unit(rng);
    const auto point = analytics::evaluate(dl, di, n, pe, pmd, pfa);
    CHECK(point.p_a >= 0.0);
    CHECK(point.p_a <= 1.0);
    CHECK(point.p_b >= 0.0);
    CHECK(point.p_b <= 1.0);
    CHECK(point.p_c >= 0.0);
    CHECK(point.p_c <= 1.0);
    CHECK(point.p_total <= 1.0 + 1e-12);
    CHECK(point.pupe >= 0.0);
    CHECK(point.pupe <= 1.0);
    CHECK(point.spoof >= 0.0);
    CHECK(point.spoof <= 1.0);
  }
}

TEST_CASE("pupe is non-increasing in Eb/N0") {
  struct Config {
    int dl, di, bits;
    double pmd, pfa;
  };
  for (const auto& c : {Config{2, 1, 8, 0.02, 0.02}, Config{50, 10, 12, 0.0, 0.0},
                        Config{25, 10, 12, 0.02, 0.02}}) {
    double prev = 1.0 + 1e-12;
    for (double db = -10.0; db <= 20.0; db += 0.1) {
      const double pupe =
          analytics::pupe_analytical(c.dl, c.di, codec::codebook_size(c.bits) /* n */, db,
                                     c.bits, c.pmd, c.pfa)
              .pupe;
      CHECK(pupe <= prev + 1e-12);
      prev = pupe;
    }
  }
}

TEST_CASE("p_fa = 0 kills both spoofing and noise entries") {
  for (double db = -5.0; db <= 10.0; db += 0.5) {
    const auto point = analytics::pupe_analytical(10, 5, 4096, db, 12, 0.02, 0.0);
    CHECK(point.p_b == 0.0);
    CHECK(point.p_c == 0.0);
    CHECK(point.spoof == 0.0);
  }
}

TEST_CASE("solver hits the single-device closed-form anchor") {
  analytics::SolverConfig config;
  config.target_pupe = 0.05;
  const auto solved = analytics::min_ebn0_for_pupe(config, 1, 0, 12, 0.0, 0.0);
  REQUIRE(solved.has_value());
  CHECK(std::abs(*solved - (-3.4589673679724527)) <= 0.02);

  config.tol_db = 1e-4;
  const auto tight = analytics::min_ebn0_for_pupe(config, 1, 0, 12, 0.0, 0.0);
  REQUIRE(tight.has_value());
  CHECK(std::abs(*tight - (-3.4589673679724527)) <= 1e-3);
}

TEST_CASE("solver handles the trivial and infeasible edges") {
  analytics::SolverConfig config;
  config.target_pupe = 1.0;
  const auto everywhere = analytics::min_ebn0_for_pupe(config, 5, 2, 12, 0.02, 0.02);
  REQUIRE(everywhere.has_value());
  CHECK(*everywhere == config.search_lo_db);

  // noiseless collision floor for dl=2, n=8 is 0.125; 0.01 is unreachable
  config.target_pupe = 0.01;
  CHECK_FALSE(analytics::min_ebn0_for_pupe(config, 2, 0, 3, 0.0, 0.0).has_value());

  config.target_pupe = 0.0;
  CHECK_THROWS_AS((void)analytics::min_ebn0_for_pupe(config, 1, 0, 12, 0.0, 0.0),
                  std::invalid_argument);
  config.target_pupe = 0.05;
  config.search_lo_db = 10.0;
  config.search_hi_db = -10.0;
  CHECK_THROWS_AS((void)analytics::min_ebn0_for_pupe(config, 1, 0, 12, 0.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("solver returns the left edge of the feasible set") {
  analytics::SolverConfig config;
  config.target_pupe = 0.05;
  for (const auto [dl, di, pmd, pfa] :
       {std::tuple{25, 10, 0.0, 0.0}, std::tuple{50, 10, 0.02, 0.02}, std::tuple{1, 0, 0.0, 0.0}}) {
    const auto solved = analytics::min_ebn0_for_pupe(config, dl, di, 12, pmd, pfa);
    REQUIRE(solved.has_value());
    const auto pupe_at = [&](double db) {
      return analytics::pupe_analytical(dl, di, 4096, db, 12, pmd, pfa).pupe;
    };
    CHECK(pupe_at(*solved) <= config.target_pupe);
    if (*solved > config.search_lo_db) {
      CHECK(pupe_at(*solved - 2.0 * config.tol_db) > config.target_pupe);
    }
  }
}

TEST_CASE("regime transition: saturated from the start under a perfect module") {
  analytics::SolverConfig config;
  config.target_pupe = 0.05;
  const auto dl = analytics::regime_transition_dl(0, 12, 0.0, 0.0, config, 64);
  REQUIRE(dl.has_value());
  CHECK(*dl == 1);
}

TEST_CASE("regime transition crossing is consistent on both sides") {
  analytics::SolverConfig config;
  config.target_pupe = 0.05;
  config.tol_db = 1e-3;
  const int di = 10, bits = 12;
  const double v = 0.01;  // mid-range RFFI error rates put the crossing at 28
  const auto transition = analytics::regime_transition_dl(di, bits, v, v, config, 64);
  REQUIRE(transition.has_value());
  CHECK(*transition == 28);

  for (int dl = 2; dl <= 40; ++dl) {
    const auto solved = analytics::min_ebn0_for_pupe(config, dl, di, bits, v, v);
    if (!solved) continue;
    const auto point = analytics::pupe_analytical(dl, di, 4096, *solved, bits, v, v);
    const double expected_entries = point.p_total * 4096.0;
    if (dl < *transition) {
      CHECK(expected_entries > static_cast<double>(dl));
    } else {
      CHECK(expected_entries <= static_cast<double>(dl));
    }
  }
}
