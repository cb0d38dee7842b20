#include "coroute/ga.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

using namespace coroute::ga;

namespace {

std::vector<double> sphere(const std::vector<Point>& pts)
{
  std::vector<double> f;
  for (const Point& p : pts) {
    double s = 0.0;
    for (double u : p)
      s += (u - 0.5) * (u - 0.5);
    f.push_back(s);
  }
  return f;
}

std::size_t popcount(const Chromosome& c)
{
  return static_cast<std::size_t>(std::count(c.bits.begin(), c.bits.end(), 1));
}

Chromosome bits(std::initializer_list<int> b)
{
  Chromosome c;
  for (int x : b)
    c.bits.push_back(static_cast<std::uint8_t>(x));
  return c;
}

std::vector<Chromosome> evaluated_population(std::size_t n, std::size_t dims, Rng& rng,
                                             const GaConfig& cfg)
{
  std::vector<Chromosome> pop;
  for (const Point& p : lhs_sample(n, dims, rng))
    pop.push_back(encode(p, cfg.bits_per_param));
  std::vector<Point> pts;
  for (const Chromosome& c : pop)
    pts.push_back(decode(c, cfg.bits_per_param));
  const auto f = sphere(pts);
  for (std::size_t i = 0; i < pop.size(); ++i)
    pop[i].fitness = f[i];
  return pop;
}

}  // namespace

TEST(GaConfig, Validation)
{
  GaConfig c;
  EXPECT_NO_THROW(c.validate());
  c.pop_size = 7;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = GaConfig{};
  c.pop_size = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = GaConfig{};
  c.mutation_prob = 1.5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = GaConfig{};
  c.elite_count = 31;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Encoding, RoundTripWithinResolution)
{
  const Point u{0.0, 1.0, 0.5, 0.123, 0.999};
  const Point back = decode(encode(u, 10), 10);
  ASSERT_EQ(back.size(), u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    EXPECT_LE(std::abs(back[i] - u[i]), 0.5 / 1023.0 + 1e-12);
  EXPECT_EQ(back[0], 0.0);
  EXPECT_EQ(back[1], 1.0);
  EXPECT_EQ(encode(u, 10).bits.size(), 50u);
}

TEST(Encoding, MostSignificantBitFirst)
{
  const Chromosome c = encode(Point{1.0 / 7.0}, 3);
  EXPECT_EQ(c.bits, (std::vector<std::uint8_t>{0, 0, 1}));
}

TEST(LhsSample, SinglePointInCube)
{
  Rng rng(1);
  const auto pts = lhs_sample(1, 3, rng);
  ASSERT_EQ(pts.size(), 1u);
  for (double u : pts[0]) {
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
  EXPECT_THROW(lhs_sample(0, 3, rng), std::invalid_argument);
}

TEST(LhsSample, OnePointPerQuartile)
{
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const auto pts = lhs_sample(4, 1, rng);
    std::vector<int> count(4, 0);
    for (const Point& p : pts)
      ++count[static_cast<std::size_t>(p[0] * 4.0)];
    EXPECT_EQ(count, std::vector<int>(4, 1));
  }
}

TEST(LhsSample, StratumHistogramAllOnes)
{
  Rng rng(0);
  const auto pts = lhs_sample(30, 7, rng);
  for (std::size_t d = 0; d < 7; ++d) {
    std::vector<int> count(30, 0);
    for (const Point& p : pts)
      ++count[static_cast<std::size_t>(std::floor(p[d] * 30.0))];
    EXPECT_EQ(count, std::vector<int>(30, 1)) << "dimension " << d;
  }
}

TEST(Tournament, EveryIndividualInExactlyOneComparison)
{
  Rng rng(4);
  const std::vector<double> f{5, 3, 8, 1, 9, 2, 7};
  const TournamentPass pass = tournament_pass(f, rng);
  std::vector<int> seen(f.size(), 0);
  for (auto [a, b] : pass.pairs) {
    ++seen[a];
    ++seen[b];
  }
  EXPECT_EQ(pass.pairs.size(), 3u);
  EXPECT_EQ(std::count(seen.begin(), seen.end(), 1), 6);
  EXPECT_EQ(pass.winners.size(), 4u);
  for (std::size_t k = 0; k < pass.pairs.size(); ++k) {
    auto [a, b] = pass.pairs[k];
    EXPECT_EQ(pass.winners[k], f[a] <= f[b] ? a : b);
  }
}

TEST(SelectUnbiased, FitterOfTwoAlwaysWins)
{
  std::vector<Chromosome> pop{bits({0, 1}), bits({1, 0})};
  pop[0].fitness = 4.0;
  pop[1].fitness = 2.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    EXPECT_EQ(select_unbiased(pop, 3, rng), (std::vector<std::size_t>{1, 1, 1}));
  }
}

TEST(SelectUnbiased, RejectsUnevaluated)
{
  Rng rng(0);
  std::vector<Chromosome> pop{bits({0}), bits({1})};
  pop[0].fitness = 1.0;
  EXPECT_THROW(select_unbiased(pop, 1, rng), std::invalid_argument);
  EXPECT_THROW(select_unbiased(std::vector<Chromosome>{}, 1, rng), std::invalid_argument);
}

TEST(SelectUnbiased, WorstNeverSelectedInOnePass)
{
  Rng rng(12);
  std::vector<Chromosome> pop(10, bits({0}));
  for (std::size_t i = 0; i < pop.size(); ++i)
    pop[i].fitness = static_cast<double>(i);
  for (int trial = 0; trial < 100; ++trial) {
    const auto parents = select_unbiased(pop, 5, rng);
    EXPECT_EQ(std::count(parents.begin(), parents.end(), 9u), 0);
  }
}

TEST(Crossover, IdenticalParentsGiveIdenticalChildren)
{
  Rng rng(3);
  const Chromosome a = bits({1, 0, 1, 1, 0, 0, 1});
  for (int trial = 0; trial < 20; ++trial) {
    auto [c1, c2] = crossover_2pt(a, a, rng);
    EXPECT_EQ(c1.bits, a.bits);
    EXPECT_EQ(c2.bits, a.bits);
  }
}

TEST(Crossover, FullSpanCutsSwapParents)
{
  const Chromosome a = bits({1, 1, 1, 0});
  const Chromosome b = bits({0, 0, 1, 0});
  auto [c1, c2] = crossover_at(a, b, 0, 4);
  EXPECT_EQ(c1.bits, b.bits);
  EXPECT_EQ(c2.bits, a.bits);
  auto [d1, d2] = crossover_at(a, b, 1, 3);
  EXPECT_EQ(d1.bits, (std::vector<std::uint8_t>{1, 0, 1, 0}));
  EXPECT_EQ(d2.bits, (std::vector<std::uint8_t>{0, 1, 1, 0}));
  EXPECT_THROW(crossover_at(a, b, 2, 2), std::invalid_argument);
  EXPECT_THROW(crossover_at(a, bits({1}), 0, 1), std::invalid_argument);
}

TEST(Crossover, ConservesBitCount)
{
  Rng rng(77);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 200; ++trial) {
    Chromosome a, b;
    for (int i = 0; i < 70; ++i) {
      a.bits.push_back(coin(rng));
      b.bits.push_back(coin(rng));
    }
    auto [c1, c2] = crossover_2pt(a, b, rng);
    EXPECT_EQ(popcount(c1) + popcount(c2), popcount(a) + popcount(b));
    EXPECT_FALSE(c1.evaluated());
  }
}

TEST(Mutate, ZeroAndOneProbability)
{
  Rng rng(5);
  const Chromosome c = bits({1, 0, 0, 1, 1});
  EXPECT_EQ(mutate(c, 0.0, rng).bits, c.bits);
  EXPECT_EQ(mutate(c, 1.0, rng).bits, (std::vector<std::uint8_t>{0, 1, 1, 0, 0}));
}

TEST(Mutate, FlipRateWithinFivePercent)
{
  Rng rng(0);
  const Chromosome c(Chromosome{std::vector<std::uint8_t>(70, 0)});
  std::size_t flips = 0;
  const int trials = 10'000;
  for (int t = 0; t < trials; ++t)
    flips += popcount(mutate(c, 0.01, rng));
  const double mean = static_cast<double>(flips) / trials;
  EXPECT_NEAR(mean, 0.7, 0.05 * 0.7);
}

TEST(GaGeneration, FullElitismKeepsPopulation)
{
  GaConfig cfg;
  cfg.pop_size = 6;
  cfg.elite_count = 6;
  Rng rng(1);
  const auto pop = evaluated_population(6, 3, rng, cfg);
  int calls = 0;
  const BatchObjective counting = [&](const std::vector<Point>& pts) {
    ++calls;
    return sphere(pts);
  };
  const auto next = ga_generation(pop, cfg, counting, rng);
  ASSERT_EQ(next.size(), pop.size());
  std::multiset<std::vector<std::uint8_t>> before, after;
  for (const auto& c : pop)
    before.insert(c.bits);
  for (const auto& c : next)
    after.insert(c.bits);
  EXPECT_EQ(before, after);
}

TEST(GaGeneration, ElitismKeepsBestAndSize)
{
  GaConfig cfg;
  cfg.pop_size = 10;
  Rng rng(2);
  auto pop = evaluated_population(10, 4, rng, cfg);
  for (int gen = 0; gen < 20; ++gen) {
    const double best = std::min_element(pop.begin(), pop.end(), [](auto& a, auto& b) {
                          return a.fitness < b.fitness;
                        })->fitness;
    pop = ga_generation(pop, cfg, sphere, rng);
    ASSERT_EQ(pop.size(), 10u);
    for (const auto& c : pop) {
      EXPECT_TRUE(c.evaluated());
      EXPECT_EQ(c.bits.size(), 40u);
    }
    const double now = std::min_element(pop.begin(), pop.end(), [](auto& a, auto& b) {
                         return a.fitness < b.fitness;
                       })->fitness;
    EXPECT_LE(now, best);
  }
}

TEST(GaGeneration, NoVariationOnlyCopiesParents)
{
  GaConfig cfg;
  cfg.pop_size = 8;
  cfg.mutation_prob = 0.0;
  cfg.crossover_prob = 0.0;
  Rng rng(6);
  const auto pop = evaluated_population(8, 3, rng, cfg);
  std::set<std::vector<std::uint8_t>> pool;
  for (const auto& c : pop)
    pool.insert(c.bits);
  auto cur = pop;
  for (int gen = 0; gen < 10; ++gen) {
    cur = ga_generation(cur, cfg, sphere, rng);
    for (const auto& c : cur)
      EXPECT_TRUE(pool.count(c.bits)) << "generation " << gen;
  }
}

TEST(RunGa, SphereReachesOneHundredthIn30Generations)
{
  GaConfig cfg;
  cfg.max_generations = 30;
  cfg.stall_generations = 1000;
  cfg.seed = 0;
  const GaResult r = run_ga(7, cfg, sphere);
  EXPECT_LT(r.best_value, 0.01);
  EXPECT_EQ(r.trace.size(), 31u);
  EXPECT_EQ(r.evaluations, 30u + 30u * 28u);
}

TEST(RunGa, BestNonIncreasingOver50Generations)
{
  GaConfig cfg;
  cfg.max_generations = 50;
  cfg.stall_generations = 1000;
  cfg.seed = 9;
  const BatchObjective bumpy = [](const std::vector<Point>& pts) {
    std::vector<double> f;
    for (const Point& p : pts)
      f.push_back(std::sin(40.0 * p[0]) + std::cos(17.0 * p[1]) * p[2]);
    return f;
  };
  const GaResult r = run_ga(3, cfg, bumpy);
  ASSERT_EQ(r.trace.size(), 51u);
  for (std::size_t g = 1; g < r.trace.size(); ++g)
    EXPECT_LE(r.trace[g].best, r.trace[g - 1].best);
}

TEST(RunGa, StallStopsEarly)
{
  GaConfig cfg;
  cfg.max_generations = 50;
  cfg.stall_generations = 5;
  const BatchObjective flat = [](const std::vector<Point>& pts) {
    return std::vector<double>(pts.size(), 1.0);
  };
  const GaResult r = run_ga(2, cfg, flat);
  EXPECT_EQ(r.trace.size(), 6u);
}

TEST(RunGa, DeterministicTrajectory)
{
  GaConfig cfg;
  cfg.seed = 123;
  cfg.max_generations = 15;
  const GaResult a = run_ga(5, cfg, sphere);
  const GaResult b = run_ga(5, cfg, sphere);
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t g = 0; g < a.trace.size(); ++g) {
    EXPECT_EQ(a.trace[g].best, b.trace[g].best);
    EXPECT_EQ(a.trace[g].mean, b.trace[g].mean);
  }
  EXPECT_EQ(a.best_point, b.best_point);
}
