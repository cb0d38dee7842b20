#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <vector>

namespace coroute::ga {

using Rng = std::mt19937_64;
using Point = std::vector<double>;

struct GaConfig
{
  std::size_t pop_size = 30;
  std::size_t bits_per_param = 10;
  double mutation_prob = 0.01;
  double crossover_prob = 1.0;
  std::size_t elite_count = 2;
  std::size_t max_generations = 50;
  std::size_t stall_generations = 5;
  double stall_tol = 1e-3;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on a broken invariant.
  void validate() const;
};

inline constexpr double kUnevaluated = std::numeric_limits<double>::quiet_NaN();

struct Chromosome
{
  std::vector<std::uint8_t> bits;
  double fitness = kUnevaluated;

  bool evaluated() const { return fitness == fitness; }
};

/// Binary genes, most significant bit first, one per dimension.
Chromosome encode(std::span<const double> unit, std::size_t bits_per_param);
Point decode(const Chromosome& c, std::size_t bits_per_param);

/// Latin hypercube: per dimension, exactly one point in every stratum
/// [k/n, (k+1)/n).
std::vector<Point> lhs_sample(std::size_t n, std::size_t dims, Rng& rng);

/// One unbiased tournament pass: shuffle, pair neighbours, keep the fitter
/// (lower) of each pair. Every individual sits in exactly one comparison; with
/// an odd count the last shuffled individual advances unopposed.
struct TournamentPass
{
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> winners;
};

TournamentPass tournament_pass(std::span<const double> fitness, Rng& rng);

/// Parent indices from repeated passes until `count` are chosen. Throws
/// std::invalid_argument if any fitness is unevaluated.
std::vector<std::size_t> select_unbiased(std::span<const Chromosome> pop, std::size_t count,
                                         Rng& rng);

/// Two cuts k1 < k2 in [0, len]; the middle segments are swapped.
std::pair<Chromosome, Chromosome> crossover_2pt(const Chromosome& a, const Chromosome& b, Rng& rng);

/// Same, with explicit cut points (exposed for tests).
std::pair<Chromosome, Chromosome> crossover_at(const Chromosome& a, const Chromosome& b,
                                               std::size_t k1, std::size_t k2);

/// Flip each bit independently with probability p.
Chromosome mutate(const Chromosome& c, double p, Rng& rng);

/// Evaluates a batch of unit-cube points; lower is better.
using BatchObjective = std::function<std::vector<double>(const std::vector<Point>&)>;

/// Offspring for the next generation: select, cross over, mutate. Returned
/// chromosomes are unevaluated.
std::vector<Chromosome> breed(std::span<const Chromosome> pop, std::size_t count,
                              const GaConfig& config, Rng& rng);

/// Elites copied, the rest bred and evaluated; population size preserved.
std::vector<Chromosome> ga_generation(std::span<const Chromosome> pop, const GaConfig& config,
                                      const BatchObjective& objective, Rng& rng);

struct GenerationStats
{
  std::size_t generation = 0;
  double best = 0.0;
  double mean = 0.0;
  std::size_t evaluations = 0;
};

struct GaResult
{
  Point best_point;
  double best_value = std::numeric_limits<double>::infinity();
  std::vector<GenerationStats> trace;
  std::size_t evaluations = 0;
};

/// LHS start, then generations until max_generations or the best improves
/// by less than stall_tol over stall_generations consecutive generations.
GaResult run_ga(std::size_t dims, const GaConfig& config, const BatchObjective& objective);

}  // namespace coroute::ga
