#include "coroute/ga.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace coroute::ga {

void GaConfig::validate() const
{
  if (pop_size < 2 || pop_size % 2 != 0)
    throw std::invalid_argument("GaConfig: pop_size must be even and >= 2");
  if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0))
    throw std::invalid_argument("GaConfig: mutation_prob outside [0, 1]");
  if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0))
    throw std::invalid_argument("GaConfig: crossover_prob outside [0, 1]");
  if (elite_count > pop_size)
    throw std::invalid_argument("GaConfig: elite_count exceeds pop_size");
  if (bits_per_param == 0 || bits_per_param > 31)
    throw std::invalid_argument("GaConfig: bits_per_param must be in [1, 31]");
}

Chromosome encode(std::span<const double> unit, std::size_t bits)
{
  Chromosome c;
  c.bits.reserve(unit.size() * bits);
  const double top = static_cast<double>((1u << bits) - 1u);
  for (double u : unit) {
    const auto k = static_cast<std::uint32_t>(std::lround(std::clamp(u, 0.0, 1.0) * top));
    for (std::size_t b = bits; b-- > 0;)
      c.bits.push_back(static_cast<std::uint8_t>((k >> b) & 1u));
  }
  return c;
}

Point decode(const Chromosome& c, std::size_t bits)
{
  const double top = static_cast<double>((1u << bits) - 1u);
  Point out(c.bits.size() / bits);
  for (std::size_t d = 0; d < out.size(); ++d) {
    std::uint32_t k = 0;
    for (std::size_t b = 0; b < bits; ++b)
      k = (k << 1) | c.bits[d * bits + b];
    out[d] = k / top;
  }
  return out;
}

std::vector<Point> lhs_sample(std::size_t n, std::size_t dims, Rng& rng)
{
  if (n == 0)
    throw std::invalid_argument("lhs_sample: n must be >= 1");
  std::uniform_real_distribution<double> jitter(0.0, 1.0);
  std::vector<Point> pts(n, Point(dims));
  std::vector<std::size_t> strata(n);
  for (std::size_t d = 0; d < dims; ++d) {
    std::iota(strata.begin(), strata.end(), std::size_t{0});
    std::shuffle(strata.begin(), strata.end(), rng);
    for (std::size_t k = 0; k < n; ++k) {
      const double hi = static_cast<double>(strata[k] + 1) / static_cast<double>(n);
      const double u = (static_cast<double>(strata[k]) + jitter(rng)) / static_cast<double>(n);
      pts[k][d] = std::min(u, std::nextafter(hi, 0.0));
    }
  }
  return pts;
}

TournamentPass tournament_pass(std::span<const double> fitness, Rng& rng)
{
  TournamentPass pass;
  std::vector<std::size_t> order(fitness.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::size_t k = 0;
  for (; k + 1 < order.size(); k += 2) {
    const std::size_t a = order[k];
    const std::size_t b = order[k + 1];
    pass.pairs.emplace_back(a, b);
    pass.winners.push_back(fitness[b] < fitness[a] ? b : a);
  }
  if (k < order.size())
    pass.winners.push_back(order[k]);
  return pass;
}

std::vector<std::size_t> select_unbiased(std::span<const Chromosome> pop, std::size_t count,
                                         Rng& rng)
{
  if (pop.empty())
    throw std::invalid_argument("select_unbiased: empty population");
  std::vector<double> fitness;
  fitness.reserve(pop.size());
  for (const Chromosome& c : pop) {
    if (!c.evaluated())
      throw std::invalid_argument("select_unbiased: unevaluated fitness");
    fitness.push_back(c.fitness);
  }
  std::vector<std::size_t> parents;
  while (parents.size() < count) {
    const TournamentPass pass = tournament_pass(fitness, rng);
    for (std::size_t w : pass.winners) {
      if (parents.size() == count)
        break;
      parents.push_back(w);
    }
  }
  return parents;
}

std::pair<Chromosome, Chromosome> crossover_at(const Chromosome& a, const Chromosome& b,
                                               std::size_t k1, std::size_t k2)
{
  if (a.bits.size() != b.bits.size())
    throw std::invalid_argument("crossover: chromosome length mismatch");
  if (!(k1 < k2 && k2 <= a.bits.size()))
    throw std::invalid_argument("crossover: cut points must satisfy k1 < k2 <= length");
  Chromosome c1{a.bits, kUnevaluated};
  Chromosome c2{b.bits, kUnevaluated};
  for (std::size_t i = k1; i < k2; ++i)
    std::swap(c1.bits[i], c2.bits[i]);
  return {std::move(c1), std::move(c2)};
}

std::pair<Chromosome, Chromosome> crossover_2pt(const Chromosome& a, const Chromosome& b, Rng& rng)
{
  if (a.bits.size() != b.bits.size())
    throw std::invalid_argument("crossover: chromosome length mismatch");
  if (a.bits.empty())
    return {Chromosome{}, Chromosome{}};
  std::uniform_int_distribution<std::size_t> cut(0, a.bits.size());
  std::size_t k1 = cut(rng);
  std::size_t k2 = cut(rng);
  while (k1 == k2)
    k2 = cut(rng);
  if (k2 < k1)
    std::swap(k1, k2);
  return crossover_at(a, b, k1, k2);
}

Chromosome mutate(const Chromosome& c, double p, Rng& rng)
{
  Chromosome out{c.bits, kUnevaluated};
  std::bernoulli_distribution flip(p);
  for (auto& bit : out.bits)
    if (flip(rng))
      bit ^= 1u;
  return out;
}

std::vector<Chromosome> breed(std::span<const Chromosome> pop, std::size_t count,
                              const GaConfig& config, Rng& rng)
{
  std::vector<Chromosome> children;
  if (count == 0)
    return children;
  const std::vector<std::size_t> parents = select_unbiased(pop, count + count % 2, rng);
  std::bernoulli_distribution do_cross(config.crossover_prob);
  for (std::size_t k = 0; k + 1 < parents.size() && children.size() < count; k += 2) {
    const Chromosome& a = pop[parents[k]];
    const Chromosome& b = pop[parents[k + 1]];
    auto [c1, c2] = do_cross(rng) ? crossover_2pt(a, b, rng)
                                  : std::pair{Chromosome{a.bits, kUnevaluated},
                                              Chromosome{b.bits, kUnevaluated}};
    children.push_back(mutate(c1, config.mutation_prob, rng));
    if (children.size() < count)
      children.push_back(mutate(c2, config.mutation_prob, rng));
  }
  return children;
}

namespace {

void evaluate(std::vector<Chromosome>& batch, std::size_t bits, const BatchObjective& objective)
{
  std::vector<Point> pts;
  pts.reserve(batch.size());
  for (const Chromosome& c : batch)
    pts.push_back(decode(c, bits));
  const std::vector<double> f = objective(pts);
  for (std::size_t i = 0; i < batch.size(); ++i)
    batch[i].fitness = f.at(i);
}

std::vector<Chromosome> sorted(std::span<const Chromosome> pop)
{
  std::vector<Chromosome> s(pop.begin(), pop.end());
  std::stable_sort(s.begin(), s.end(),
                   [](const Chromosome& a, const Chromosome& b) { return a.fitness < b.fitness; });
  return s;
}

}  // namespace

std::vector<Chromosome> ga_generation(std::span<const Chromosome> pop, const GaConfig& config,
                                      const BatchObjective& objective, Rng& rng)
{
  std::vector<Chromosome> ranked = sorted(pop);
  const std::size_t elites = std::min(config.elite_count, ranked.size());
  std::vector<Chromosome> next(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(elites));
  std::vector<Chromosome> children = breed(ranked, ranked.size() - elites, config, rng);
  evaluate(children, config.bits_per_param, objective);
  next.insert(next.end(), children.begin(), children.end());
  return next;
}

GaResult run_ga(std::size_t dims, const GaConfig& config, const BatchObjective& objective)
{
  config.validate();
  Rng rng(config.seed);
  GaResult result;

  std::vector<Chromosome> pop;
  for (const Point& p : lhs_sample(config.pop_size, dims, rng))
    pop.push_back(encode(p, config.bits_per_param));
  evaluate(pop, config.bits_per_param, objective);
  result.evaluations = pop.size();

  const auto record = [&](std::size_t gen, std::size_t evals) {
    GenerationStats s;
    s.generation = gen;
    s.evaluations = evals;
    s.best = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (const Chromosome& c : pop) {
      sum += c.fitness;
      if (c.fitness < s.best)
        s.best = c.fitness;
      if (c.fitness < result.best_value) {
        result.best_value = c.fitness;
        result.best_point = decode(c, config.bits_per_param);
      }
    }
    s.mean = sum / static_cast<double>(pop.size());
    result.trace.push_back(s);
  };
  record(0, pop.size());

  for (std::size_t gen = 1; gen <= config.max_generations; ++gen) {
    pop = ga_generation(pop, config, objective, rng);
    const std::size_t evals = pop.size() - std::min(config.elite_count, pop.size());
    result.evaluations += evals;
    record(gen, evals);
    if (gen >= config.stall_generations) {
      const double before = result.trace[gen - config.stall_generations].best;
      if (before - result.trace[gen].best < config.stall_tol)
        break;
    }
  }
  return result;
}

}  // namespace coroute::ga
