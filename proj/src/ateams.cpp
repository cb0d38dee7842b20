#include "coroute/ateams.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <mutex>
#include <random>
#include <thread>

namespace coroute::ateams {

const char* to_string(Provenance p)
{
  switch (p) {
  case Provenance::constructor: return "constructor";
  case Provenance::ga: return "ga";
  case Provenance::nm: return "nm";
  }
  return "unknown";
}

Solution make_solution(const OuterEvaluation& ev, Provenance provenance, std::size_t birth)
{
  Solution s;
  s.unit = ev.unit;
  s.params = ev.params;
  s.fitness = ev.fitness;
  s.feasible = ev.feasible;
  s.provenance = provenance;
  s.eval_count_at_birth = birth;
  s.ugv_min = ev.ugv_min;
  s.uav_min = ev.uav_min;
  s.tour = ev.tour;
  return s;
}

double Population::mean_fitness() const
{
  if (members.empty())
    return 0.0;
  double sum = 0.0;
  for (const Solution& s : members)
    sum += s.fitness;
  return sum / static_cast<double>(members.size());
}

double max_norm_distance(const UnitVector& a, const UnitVector& b)
{
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

void ATeamsConfig::validate() const
{
  if (capacity < 2)
    throw std::invalid_argument("ATeamsConfig: capacity must be >= 2");
  if (stall_window < 1)
    throw std::invalid_argument("ATeamsConfig: stall_window must be >= 1");
  if (draw_cap_factor < 1)
    throw std::invalid_argument("ATeamsConfig: draw_cap_factor must be >= 1");
  nm.validate();
}

ConstructOutput construct_population(const Evaluator& evaluate, const ATeamsConfig& config)
{
  config.validate();
  ga::Rng rng(config.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const std::size_t cap = config.draw_cap_factor * config.capacity;

  ConstructOutput out;
  std::vector<Solution> kept;
  std::map<std::string, std::size_t> failures;
  while (kept.size() < config.capacity && out.evaluations < cap) {
    std::vector<UnitVector> batch(std::min(config.capacity, cap - out.evaluations));
    for (UnitVector& u : batch)
      for (double& x : u)
        x = uniform(rng);
    const std::vector<OuterEvaluation> evs = evaluate(batch);
    for (std::size_t i = 0; i < evs.size(); ++i) {
      if (evs[i].feasible) {
        if (kept.size() < config.capacity)
          kept.push_back(make_solution(evs[i], Provenance::constructor, out.evaluations + i + 1));
      } else {
        ++failures[evs[i].failure];
      }
    }
    out.evaluations += evs.size();
  }
  if (kept.empty()) {
    std::string common = "none recorded";
    std::size_t count = 0;
    for (const auto& [failure, n] : failures)
      if (n > count) {
        common = failure;
        count = n;
      }
    throw ATeamsError("constructor found no feasible solution in " +
                      std::to_string(out.evaluations) + " draws; most common violation: " +
                      common + " (" + std::to_string(count) + " draws)");
  }
  out.population.capacity = config.capacity;
  out.population = destroy_and_merge(std::move(out.population), kept);
  return out;
}

AgentOutput improver_ga_round(const Population& pop, const ATeamsConfig& config,
                              const Evaluator& evaluate, ga::Rng& rng, std::size_t birth_base)
{
  AgentOutput out;
  if (pop.empty() || config.capacity <= config.ga.elite_count)
    return out;
  const std::size_t bits = config.ga.bits_per_param;
  std::vector<ga::Chromosome> parents;
  parents.reserve(pop.members.size());
  for (const Solution& s : pop.members) {
    ga::Chromosome c = ga::encode(s.unit, bits);
    c.fitness = s.fitness;
    parents.push_back(std::move(c));
  }
  const std::vector<ga::Chromosome> children =
      ga::breed(parents, config.capacity - config.ga.elite_count, config.ga, rng);
  std::vector<UnitVector> batch(children.size());
  for (std::size_t i = 0; i < children.size(); ++i) {
    const ga::Point p = ga::decode(children[i], bits);
    std::copy(p.begin(), p.end(), batch[i].begin());
  }
  const std::vector<OuterEvaluation> evs = evaluate(batch);
  for (std::size_t i = 0; i < evs.size(); ++i)
    out.candidates.push_back(make_solution(evs[i], Provenance::ga, birth_base + i + 1));
  out.evaluations = evs.size();
  return out;
}

AgentOutput improver_nm_round(const Population& pop, const ATeamsConfig& config,
                              const Evaluator& evaluate, std::size_t birth_base)
{
  AgentOutput out;
  if (pop.empty() || config.nm.max_iters == 0)
    return out;
  const UnitVector start = pop.best().unit;
  const auto to_unit = [&](std::span<const double> x) {
    UnitVector u = start;
    std::copy(x.begin(), x.end(), u.begin() + 1);
    return u;
  };

  std::vector<std::pair<UnitVector, OuterEvaluation>> seen;
  const nm::Objective objective = [&](std::span<const double> x) {
    const UnitVector u = to_unit(x);
    std::vector<OuterEvaluation> evs = evaluate({u});
    seen.emplace_back(u, std::move(evs.at(0)));
    return seen.back().second.fitness;
  };

  const nm::Point x0(start.begin() + 1, start.end());
  const nm::NmResult result = nm::nm_optimize(objective, x0, nm::Box::unit(x0.size()), config.nm);
  out.evaluations = seen.size();
  for (const nm::Point& v : result.final_state.vertices) {
    const UnitVector u = to_unit(v);
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (seen[i].first == u) {
        out.candidates.push_back(make_solution(seen[i].second, Provenance::nm, birth_base + i + 1));
        break;
      }
  }
  return out;
}

Population destroy_and_merge(Population pop, const std::vector<Solution>& candidates)
{
  for (const Solution& c : candidates) {
    if (!c.feasible)
      continue;
    const bool duplicate = std::any_of(pop.members.begin(), pop.members.end(), [&](const Solution& m) {
      return max_norm_distance(m.unit, c.unit) < kDuplicateTol;
    });
    if (!duplicate)
      pop.members.push_back(c);
  }
  std::stable_sort(pop.members.begin(), pop.members.end(), [](const Solution& a, const Solution& b) {
    if (a.fitness != b.fitness)
      return a.fitness < b.fitness;
    return a.unit < b.unit;
  });
  if (pop.members.size() > pop.capacity)
    pop.members.resize(pop.capacity);
  return pop;
}

void write_trace_csv(std::ostream& out, const RunTrace& trace)
{
  out << "round,agent,evals,best_min,mean_min,wall_s\n";
  for (const TraceRow& r : trace.rows)
    out << r.round << ',' << r.agent << ',' << r.evals << ',' << r.best_min << ',' << r.mean_min
        << ',' << r.wall_s << '\n';
}

RunResult run_ateams(const Evaluator& evaluate, const ATeamsConfig& config)
{
  config.validate();
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - start).count(); };

  RunResult result;
  RunTrace& trace = result.trace;
  ConstructOutput built = construct_population(evaluate, config);
  Population& pop = result.population;
  pop = std::move(built.population);
  trace.total_evaluations = built.evaluations;
  const auto record = [&](std::size_t round, const char* agent, std::size_t evals) {
    trace.rows.push_back({round, agent, evals, pop.best().fitness, pop.mean_fitness(), elapsed()});
  };
  record(0, "constructor", built.evaluations);

  ga::Rng ga_rng(config.seed + 0x9e3779b97f4a7c15ull);
  std::vector<double> best_history{pop.best().fitness};
  for (std::size_t round = 1; round <= config.improver_rounds_budget; ++round) {
    const Population snapshot = pop;
    const std::size_t base = trace.total_evaluations;

    struct Arrival
    {
      const char* agent;
      AgentOutput output;
    };
    std::vector<Arrival> arrivals;
    std::mutex arrivals_mutex;
    const auto submit = [&](const char* agent, AgentOutput output) {
      std::lock_guard lock(arrivals_mutex);
      arrivals.push_back({agent, std::move(output)});
    };
    const auto run_ga = [&] {
      submit("ga", improver_ga_round(snapshot, config, evaluate, ga_rng, base));
    };
    const auto run_nm = [&] {
      submit("nm", improver_nm_round(snapshot, config, evaluate, base + config.capacity));
    };

    if (config.parallel_improvers && config.use_ga && config.use_nm) {
      std::thread nm_thread(run_nm);
      run_ga();
      nm_thread.join();
    } else {
      if (config.use_ga)
        run_ga();
      if (config.use_nm)
        run_nm();
    }
    if (config.deterministic)
      std::stable_sort(arrivals.begin(), arrivals.end(), [](const Arrival& a, const Arrival& b) {
        return std::string_view(a.agent) < std::string_view(b.agent);
      });

    for (Arrival& a : arrivals) {
      pop = destroy_and_merge(std::move(pop), a.output.candidates);
      trace.total_evaluations += a.output.evaluations;
      record(round, a.agent, a.output.evaluations);
    }
    trace.rounds = round;
    best_history.push_back(pop.best().fitness);
    if (round >= config.stall_window &&
        best_history[round - config.stall_window] - best_history[round] < config.stall_tol)
      break;
  }
  trace.wall_s = elapsed();
  return result;
}

RunResult run_ateams(const OuterProblem& problem, const ATeamsConfig& config)
{
  return run_ateams([&](const std::vector<UnitVector>& batch) { return problem.evaluate(batch); },
                    config);
}

}  // namespace coroute::ateams

namespace coroute::ateams {

RunResult run_conventional_ga(const Evaluator& evaluate, const ATeamsConfig& config)
{
  config.validate();
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();

  ga::GaConfig gc = config.ga;
  gc.pop_size = config.capacity + config.capacity % 2;
  gc.max_generations = config.improver_rounds_budget;
  gc.stall_generations = config.stall_window;
  gc.stall_tol = config.stall_tol;
  gc.seed = config.seed;

  RunResult result;
  result.population.capacity = config.capacity;
  std::vector<double> call_wall;
  std::size_t evaluations = 0;
  const ga::BatchObjective objective = [&](const std::vector<ga::Point>& pts) {
    std::vector<UnitVector> batch(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
      std::copy(pts[i].begin(), pts[i].end(), batch[i].begin());
    const std::vector<OuterEvaluation> evs = evaluate(batch);
    std::vector<Solution> sols;
    std::vector<double> fitness;
    for (std::size_t i = 0; i < evs.size(); ++i) {
      sols.push_back(make_solution(evs[i], Provenance::ga, evaluations + i + 1));
      fitness.push_back(evs[i].fitness);
    }
    evaluations += evs.size();
    result.population = destroy_and_merge(std::move(result.population), sols);
    call_wall.push_back(std::chrono::duration<double>(clock::now() - start).count());
    return fitness;
  };
  const ga::GaResult ga_result = ga::run_ga(UnitVector{}.size(), gc, objective);

  for (const ga::GenerationStats& g : ga_result.trace)
    result.trace.rows.push_back({g.generation, "ga", g.evaluations, g.best, g.mean,
                                 call_wall.at(g.generation)});
  result.trace.rounds = ga_result.trace.size() - 1;
  result.trace.total_evaluations = evaluations;
  result.trace.wall_s = std::chrono::duration<double>(clock::now() - start).count();
  return result;
}

}  // namespace coroute::ateams
