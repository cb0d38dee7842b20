#pragma once

#include "coroute/ga.hpp"
#include "coroute/nelder_mead.hpp"
#include "coroute/outer.hpp"
#include "coroute/ugv.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace coroute::ateams {

enum class Provenance { constructor, ga, nm };

const char* to_string(Provenance p);

struct Solution
{
  UnitVector unit{};
  UgvParams params;
  double fitness = std::numeric_limits<double>::infinity();  // minutes
  bool feasible = false;
  Provenance provenance = Provenance::constructor;
  std::size_t eval_count_at_birth = 0;
  double ugv_min = 0.0;
  double uav_min = 0.0;
  std::vector<int> tour;
};

Solution make_solution(const OuterEvaluation& ev, Provenance provenance, std::size_t birth);

/// Members stay sorted ascending by fitness, feasible, pairwise distinct and
/// at most `capacity` long.
struct Population
{
  std::vector<Solution> members;
  std::size_t capacity = 0;

  bool empty() const { return members.empty(); }
  const Solution& best() const { return members.front(); }
  double mean_fitness() const;
};

/// Max-norm distance in unit space below which two solutions are duplicates.
inline constexpr double kDuplicateTol = 1e-6;

double max_norm_distance(const UnitVector& a, const UnitVector& b);

struct ATeamsConfig
{
  std::size_t capacity = 30;
  std::size_t improver_rounds_budget = 20;
  std::size_t stall_window = 5;
  double stall_tol = 1e-3;  // minutes
  std::uint64_t seed = 0;
  bool parallel_improvers = true;
  bool deterministic = false;  // merge GA output before NM output
  std::size_t draw_cap_factor = 50;
  bool use_ga = true;
  bool use_nm = true;
  ga::GaConfig ga;
  nm::NmConfig nm = [] {
    nm::NmConfig c;
    c.max_iters = 10;
    return c;
  }();

  /// Throws std::invalid_argument unless capacity >= 2 and stall_window >= 1.
  void validate() const;
};

class ATeamsError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

using Evaluator = std::function<std::vector<OuterEvaluation>(const std::vector<UnitVector>&)>;

struct AgentOutput
{
  std::vector<Solution> candidates;
  std::size_t evaluations = 0;
};

struct ConstructOutput
{
  Population population;
  std::size_t evaluations = 0;
};

/// Uniform random draws in batches of `capacity`; feasible draws are kept in
/// draw order until the population is full or draw_cap_factor * capacity
/// draws were made. Throws ATeamsError naming the most common failure when
/// nothing feasible turns up.
ConstructOutput construct_population(const Evaluator& evaluate, const ATeamsConfig& config);

/// One GA generation bred from the population: capacity - elite_count
/// offspring, evaluated.
AgentOutput improver_ga_round(const Population& pop, const ATeamsConfig& config,
                              const Evaluator& evaluate, ga::Rng& rng, std::size_t birth_base = 0);

/// Bounded Nelder-Mead run from the best member with its depot gene frozen.
/// Returns the final simplex as candidates; empty when nm.max_iters is 0.
AgentOutput improver_nm_round(const Population& pop, const ATeamsConfig& config,
                              const Evaluator& evaluate, std::size_t birth_base = 0);

/// Drops infeasible candidates and any within kDuplicateTol of a retained
/// solution, merges, sorts ascending (ties by unit vector) and truncates.
Population destroy_and_merge(Population pop, const std::vector<Solution>& candidates);

struct TraceRow
{
  std::size_t round = 0;
  std::string agent;
  std::size_t evals = 0;
  double best_min = 0.0;
  double mean_min = 0.0;
  double wall_s = 0.0;
};

struct RunTrace
{
  std::vector<TraceRow> rows;
  std::size_t rounds = 0;
  std::size_t total_evaluations = 0;
  double wall_s = 0.0;
};

/// CSV: round,agent,evals,best_min,mean_min,wall_s.
void write_trace_csv(std::ostream& out, const RunTrace& trace);

struct RunResult
{
  Population population;
  RunTrace trace;
  const Solution& best() const { return population.best(); }
};

/// Constructor, then improver rounds until the best fitness improves by less
/// than stall_tol over stall_window rounds or the round budget runs out.
RunResult run_ateams(const Evaluator& evaluate, const ATeamsConfig& config);

RunResult run_ateams(const OuterProblem& problem, const ATeamsConfig& config);

/// Conventional two-level baseline: a plain GA over the outer parameters with
/// pop_size = capacity and max_generations = improver_rounds_budget. The
/// returned population holds the best distinct feasible points seen and may
/// be empty.
RunResult run_conventional_ga(const Evaluator& evaluate, const ATeamsConfig& config);

}  // namespace coroute::ateams
