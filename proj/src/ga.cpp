#include "aalloc/ga.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "aalloc/reliability.hpp"

namespace aalloc {

namespace {

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct GaContext {
  const ProblemInstance* inst;
  GaParams params;
  std::vector<std::vector<DecompositionScheme>> library;  // [task] candidate schemes
  std::vector<char> in_tprime;  // tasks whose reliability budget is enforced
  double penalty = 0;
};

bool ecu_capable(const GaContext& ctx, int task, int ecu, int level) {
  const Task& t = ctx.inst->tasks[task];
  if (level > ctx.inst->ecus[ecu].asil.value()) return false;
  if (ctx.params.enforce_localization && !t.localization[ecu]) return false;
  return true;
}

// Random distinct-ECU placement for one scheme; unplaceable levels get ecu=-1.
std::vector<GaGene> roll_genes(GaContext& ctx, std::mt19937_64& rng, int task,
                               const DecompositionScheme& scheme) {
  std::vector<GaGene> genes;
  std::vector<char> used(ctx.inst->ecus.size(), 0);
  for (int level : scheme.replica_levels()) {
    std::vector<int> pool;
    for (int k = 0; k < static_cast<int>(ctx.inst->ecus.size()); ++k)
      if (!used[k] && ecu_capable(ctx, task, k, level)) pool.push_back(k);
    GaGene g;
    g.asil = level;
    if (!pool.empty()) {
      g.ecu = pool[uniform_int(rng, 0, static_cast<int>(pool.size()) - 1)];
      used[g.ecu] = 1;
    }
    genes.push_back(g);
  }
  return genes;
}

void roll_task(GaContext& ctx, std::mt19937_64& rng, int task, GaChromosome& c) {
  const auto& lib = ctx.library[task];
  c.schemes[task] = lib[uniform_int(rng, 0, static_cast<int>(lib.size()) - 1)];
  c.genes[task] = roll_genes(ctx, rng, task, c.schemes[task]);
}

GaChromosome random_chromosome(GaContext& ctx, std::mt19937_64& rng) {
  int n = static_cast<int>(ctx.inst->tasks.size());
  GaChromosome c;
  c.schemes.resize(n);
  c.genes.resize(n);
  for (int i = 0; i < n; ++i) roll_task(ctx, rng, i, c);
  return c;
}

void mutate_task(GaContext& ctx, std::mt19937_64& rng, int task, GaChromosome& c) {
  auto& genes = c.genes[task];
  if (genes.empty() || uniform01(rng) < 0.5) {
    roll_task(ctx, rng, task, c);
    return;
  }
  int r = uniform_int(rng, 0, static_cast<int>(genes.size()) - 1);
  int ne = static_cast<int>(ctx.inst->ecus.size());
  int candidate = uniform_int(rng, 0, ne - 1);
  auto taken = [&](int k) {
    for (int q = 0; q < static_cast<int>(genes.size()); ++q)
      if (q != r && genes[q].ecu == k) return true;
    return false;
  };
  if (ecu_capable(ctx, task, candidate, genes[r].asil) && !taken(candidate)) {
    genes[r].ecu = candidate;
    return;
  }
  // Repair: cheapest unused compatible ECU; re-roll the scheme if none exists.
  int best = -1;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int k = 0; k < ne; ++k) {
    if (taken(k) || !ecu_capable(ctx, task, k, genes[r].asil)) continue;
    double cost = ctx.inst->tasks[task].dev_cost[k][genes[r].asil - 1];
    if (cost < best_cost) {
      best_cost = cost;
      best = k;
    }
  }
  if (best >= 0)
    genes[r].ecu = best;
  else
    roll_task(ctx, rng, task, c);
}

double fitness_impl(const GaContext& ctx, const GaChromosome& c) {
  const ProblemInstance& inst = *ctx.inst;
  double total = 0;
  int violations = 0;
  std::vector<long> mem_use(inst.ecus.size(), 0);
  for (size_t i = 0; i < inst.tasks.size(); ++i) {
    bool bad = false;
    std::vector<double> rates;
    std::vector<char> used(inst.ecus.size(), 0);
    for (const auto& g : c.genes[i]) {
      if (g.ecu < 0 || g.asil < 1 || g.asil > 4) {
        bad = true;
        continue;
      }
      if (used[g.ecu]) bad = true;  // distinct-ECU rule
      used[g.ecu] = 1;
      if (g.asil > inst.ecus[g.ecu].asil.value()) bad = true;
      if (ctx.params.enforce_localization && !inst.tasks[i].localization[g.ecu]) bad = true;
      total += inst.tasks[i].dev_cost[g.ecu][g.asil - 1];
      mem_use[g.ecu] += inst.tasks[i].memory_mb[g.asil - 1];
      rates.push_back(inst.ecus[g.ecu].failure_rate_per_hour);
    }
    if (rates.empty()) bad = true;
    if (ctx.in_tprime[i] && !rates.empty() &&
        !check_pmhf(inst.tasks[i].asil, rates, inst.lifetime_hours).ok)
      bad = true;
    if (bad) ++violations;
  }
  if (ctx.params.enforce_memory) {
    for (size_t k = 0; k < inst.ecus.size(); ++k)
      if (mem_use[k] > inst.ecus[k].memory_mb) ++violations;
  }
  return total + ctx.penalty * violations;
}

GaContext make_context(const ProblemInstance& inst, const GaParams& params) {
  if (params.population < 1 || params.generations < 0 || params.tournament < 1 ||
      params.crossover_prob < 0 || params.crossover_prob > 1 || params.mutation_prob < 0 ||
      params.mutation_prob > 1)
    throw std::invalid_argument("evolve: invalid GA parameters");
  GaContext ctx;
  ctx.inst = &inst;
  ctx.params = params;
  int n = static_cast<int>(inst.tasks.size());
  auto tprime = compute_decomposition_set(inst);
  std::vector<char> in_tprime(n, 0);
  for (int i : tprime) in_tprime[i] = 1;
  ctx.in_tprime = in_tprime;
  ctx.library.resize(n);
  double max_cost_sum = 0;
  for (int i = 0; i < n; ++i) {
    const Task& t = inst.tasks[i];
    DecompositionScheme trivial;
    trivial.alpha[t.asil.value() - 1] = 1;
    if (in_tprime[i]) {
      ctx.library[i] = filter_compatible(enumerate_schemes(t.asil), inst.ecus);
      if (ctx.library[i].empty()) ctx.library[i] = {trivial};
    } else {
      ctx.library[i] = {trivial};
    }
    double m = 0;
    for (size_t k = 0; k < inst.ecus.size(); ++k)
      for (int h = 0; h < 4; ++h) m = std::max(m, t.dev_cost[k][h]);
    max_cost_sum += m;
  }
  ctx.penalty = params.penalty_weight >= 0 ? params.penalty_weight : 10.0 * max_cost_sum;
  return ctx;
}

}  // namespace

double ga_fitness(const ProblemInstance& instance, const GaChromosome& chromosome,
                  const GaParams& params) {
  GaContext ctx = make_context(instance, params);
  return fitness_impl(ctx, chromosome);
}

GaResult evolve(const ProblemInstance& instance, const GaParams& params) {
  GaContext ctx = make_context(instance, params);
  std::mt19937_64 rng(params.seed);
  int n = static_cast<int>(instance.tasks.size());

  GaResult res;
  if (n == 0) {
    res.history.assign(static_cast<size_t>(params.generations) + 1, {0, 0});
    return res;
  }

  std::vector<GaChromosome> pop;
  std::vector<double> fit;
  for (int p = 0; p < params.population; ++p) {
    pop.push_back(random_chromosome(ctx, rng));
    fit.push_back(fitness_impl(ctx, pop.back()));
  }

  auto record = [&] {
    int best = static_cast<int>(std::min_element(fit.begin(), fit.end()) - fit.begin());
    double mean = std::accumulate(fit.begin(), fit.end(), 0.0) / fit.size();
    res.history.push_back({fit[best], mean});
    return best;
  };
  auto tournament = [&] {
    int best = uniform_int(rng, 0, params.population - 1);
    for (int t = 1; t < params.tournament; ++t) {
      int c = uniform_int(rng, 0, params.population - 1);
      if (fit[c] < fit[best]) best = c;
    }
    return best;
  };

  int best = record();
  res.best = pop[best];
  res.best_fitness = fit[best];

  for (int gen = 0; gen < params.generations; ++gen) {
    std::vector<GaChromosome> next;
    std::vector<double> next_fit;
    next.push_back(res.best);  // elitism
    next_fit.push_back(res.best_fitness);
    while (static_cast<int>(next.size()) < params.population) {
      GaChromosome a = pop[tournament()];
      GaChromosome b = pop[tournament()];
      if (n >= 2 && uniform01(rng) < params.crossover_prob) {
        int cut = uniform_int(rng, 1, n - 1);  // crossover at a task boundary
        for (int i = cut; i < n; ++i) {
          std::swap(a.schemes[i], b.schemes[i]);
          std::swap(a.genes[i], b.genes[i]);
        }
      }
      for (GaChromosome* child : {&a, &b}) {
        if (static_cast<int>(next.size()) >= params.population) break;
        for (int i = 0; i < n; ++i)
          if (uniform01(rng) < params.mutation_prob) mutate_task(ctx, rng, i, *child);
        next.push_back(std::move(*child));
        next_fit.push_back(fitness_impl(ctx, next.back()));
      }
    }
    pop = std::move(next);
    fit = std::move(next_fit);
    int gbest = record();
    if (fit[gbest] < res.best_fitness) {
      res.best_fitness = fit[gbest];
      res.best = pop[gbest];
    }
  }
  return res;
}

}  // namespace aalloc
