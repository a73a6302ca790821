#pragma once

// Seeded random expression generators shared by the test suites.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rlc/ast.hpp"
#include "rlc/raw.hpp"

namespace gen {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  int below(int n) { return static_cast<int>(eng() % static_cast<std::uint64_t>(n)); }
  bool chance(int pct) { return below(100) < pct; }
};

inline std::string pool_name(int i) {
  static const char* names[] = {"a", "b", "c", "x", "y", "z", "u", "v", "w"};
  return names[i % 9];
}

// Sum-free term over a small free-variable pool. Binders shadow pool names.
inline rlc::ast::TermPtr random_term(Rng& rng, int budget, bool allow_tests);

inline rlc::ast::TestPtr random_test(Rng& rng, int budget) {
  using namespace rlc::ast;
  if (budget <= 1) return mk_eps();
  switch (rng.below(3)) {
    case 0:
      return mk_eps();
    case 1: {
      int half = budget / 2;
      return mk_par(random_test(rng, half), random_test(rng, budget - half));
    }
    default:
      return mk_tau(random_term(rng, budget - 1, true));
  }
}

inline rlc::ast::Bag random_bag(Rng& rng, int budget, bool allow_tests) {
  using namespace rlc::ast;
  int nlin = rng.below(3);
  std::vector<TermPtr> lin;
  for (int i = 0; i < nlin && budget > 1; ++i) {
    int part = 1 + rng.below(std::max(1, budget / 2));
    lin.push_back(random_term(rng, part, allow_tests));
    budget -= part;
  }
  // banged slot: usually a singleton, sometimes zero or a two-term sum
  int roll = rng.below(10);
  TermSum banged;
  if (roll == 0) {
    banged = TermSum::zero();
  } else if (roll == 1) {
    banged = sum_union(TermSum(random_term(rng, budget / 2 + 1, allow_tests)),
                       TermSum(random_term(rng, budget / 2 + 1, allow_tests)));
  } else {
    banged = TermSum(random_term(rng, std::max(1, budget), allow_tests));
  }
  return Bag(std::move(lin), std::move(banged));
}

inline rlc::ast::TermPtr random_term(Rng& rng, int budget, bool allow_tests) {
  using namespace rlc::ast;
  if (budget <= 1) return mk_var(pool_name(rng.below(9)));
  switch (rng.below(allow_tests ? 4 : 3)) {
    case 0:
      return mk_var(pool_name(rng.below(9)));
    case 1:
      return mk_abs(pool_name(rng.below(9)), random_term(rng, budget - 1, allow_tests));
    case 2: {
      int half = budget / 2;
      return mk_app(random_term(rng, half, allow_tests),
                    random_bag(rng, budget - half, allow_tests));
    }
    default:
      return mk_taubar(random_test(rng, budget - 1));
  }
}

/// Closed sum-free term: variables always come from the enclosing binders.
inline rlc::ast::TermPtr random_closed_term(Rng& rng, int budget,
                                            std::vector<std::string>& env,
                                            bool allow_tests) {
  using namespace rlc::ast;
  if (env.empty() || (budget > 1 && rng.chance(35))) {
    std::string binder = "v" + std::to_string(static_cast<int>(env.size()));
    env.push_back(binder);
    TermPtr body = random_closed_term(rng, budget - 1, env, allow_tests);
    env.pop_back();
    return mk_abs(binder, body);
  }
  if (budget <= 1) return mk_var(env[rng.below(static_cast<int>(env.size()))]);
  switch (rng.below(3)) {
    case 0:
      return mk_var(env[rng.below(static_cast<int>(env.size()))]);
    case 1: {
      int half = budget / 2;
      TermPtr fun = random_closed_term(rng, half, env, allow_tests);
      int nlin = rng.below(2);
      std::vector<TermPtr> lin;
      int rest = budget - half;
      for (int i = 0; i < nlin && rest > 1; ++i) {
        lin.push_back(random_closed_term(rng, rest / 2, env, allow_tests));
        rest -= rest / 2;
      }
      TermPtr banged = random_closed_term(rng, std::max(1, rest), env, allow_tests);
      return mk_app(fun, Bag(std::move(lin), TermSum(banged)));
    }
    default: {
      if (allow_tests && rng.chance(20))
        return mk_taubar(mk_tau(random_closed_term(rng, budget - 2, env, allow_tests)));
      std::string binder = "v" + std::to_string(static_cast<int>(env.size()));
      env.push_back(binder);
      TermPtr body = random_closed_term(rng, budget - 1, env, allow_tests);
      env.pop_back();
      return mk_abs(binder, body);
    }
  }
}

inline rlc::ast::TermPtr random_closed_term(Rng& rng, int budget, bool allow_tests) {
  std::vector<std::string> env;
  return random_closed_term(rng, budget, env, allow_tests);
}

/// Raw tree with explicit sum and zero nodes in arbitrary term positions.
inline rlc::raw::RawPtr random_raw(Rng& rng, int budget) {
  using namespace rlc::raw;
  if (budget <= 1) {
    if (rng.chance(15)) return rzero();
    return rvar(gen::pool_name(rng.below(9)));
  }
  switch (rng.below(5)) {
    case 0:
      return rvar(pool_name(rng.below(9)));
    case 1:
      return rabs(pool_name(rng.below(9)), random_raw(rng, budget - 1));
    case 2: {
      int half = budget / 2;
      std::vector<RawPtr> lin;
      if (rng.chance(40)) lin.push_back(random_raw(rng, budget / 4 + 1));
      return rapp(random_raw(rng, half),
                  rbag(std::move(lin), random_raw(rng, budget - half)));
    }
    case 3: {
      int half = budget / 2;
      return rsum({random_raw(rng, half), random_raw(rng, budget - half)});
    }
    default:
      return rzero();
  }
}

}  // namespace gen
