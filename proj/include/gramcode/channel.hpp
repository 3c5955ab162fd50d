#pragma once

// Seeded synthesis/coverage/sequencing channel, replayable traces, and the
// support-readout (SBH) companions.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gramcode/errors.hpp"
#include "gramcode/graph.hpp"
#include "gramcode/grams.hpp"
#include "gramcode/numeric.hpp"

namespace gramcode {

struct ChannelBudget {
  std::int64_t s_syn = 0;
  std::int64_t t = 0;
  std::int64_t s_seq = 0;
};

struct SynthesisEvent {
  std::size_t position;
  Symbol symbol;
  friend bool operator==(const SynthesisEvent&, const SynthesisEvent&) = default;
};

struct SequencingEvent {
  std::size_t fragment;  // index among the surviving occurrences, in position order
  GramCode gram;         // replacement gram
  friend bool operator==(const SequencingEvent&, const SequencingEvent&) = default;
};

struct ChannelTrace {
  std::uint64_t seed = 0;
  std::vector<SynthesisEvent> synthesis;
  std::vector<std::size_t> dropped;  // occurrence indices (gram start positions) in the synthesized word
  std::vector<SequencingEvent> sequencing;
  friend bool operator==(const ChannelTrace&, const ChannelTrace&) = default;
};

struct ChannelOptions {
  bool at_most = false;     // draw each count uniformly from 0..budget
  bool whole_gram = false;  // sequencing replaces the whole gram instead of one symbol
};

struct ChannelOutput {
  ProfileVector observed;  // indexed by all of [q]^l
  ChannelTrace trace;
};

/// mt19937_64 with rejection-sampled bounded draws, so sequences match across platforms.
class ChannelRng {
 public:
  explicit ChannelRng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    require(n > 0, "empty sampling range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % n;
  }

  /// k distinct values from [0, n), in draw order (partial Fisher-Yates).
  std::vector<std::size_t> distinct(std::size_t n, std::size_t k) {
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + below(n - i)]);
    pool.resize(k);
    return pool;
  }

 private:
  std::mt19937_64 gen_;
};

namespace detail {

inline Symbol other_symbol(ChannelRng& rng, Symbol current, int q) {
  auto pick = static_cast<Symbol>(rng.below(static_cast<std::uint64_t>(q - 1)));
  return pick >= current ? static_cast<Symbol>(pick + 1) : pick;
}

inline std::vector<GramCode> gram_codes(const Word& x, int ell) {
  std::vector<GramCode> out;
  for (std::size_t pos = 0; pos + static_cast<std::size_t>(ell) <= x.size(); ++pos)
    out.push_back(lex_index(x.symbols().subspan(pos, static_cast<std::size_t>(ell)), x.q(), ell));
  return out;
}

}  // namespace detail

/// Applies the listed events: synthesis substitutions, then drops, then sequencing.
inline ProfileVector inject(const Word& x, int ell, const ChannelTrace& trace) {
  require(static_cast<int>(x.size()) >= ell, "word shorter than ell");
  std::vector<Symbol> s(x.symbols().begin(), x.symbols().end());
  for (const auto& ev : trace.synthesis) {
    require(ev.position < s.size(), "synthesis position out of range");
    require(ev.symbol < x.q(), "synthesis symbol out of range");
    s[ev.position] = ev.symbol;
  }
  Word tilde(std::move(s), x.q());
  auto grams = detail::gram_codes(tilde, ell);

  std::vector<bool> gone(grams.size(), false);
  for (auto idx : trace.dropped) {
    require(idx < grams.size(), "dropped occurrence out of range");
    require(!gone[idx], "occurrence dropped twice");
    gone[idx] = true;
  }
  std::vector<GramCode> survivors;
  for (std::size_t i = 0; i < grams.size(); ++i)
    if (!gone[i]) survivors.push_back(grams[i]);

  const GramCode space = pow_q(x.q(), ell);
  for (const auto& ev : trace.sequencing) {
    require(ev.fragment < survivors.size(), "sequencing fragment out of range");
    require(ev.gram < space, "sequencing gram out of range");
    survivors[ev.fragment] = ev.gram;
  }
  ProfileVector out(space);
  for (auto g : survivors) ++out[g];
  return out;
}

inline ChannelOutput transmit(const Word& x, int ell, ChannelBudget budget, std::uint64_t seed,
                              ChannelOptions opts = {}) {
  require(ell >= 2, "ell must be >= 2");
  require(static_cast<int>(x.size()) >= ell, "word shorter than ell");
  require(budget.s_syn >= 0 && budget.t >= 0 && budget.s_seq >= 0, "channel budgets must be >= 0");
  const auto grams_total = static_cast<std::int64_t>(x.size()) - ell + 1;
  require(budget.s_syn <= static_cast<std::int64_t>(x.size()), "s_syn exceeds the word length");
  require(budget.t + budget.s_seq <= grams_total, "t + s_seq exceeds n - l + 1");

  ChannelRng rng(seed);
  ChannelOutput out;
  out.trace.seed = seed;
  if (opts.at_most) {
    budget.s_syn = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(budget.s_syn) + 1));
    budget.t = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(budget.t) + 1));
    budget.s_seq = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(budget.s_seq) + 1));
  }

  std::vector<Symbol> s(x.symbols().begin(), x.symbols().end());
  for (auto pos : rng.distinct(s.size(), static_cast<std::size_t>(budget.s_syn))) {
    Symbol sym = detail::other_symbol(rng, s[pos], x.q());
    out.trace.synthesis.push_back({pos, sym});
    s[pos] = sym;
  }
  Word tilde(std::move(s), x.q());
  auto grams = detail::gram_codes(tilde, ell);

  out.trace.dropped = rng.distinct(grams.size(), static_cast<std::size_t>(budget.t));
  std::vector<bool> gone(grams.size(), false);
  for (auto i : out.trace.dropped) gone[i] = true;
  std::vector<GramCode> survivors;
  for (std::size_t i = 0; i < grams.size(); ++i)
    if (!gone[i]) survivors.push_back(grams[i]);

  const GramCode space = pow_q(x.q(), ell);
  for (auto frag : rng.distinct(survivors.size(), static_cast<std::size_t>(budget.s_seq))) {
    GramCode g = survivors[frag];
    GramCode next;
    if (opts.whole_gram) {
      next = rng.below(space - 1);
      if (next >= g) ++next;
    } else {
      Word w = gram_at(g, x.q(), ell);
      auto pos = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(ell)));
      std::vector<Symbol> sym(w.symbols().begin(), w.symbols().end());
      sym[pos] = detail::other_symbol(rng, sym[pos], x.q());
      next = lex_index(sym, x.q(), ell);
    }
    out.trace.sequencing.push_back({frag, next});
    survivors[frag] = next;
  }
  out.observed = ProfileVector(space);
  for (auto g : survivors) ++out.observed[g];
  return out;
}

// ---------------------------------------------------------------------------
// Support readout.

/// Lexicographic codes of the grams with positive count.
inline std::vector<GramCode> support_readout(const ProfileVector& p) {
  std::vector<GramCode> out;
  for (GramCode c = 0; c < p.size(); ++c)
    if (p[c] > 0) out.push_back(c);
  return out;
}

inline std::int64_t star_distance(const Word& x, const Word& y, int ell) {
  require(x.q() == y.q(), "alphabet mismatch");
  auto a = support_readout(full_profile(x, ell));
  auto b = support_readout(full_profile(y, ell));
  std::vector<GramCode> diff;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
  return static_cast<std::int64_t>(diff.size());
}

/// Number of correctly read grams that identifies a codeword of a *-code of distance d.
inline std::int64_t star_identification_bound(std::int64_t n, std::int64_t ell, std::int64_t d) {
  require(d >= 1 && n >= ell, "need d >= 1 and n >= ell");
  return n - ell + 1 - (d - 1) / 2;
}

inline int mobius(std::int64_t k) {
  int result = 1;
  for (std::int64_t p = 2; p * p <= k; ++p) {
    if (k % p) continue;
    k /= p;
    if (k % p == 0) return 0;
    result = -result;
  }
  if (k > 1) result = -result;
  return result;
}

/// Number of distinct l-gram support sets of binary words of length n, for l <= n < 2l.
inline BigInt tan_shallit_count(std::int64_t n, std::int64_t ell) {
  require(ell >= 1 && ell <= n && n < 2 * ell, "formula valid only for l <= n < 2l");
  // 2^n - sum_k ((k-1)/k) sum_{d|k} mu(k/d) 2^d; each inner sum is divisible by k.
  BigInt total = pow_big(2, static_cast<unsigned>(n));
  for (std::int64_t k = 1; k <= n - ell + 1; ++k) {
    BigInt inner = 0;
    for (std::int64_t d = 1; d <= k; ++d)
      if (k % d == 0) inner += mobius(k / d) * pow_big(2, static_cast<unsigned>(d));
    total -= inner / k * (k - 1);
  }
  return total;
}

// ---------------------------------------------------------------------------

struct CycleDecomposition {
  std::vector<std::vector<GramCode>> cycles;  // arcs of each closed trail, in traversal order
  std::uint64_t steps = 0;
};

/// Partition the arcs of D(q,l) into q closed trails of length q^(l-1).
/// Each trail starts with the smallest unused arc; search is depth-first in lex order.
inline CycleDecomposition cycle_decomposition(int q, int ell, std::uint64_t budget = 10'000'000) {
  GramSet s = GramSet::full(q, ell);
  require(s.size() <= 64, "cycle decomposition is limited to q^l <= 64");
  DeBruijnGraph g(s);
  const std::size_t len = pow_q(q, ell - 1);
  std::vector<bool> used(g.arc_count(), false);
  CycleDecomposition result;
  std::vector<std::vector<ArcId>> trails;
  std::vector<ArcId> current;
  bool exceeded = false;

  std::function<bool()> search = [&]() -> bool {
    if (++result.steps > budget) {
      exceeded = true;
      return false;
    }
    if (current.empty()) {
      if (trails.size() == static_cast<std::size_t>(q)) return true;
      auto first = std::find(used.begin(), used.end(), false);
      auto a = static_cast<ArcId>(first - used.begin());
      used[a] = true;
      current.push_back(a);
      if (search()) return true;
      current.pop_back();
      used[a] = false;
      return false;
    }
    NodeId at = g.terminal(current.back());
    NodeId home = g.initial(current.front());
    if (current.size() == len) {
      if (at != home) return false;
      trails.push_back(current);
      current.clear();
      if (search()) return true;
      current = trails.back();
      trails.pop_back();
      return false;
    }
    for (auto a : g.out_arcs(at)) {
      if (used[a]) continue;
      used[a] = true;
      current.push_back(a);
      if (search()) return true;
      current.pop_back();
      used[a] = false;
      if (exceeded) return false;
    }
    return false;
  };

  if (!search()) {
    if (exceeded) throw ComputationError("cycle decomposition budget exceeded");
    throw ComputationError("no decomposition of D(" + std::to_string(q) + "," + std::to_string(ell) +
                           ") into " + std::to_string(q) + " closed trails of length " +
                           std::to_string(len) + " exists");
  }
  for (const auto& t : trails) {
    std::vector<GramCode> codes;
    for (auto a : t) codes.push_back(s.code(a));
    result.cycles.push_back(std::move(codes));
  }
  return result;
}

/// Cyclic word read along a closed trail: the first symbol of each arc.
inline Word trail_word(const std::vector<GramCode>& arcs, int q, int ell) {
  std::vector<Symbol> s;
  for (auto c : arcs) s.push_back(gram_at(c, q, ell)[0]);
  return Word(std::move(s), q);
}

}  // namespace gramcode
