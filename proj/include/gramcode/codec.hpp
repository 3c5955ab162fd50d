#pragma once

// Code constructions on profile vectors and the word-level encode/decode pipeline.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "gramcode/aecc.hpp"
#include "gramcode/errors.hpp"
#include "gramcode/graph.hpp"
#include "gramcode/grams.hpp"
#include "gramcode/lattice.hpp"

namespace gramcode {

/// Canonical word with the given profile: the Hierholzer walk of the graph module.
inline Word euler_word(const ProfileVector& u, const DeBruijnGraph& g) {
  return g.spell(euler_walk(g, u.counts));
}

inline Word euler_word(const ProfileVector& u, const GramSet& s) { return euler_word(u, DeBruijnGraph(s)); }

/// 1-based start J such that every prefix sum of the rotation starting at J is >= 0.
inline std::size_t relabel_start(const std::vector<std::int64_t>& r) {
  require(!r.empty(), "relabel sequence must be nonempty");
  require(std::accumulate(r.begin(), r.end(), std::int64_t{0}) == 0, "relabel sequence must sum to zero");
  std::int64_t prefix = 0, best = 0;
  std::size_t arg = 0;
  for (std::size_t j = 1; j < r.size(); ++j) {
    prefix += r[j - 1];
    if (prefix < best) {
      best = prefix;
      arg = j;
    }
  }
  return arg + 1;
}

/// Layout of the systematic encoder: a Hamiltonian cycle carries the balancing
/// counts, one loop absorbs the slack, the remaining arcs hold the message.
class SystematicLayout {
 public:
  SystematicLayout(const GramSet& s, std::int64_t m, std::uint64_t ham_budget = kDefaultHamiltonianBudget)
      : graph_(s), m_(m) {
    require(m >= 1, "message alphabet bound m must be >= 1");
    auto loop = graph_.first_loop();
    require(loop.has_value(), "systematic encoding needs a loop arc in S");
    loop_ = *loop;
    cycle_ = hamiltonian_cycle(graph_, ham_budget);
    const std::size_t v = cycle_.size();
    std::vector<bool> reserved(graph_.arc_count(), false);
    reserved[loop_] = true;
    for (std::size_t i = 0; i < v; ++i) {
      auto a = graph_.arc_between(cycle_[i], cycle_[(i + 1) % v]);
      require(a.has_value(), "Hamiltonian cycle uses an arc outside S");
      require(!reserved[*a], "loop arc lies on the Hamiltonian cycle");
      cycle_arcs_.push_back(*a);
      reserved[*a] = true;
    }
    for (ArcId a = 0; a < graph_.arc_count(); ++a)
      if (!reserved[a]) info_.push_back(a);
  }

  const DeBruijnGraph& graph() const { return graph_; }
  const GramSet& gram_set() const { return graph_.gram_set(); }
  std::int64_t m() const { return m_; }
  ArcId loop_arc() const { return loop_; }
  const std::vector<NodeId>& ham_cycle() const { return cycle_; }
  const std::vector<ArcId>& cycle_arcs() const { return cycle_arcs_; }
  const std::vector<ArcId>& info_positions() const { return info_; }

  /// Denominator of the length bound: C(|V|,2)(q-1) + |S| - |V| - 1.
  std::int64_t bound_denominator() const {
    auto v = static_cast<std::int64_t>(graph_.node_count());
    return v * (v - 1) / 2 * (graph_.q() - 1) + static_cast<std::int64_t>(graph_.arc_count()) - v - 1;
  }

  /// Largest m the general length bound admits at length n.
  std::int64_t max_m(std::int64_t n) const {
    std::int64_t den = bound_denominator();
    std::int64_t total = n - graph_.ell() + 1;
    return den <= 0 ? total : total / den;
  }

  bool within_bound(std::int64_t n) const { return m_ <= max_m(n); }

 private:
  DeBruijnGraph graph_;
  std::int64_t m_;
  ArcId loop_ = 0;
  std::vector<NodeId> cycle_;
  std::vector<ArcId> cycle_arcs_;
  std::vector<ArcId> info_;
};

/// phi_sys: message v in [m]^{|I|} to a closed profile of length n.
/// With allow_override the general bound on m is skipped and only the loop count y >= 0 is checked.
inline ProfileVector systematic_encode(const std::vector<std::int64_t>& v, std::int64_t n,
                                       const SystematicLayout& layout, bool allow_override = false) {
  const auto& g = layout.graph();
  const auto& info = layout.info_positions();
  require(v.size() == info.size(),
          "message length " + std::to_string(v.size()) + " != |I| = " + std::to_string(info.size()));
  for (auto x : v)
    require(x >= 0 && x < layout.m(), "message symbol outside [0, m-1]");
  require(n >= g.ell(), "n must be >= ell");
  if (!allow_override)
    require(layout.within_bound(n), "m=" + std::to_string(layout.m()) + " exceeds the bound " +
                                        std::to_string(layout.max_m(n)) + " at n=" + std::to_string(n) +
                                        "; use the override to check validity post hoc");

  ProfileVector u(g.arc_count());
  std::vector<std::int64_t> r(g.node_count(), 0);
  std::int64_t used = 0;
  for (std::size_t k = 0; k < info.size(); ++k) {
    ArcId a = info[k];
    u[a] = v[k];
    used += v[k];
    r[g.terminal(a)] += v[k];
    r[g.initial(a)] -= v[k];
  }
  const auto& cyc = layout.ham_cycle();
  const std::size_t len = cyc.size();
  std::vector<std::int64_t> rr(len);
  for (std::size_t i = 0; i < len; ++i) rr[i] = r[cyc[(i + 1) % len]];

  // a_i = 1 + R_i - min R with R_i the prefix sums of rr; the rotation at relabel_start attains the min.
  std::size_t start = relabel_start(rr) - 1;
  std::vector<std::int64_t> prefix(len, 0);
  for (std::size_t i = 1; i < len; ++i) prefix[i] = prefix[i - 1] + rr[i - 1];
  for (std::size_t i = 0; i < len; ++i) {
    std::int64_t a = 1 + prefix[i] - prefix[start];
    u[layout.cycle_arcs()[i]] = a;
    used += a;
  }
  std::int64_t y = (n - g.ell() + 1) - used;
  if (y < 0)
    throw ValidationError("message does not fit: loop count would be " + std::to_string(y) +
                          " at n=" + std::to_string(n));
  u[layout.loop_arc()] = y;
  return u;
}

inline std::vector<std::int64_t> systematic_restrict(const ProfileVector& u, const SystematicLayout& layout) {
  std::vector<std::int64_t> v;
  for (auto a : layout.info_positions()) v.push_back(u[a]);
  return v;
}

// ---------------------------------------------------------------------------

enum class Provenance { intersection, systematic, external };

inline std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::intersection:
      return "intersection";
    case Provenance::systematic:
      return "systematic";
    case Provenance::external:
      return "external";
  }
  return {};
}

inline Provenance parse_provenance(const std::string& s) {
  if (s == "intersection") return Provenance::intersection;
  if (s == "systematic") return Provenance::systematic;
  if (s == "external") return Provenance::external;
  throw ValidationError("unknown provenance '" + s + "'");
}

struct GrcCodebook {
  std::int64_t n = 0;
  GramSet gram_set;
  std::vector<ProfileVector> codewords;
  std::int64_t distance = 0;  // 0 when undeclared
  Provenance provenance = Provenance::external;

  /// Sum, realizability (an Euler walk exists) and, for codebooks of at most
  /// pairwise_limit words, the declared distance.
  void validate(std::size_t pairwise_limit = 2000) const {
    DeBruijnGraph g(gram_set);
    const std::int64_t total = n - gram_set.ell() + 1;
    for (std::size_t i = 0; i < codewords.size(); ++i) {
      const auto& u = codewords[i];
      require(u.size() == gram_set.size(), "codeword " + std::to_string(i) + " has wrong length");
      for (auto c : u.counts) require(c >= 0, "codeword " + std::to_string(i) + " has a negative entry");
      require(u.total() == total, "codeword " + std::to_string(i) + " does not sum to n-l+1");
      euler_walk(g, u.counts);
    }
    if (distance > 0 && codewords.size() <= pairwise_limit) {
      auto dmin = verify_min_distance(codewords);
      require(dmin >= distance, "codebook minimum distance " + std::to_string(dmin) +
                                    " is below the declared " + std::to_string(distance));
    }
  }
};

/// C(H, beta) intersected with the interior points E(n;S).
inline GrcCodebook grc_intersect(const VarshamovCode& code, std::int64_t n, const GramSet& s,
                                 std::size_t max_size = 10'000'000) {
  require(code.length() == s.size(), "code length must equal |S|");
  GrcCodebook book{n, s, {}, code.d() + 1, Provenance::intersection};
  auto sys = FlowSystem::for_length(s, n, FlowMode::E, code.congruence());
  BigInt expected = count_points(sys);
  require(expected <= max_size, "intersection codebook too large to materialize: " + to_string(expected));
  book.codewords = enumerate_points(sys);
  return book;
}

/// All members of C(H, beta) inside [m]^N, in lexicographic order.
inline std::vector<std::vector<std::int64_t>> aecc_codewords(const VarshamovCode& code, std::int64_t m,
                                                             std::uint64_t guard = 100'000'000) {
  require(m >= 1, "m must be >= 1");
  require(pow_big(m, static_cast<unsigned>(code.length())) <= guard, "m^N exceeds the enumeration guard");
  std::vector<std::vector<std::int64_t>> out;
  ProfileVector u(code.length());
  const std::size_t n = code.length();
  while (true) {
    if (code.contains(u)) out.push_back(u.counts);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++u[i] < m) break;
      u[i] = 0;
      if (i == 0) return out;
    }
  }
}

/// phi_sys image of an m-ary AECC.
inline GrcCodebook systematic_grc(const std::vector<std::vector<std::int64_t>>& aecc, std::int64_t n,
                                  const SystematicLayout& layout, std::int64_t declared_distance = 0,
                                  bool allow_override = false) {
  GrcCodebook book{n, layout.gram_set(), {}, declared_distance, Provenance::systematic};
  book.codewords.reserve(aecc.size());
  for (const auto& v : aecc) book.codewords.push_back(systematic_encode(v, n, layout, allow_override));
  return book;
}

// ---------------------------------------------------------------------------
// Rank modulation.

/// Layout over the full gram set with m = q^l - q^(l-1) - 1 = |I|.
inline SystematicLayout rank_layout(int q, int ell) {
  GramSet s = GramSet::full(q, ell);
  auto m = static_cast<std::int64_t>(pow_q(q, ell) - pow_q(q, ell - 1) - 1);
  return SystematicLayout(s, std::max<std::int64_t>(m, 1));
}

inline void check_permutation(const std::vector<std::int64_t>& perm) {
  std::vector<std::int64_t> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    require(sorted[i] == static_cast<std::int64_t>(i), "not a permutation of [0, m-1]");
}

/// phi_sys(perm); the message bound is checked post hoc through y >= 0.
inline ProfileVector rank_encode(const std::vector<std::int64_t>& perm, std::int64_t n,
                                 const SystematicLayout& layout) {
  check_permutation(perm);
  return systematic_encode(perm, n, layout, true);
}

struct RankReadout {
  std::vector<std::int64_t> perm;
  bool tie = false;
};

/// Ranks the counts at the information positions (0 = smallest); equal counts rank by gram order.
inline RankReadout rank_readout_decode(const SystematicLayout& layout, const ProfileVector& observed_on_s) {
  require(observed_on_s.size() == layout.gram_set().size(), "observed profile must be indexed by S");
  const auto& info = layout.info_positions();
  std::vector<std::size_t> order(info.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return observed_on_s[info[a]] < observed_on_s[info[b]]; });
  RankReadout r;
  r.perm.assign(info.size(), 0);
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    r.perm[order[rank]] = static_cast<std::int64_t>(rank);
    if (rank > 0 && observed_on_s[info[order[rank]]] == observed_on_s[info[order[rank - 1]]]) r.tie = true;
  }
  return r;
}

// ---------------------------------------------------------------------------

struct Projection {
  ProfileVector on_s;
  std::int64_t foreign_mass = 0;
};

/// Restrict a [q]^l-indexed count vector to the coordinates of S.
inline Projection project_to_set(const ProfileVector& full, const GramSet& s) {
  require(full.size() == pow_q(s.q(), s.ell()), "observed profile must be indexed by all of [q]^l");
  Projection p{ProfileVector(s.size()), 0};
  for (GramCode c = 0; c < full.size(); ++c) {
    if (auto idx = s.index_of(c))
      p.on_s[*idx] = full[c];
    else
      p.foreign_mass += full[c];
  }
  return p;
}

struct ProfileDecodeResult {
  std::size_t index = 0;
  ProfileVector codeword;
  Word word;
  std::int64_t distance = 0;
  std::int64_t foreign_mass = 0;
  bool tie = false;
};

/// Minimum asymmetric distance decoding over an explicit codebook; first index wins ties.
inline ProfileDecodeResult decode_profile(const GrcCodebook& book, const ProfileVector& observed_full) {
  if (book.codewords.empty()) throw ComputationError("cannot decode against an empty codebook");
  Projection proj = project_to_set(observed_full, book.gram_set);
  ProfileDecodeResult r;
  r.distance = kInfiniteDistance;
  for (std::size_t i = 0; i < book.codewords.size(); ++i) {
    auto d = asym_distance(book.codewords[i], proj.on_s);
    if (d < r.distance) {
      r.distance = d;
      r.index = i;
      r.tie = false;
    } else if (d == r.distance) {
      r.tie = true;
    }
  }
  r.codeword = book.codewords[r.index];
  r.word = euler_word(r.codeword, book.gram_set);
  r.foreign_mass = proj.foreign_mass;
  return r;
}

}  // namespace gramcode
