#include <gtest/gtest.h>

#include <random>

#include "gramcode/channel.hpp"
#include "oracles.hpp"

using namespace gramcode;

namespace {

Word w2(const char* s) { return parse_digits(s, 2); }

Word random_word(std::mt19937_64& rng, int q, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += char('0' + rng() % static_cast<unsigned>(q));
  return parse_digits(s, q);
}

}  // namespace

TEST(Transmit, ZeroBudgetIsProfile) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto x = random_word(rng, 3, 5 + rng() % 20);
    auto out = transmit(x, 3, {}, rng());
    EXPECT_EQ(out.observed, full_profile(x, 3));
    EXPECT_TRUE(out.trace.synthesis.empty());
    EXPECT_EQ(inject(x, 3, ChannelTrace{}), full_profile(x, 3));
  }
}

TEST(Inject, NoisyRead) {
  ChannelTrace tr{0, {{0, 1}}, {4}, {{1, 1}, {2, 3}}};
  auto p = inject(w2("0110100"), 2, tr);
  EXPECT_EQ(p, (ProfileVector{1, 2, 0, 2}));
  EXPECT_EQ(p.total(), 5);
}

TEST(Inject, RejectsInconsistentTrace) {
  auto x = w2("0110100");
  EXPECT_THROW(inject(x, 2, ChannelTrace{0, {{7, 1}}, {}, {}}), ValidationError);
  EXPECT_THROW(inject(x, 2, ChannelTrace{0, {{1, 2}}, {}, {}}), ValidationError);
  EXPECT_THROW(inject(x, 2, ChannelTrace{0, {}, {6}, {}}), ValidationError);
  EXPECT_THROW(inject(x, 2, ChannelTrace{0, {}, {1, 1}, {}}), ValidationError);
  EXPECT_THROW(inject(x, 2, ChannelTrace{0, {}, {}, {{6, 0}}}), ValidationError);
  EXPECT_THROW(inject(x, 2, ChannelTrace{0, {}, {}, {{0, 4}}}), ValidationError);
}

TEST(Transmit, ConservationAndBounds) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 2000; ++trial) {
    int q = 2 + static_cast<int>(rng() % 3), ell = 2 + static_cast<int>(rng() % 3);
    std::size_t n = ell + rng() % 30;
    auto x = random_word(rng, q, n);
    std::int64_t grams = static_cast<std::int64_t>(n) - ell + 1;
    ChannelBudget b;
    b.s_syn = static_cast<std::int64_t>(rng() % (n + 1));
    b.t = static_cast<std::int64_t>(rng() % (grams + 1));
    b.s_seq = static_cast<std::int64_t>(rng() % (grams - b.t + 1));
    auto out = transmit(x, ell, b, rng());
    ASSERT_EQ(out.observed.total(), grams - b.t);
    for (auto c : out.observed.counts) ASSERT_LE(c, grams);
    ASSERT_EQ(static_cast<std::int64_t>(out.trace.synthesis.size()), b.s_syn);
    ASSERT_EQ(static_cast<std::int64_t>(out.trace.dropped.size()), b.t);
    ASSERT_EQ(static_cast<std::int64_t>(out.trace.sequencing.size()), b.s_seq);
    ASSERT_EQ(inject(x, ell, out.trace), out.observed);
  }
}

TEST(Transmit, LossOnlyIsDominated) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    auto x = random_word(rng, 2, 8 + rng() % 20);
    auto p = full_profile(x, 3);
    std::int64_t t = static_cast<std::int64_t>(rng() % (p.total() + 1));
    auto out = transmit(x, 3, {0, t, 0}, rng());
    std::int64_t l1 = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      ASSERT_LE(out.observed[i], p[i]);
      l1 += p[i] - out.observed[i];
    }
    ASSERT_EQ(l1, t);
  }
}

TEST(Transmit, SynthesisChangesFewGrams) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 500; ++trial) {
    int ell = 2 + static_cast<int>(rng() % 3);
    auto x = random_word(rng, 4, 10 + rng() % 20);
    std::int64_t s = static_cast<std::int64_t>(rng() % 4);
    auto out = transmit(x, ell, {s, 0, 0}, rng());
    auto p = full_profile(x, ell);
    ASSERT_EQ(out.observed.total(), p.total());
    ASSERT_LE(l1_distance(out.observed, p), 2 * s * ell);
    // Substitutions land on distinct positions and change the symbol.
    std::set<std::size_t> pos;
    for (const auto& ev : out.trace.synthesis) {
      ASSERT_TRUE(pos.insert(ev.position).second);
      ASSERT_NE(ev.symbol, x[ev.position]);
    }
  }
}

TEST(Transmit, DeterministicReplay) {
  auto x = parse_digits("0120312302130", 4);
  ChannelBudget b{2, 3, 2};
  auto a = transmit(x, 3, b, 42), c = transmit(x, 3, b, 42);
  EXPECT_EQ(a.observed, c.observed);
  EXPECT_EQ(a.trace, c.trace);
  EXPECT_EQ(a.trace.seed, 42u);
  EXPECT_EQ(inject(x, 3, a.trace), a.observed);
  bool differs = false;
  for (std::uint64_t seed = 43; seed < 60 && !differs; ++seed) differs = !(transmit(x, 3, b, seed).trace == a.trace);
  EXPECT_TRUE(differs);
}

TEST(Transmit, BudgetValidation) {
  auto x = w2("0110100");
  EXPECT_THROW(transmit(x, 2, {0, 4, 3}, 1), ValidationError);
  EXPECT_THROW(transmit(x, 2, {8, 0, 0}, 1), ValidationError);
  EXPECT_THROW(transmit(x, 2, {-1, 0, 0}, 1), ValidationError);
  EXPECT_THROW(transmit(w2("01"), 3, {}, 1), ValidationError);
  EXPECT_NO_THROW(transmit(x, 2, {1, 3, 3}, 1));
}

TEST(Transmit, AtMostMode) {
  auto x = parse_digits("01101001110100101", 2);
  std::set<std::int64_t> drops;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto out = transmit(x, 3, {2, 4, 3}, seed, {true, false});
    ASSERT_LE(out.trace.synthesis.size(), 2u);
    ASSERT_LE(out.trace.dropped.size(), 4u);
    ASSERT_LE(out.trace.sequencing.size(), 3u);
    ASSERT_EQ(inject(x, 3, out.trace), out.observed);
    drops.insert(static_cast<std::int64_t>(out.trace.dropped.size()));
  }
  EXPECT_EQ(drops.size(), 5u);
}

TEST(Transmit, SequencingErrorModes) {
  auto x = parse_digits("0000000000", 2);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto one = transmit(x, 3, {0, 0, 1}, seed);
    ASSERT_EQ(one.trace.sequencing.size(), 1u);
    // A single symbol change moves 000 to a gram of weight one.
    ASSERT_EQ(q_weight(gram_at(one.trace.sequencing[0].gram, 2, 3), 1), 1);
    auto whole = transmit(x, 3, {0, 0, 1}, seed, {false, true});
    ASSERT_NE(whole.trace.sequencing[0].gram, 0u);
  }
}

TEST(Support, ReadoutOfRankWord) {
  auto p = full_profile(w2("00000110111100"), 3);
  std::vector<std::string> got;
  for (auto c : support_readout(p)) got.push_back(to_digits(gram_at(c, 2, 3)));
  EXPECT_EQ(got, (std::vector<std::string>{"000", "001", "011", "100", "101", "110", "111"}));
}

TEST(Support, StarDistance) {
  EXPECT_EQ(star_distance(w2("0101"), w2("1010"), 2), 0);
  EXPECT_EQ(star_distance(w2("0110100"), w2("0110100"), 2), 0);
  EXPECT_EQ(star_distance(w2("0000"), w2("0101"), 2), 3);
  EXPECT_EQ(star_distance(w2("0000"), w2("1111"), 2), 2);
}

TEST(Support, IdentificationBound) {
  EXPECT_EQ(star_identification_bound(10, 3, 5), 6);
  for (std::int64_t n = 3; n < 12; ++n) EXPECT_EQ(star_identification_bound(n, 3, 1), n - 2);
}

TEST(Support, GreedyCodebookSharesFewGrams) {
  const std::int64_t n = 8, ell = 3, d = 4;
  std::vector<Word> book;
  std::vector<std::set<GramCode>> supports;
  oracle::for_each_word(2, n, [&](const std::string& s) {
    auto w = w2(s.c_str());
    for (const auto& b : book)
      if (star_distance(w, b, ell) < d) return;
    book.push_back(w);
    auto sup = support_readout(full_profile(w, ell));
    supports.emplace_back(sup.begin(), sup.end());
  });
  ASSERT_GE(book.size(), 2u);
  auto bound = star_identification_bound(n, ell, d);
  for (std::size_t i = 0; i < book.size(); ++i)
    for (std::size_t j = i + 1; j < book.size(); ++j) {
      std::size_t common = 0;
      for (auto g : supports[i]) common += supports[j].count(g);
      ASSERT_LT(static_cast<std::int64_t>(common), bound);
    }
}

TEST(TanShallit, Mobius) {
  std::vector<int> expected{1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0};
  for (std::int64_t k = 1; k <= 12; ++k) EXPECT_EQ(mobius(k), expected[k - 1]) << k;
  EXPECT_EQ(mobius(30), -1);
}

TEST(TanShallit, MatchesBruteForce) {
  for (int ell = 2; ell <= 7; ++ell) {
    EXPECT_EQ(tan_shallit_count(ell, ell), BigInt(1) << ell);
    for (int n = ell; n < 2 * ell && n <= 14; ++n)
      EXPECT_EQ(tan_shallit_count(n, ell), BigInt(oracle::support_count(n, ell))) << n << " " << ell;
  }
  EXPECT_THROW(tan_shallit_count(8, 4), ValidationError);
  EXPECT_THROW(tan_shallit_count(3, 4), ValidationError);
}

TEST(Decomposition, ValidWhereItExists) {
  for (auto [q, ell] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {2, 4}}) {
    auto dec = cycle_decomposition(q, ell);
    const auto len = static_cast<std::size_t>(pow_q(q, ell - 1));
    ASSERT_EQ(dec.cycles.size(), static_cast<std::size_t>(q));
    std::set<GramCode> used;
    for (const auto& cyc : dec.cycles) {
      ASSERT_EQ(cyc.size(), len);
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        ASSERT_TRUE(used.insert(cyc[i]).second);
        // Consecutive arcs share a node, and the trail closes.
        auto head = cyc[i] % pow_q(q, ell - 1), tail = cyc[(i + 1) % cyc.size()] / q;
        ASSERT_EQ(head, tail);
      }
      auto w = trail_word(cyc, q, ell);
      ASSERT_EQ(w.size(), len);
    }
    ASSERT_EQ(used.size(), static_cast<std::size_t>(pow_q(q, ell)));
  }
}

TEST(Decomposition, BinaryPairsImpossible) {
  // The two loops of D(2,2) would each need a second arc at their own node.
  EXPECT_THROW(cycle_decomposition(2, 2), ComputationError);
}
