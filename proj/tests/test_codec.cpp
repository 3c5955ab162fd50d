#include <gtest/gtest.h>

#include <random>

#include "gramcode/channel.hpp"
#include "gramcode/codec.hpp"
#include "gramcode/tables.hpp"
#include "oracles.hpp"

using namespace gramcode;

namespace {

std::vector<std::string> labels(const GramSet& s) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.size(); ++i) out.push_back(s.label(i));
  return out;
}

std::int64_t at(const ProfileVector& u, const GramSet& s, const char* gram) {
  return u[*s.index_of(lex_index(parse_digits(gram, s.q()), s.ell()))];
}

}  // namespace

TEST(Relabel, Examples) {
  EXPECT_EQ(relabel_start({0, 1, -1, 0}), 1u);
  EXPECT_EQ(relabel_start({-1, 1}), 2u);
  EXPECT_EQ(relabel_start({0, 0, 0}), 1u);
  EXPECT_THROW(relabel_start({1, 1}), ValidationError);
  EXPECT_THROW(relabel_start({}), ValidationError);
}

TEST(Relabel, RotationHasNonnegativePrefixes) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 2000; ++trial) {
    std::size_t n = 1 + rng() % 9;
    std::vector<std::int64_t> r(n);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      r[i] = static_cast<std::int64_t>(rng() % 7) - 3;
      sum += r[i];
    }
    r[n - 1] = -sum;
    auto j = relabel_start(r) - 1;
    std::int64_t prefix = 0;
    for (std::size_t k = 0; k < n; ++k) {
      prefix += r[(j + k) % n];
      ASSERT_GE(prefix, 0);
    }
  }
}

TEST(Systematic, ThreeGramLayout) {
  SystematicLayout layout(GramSet::full(2, 3), 2);
  const auto& s = layout.gram_set();
  EXPECT_EQ(s.label(layout.loop_arc()), "000");
  std::vector<std::string> info;
  for (auto a : layout.info_positions()) info.push_back(s.label(a));
  EXPECT_EQ(info, (std::vector<std::string>{"010", "101", "111"}));
  EXPECT_TRUE(layout.within_bound(20));
  EXPECT_EQ(layout.max_m(20), 2);
}

TEST(Systematic, ThreeGramProfiles) {
  auto s = GramSet::full(2, 3);
  SystematicLayout layout(s, 2);
  auto u0 = systematic_encode({0, 0, 0}, 20, layout);
  EXPECT_EQ(u0, (ProfileVector{14, 1, 0, 1, 1, 0, 1, 0}));
  EXPECT_EQ(to_digits(euler_word(u0, s)), "00000000000000001100");

  auto u = systematic_encode({0, 1, 0}, 20, layout);
  EXPECT_EQ(at(u, s, "000"), 11);
  EXPECT_EQ(at(u, s, "001"), 1);
  EXPECT_EQ(at(u, s, "011"), 2);
  EXPECT_EQ(at(u, s, "110"), 2);
  EXPECT_EQ(at(u, s, "100"), 1);
  EXPECT_EQ(systematic_restrict(u, layout), (std::vector<std::int64_t>{0, 1, 0}));

  auto u7 = systematic_encode({1, 1, 1}, 20, layout);
  EXPECT_EQ(u7, (ProfileVector{11, 1, 1, 1, 1, 1, 1, 1}));
  EXPECT_EQ(systematic_encode({1, 0, 0}, 20, layout), (ProfileVector{11, 2, 1, 1, 2, 0, 1, 0}));
}

TEST(Systematic, ExhaustiveValidity) {
  auto s = GramSet::full(2, 3);
  for (std::int64_t m : {2, 3}) {
    SystematicLayout layout(s, m);
    std::int64_t n = 4 * m + 12;
    for (std::int64_t a = 0; a < m; ++a)
      for (std::int64_t b = 0; b < m; ++b)
        for (std::int64_t c = 0; c < m; ++c) {
          std::vector<std::int64_t> v{a, b, c};
          auto u = systematic_encode(v, n, layout, true);
          ASSERT_TRUE(oracle::conserves_flow(labels(s), u.counts));
          ASSERT_EQ(u.total(), n - 2);
          for (auto arc : layout.cycle_arcs()) ASSERT_GE(u[arc], 1);
          ASSERT_GE(u[layout.loop_arc()], 0);
          ASSERT_EQ(systematic_restrict(u, layout), v);
          auto w = to_digits(euler_word(u, s));
          ASSERT_EQ(oracle::profile_over(w, labels(s)), u.counts);
        }
  }
}

TEST(Systematic, ShortLengthClaim) {
  // Every message of [m]^3 fits at n = 4m + 2 on [2]^3.
  auto s = GramSet::full(2, 3);
  for (std::int64_t m = 1; m <= 12; ++m) {
    SystematicLayout layout(s, m);
    for (std::int64_t a = 0; a < m; ++a)
      for (std::int64_t b = 0; b < m; ++b)
        for (std::int64_t c = 0; c < m; ++c)
          ASSERT_NO_THROW(systematic_encode({a, b, c}, 4 * m + 2, layout, true)) << m;
  }
}

TEST(Systematic, BoundAndOverride) {
  SystematicLayout layout(GramSet::full(2, 3), 39);
  EXPECT_FALSE(layout.within_bound(158));
  EXPECT_THROW(systematic_encode({0, 0, 0}, 158, layout), ValidationError);
  EXPECT_NO_THROW(systematic_encode({38, 38, 38}, 158, layout, true));
  EXPECT_THROW(systematic_encode({38, 38, 38}, 119, layout, true), ValidationError);
  EXPECT_THROW(systematic_encode({39, 0, 0}, 158, layout, true), ValidationError);
  EXPECT_THROW(systematic_encode({0, 0}, 158, layout, true), ValidationError);
}

TEST(Systematic, NeedsLoop) {
  EXPECT_THROW(SystematicLayout(GramSet::weight(2, 4, 1, 2, 3), 1), ValidationError);
}

TEST(Systematic, WeightRestrictedWithLoop) {
  auto s = GramSet::weight(2, 4, 1, 0, 3);
  SystematicLayout layout(s, 2);
  std::mt19937_64 rng(8);
  std::int64_t n = 200;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::int64_t> v;
    for (std::size_t i = 0; i < layout.info_positions().size(); ++i) v.push_back(static_cast<std::int64_t>(rng() % 2));
    auto u = systematic_encode(v, n, layout, true);
    ASSERT_TRUE(oracle::conserves_flow(labels(s), u.counts));
    auto w = to_digits(euler_word(u, s));
    ASSERT_EQ(static_cast<std::int64_t>(w.size()), n);
    ASSERT_EQ(oracle::profile_over(w, labels(s)), u.counts);
  }
}

TEST(EulerWord, RoundTripAllRealizableProfiles) {
  for (auto s : {GramSet::full(2, 2), GramSet::full(2, 3), GramSet::weight(2, 4, 1, 2, 3)}) {
    DeBruijnGraph g(s);
    for (std::int64_t n = s.ell(); n <= 10; ++n)
      for (const auto& u : brute_force_profiles(n, s, false)) {
        auto w = euler_word(u, g);
        ASSERT_EQ(static_cast<std::int64_t>(w.size()), n);
        ASSERT_EQ(profile(w, s), u);
      }
  }
  EXPECT_EQ(to_digits(euler_word(ProfileVector{3, 0, 0, 0}, GramSet::full(2, 2))), "0000");
}

TEST(Intersect, LengthOneFiftyEightCount) {
  auto book = grc_intersect(reference_code(), 158, GramSet::full(2, 3));
  EXPECT_EQ(book.codewords.size(), 11036u);
  EXPECT_EQ(book.distance, 3);
  EXPECT_EQ(book.provenance, Provenance::intersection);
  for (std::size_t i = 0; i < book.codewords.size(); i += 97) {
    const auto& u = book.codewords[i];
    ASSERT_TRUE(reference_code().contains(u));
    for (auto c : u.counts) ASSERT_GE(c, 1);
    ASSERT_EQ(profile(euler_word(u, book.gram_set), book.gram_set), u);
  }
}

TEST(Intersect, TableThreeRowOneMatchesFilter) {
  auto s = GramSet::full(2, 3);
  auto alphas = alphas_containing_ones(8, 1, 11);
  ASSERT_TRUE(alphas.has_value());
  VarshamovCode code(11, *alphas, 1);
  for (std::int64_t n : {2 + 12, 2 + 24}) {
    auto book = grc_intersect(code, n, s);
    std::size_t filtered = 0;
    for (const auto& u : enumerate_points(FlowSystem::for_length(s, n, FlowMode::E))) filtered += code.contains(u);
    EXPECT_EQ(book.codewords.size(), filtered);
    book.validate();
  }
}

TEST(Intersect, DifferentSyndromesAreDisjoint) {
  auto s = GramSet::full(2, 3);
  VarshamovCode zero(13, {1, 2, 3, 5, 8, 10, 11, 12}, 2, {0, 0});
  VarshamovCode other(13, {1, 2, 3, 5, 8, 10, 11, 12}, 2, {1, 0});
  auto a = grc_intersect(zero, 40, s), b = grc_intersect(other, 40, s);
  std::set<ProfileVector> sa(a.codewords.begin(), a.codewords.end());
  for (const auto& u : b.codewords) EXPECT_FALSE(sa.count(u));
  EXPECT_FALSE(b.codewords.empty());
}

TEST(Intersect, PairwiseDistance) {
  auto book = grc_intersect(VarshamovCode::standard(8, 2), 40, GramSet::full(2, 3));
  ASSERT_LE(book.codewords.size(), 2000u);
  ASSERT_GE(book.codewords.size(), 2u);
  book.validate();
  for (std::size_t i = 0; i < book.codewords.size(); ++i)
    for (std::size_t j = i + 1; j < book.codewords.size(); ++j)
      ASSERT_GE(oracle::asym(book.codewords[i].counts, book.codewords[j].counts), 3);
}

TEST(SystematicGrc, LengthOneFiftyEightSize) {
  VarshamovCode h1(5, {1, 2, 3}, 2);
  SystematicLayout layout(GramSet::full(2, 3), 39);
  auto book = systematic_grc(aecc_codewords(h1, 39), 158, layout, 3, true);
  EXPECT_EQ(book.codewords.size(), 2368u);
  book.validate(0);
  std::set<ProfileVector> distinct(book.codewords.begin(), book.codewords.end());
  EXPECT_EQ(distinct.size(), 2368u);
}

TEST(SystematicGrc, ZeroCode) {
  SystematicLayout layout(GramSet::full(2, 3), 1);
  auto book = systematic_grc({{0, 0, 0}}, 11, layout);
  ASSERT_EQ(book.codewords.size(), 1u);
  book.validate();
}

TEST(Codebook, ValidateRejectsBadEntries) {
  auto s = GramSet::full(2, 2);
  GrcCodebook wrong_sum{5, s, {ProfileVector{1, 1, 1, 0}}, 0, Provenance::external};
  EXPECT_THROW(wrong_sum.validate(), ValidationError);
  GrcCodebook unbalanced{5, s, {ProfileVector{1, 2, 0, 1}}, 0, Provenance::external};
  EXPECT_THROW(unbalanced.validate(), ValidationError);
  GrcCodebook close{5, s, {ProfileVector{4, 0, 0, 0}, ProfileVector{3, 0, 0, 1}}, 2, Provenance::external};
  EXPECT_THROW(close.validate(), ValidationError);
}

TEST(Rank, ThreeArcEncoding) {
  auto layout = rank_layout(2, 3);
  EXPECT_EQ(layout.m(), 3);
  auto u = rank_encode({0, 1, 2}, 14, layout);
  EXPECT_EQ(u, (ProfileVector{3, 1, 0, 2, 1, 1, 2, 2}));
  auto w = euler_word(u, layout.graph());
  EXPECT_EQ(to_digits(w), "00000110111100");
  auto r = rank_readout_decode(layout, profile(w, layout.gram_set()));
  EXPECT_EQ(r.perm, (std::vector<std::int64_t>{0, 1, 2}));
  EXPECT_FALSE(r.tie);
}

TEST(Rank, AllPermutationsAndTies) {
  auto layout = rank_layout(2, 3);
  std::vector<std::int64_t> perm{0, 1, 2};
  do {
    auto u = rank_encode(perm, 14, layout);
    EXPECT_EQ(rank_readout_decode(layout, u).perm, perm);
    // Scaling counts keeps the order.
    ProfileVector scaled = u;
    for (auto& c : scaled.counts) c *= 3;
    EXPECT_EQ(rank_readout_decode(layout, scaled).perm, perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  auto flat = rank_readout_decode(layout, ProfileVector{1, 1, 1, 1, 1, 1, 1, 1});
  EXPECT_TRUE(flat.tie);
  EXPECT_THROW(rank_encode({0, 0, 2}, 14, layout), ValidationError);
  EXPECT_THROW(rank_encode({0, 1, 2}, 6, layout), ValidationError);
}

TEST(Rank, SizeOneLayout) {
  auto layout = rank_layout(2, 2);
  EXPECT_EQ(layout.info_positions().size(), 1u);
  auto u = rank_encode({0}, 6, layout);
  EXPECT_EQ(u.total(), 5);
  EXPECT_EQ(rank_readout_decode(layout, u).perm, std::vector<std::int64_t>{0});
}

TEST(Decode, NoiselessIsIdentity) {
  auto book = grc_intersect(reference_code(), 60, GramSet::full(2, 3));
  for (std::size_t i = 0; i < book.codewords.size(); ++i) {
    auto w = euler_word(book.codewords[i], book.gram_set);
    auto r = decode_profile(book, full_profile(w, 3));
    ASSERT_EQ(r.index, i);
    ASSERT_EQ(r.distance, 0);
    ASSERT_FALSE(r.tie);
    ASSERT_EQ(r.word, w);
  }
}

TEST(Decode, ProjectionCountsForeignGrams) {
  auto s = GramSet::weight(2, 2, 1, 1, 1);
  auto p = project_to_set(ProfileVector{2, 1, 3, 4}, s);
  EXPECT_EQ(p.on_s, (ProfileVector{1, 3}));
  EXPECT_EQ(p.foreign_mass, 6);
  EXPECT_THROW(project_to_set(ProfileVector{1, 2}, s), ValidationError);
}

TEST(Decode, NoisyReadBeyondBudget) {
  // A codebook of two profiles at distance 1 cannot absorb the noisy read of 0110100.
  auto s = GramSet::full(2, 2);
  auto x = parse_digits("0110100", 2);
  ProfileVector px = profile(x, s);
  GrcCodebook book{7, s, {px, profile(parse_digits("0100110", 2), s)}, 0, Provenance::external};
  ChannelTrace tr{0, {{0, 1}}, {4}, {{1, 1}, {2, 3}}};
  auto observed = inject(x, 2, tr);
  EXPECT_EQ(observed, (ProfileVector{1, 2, 0, 2}));
  auto r = decode_profile(book, observed);
  EXPECT_GT(r.distance, 0);
  EXPECT_THROW(decode_profile(GrcCodebook{7, s, {}, 0, Provenance::external}, observed), ComputationError);
}

TEST(Provenance, RoundTrip) {
  for (auto p : {Provenance::intersection, Provenance::systematic, Provenance::external})
    EXPECT_EQ(parse_provenance(to_string(p)), p);
  EXPECT_THROW(parse_provenance("other"), ValidationError);
}
