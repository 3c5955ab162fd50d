#include <gtest/gtest.h>

#include "gramcode/io.hpp"
#include "gramcode/tables.hpp"

using namespace gramcode;

TEST(SetArgument, RoundTrip) {
  for (auto toks : std::vector<std::vector<std::string>>{
           {"full", "2", "3"}, {"weight", "2", "4", "1", "2", "3"}, {"explicit", "4", "2", "00", "01", "10", "12"}}) {
    auto s = io::parse_set_argument(toks);
    auto again = io::parse_set_argument(io::tokenize(io::set_argument_string(s)));
    EXPECT_EQ(again.codes(), s.codes());
    EXPECT_EQ(again.spec_string(), s.spec_string());
  }
  EXPECT_EQ(io::parse_set_argument({"explicit", "4", "2", "AT", "GC"}).size(), 2u);
}

TEST(SetArgument, Errors) {
  EXPECT_THROW(io::parse_set_argument({"full", "2"}), ValidationError);
  EXPECT_THROW(io::parse_set_argument({"full", "2", "3", "x"}), ValidationError);
  EXPECT_THROW(io::parse_set_argument({"weight", "2", "4", "1", "2"}), ValidationError);
  EXPECT_THROW(io::parse_set_argument({"explicit", "2", "2", "011"}), ValidationError);
  EXPECT_THROW(io::parse_set_argument({"other", "2", "2"}), ValidationError);
  EXPECT_THROW(io::parse_set_argument({"full", "two", "2"}), ValidationError);
}

TEST(ProfileFile, RoundTrip) {
  auto s = GramSet::weight(2, 4, 1, 2, 3);
  ProfileVector u{1, 1, 2, 0, 1, 1, 1, 1, 1, 0};
  auto text = io::format_profile_file(s, 12, u);
  auto f = io::parse_profile_file(text);
  EXPECT_EQ(f.gram_set.codes(), s.codes());
  EXPECT_EQ(f.n, 12);
  EXPECT_EQ(f.profile, u);
  EXPECT_EQ(io::format_profile_file(f.gram_set, f.n, f.profile), text);
}

TEST(ProfileFile, Errors) {
  EXPECT_THROW(io::parse_profile_file("2 2 full 5\n1 2 3\n"), ValidationError);
  EXPECT_THROW(io::parse_profile_file("2 2 full 5\n1 2 -1 0\n"), ValidationError);
  EXPECT_THROW(io::parse_profile_file("2 2 full 5\n"), ValidationError);
  EXPECT_THROW(io::parse_profile_file("2 2 full 5\n1 2 x 0\n"), ValidationError);
}

TEST(Codebook, RoundTrip) {
  auto book = grc_intersect(reference_code(), 40, GramSet::full(2, 3));
  auto text = io::format_codebook(book);
  auto back = io::parse_codebook(text);
  EXPECT_EQ(back.n, 40);
  EXPECT_EQ(back.distance, 3);
  EXPECT_EQ(back.provenance, Provenance::intersection);
  EXPECT_EQ(back.codewords, book.codewords);
  EXPECT_EQ(io::format_codebook(back), text);
}

TEST(Codebook, Errors) {
  EXPECT_THROW(io::parse_codebook(""), ValidationError);
  EXPECT_THROW(io::parse_codebook("5 2 2 full 1\n"), ValidationError);
  EXPECT_THROW(io::parse_codebook("5 2 2 full 1 magic\n"), ValidationError);
  EXPECT_THROW(io::parse_codebook("5 2 2 full 1 external\n1 1 1\n"), ValidationError);
}

TEST(CodeSpec, RoundTrip) {
  auto c = reference_code();
  auto back = io::parse_code_spec(io::format_code_spec(c));
  EXPECT_EQ(back.p(), c.p());
  EXPECT_EQ(back.d(), c.d());
  EXPECT_EQ(back.alphas(), c.alphas());
  EXPECT_EQ(back.beta(), c.beta());
}

TEST(CodeSpec, Defaults) {
  auto c = io::parse_code_spec("# default alphas\nd 2\nN 8\n");
  EXPECT_EQ(c.p(), 11);
  EXPECT_EQ(c.alphas(), (std::vector<std::int64_t>{1, 2, 3, 4, 5, 6, 7, 8}));
  EXPECT_EQ(c.beta(), (std::vector<std::int64_t>{0, 0}));
}

TEST(CodeSpec, Errors) {
  EXPECT_THROW(io::parse_code_spec("N 8\n"), ValidationError);
  EXPECT_THROW(io::parse_code_spec("d 2\n"), ValidationError);
  EXPECT_THROW(io::parse_code_spec("d 2\nN 8\nq 3\n"), ValidationError);
  EXPECT_THROW(io::parse_code_spec("p 4\nd 1\nalphas 1 2\n"), ValidationError);
}

TEST(Matrix, Parse) {
  auto m = io::parse_matrix("1 2 3\n# comment\n4 5 6\n");
  EXPECT_EQ(m.rows, 2u);
  EXPECT_EQ(m.cols, 3u);
  EXPECT_EQ(m.at(1, 2), 6);
  EXPECT_THROW(io::parse_matrix("1 2\n3\n"), ValidationError);
  EXPECT_THROW(io::parse_matrix(""), ValidationError);
}

TEST(Trace, JsonRoundTrip) {
  ChannelTrace t{42, {{0, 1}, {5, 0}}, {4, 2}, {{1, 1}, {2, 3}}};
  auto j = io::trace_to_json(t);
  EXPECT_EQ(io::trace_from_json(j), t);
  EXPECT_EQ(io::trace_from_json(nlohmann::json::parse(j.dump())), t);
  EXPECT_THROW(io::trace_from_json(nlohmann::json::parse(R"({"synthesis": []})")), ValidationError);
  EXPECT_THROW(io::trace_from_json(nlohmann::json::parse(R"({"synthesis": [{"position": "a", "symbol": 1}],
                                                              "coverage": [], "sequencing": []})")),
               ValidationError);
}
