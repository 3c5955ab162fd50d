#pragma once

// Text file formats: gram-set specs, profile files, codebooks, code specs, H matrices, traces.

#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gramcode/aecc.hpp"
#include "gramcode/channel.hpp"
#include "gramcode/codec.hpp"
#include "gramcode/errors.hpp"
#include "gramcode/grams.hpp"

namespace gramcode::io {

inline std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  return {std::istream_iterator<std::string>(in), std::istream_iterator<std::string>()};
}

inline std::int64_t parse_int(const std::string& tok, const std::string& what) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("expected an integer for " + what + ", got '" + tok + "'");
  }
}

inline std::vector<std::int64_t> parse_ints(const std::vector<std::string>& toks, std::size_t from,
                                            std::size_t to, const std::string& what) {
  std::vector<std::int64_t> out;
  for (std::size_t i = from; i < to; ++i) out.push_back(parse_int(toks[i], what));
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::vector<std::string> read_lines(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    auto toks = tokenize(line);
    if (!toks.empty() && toks[0][0] != '#') lines.push_back(line);
  }
  return lines;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << content;
}

// ---------------------------------------------------------------------------

/// Gram set from q, ell and the spec tokens `full`, `weight q* w1 w2`, or `explicit g1 g2 ...`.
inline GramSet parse_set_spec(int q, int ell, const std::vector<std::string>& spec) {
  require(!spec.empty(), "missing gram-set spec");
  const auto& kind = spec[0];
  if (kind == "full") {
    require(spec.size() == 1, "'full' takes no further tokens");
    return GramSet::full(q, ell);
  }
  if (kind == "weight") {
    require(spec.size() == 4, "'weight' needs q* w1 w2");
    auto v = parse_ints(spec, 1, 4, "weight spec");
    return GramSet::weight(q, ell, static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]));
  }
  if (kind == "explicit") {
    require(spec.size() >= 2, "'explicit' needs at least one gram");
    std::vector<Word> grams;
    for (std::size_t i = 1; i < spec.size(); ++i) {
      Word g = parse_word(spec[i], q);
      require(static_cast<int>(g.size()) == ell, "gram '" + spec[i] + "' does not have length ell");
      grams.push_back(std::move(g));
    }
    return GramSet::from_grams(q, ell, grams);
  }
  throw ValidationError("unknown gram-set kind '" + kind + "' (expected full, weight or explicit)");
}

/// Command-line form: `full q ell`, `weight q ell q* w1 w2`, `explicit q ell g1 g2 ...`.
inline GramSet parse_set_argument(const std::vector<std::string>& toks) {
  require(toks.size() >= 3, "gram set needs a kind, q and ell");
  int q = static_cast<int>(parse_int(toks[1], "q"));
  int ell = static_cast<int>(parse_int(toks[2], "ell"));
  std::vector<std::string> spec{toks[0]};
  spec.insert(spec.end(), toks.begin() + 3, toks.end());
  return parse_set_spec(q, ell, spec);
}

inline std::string set_argument_string(const GramSet& s) {
  auto spec = tokenize(s.spec_string());
  std::string out = spec[0] + " " + std::to_string(s.q()) + " " + std::to_string(s.ell());
  for (std::size_t i = 1; i < spec.size(); ++i) out += " " + spec[i];
  return out;
}

// ---------------------------------------------------------------------------

struct ProfileFile {
  GramSet gram_set;
  std::int64_t n;
  ProfileVector profile;
};

inline ProfileVector parse_profile_line(const std::string& line, std::size_t expected) {
  auto toks = tokenize(line);
  require(toks.size() == expected, "profile has " + std::to_string(toks.size()) + " entries, expected " +
                                       std::to_string(expected));
  auto v = parse_ints(toks, 0, toks.size(), "profile entry");
  for (auto c : v) require(c >= 0, "profile entries must be >= 0");
  return ProfileVector(std::move(v));
}

/// Header `q ell <spec> n`, then one line of counts.
inline ProfileFile parse_profile_file(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);)
    if (!tokenize(line).empty()) lines.push_back(line);
  require(lines.size() >= 2, "profile file needs a header and a counts line");
  auto h = tokenize(lines[0]);
  require(h.size() >= 4, "profile header must be `q ell s_spec n`");
  int q = static_cast<int>(parse_int(h[0], "q"));
  int ell = static_cast<int>(parse_int(h[1], "ell"));
  std::int64_t n = parse_int(h.back(), "n");
  GramSet s = parse_set_spec(q, ell, std::vector<std::string>(h.begin() + 2, h.end() - 1));
  auto p = parse_profile_line(lines[1], s.size());
  return {s, n, p};
}

inline std::string format_profile_file(const GramSet& s, std::int64_t n, const ProfileVector& u) {
  return std::to_string(s.q()) + " " + std::to_string(s.ell()) + " " + s.spec_string() + " " +
         std::to_string(n) + "\n" + to_string(u) + "\n";
}

/// Header `n q ell <spec> d provenance`, then one profile per line.
inline GrcCodebook parse_codebook(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);)
    if (!tokenize(line).empty()) lines.push_back(line);
  require(!lines.empty(), "empty codebook file");
  auto h = tokenize(lines[0]);
  require(h.size() >= 6, "codebook header must be `n q ell s_spec d provenance`");
  std::int64_t n = parse_int(h[0], "n");
  int q = static_cast<int>(parse_int(h[1], "q"));
  int ell = static_cast<int>(parse_int(h[2], "ell"));
  std::int64_t d = parse_int(h[h.size() - 2], "d");
  Provenance prov = parse_provenance(h.back());
  GramSet s = parse_set_spec(q, ell, std::vector<std::string>(h.begin() + 3, h.end() - 2));
  GrcCodebook book{n, s, {}, d, prov};
  for (std::size_t i = 1; i < lines.size(); ++i) book.codewords.push_back(parse_profile_line(lines[i], s.size()));
  return book;
}

inline std::string format_codebook(const GrcCodebook& book) {
  std::string out = std::to_string(book.n) + " " + std::to_string(book.gram_set.q()) + " " +
                    std::to_string(book.gram_set.ell()) + " " + book.gram_set.spec_string() + " " +
                    std::to_string(book.distance) + " " + to_string(book.provenance) + "\n";
  for (const auto& u : book.codewords) out += to_string(u) + "\n";
  return out;
}

// ---------------------------------------------------------------------------

/// Labelled lines `p`, `d`, `beta`, `alphas` (or `N` for default alphas 1..N).
inline VarshamovCode parse_code_spec(const std::string& text) {
  std::istringstream in(text);
  std::optional<std::int64_t> p, n_len;
  std::optional<int> d;
  std::vector<std::int64_t> beta, alphas;
  for (std::string line; std::getline(in, line);) {
    auto toks = tokenize(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    const auto& key = toks[0];
    if (key == "p") {
      require(toks.size() == 2, "`p` takes one value");
      p = parse_int(toks[1], "p");
    } else if (key == "d") {
      require(toks.size() == 2, "`d` takes one value");
      d = static_cast<int>(parse_int(toks[1], "d"));
    } else if (key == "N") {
      require(toks.size() == 2, "`N` takes one value");
      n_len = parse_int(toks[1], "N");
    } else if (key == "beta") {
      beta = parse_ints(toks, 1, toks.size(), "beta");
    } else if (key == "alphas") {
      alphas = parse_ints(toks, 1, toks.size(), "alphas");
    } else {
      throw ValidationError("unknown code-spec key '" + key + "'");
    }
  }
  require(d.has_value(), "code spec needs a `d` line");
  if (alphas.empty()) {
    require(n_len.has_value(), "code spec needs `alphas` or `N`");
    for (std::int64_t i = 1; i <= *n_len; ++i) alphas.push_back(i);
  }
  if (!p) p = choose_prime(static_cast<std::int64_t>(alphas.size()), *d);
  return VarshamovCode(*p, alphas, *d, beta);
}

inline std::string format_code_spec(const VarshamovCode& c) {
  std::string out = "p " + std::to_string(c.p()) + "\nd " + std::to_string(c.d()) + "\nbeta";
  for (auto b : c.beta()) out += " " + std::to_string(b);
  out += "\nalphas";
  for (auto a : c.alphas()) out += " " + std::to_string(a);
  return out + "\n";
}

/// Whitespace matrix, one row per line.
inline IntMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::vector<std::int64_t>> rows;
  for (std::string line; std::getline(in, line);) {
    auto toks = tokenize(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    rows.push_back(parse_ints(toks, 0, toks.size(), "matrix entry"));
  }
  require(!rows.empty(), "empty matrix");
  IntMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == m.cols, "ragged matrix rows");
    for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

// ---------------------------------------------------------------------------

inline nlohmann::json trace_to_json(const ChannelTrace& t) {
  nlohmann::json j;
  j["seed"] = t.seed;
  j["synthesis"] = nlohmann::json::array();
  for (const auto& e : t.synthesis) j["synthesis"].push_back({{"position", e.position}, {"symbol", e.symbol}});
  j["coverage"] = t.dropped;
  j["sequencing"] = nlohmann::json::array();
  for (const auto& e : t.sequencing) j["sequencing"].push_back({{"fragment", e.fragment}, {"gram", e.gram}});
  return j;
}

inline ChannelTrace trace_from_json(const nlohmann::json& j) {
  try {
    ChannelTrace t;
    t.seed = j.value("seed", std::uint64_t{0});
    for (const auto& e : j.at("synthesis"))
      t.synthesis.push_back({e.at("position").get<std::size_t>(), e.at("symbol").get<Symbol>()});
    t.dropped = j.at("coverage").get<std::vector<std::size_t>>();
    for (const auto& e : j.at("sequencing"))
      t.sequencing.push_back({e.at("fragment").get<std::size_t>(), e.at("gram").get<GramCode>()});
    return t;
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError(std::string("malformed trace: ") + ex.what());
  }
}

}  // namespace gramcode::io
