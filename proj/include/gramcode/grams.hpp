#pragma once

// Words, l-grams, gram sets and profile vectors.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gramcode/errors.hpp"

namespace gramcode {

using Symbol = std::uint8_t;
using GramCode = std::uint64_t;

constexpr int kMaxAlphabet = 9;

inline void check_alphabet(int q) {
  require(q >= 2 && q <= kMaxAlphabet,
          "alphabet size must be in [2, " + std::to_string(kMaxAlphabet) + "], got " +
              std::to_string(q));
}

/// A q-ary word. Symbols are stored as small integers in [0, q-1].
class Word {
 public:
  Word() = default;
  Word(std::vector<Symbol> symbols, int q) : symbols_(std::move(symbols)), q_(q) {
    check_alphabet(q);
    require(!symbols_.empty(), "a word must have length >= 1");
    for (auto s : symbols_)
      require(s < q, "symbol " + std::to_string(int(s)) + " out of range for q=" + std::to_string(q));
  }

  int q() const { return q_; }
  std::size_t size() const { return symbols_.size(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  std::span<const Symbol> symbols() const { return symbols_; }

  /// Window [pos, pos+len) as a new word.
  Word slice(std::size_t pos, std::size_t len) const {
    return Word(std::vector<Symbol>(symbols_.begin() + pos, symbols_.begin() + pos + len), q_);
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    return std::lexicographical_compare_three_way(a.symbols_.begin(), a.symbols_.end(),
                                                  b.symbols_.begin(), b.symbols_.end());
  }

 private:
  std::vector<Symbol> symbols_;
  int q_ = 2;
};

inline GramCode pow_q(int q, int e) {
  GramCode r = 1;
  for (int i = 0; i < e; ++i) r *= static_cast<GramCode>(q);
  return r;
}

/// Base-q value of a gram, i.e. its 0-based rank in lexicographic order.
inline GramCode lex_index(std::span<const Symbol> gram, int q, int ell) {
  require(static_cast<int>(gram.size()) == ell,
          "gram length " + std::to_string(gram.size()) + " != ell=" + std::to_string(ell));
  GramCode v = 0;
  for (auto s : gram) {
    require(s < q, "symbol " + std::to_string(int(s)) + " out of range for q=" + std::to_string(q));
    v = v * static_cast<GramCode>(q) + s;
  }
  return v;
}

inline GramCode lex_index(const Word& gram, int ell) { return lex_index(gram.symbols(), gram.q(), ell); }

inline Word gram_at(GramCode index, int q, int ell) {
  require(index < pow_q(q, ell), "gram index out of range");
  std::vector<Symbol> s(static_cast<std::size_t>(ell));
  for (int i = ell - 1; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = static_cast<Symbol>(index % static_cast<GramCode>(q));
    index /= static_cast<GramCode>(q);
  }
  return Word(std::move(s), q);
}

/// Number of symbols of x lying in [q - q_star, q - 1].
inline int q_weight(std::span<const Symbol> x, int q, int q_star) {
  require(q_star >= 1 && q_star <= q - 1,
          "q* must be in [1, q-1], got " + std::to_string(q_star));
  int threshold = q - q_star;
  return static_cast<int>(std::count_if(x.begin(), x.end(), [&](Symbol s) { return s >= threshold; }));
}
inline int q_weight(const Word& x, int q_star) { return q_weight(x.symbols(), x.q(), q_star); }

// ---------------------------------------------------------------------------
// Text rendering.

inline std::string to_digits(const Word& x) {
  std::string out;
  out.reserve(x.size());
  for (auto s : x.symbols()) out.push_back(static_cast<char>('0' + s));
  return out;
}

inline Word parse_digits(std::string_view text, int q) {
  require(!text.empty(), "empty word");
  std::vector<Symbol> s;
  s.reserve(text.size());
  for (char c : text) {
    require(c >= '0' && c <= '9', std::string("invalid digit '") + c + "'");
    s.push_back(static_cast<Symbol>(c - '0'));
  }
  return Word(std::move(s), q);
}

constexpr std::string_view kDnaAlphabet = "ATGC";

/// A,T,G,C <-> 0,1,2,3.
inline std::string dna_string(const Word& x) {
  require(x.q() == 4, "DNA rendering requires q=4");
  std::string out;
  for (auto s : x.symbols()) out.push_back(kDnaAlphabet[s]);
  return out;
}

inline Word parse_dna(std::string_view text) {
  require(!text.empty(), "empty DNA string");
  std::vector<Symbol> s;
  for (char c : text) {
    auto pos = kDnaAlphabet.find(c);
    require(pos != std::string_view::npos, std::string("invalid DNA character '") + c + "'");
    s.push_back(static_cast<Symbol>(pos));
  }
  return Word(std::move(s), 4);
}

/// Digit string, or ATGC text when q=4 and the text is alphabetic.
inline Word parse_word(std::string_view text, int q) {
  if (q == 4 && !text.empty() && (text[0] < '0' || text[0] > '9')) return parse_dna(text);
  return parse_digits(text, q);
}

// ---------------------------------------------------------------------------

/// An ordered set S of distinct l-grams over [q], stored as lexicographic codes.
class GramSet {
 public:
  enum class Kind { full, weight, explicit_list };

  /// All q^ell grams.
  static GramSet full(int q, int ell) {
    check_shape(q, ell);
    GramSet s(q, ell);
    s.kind_ = Kind::full;
    GramCode total = pow_q(q, ell);
    s.codes_.resize(total);
    for (GramCode i = 0; i < total; ++i) s.codes_[i] = i;
    return s;
  }

  /// Grams whose q*-weight lies in [w1, w2].
  static GramSet weight(int q, int ell, int q_star, int w1, int w2) {
    check_shape(q, ell);
    require(q_star >= 1 && q_star <= q - 1, "q* must be in [1, q-1]");
    require(0 <= w1 && w1 <= w2 && w2 <= ell, "weights must satisfy 0 <= w1 <= w2 <= ell");
    GramSet s(q, ell);
    s.kind_ = Kind::weight;
    s.q_star_ = q_star;
    s.w1_ = w1;
    s.w2_ = w2;
    GramCode total = pow_q(q, ell);
    for (GramCode i = 0; i < total; ++i) {
      Word g = gram_at(i, q, ell);
      int w = q_weight(g, q_star);
      if (w >= w1 && w <= w2) s.codes_.push_back(i);
    }
    require(!s.codes_.empty(), "weight-restricted gram set is empty");
    return s;
  }

  /// Arbitrary list; sorted and checked for duplicates.
  static GramSet from_grams(int q, int ell, const std::vector<Word>& grams) {
    check_shape(q, ell);
    require(!grams.empty(), "gram set must be nonempty");
    GramSet s(q, ell);
    s.kind_ = Kind::explicit_list;
    for (const auto& g : grams) {
      require(g.q() == q, "gram alphabet mismatch");
      s.codes_.push_back(lex_index(g, ell));
    }
    std::sort(s.codes_.begin(), s.codes_.end());
    require(std::adjacent_find(s.codes_.begin(), s.codes_.end()) == s.codes_.end(),
            "duplicate gram in explicit set");
    return s;
  }

  static GramSet from_codes(int q, int ell, std::vector<GramCode> codes) {
    check_shape(q, ell);
    std::vector<Word> grams;
    for (auto c : codes) grams.push_back(gram_at(c, q, ell));
    return from_grams(q, ell, grams);
  }

  int q() const { return q_; }
  int ell() const { return ell_; }
  std::size_t size() const { return codes_.size(); }
  Kind kind() const { return kind_; }
  int q_star() const { return q_star_; }
  int w1() const { return w1_; }
  int w2() const { return w2_; }

  GramCode code(std::size_t i) const { return codes_[i]; }
  const std::vector<GramCode>& codes() const { return codes_; }
  Word gram(std::size_t i) const { return gram_at(codes_[i], q_, ell_); }
  std::string label(std::size_t i) const { return to_digits(gram(i)); }

  std::optional<std::size_t> index_of(GramCode c) const {
    auto it = std::lower_bound(codes_.begin(), codes_.end(), c);
    if (it == codes_.end() || *it != c) return std::nullopt;
    return static_cast<std::size_t>(it - codes_.begin());
  }
  bool contains(GramCode c) const { return index_of(c).has_value(); }

  /// Whitespace-separated description: `full`, `weight q* w1 w2`, or `explicit g1 g2 ...`.
  std::string spec_string() const {
    switch (kind_) {
      case Kind::full:
        return "full";
      case Kind::weight:
        return "weight " + std::to_string(q_star_) + " " + std::to_string(w1_) + " " +
               std::to_string(w2_);
      case Kind::explicit_list: {
        std::string out = "explicit";
        for (std::size_t i = 0; i < size(); ++i) out += " " + label(i);
        return out;
      }
    }
    return {};
  }

  friend bool operator==(const GramSet& a, const GramSet& b) {
    return a.q_ == b.q_ && a.ell_ == b.ell_ && a.codes_ == b.codes_;
  }

 private:
  GramSet(int q, int ell) : q_(q), ell_(ell) {}

  static void check_shape(int q, int ell) {
    check_alphabet(q);
    require(ell >= 2, "gram length ell must be >= 2");
    require(pow_q(q, ell) <= (GramCode{1} << 24), "q^ell too large");
  }

  int q_;
  int ell_;
  Kind kind_ = Kind::explicit_list;
  int q_star_ = 0, w1_ = 0, w2_ = 0;
  std::vector<GramCode> codes_;
};

inline GramSet build_weight_set(int q, int ell, int q_star, int w1, int w2) {
  return GramSet::weight(q, ell, q_star, w1, w2);
}

// ---------------------------------------------------------------------------

/// Occurrence counts indexed positionally by a gram set.
struct ProfileVector {
  std::vector<std::int64_t> counts;

  ProfileVector() = default;
  explicit ProfileVector(std::size_t n) : counts(n, 0) {}
  ProfileVector(std::initializer_list<std::int64_t> init) : counts(init) {}
  explicit ProfileVector(std::vector<std::int64_t> c) : counts(std::move(c)) {}

  std::size_t size() const { return counts.size(); }
  std::int64_t& operator[](std::size_t i) { return counts[i]; }
  std::int64_t operator[](std::size_t i) const { return counts[i]; }
  std::int64_t total() const {
    std::int64_t s = 0;
    for (auto c : counts) s += c;
    return s;
  }

  friend bool operator==(const ProfileVector&, const ProfileVector&) = default;
  friend auto operator<=>(const ProfileVector&, const ProfileVector&) = default;
};

inline std::string to_string(const ProfileVector& u) {
  std::string out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(u[i]);
  }
  return out;
}

/// Profile of x over S. Every l-gram of x must be in S.
inline ProfileVector profile(const Word& x, const GramSet& s) {
  const int ell = s.ell();
  require(x.q() == s.q(), "word alphabet does not match gram set");
  require(static_cast<int>(x.size()) >= ell,
          "word of length " + std::to_string(x.size()) + " is shorter than ell=" + std::to_string(ell));
  ProfileVector u(s.size());
  for (std::size_t pos = 0; pos + static_cast<std::size_t>(ell) <= x.size(); ++pos) {
    GramCode c = lex_index(x.symbols().subspan(pos, static_cast<std::size_t>(ell)), x.q(), ell);
    auto idx = s.index_of(c);
    if (!idx)
      throw ValidationError("gram " + to_digits(gram_at(c, x.q(), ell)) + " at position " +
                            std::to_string(pos) + " is not in the gram set");
    ++u[*idx];
  }
  return u;
}

struct LenientProfile {
  ProfileVector profile;
  std::int64_t out_of_set = 0;
};

/// Like profile(), but grams outside S are counted separately instead of rejected.
inline LenientProfile profile_lenient(const Word& x, const GramSet& s) {
  const int ell = s.ell();
  require(x.q() == s.q(), "word alphabet does not match gram set");
  require(static_cast<int>(x.size()) >= ell, "word shorter than ell");
  LenientProfile r{ProfileVector(s.size()), 0};
  for (std::size_t pos = 0; pos + static_cast<std::size_t>(ell) <= x.size(); ++pos) {
    GramCode c = lex_index(x.symbols().subspan(pos, static_cast<std::size_t>(ell)), x.q(), ell);
    if (auto idx = s.index_of(c))
      ++r.profile[*idx];
    else
      ++r.out_of_set;
  }
  return r;
}

/// Profile over all of [q]^ell (length q^ell).
inline ProfileVector full_profile(const Word& x, int ell) {
  require(static_cast<int>(x.size()) >= ell, "word shorter than ell");
  ProfileVector u(pow_q(x.q(), ell));
  for (std::size_t pos = 0; pos + static_cast<std::size_t>(ell) <= x.size(); ++pos)
    ++u[lex_index(x.symbols().subspan(pos, static_cast<std::size_t>(ell)), x.q(), ell)];
  return u;
}

/// Sum of positive parts of u - v.
inline std::int64_t one_sided_excess(const ProfileVector& u, const ProfileVector& v) {
  require(u.size() == v.size(), "profile length mismatch");
  std::int64_t d = 0;
  for (std::size_t i = 0; i < u.size(); ++i) d += std::max<std::int64_t>(u[i] - v[i], 0);
  return d;
}

inline std::int64_t asym_distance(const ProfileVector& u, const ProfileVector& v) {
  return std::max(one_sided_excess(u, v), one_sided_excess(v, u));
}

inline std::int64_t l1_distance(const ProfileVector& u, const ProfileVector& v) {
  require(u.size() == v.size(), "profile length mismatch");
  std::int64_t d = 0;
  for (std::size_t i = 0; i < u.size(); ++i) d += u[i] > v[i] ? u[i] - v[i] : v[i] - u[i];
  return d;
}

inline std::int64_t gram_distance(const Word& x, const Word& y, const GramSet& s) {
  return asym_distance(profile(x, s), profile(y, s));
}

}  // namespace gramcode
