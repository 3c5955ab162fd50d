#pragma once

// Varshamov asymmetric error-correcting codes {u : H u = beta (mod p)}.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "gramcode/errors.hpp"
#include "gramcode/graph.hpp"
#include "gramcode/grams.hpp"
#include "gramcode/lattice.hpp"
#include "gramcode/numeric.hpp"

namespace gramcode {

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = detail::pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Smallest prime strictly greater than max(N, d).
inline std::int64_t choose_prime(std::int64_t n_len, std::int64_t d) {
  require(n_len >= 1 && d >= 1, "N and d must be >= 1");
  auto p = static_cast<std::uint64_t>(std::max(n_len, d)) + 1;
  while (!is_prime(p)) ++p;
  return static_cast<std::int64_t>(p);
}

class VarshamovCode {
 public:
  VarshamovCode(std::int64_t p, std::vector<std::int64_t> alphas, int d, std::vector<std::int64_t> beta = {})
      : p_(p), alphas_(std::move(alphas)), d_(d), beta_(std::move(beta)) {
    require(p_ >= 2 && is_prime(static_cast<std::uint64_t>(p_)), "p must be prime");
    require(d_ >= 1, "d must be >= 1");
    require(!alphas_.empty(), "need at least one alpha");
    const auto n = static_cast<std::int64_t>(alphas_.size());
    require(p_ > n && p_ > d_, "p must exceed both N and d");
    if (beta_.empty()) beta_.assign(static_cast<std::size_t>(d_), 0);
    if (beta_.size() == 1 && d_ > 1) beta_.assign(static_cast<std::size_t>(d_), beta_[0]);
    require(beta_.size() == static_cast<std::size_t>(d_), "beta must have d entries");
    for (auto& b : beta_) b = mod_floor(b, p_);
    std::vector<std::int64_t> seen;
    for (auto a : alphas_) {
      require(a % p_ != 0, "alphas must be nonzero mod p");
      seen.push_back(mod_floor(a, p_));
    }
    std::sort(seen.begin(), seen.end());
    require(std::adjacent_find(seen.begin(), seen.end()) == seen.end(), "alphas must be distinct mod p");

    h_ = IntMatrix(static_cast<std::size_t>(d_), alphas_.size());
    for (std::size_t i = 0; i < alphas_.size(); ++i) {
      std::int64_t a = mod_floor(alphas_[i], p_), pw = 1;
      for (int j = 0; j < d_; ++j) {
        pw = static_cast<std::int64_t>(detail::mul_mod(static_cast<std::uint64_t>(pw),
                                                       static_cast<std::uint64_t>(a),
                                                       static_cast<std::uint64_t>(p_)));
        h_.at(static_cast<std::size_t>(j), i) = pw;
      }
    }
  }

  /// Default alphas 1..N and the smallest valid prime.
  static VarshamovCode standard(std::size_t n_len, int d, std::vector<std::int64_t> beta = {}) {
    std::int64_t p = choose_prime(static_cast<std::int64_t>(n_len), d);
    std::vector<std::int64_t> alphas(n_len);
    for (std::size_t i = 0; i < n_len; ++i) alphas[i] = static_cast<std::int64_t>(i) + 1;
    return VarshamovCode(p, std::move(alphas), d, std::move(beta));
  }

  std::int64_t p() const { return p_; }
  int d() const { return d_; }
  std::size_t length() const { return alphas_.size(); }
  const std::vector<std::int64_t>& alphas() const { return alphas_; }
  const std::vector<std::int64_t>& beta() const { return beta_; }
  const IntMatrix& h() const { return h_; }

  std::vector<std::int64_t> syndrome(const ProfileVector& u) const {
    require(u.size() == length(), "vector length does not match code length");
    std::vector<std::int64_t> s(static_cast<std::size_t>(d_));
    for (std::size_t j = 0; j < s.size(); ++j) {
      __int128 acc = 0;
      for (std::size_t i = 0; i < length(); ++i) acc += static_cast<__int128>(h_.at(j, i)) * u[i];
      s[j] = static_cast<std::int64_t>(((acc % p_) + p_) % p_);
    }
    return s;
  }

  bool contains(const ProfileVector& u) const { return syndrome(u) == beta_; }

  CongruenceBlock congruence() const { return CongruenceBlock{h_, p_, beta_}; }

 private:
  std::int64_t p_;
  std::vector<std::int64_t> alphas_;
  int d_;
  std::vector<std::int64_t> beta_;
  IntMatrix h_;
};

inline VarshamovCode build_code(std::int64_t p, std::vector<std::int64_t> alphas, int d,
                                std::vector<std::int64_t> beta = {}) {
  return VarshamovCode(p, std::move(alphas), d, std::move(beta));
}

/// |{u in [m]^N : H u = beta (mod p)}| via a DP over syndrome states (p^d of them).
inline BigInt code_size_ambient(const VarshamovCode& code, std::int64_t m) {
  require(m >= 1, "alphabet bound m must be >= 1");
  const auto p = code.p();
  const int d = code.d();
  BigInt states_big = pow_big(p, static_cast<unsigned>(d));
  require(states_big <= 50'000'000, "syndrome state space p^d too large");
  const auto states = static_cast<std::size_t>(states_big);

  auto encode = [&](const std::vector<std::int64_t>& s) {
    std::size_t idx = 0;
    for (int j = d; j-- > 0;) idx = idx * static_cast<std::size_t>(p) + static_cast<std::size_t>(s[static_cast<std::size_t>(j)]);
    return idx;
  };
  std::vector<BigInt> cur(states, BigInt(0)), next(states);
  cur[0] = 1;
  std::vector<std::int64_t> digits(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < code.length(); ++i) {
    // Each value of u_i shifts the syndrome by u_i * column i.
    std::vector<BigInt> mult(static_cast<std::size_t>(p), BigInt(0));
    for (std::int64_t v = 0; v < m; ++v) mult[static_cast<std::size_t>(v % p)] += 1;
    std::fill(next.begin(), next.end(), BigInt(0));
    for (std::size_t st = 0; st < states; ++st) {
      if (cur[st] == 0) continue;
      std::size_t rest = st;
      for (int j = 0; j < d; ++j) {
        digits[static_cast<std::size_t>(j)] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(p));
        rest /= static_cast<std::size_t>(p);
      }
      for (std::int64_t r = 0; r < p; ++r) {
        if (mult[static_cast<std::size_t>(r)] == 0) continue;
        std::vector<std::int64_t> s2(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j)
          s2[static_cast<std::size_t>(j)] =
              (digits[static_cast<std::size_t>(j)] + r * code.h().at(static_cast<std::size_t>(j), i)) % p;
        next[encode(s2)] += cur[st] * mult[static_cast<std::size_t>(r)];
      }
    }
    std::swap(cur, next);
  }
  return cur[encode(code.beta())];
}

struct DecodeResult {
  ProfileVector codeword;
  ProfileVector error;
  std::int64_t weight = 0;
};

/// Finds e >= 0 of least L1 weight (at most max_weight) with received + e in the code.
/// Two candidates at the same least weight raise an ambiguity error.
inline DecodeResult decode_bounded(const VarshamovCode& code, const ProfileVector& received,
                                   std::int64_t max_weight) {
  require(received.size() == code.length(), "received length does not match code length");
  require(max_weight >= 0, "max_weight must be >= 0");
  const std::size_t n = code.length();
  const auto p = code.p();
  auto base = code.syndrome(received);
  std::vector<std::int64_t> target(base.size());
  for (std::size_t j = 0; j < base.size(); ++j) target[j] = mod_floor(code.beta()[j] - base[j], p);

  for (std::int64_t w = 0; w <= max_weight; ++w) {
    std::optional<ProfileVector> found;
    ProfileVector e(n);
    std::vector<std::int64_t> syn(base.size(), 0);
    bool ambiguous = false;
    // Compositions of w into n nonnegative parts.
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
      if (ambiguous) return;
      if (i + 1 == n) {
        e[i] = left;
        bool ok = true;
        for (std::size_t j = 0; j < syn.size() && ok; ++j)
          ok = mod_floor(syn[j] + left * code.h().at(j, i), p) == target[j];
        if (ok) {
          if (found)
            ambiguous = true;
          else
            found = e;
        }
        e[i] = 0;
        return;
      }
      for (std::int64_t v = 0; v <= left; ++v) {
        e[i] = v;
        for (std::size_t j = 0; j < syn.size(); ++j) syn[j] += v * code.h().at(j, i);
        rec(i + 1, left - v);
        for (std::size_t j = 0; j < syn.size(); ++j) syn[j] -= v * code.h().at(j, i);
      }
      e[i] = 0;
    };
    rec(0, w);
    if (ambiguous)
      throw ComputationError("ambiguous decoding: two error patterns of weight " + std::to_string(w));
    if (found) {
      DecodeResult r;
      r.error = *found;
      r.weight = w;
      r.codeword = received;
      for (std::size_t i = 0; i < n; ++i) r.codeword[i] += r.error[i];
      return r;
    }
  }
  throw ComputationError("no codeword within asymmetric weight " + std::to_string(max_weight));
}

constexpr std::int64_t kInfiniteDistance = std::numeric_limits<std::int64_t>::max();

/// Minimum pairwise asymmetric distance; kInfiniteDistance for fewer than two codewords.
inline std::int64_t verify_min_distance(const std::vector<ProfileVector>& codebook) {
  std::int64_t best = kInfiniteDistance;
  for (std::size_t i = 0; i < codebook.size(); ++i)
    for (std::size_t j = i + 1; j < codebook.size(); ++j)
      best = std::min(best, asym_distance(codebook[i], codebook[j]));
  return best;
}

}  // namespace gramcode
