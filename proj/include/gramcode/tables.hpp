#pragma once

// Recomputation of the feasible rows of the Ehrhart-constant tables.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gramcode/aecc.hpp"
#include "gramcode/graph.hpp"
#include "gramcode/lattice.hpp"

namespace gramcode {

enum class RowStatus { pass, fail, skipped };

inline const char* to_string(RowStatus s) {
  switch (s) {
    case RowStatus::pass:
      return "PASS";
    case RowStatus::fail:
      return "FAIL";
    case RowStatus::skipped:
      return "SKIPPED";
  }
  return "";
}

struct TableRow {
  std::string key;  // e.g. "c(2,3)" or "d=1"
  std::string quantity;
  std::string expected;
  std::string computed;
  RowStatus status = RowStatus::skipped;
  std::string note;
};

struct TableOptions {
  bool deep = false;
  std::optional<std::string> row;  // restrict to one row key
  unsigned threads = 1;
};

namespace detail {

inline TableRow compare_rational(std::string key, std::string quantity, const Rational& expected,
                                 const Rational& computed) {
  TableRow r{std::move(key), std::move(quantity), to_string(expected), to_string(computed),
             expected == computed ? RowStatus::pass : RowStatus::fail, ""};
  return r;
}

inline TableRow skipped(std::string key, std::string quantity, std::string expected, std::string why) {
  return {std::move(key), std::move(quantity), std::move(expected), "-", RowStatus::skipped, std::move(why)};
}

inline bool wanted(const TableOptions& o, const std::string& key) { return !o.row || *o.row == key; }

/// Leading constant of the F-count of S, fitted at multiples of lambda_S.
inline TableRow ehrhart_row(const std::string& key, const GramSet& s, const Rational& expected,
                            const TableOptions& opts) {
  DeBruijnGraph g(s);
  int d = polytope_dimension(s);
  auto lambda = static_cast<std::int64_t>(cycle_length_lcm(g).lcm);
  try {
    auto fit = fit_quasipolynomial(s, d, lambda, FlowMode::F, 0, opts.threads);
    auto row = compare_rational(key, "c", expected, fit.poly.constant());
    row.note = "D=" + std::to_string(d) + " lambda=" + std::to_string(lambda);
    return row;
  } catch (const ComputationError& e) {
    return {key, "c", to_string(expected), "-", RowStatus::fail, e.what()};
  }
}

}  // namespace detail

/// Lexicographically first N distinct nonzero residues whose j-th power sums vanish mod p
/// for j = 1..d, so that the all-ones vector lies in C(H, 0).
inline std::optional<std::vector<std::int64_t>> alphas_containing_ones(std::size_t n_len, int d, std::int64_t p) {
  std::vector<std::int64_t> pick;
  std::vector<std::int64_t> sums(static_cast<std::size_t>(d), 0);
  std::function<bool(std::int64_t)> rec = [&](std::int64_t next) -> bool {
    if (pick.size() == n_len) {
      for (auto s : sums)
        if (s % p != 0) return false;
      return true;
    }
    for (std::int64_t a = next; a < p; ++a) {
      if (static_cast<std::size_t>(p - a) < n_len - pick.size()) break;
      std::int64_t pw = 1;
      for (int j = 0; j < d; ++j) {
        pw = pw * a % p;
        sums[static_cast<std::size_t>(j)] += pw;
      }
      pick.push_back(a);
      if (rec(a + 1)) return true;
      pick.pop_back();
      pw = 1;
      for (int j = 0; j < d; ++j) {
        pw = pw * a % p;
        sums[static_cast<std::size_t>(j)] -= pw;
      }
    }
    return false;
  };
  if (rec(1)) return pick;
  return std::nullopt;
}

/// Two-row code over p = 13 on the eight 3-grams of [2]^3.
inline VarshamovCode reference_code() { return VarshamovCode(13, {1, 2, 3, 5, 8, 10, 11, 12}, 2, {0, 0}); }

inline std::vector<TableRow> table_one(const TableOptions& opts = {}) {
  struct Entry {
    int q, ell;
    const char* value;
    bool feasible;
  };
  const std::vector<Entry> entries{
      {2, 2, "1/4", true},
      {3, 2, "1/8640", true},
      {4, 2, "1/45984153600", false},
      {5, 2, "37/84081093402584678400000", false},
      {2, 3, "1/288", true},
      {3, 3, "887/358450977137334681600000", false},
      {2, 4, "283/9754214400", false},
      {2, 5, "722299813/94556837526637331349504000000", false},
  };
  std::vector<TableRow> rows;
  for (const auto& e : entries) {
    std::string key = "c(" + std::to_string(e.q) + "," + std::to_string(e.ell) + ")";
    if (!detail::wanted(opts, key)) continue;
    if (!e.feasible) {
      rows.push_back(detail::skipped(key, "c", e.value, "lattice counts beyond desk scale"));
      continue;
    }
    rows.push_back(detail::ehrhart_row(key, GramSet::full(e.q, e.ell), parse_rational(e.value), opts));
  }
  return rows;
}

inline std::vector<TableRow> table_two(const TableOptions& opts = {}) {
  struct Entry {
    int ell, w1, w2;
    const char* lambda;
    const char* value;
    bool feasible;
  };
  const std::vector<Entry> entries{
      {4, 2, 3, "60", "1/360", true},
      {4, 2, 4, "--", "1/1440", false},
      {5, 2, 3, "120", "1/5184000", false},
      {5, 2, 4, "27720", "40337/34566497280000000", false},
      {5, 2, 5, "--", "3667/34566497280000000", false},
      {5, 3, 4, "420", "23/302400", false},
      {5, 3, 5, "--", "23/1512000", false},
      {6, 3, 4, "65520", "43919/754932300595200000", false},
      {6, 3, 5, "5354228880", "1106713336565579/739506679855711968646397952000000000", false},
      {6, 4, 5, "840", "1/518400", false},
  };
  std::vector<TableRow> rows;
  for (const auto& e : entries) {
    std::string key = "(" + std::to_string(e.ell) + "," + std::to_string(e.w1) + "," + std::to_string(e.w2) + ")";
    if (!detail::wanted(opts, key)) continue;
    GramSet s = GramSet::weight(2, e.ell, 1, e.w1, e.w2);
    DeBruijnGraph g(s);
    if (std::string(e.lambda) != "--") {
      auto lambda = cycle_length_lcm(g).lcm;
      rows.push_back(detail::compare_rational(key, "lambda", parse_rational(e.lambda), Rational(lambda)));
    }
    if (!e.feasible) {
      rows.push_back(detail::skipped(key, "c", e.value, "lattice counts beyond desk scale"));
      continue;
    }
    rows.push_back(detail::ehrhart_row(key, s, parse_rational(e.value), opts));
  }
  return rows;
}

inline std::vector<TableRow> table_three(const TableOptions& opts = {}) {
  struct Entry {
    int d;
    std::int64_t p;
    const char* lambda;
    const char* value;
  };
  const std::vector<Entry> entries{
      {1, 11, "132", "1/3168"},    {2, 13, "156", "1/48672"},   {3, 13, "156", "1/632736"},
      {4, 17, "204", "1/24054048"}, {5, 17, "204", "1/24054048"}, {6, 17, "204", "1/24054048"},
  };
  GramSet s = GramSet::full(2, 3);
  DeBruijnGraph g(s);
  auto lambda_s = cycle_length_lcm(g).lcm;
  const int dim = polytope_dimension(s);
  std::vector<TableRow> rows;
  for (const auto& e : entries) {
    std::string key = "d=" + std::to_string(e.d);
    if (!detail::wanted(opts, key)) continue;
    BigInt lambda_grc = lambda_s / boost::multiprecision::gcd(lambda_s, BigInt(e.p)) * e.p;
    rows.push_back(detail::compare_rational(key, "lambda_GRC", parse_rational(e.lambda), Rational(lambda_grc)));
    if (!opts.deep) {
      rows.push_back(detail::skipped(key, "c(H,S)", e.value, "long-running; rerun with --deep"));
      continue;
    }
    std::optional<VarshamovCode> code;
    if (e.d == 2 && e.p == 13) {
      code = reference_code();
    } else if (auto alphas = alphas_containing_ones(s.size(), e.d, e.p)) {
      code = VarshamovCode(e.p, *alphas, e.d, {});
    }
    if (!code) {
      rows.push_back(detail::skipped(key, "c(H,S)", e.value, "no alphas with 1 in C(H,0) for this p"));
      continue;
    }
    auto lam = static_cast<std::int64_t>(lambda_grc);
    auto cong = code->congruence();
    try {
      auto fit = fit_quasipolynomial(
          [&](std::int64_t total) { return count_points(FlowSystem(s, total, FlowMode::E, cong), opts.threads); },
          dim, lam, 0);
      auto row = detail::compare_rational(key, "c(H,S)", parse_rational(e.value), fit.poly.constant());
      std::string alist;
      for (auto a : code->alphas()) alist += (alist.empty() ? "" : ",") + std::to_string(a);
      row.note = "alphas=" + alist;
      rows.push_back(row);
    } catch (const ComputationError& ex) {
      rows.push_back({key, "c(H,S)", e.value, "-", RowStatus::fail, ex.what()});
    }
  }
  return rows;
}

}  // namespace gramcode
