#pragma once

// Integer points of the flow polytopes F(n;S) and E(n;S), optionally cut by a
// congruence H u = beta (mod p), plus exact quasipolynomial fitting.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <thread>
#include <vector>

#include "gramcode/errors.hpp"
#include "gramcode/graph.hpp"
#include "gramcode/grams.hpp"
#include "gramcode/numeric.hpp"

namespace gramcode {

enum class FlowMode { F, E };

inline const char* to_string(FlowMode m) { return m == FlowMode::F ? "F" : "E"; }

struct CongruenceBlock {
  IntMatrix h;  // rows x |S|
  std::int64_t p = 2;
  std::vector<std::int64_t> beta;

  bool holds(const ProfileVector& u) const {
    for (std::size_t r = 0; r < h.rows; ++r) {
      __int128 acc = 0;
      for (std::size_t i = 0; i < h.cols; ++i) acc += static_cast<__int128>(h.at(r, i)) * u[i];
      auto lhs = static_cast<std::int64_t>(((acc % p) + p) % p);
      if (lhs != mod_floor(beta[r], p)) return false;
    }
    return true;
  }
};

/// A(S) u = rhs, u >= 0 (F) or u >= 1 (E). rhs defaults to (n-l+1) b with b = (1,0,...,0).
struct FlowSystem {
  DeBruijnGraph graph;
  std::vector<std::int64_t> rhs;
  FlowMode mode = FlowMode::F;
  std::optional<CongruenceBlock> congruence;

  FlowSystem(const GramSet& s, std::int64_t total, FlowMode m,
             std::optional<CongruenceBlock> cong = std::nullopt)
      : graph(s), rhs(graph.node_count() + 1, 0), mode(m), congruence(std::move(cong)) {
    require(total >= 0, "total n-l+1 must be >= 0");
    rhs[0] = total;
    check_congruence();
  }

  static FlowSystem for_length(const GramSet& s, std::int64_t n, FlowMode m,
                               std::optional<CongruenceBlock> cong = std::nullopt) {
    require(n >= s.ell() - 1, "n must be >= ell - 1");
    return FlowSystem(s, n - s.ell() + 1, m, std::move(cong));
  }

  std::int64_t total() const { return rhs[0]; }
  std::size_t variables() const { return graph.arc_count(); }

  IntMatrix matrix() const {
    IntMatrix b = incidence(graph);
    IntMatrix a(b.rows + 1, b.cols);
    for (std::size_t j = 0; j < b.cols; ++j) a.at(0, j) = 1;
    for (std::size_t i = 0; i < b.rows; ++i)
      for (std::size_t j = 0; j < b.cols; ++j) a.at(i + 1, j) = b.at(i, j);
    return a;
  }

  bool satisfies(const ProfileVector& u) const {
    if (u.size() != variables()) return false;
    const std::int64_t floor_value = mode == FlowMode::E ? 1 : 0;
    for (auto c : u.counts)
      if (c < floor_value) return false;
    IntMatrix a = matrix();
    for (std::size_t i = 0; i < a.rows; ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < a.cols; ++j) s += a.at(i, j) * u[j];
      if (s != rhs[i]) return false;
    }
    return !congruence || congruence->holds(u);
  }

 private:
  void check_congruence() const {
    if (!congruence) return;
    require(congruence->p >= 2, "congruence modulus must be >= 2");
    require(congruence->h.cols == variables(), "congruence matrix must have |S| columns");
    require(congruence->beta.size() == congruence->h.rows, "beta length must equal rows of H");
  }
};

namespace detail {

/// The flow system after exact row reduction: pivots expressed through free variables as
/// den_k * v_k = R_k - sum_j C_kj f_j, in the shifted variables u' = u - offset.
struct ReducedSystem {
  bool feasible = true;
  std::int64_t offset = 0;
  std::int64_t budget = 0;  // sum of u'
  std::size_t n = 0;
  std::vector<std::size_t> free_cols, pivot_cols;
  std::vector<std::int64_t> den, r;
  std::vector<std::vector<std::int64_t>> c;        // [pivot][free]
  std::vector<std::vector<std::int64_t>> max_neg;  // [pivot][free index j] = max(0, max_{j'>=j} -C)
};

inline std::int64_t to_i64(const BigInt& v) {
  require(v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max(),
          "coefficient exceeds 64-bit range");
  return static_cast<std::int64_t>(v);
}

inline ReducedSystem reduce(const FlowSystem& sys) {
  ReducedSystem red;
  const IntMatrix a = sys.matrix();
  const std::size_t rows = a.rows, n = a.cols;
  red.n = n;
  red.offset = sys.mode == FlowMode::E ? 1 : 0;

  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    std::int64_t shifted = sys.rhs[i];
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = a.at(i, j);
      shifted -= a.at(i, j) * red.offset;
    }
    m[i][n] = shifted;
  }
  red.budget = sys.rhs[0] - static_cast<std::int64_t>(n) * red.offset;
  if (red.budget < 0) {
    red.feasible = false;
    return red;
  }

  // RREF, pivoting on the rightmost columns first.
  std::size_t row = 0;
  std::vector<std::size_t> pivot_row_of_col(n, rows);
  for (std::size_t cc = n; cc-- > 0 && row < rows;) {
    std::size_t piv = row;
    while (piv < rows && m[piv][cc] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[row]);
    Rational inv = 1 / m[row][cc];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || m[i][cc] == 0) continue;
      Rational f = m[i][cc];
      for (std::size_t j = 0; j <= n; ++j) m[i][j] -= f * m[row][j];
    }
    pivot_row_of_col[cc] = row;
    ++row;
  }
  for (std::size_t i = row; i < rows; ++i)
    if (m[i][n] != 0) {
      red.feasible = false;
      return red;
    }

  for (std::size_t j = 0; j < n; ++j) {
    if (pivot_row_of_col[j] == rows)
      red.free_cols.push_back(j);
    else
      red.pivot_cols.push_back(j);
  }
  for (auto pc : red.pivot_cols) {
    const auto& rr = m[pivot_row_of_col[pc]];
    BigInt l = 1;
    auto absorb = [&](const Rational& x) {
      BigInt d = boost::multiprecision::denominator(x);
      l = l / boost::multiprecision::gcd(l, d) * d;
    };
    absorb(rr[n]);
    for (auto fc : red.free_cols) absorb(rr[fc]);
    red.den.push_back(to_i64(l));
    red.r.push_back(to_i64(boost::multiprecision::numerator(Rational(rr[n] * l))));
    std::vector<std::int64_t> row_c;
    for (auto fc : red.free_cols) row_c.push_back(to_i64(boost::multiprecision::numerator(Rational(rr[fc] * l))));
    red.c.push_back(std::move(row_c));
  }
  const std::size_t fcount = red.free_cols.size();
  for (auto& row_c : red.c) {
    std::vector<std::int64_t> mn(fcount + 1, 0);
    for (std::size_t j = fcount; j-- > 0;) mn[j] = std::max(mn[j + 1], -row_c[j]);
    red.max_neg.push_back(std::move(mn));
  }
  return red;
}

/// Depth-first walk over all but the last free variable; the last one is solved
/// as an arithmetic progression intersected with interval bounds.
class PointWalker {
 public:
  using Emit = std::function<void(const ProfileVector&)>;

  PointWalker(const FlowSystem& sys, const ReducedSystem& red) : sys_(sys), red_(red) {
    vals_.assign(red.free_cols.size(), 0);
    acc_ = red.r;
  }

  /// Restrict the first free variable to values v with v % stride == phase.
  void set_partition(std::int64_t stride, std::int64_t phase) {
    stride_ = stride;
    phase_ = phase;
  }

  std::uint64_t count() {
    emit_ = nullptr;
    total_ = 0;
    run();
    return total_;
  }

  void enumerate(const Emit& emit) {
    emit_ = &emit;
    total_ = 0;
    run();
  }

 private:
  void run() {
    if (!red_.feasible) return;
    if (red_.free_cols.empty()) {
      if (phase_ != 0) return;
      for (std::size_t k = 0; k < red_.den.size(); ++k)
        if (acc_[k] < 0 || acc_[k] % red_.den[k] != 0) return;
      std::vector<std::int64_t> u(red_.n);
      for (std::size_t k = 0; k < red_.pivot_cols.size(); ++k)
        u[red_.pivot_cols[k]] = acc_[k] / red_.den[k] + red_.offset;
      ProfileVector pv(std::move(u));
      if (sys_.congruence && !sys_.congruence->holds(pv)) return;
      ++total_;
      if (emit_) (*emit_)(pv);
      return;
    }
    descend(0, red_.budget);
  }

  void descend(std::size_t j, std::int64_t rem) {
    const std::size_t last = red_.free_cols.size() - 1;
    if (j == last) {
      leaf(rem);
      return;
    }
    const std::size_t pk = acc_.size();
    std::vector<std::int64_t> saved = acc_;
    std::int64_t start = 0, step = 1;
    if (j == 0 && stride_ > 1) {
      start = phase_;
      step = stride_;
    }
    for (std::int64_t v = start; v <= rem; v += step) {
      for (std::size_t k = 0; k < pk; ++k) acc_[k] = saved[k] - red_.c[k][j] * v;
      vals_[j] = v;
      std::int64_t rem_after = rem - v;
      bool bad = false, hopeless = false;
      for (std::size_t k = 0; k < pk; ++k) {
        if (acc_[k] + rem_after * red_.max_neg[k][j + 1] < 0) {
          bad = true;
          // Bound is linear in v with slope -(C_kj + max_neg); nonincreasing means no recovery.
          if (red_.c[k][j] + red_.max_neg[k][j + 1] >= 0) hopeless = true;
        }
      }
      if (hopeless) break;
      if (bad) continue;
      descend(j + 1, rem_after);
    }
    acc_ = std::move(saved);
    vals_[j] = 0;
  }

  std::int64_t pivot_value(std::size_t k, std::int64_t f) const {
    return (acc_[k] - red_.c[k].back() * f) / red_.den[k];
  }

  void fill(std::vector<std::int64_t>& u, std::int64_t f) const {
    const std::size_t last = red_.free_cols.size() - 1;
    for (std::size_t j = 0; j < last; ++j) u[red_.free_cols[j]] = vals_[j] + red_.offset;
    u[red_.free_cols[last]] = f + red_.offset;
    for (std::size_t k = 0; k < red_.pivot_cols.size(); ++k)
      u[red_.pivot_cols[k]] = pivot_value(k, f) + red_.offset;
  }

  void leaf(std::int64_t rem) {
    std::int64_t lo = 0, hi = rem;
    Congruence cong{0, 1};
    if (red_.free_cols.size() == 1 && stride_ > 1) cong = {phase_, stride_};
    for (std::size_t k = 0; k < acc_.size(); ++k) {
      std::int64_t c = red_.c[k].back(), a = acc_[k];
      if (c > 0)
        hi = std::min(hi, floor_div(a, c));
      else if (c < 0)
        lo = std::max(lo, ceil_div(-a, -c));
      else if (a < 0)
        return;
      if (red_.den[k] > 1) {
        cong = combine(cong, solve_linear_congruence(c, a, red_.den[k]));
        if (cong.empty()) return;
      }
      if (lo > hi) return;
    }
    std::int64_t cnt = count_in_range(lo, hi, cong);
    if (cnt == 0) return;
    std::int64_t f0 = first_in_range(lo, cong);
    std::int64_t step = cong.modulus;

    if (!sys_.congruence) {
      if (!emit_) {
        total_ += static_cast<std::uint64_t>(cnt);
        return;
      }
      std::vector<std::int64_t> u(red_.n);
      for (std::int64_t s = 0; s < cnt; ++s) {
        fill(u, f0 + s * step);
        ++total_;
        (*emit_)(ProfileVector(u));
      }
      return;
    }

    // H u(f0 + s*step) is affine in s; each row pins s to one residue class mod p (or all/none).
    const CongruenceBlock& cb = *sys_.congruence;
    std::vector<std::int64_t> u0(red_.n), u1(red_.n);
    fill(u0, f0);
    fill(u1, f0 + step);
    Congruence scong{0, 1};
    for (std::size_t r = 0; r < cb.h.rows; ++r) {
      __int128 h0 = 0, h1 = 0;
      for (std::size_t i = 0; i < red_.n; ++i) {
        h0 += static_cast<__int128>(cb.h.at(r, i)) * u0[i];
        h1 += static_cast<__int128>(cb.h.at(r, i)) * (u1[i] - u0[i]);
      }
      auto h0m = static_cast<std::int64_t>(((h0 % cb.p) + cb.p) % cb.p);
      auto h1m = static_cast<std::int64_t>(((h1 % cb.p) + cb.p) % cb.p);
      scong = combine(scong, solve_linear_congruence(h1m, cb.beta[r] - h0m, cb.p));
      if (scong.empty()) return;
    }
    if (!emit_) {
      total_ += static_cast<std::uint64_t>(count_in_range(0, cnt - 1, scong));
      return;
    }
    std::vector<std::int64_t> u(red_.n);
    for (std::int64_t s = first_in_range(0, scong); s < cnt; s += scong.modulus) {
      fill(u, f0 + s * step);
      ++total_;
      (*emit_)(ProfileVector(u));
    }
  }

  const FlowSystem& sys_;
  const ReducedSystem& red_;
  std::vector<std::int64_t> vals_, acc_;
  std::int64_t stride_ = 1, phase_ = 0;
  const Emit* emit_ = nullptr;
  std::uint64_t total_ = 0;
};

}  // namespace detail

/// Number of integer points. threads > 1 splits the first free variable's range.
inline BigInt count_points(const FlowSystem& sys, unsigned threads = 1) {
  auto red = detail::reduce(sys);
  if (threads <= 1 || red.free_cols.empty()) {
    detail::PointWalker w(sys, red);
    return BigInt(w.count());
  }
  std::vector<std::uint64_t> partial(threads, 0);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      detail::PointWalker w(sys, red);
      w.set_partition(threads, t);
      partial[t] = w.count();
    });
  for (auto& th : pool) th.join();
  BigInt total = 0;
  for (auto v : partial) total += v;
  return total;
}

/// Streams every point once. Order is deterministic but not lexicographic.
inline void for_each_point(const FlowSystem& sys, const std::function<void(const ProfileVector&)>& emit) {
  auto red = detail::reduce(sys);
  detail::PointWalker w(sys, red);
  w.enumerate(emit);
}

/// All points, sorted lexicographically.
inline std::vector<ProfileVector> enumerate_points(const FlowSystem& sys) {
  std::vector<ProfileVector> out;
  for_each_point(sys, [&](const ProfileVector& u) { out.push_back(u); });
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

constexpr std::uint64_t kBruteForceGuard = 100'000'000;

/// Distinct profiles of all length-n words whose grams lie in S, found by scanning words.
inline std::set<ProfileVector> brute_force_profiles(std::int64_t n, const GramSet& s, bool closed_only) {
  const int q = s.q(), ell = s.ell();
  require(n >= ell, "n must be >= ell");
  {
    BigInt space = pow_big(q, static_cast<unsigned>(n));
    require(space <= kBruteForceGuard, "brute-force guard exceeded: q^n > 1e8");
  }
  std::set<ProfileVector> out;
  std::vector<Symbol> w(static_cast<std::size_t>(n));
  ProfileVector u(s.size());
  const GramCode window = pow_q(q, ell);
  std::function<void(std::size_t, GramCode)> rec = [&](std::size_t pos, GramCode tail) {
    if (pos == static_cast<std::size_t>(n)) {
      if (closed_only) {
        for (int i = 0; i < ell - 1; ++i)
          if (w[static_cast<std::size_t>(i)] != w[static_cast<std::size_t>(n - ell + 1 + i)]) return;
      }
      out.insert(u);
      return;
    }
    for (int a = 0; a < q; ++a) {
      w[pos] = static_cast<Symbol>(a);
      GramCode next = (tail * static_cast<GramCode>(q) + static_cast<GramCode>(a)) % window;
      if (pos + 1 >= static_cast<std::size_t>(ell)) {
        auto idx = s.index_of(next);
        if (!idx) continue;
        ++u[*idx];
        rec(pos + 1, next);
        --u[*idx];
      } else {
        rec(pos + 1, next);
      }
    }
  };
  rec(0, 0);
  return out;
}

// ---------------------------------------------------------------------------

/// Polynomial in the dilation t for one residue class: count(lambda*t + residue).
struct QuasiPolynomial {
  int degree = 0;
  std::int64_t period = 1;
  std::int64_t residue = 0;
  std::vector<Rational> coeffs;  // coeffs[k] multiplies t^k

  Rational leading() const { return coeffs.at(static_cast<std::size_t>(degree)); }

  /// Leading constant in the n variable: leading / period^degree.
  Rational constant() const {
    return leading() / Rational(pow_big(period, static_cast<unsigned>(degree)));
  }

  Rational operator()(const Rational& t) const {
    Rational acc = 0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * t + coeffs[k];
    return acc;
  }
};

/// Exact Lagrange interpolation through (x_i, y_i); coefficients low to high.
inline std::vector<Rational> interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  const std::size_t n = xs.size();
  std::vector<Rational> result(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> basis{Rational(1)};
    Rational denom = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      std::vector<Rational> next(basis.size() + 1, Rational(0));
      for (std::size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= basis[k] * xs[j];
      }
      basis = std::move(next);
      denom *= xs[i] - xs[j];
    }
    Rational scale = ys[i] / denom;
    for (std::size_t k = 0; k < n; ++k) result[k] += basis[k] * scale;
  }
  return result;
}

using PointCounter = std::function<BigInt(std::int64_t total)>;

struct FitResult {
  QuasiPolynomial poly;
  std::vector<BigInt> samples;  // t = 1..D+1
  BigInt predicted, observed;   // at t = D+2
};

/// Fit count(lambda*t + residue) for t = 1..D+1 and confirm the prediction at t = D+2.
inline FitResult fit_quasipolynomial(const PointCounter& counter, int degree, std::int64_t lambda,
                                     std::int64_t residue = 0) {
  require(degree >= 0, "degree must be >= 0");
  require(lambda >= 1, "period must be >= 1");
  FitResult fr;
  std::vector<Rational> xs, ys;
  for (int t = 1; t <= degree + 1; ++t) {
    BigInt c = counter(lambda * t + residue);
    fr.samples.push_back(c);
    xs.emplace_back(t);
    ys.emplace_back(c);
  }
  fr.poly.degree = degree;
  fr.poly.period = lambda;
  fr.poly.residue = residue;
  fr.poly.coeffs = interpolate(xs, ys);
  const int check_t = degree + 2;
  Rational pred = fr.poly(Rational(check_t));
  fr.observed = counter(lambda * check_t + residue);
  if (boost::multiprecision::denominator(pred) != 1 || boost::multiprecision::numerator(pred) != fr.observed)
    throw ComputationError("quasipolynomial prediction failed at t=" + std::to_string(check_t) +
                           ": predicted " + to_string(pred) + ", counted " + to_string(fr.observed) +
                           " (wrong degree or period?)");
  fr.predicted = boost::multiprecision::numerator(pred);
  return fr;
}

inline FitResult fit_quasipolynomial(const GramSet& s, int degree, std::int64_t lambda, FlowMode mode,
                                     std::int64_t residue = 0, unsigned threads = 1) {
  return fit_quasipolynomial(
      [&](std::int64_t total) { return count_points(FlowSystem(s, total, mode), threads); }, degree,
      lambda, residue);
}

struct ReciprocityResult {
  bool holds = true;
  std::optional<std::int64_t> falsified_t;
};

/// L_F(-t) = (-1)^D L_E(t) as a polynomial identity.
inline ReciprocityResult reciprocity_check(const QuasiPolynomial& f_poly, const QuasiPolynomial& e_poly) {
  require(f_poly.degree == e_poly.degree, "F and E fits must share a degree");
  const int d = f_poly.degree;
  ReciprocityResult r;
  std::size_t len = std::max(f_poly.coeffs.size(), e_poly.coeffs.size());
  for (std::size_t k = 0; k < len; ++k) {
    Rational fk = k < f_poly.coeffs.size() ? f_poly.coeffs[k] : Rational(0);
    Rational ek = k < e_poly.coeffs.size() ? e_poly.coeffs[k] : Rational(0);
    if (k % 2) fk = -fk;
    if (d % 2) ek = -ek;
    if (fk != ek) r.holds = false;
  }
  if (!r.holds) {
    for (std::int64_t t = 1; t <= d + 2; ++t) {
      Rational lhs = f_poly(Rational(-t));
      Rational rhs = e_poly(Rational(t));
      if (d % 2) rhs = -rhs;
      if (lhs != rhs) {
        r.falsified_t = t;
        break;
      }
    }
  }
  return r;
}

struct MonotonicityResult {
  bool holds = true;
  std::vector<BigInt> counts;              // index i <-> total lo + i
  std::optional<std::int64_t> first_drop;  // total M with count(M) < count(M-1)
};

inline MonotonicityResult monotonicity_check(const GramSet& s, std::int64_t lo, std::int64_t hi) {
  require(lo >= 0 && lo <= hi, "invalid total range");
  MonotonicityResult r;
  for (std::int64_t m = lo; m <= hi; ++m) {
    r.counts.push_back(count_points(FlowSystem(s, m, FlowMode::F)));
    if (r.counts.size() > 1 && r.counts.back() < r.counts[r.counts.size() - 2] && r.holds) {
      r.holds = false;
      r.first_drop = m;
    }
  }
  return r;
}

/// Dimension |S| - rank A(S) of the flow polytope.
inline int polytope_dimension(const GramSet& s) {
  FlowSystem sys(s, 0, FlowMode::F);
  return static_cast<int>(s.size() - integer_rank(sys.matrix()));
}

}  // namespace gramcode
