// gramcode: command-line front end for profile-vector coding.
//
// Exit codes: 0 success, 2 invalid input, 3 computation failure, 4 a reported check failed.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gramcode/gramcode.hpp"

namespace {

using namespace gramcode;
using Json = nlohmann::ordered_json;

constexpr int kExitValidation = 2;
constexpr int kExitComputation = 3;
constexpr int kExitCheckFailed = 4;

class CheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Output.

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  Json& config() { return config_; }
  Json& result() { return result_; }

  void print(std::ostream& out, const std::string& format) const {
    if (format == "json") {
      Json j;
      j["format_version"] = 1;
      j["command"] = command_;
      j["config"] = config_;
      j["result"] = result_;
      out << j.dump(2) << "\n";
      return;
    }
    out << "format_version: 1\ncommand: " << command_ << "\n";
    flatten(out, "config", config_);
    for (auto it = result_.begin(); it != result_.end(); ++it) flatten(out, it.key(), it.value());
  }

 private:
  static std::string scalar(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

  static bool flat_array(const Json& v) {
    for (const auto& e : v)
      if (e.is_structured()) return false;
    return true;
  }

  static void flatten(std::ostream& out, const std::string& prefix, const Json& v) {
    if (v.is_object()) {
      for (auto it = v.begin(); it != v.end(); ++it) flatten(out, prefix + "." + it.key(), it.value());
    } else if (v.is_array() && flat_array(v)) {
      out << prefix << ":";
      for (const auto& e : v) out << " " << scalar(e);
      out << "\n";
    } else if (v.is_array()) {
      for (std::size_t i = 0; i < v.size(); ++i) flatten(out, prefix + "." + std::to_string(i), v[i]);
    } else {
      out << prefix << ": " << scalar(v) << "\n";
    }
  }

  std::string command_;
  Json config_ = Json::object();
  Json result_ = Json::object();
};

Json big(const BigInt& v) { return to_string(v); }
Json rat(const Rational& v) { return to_string(v); }

Json gram_labels(const GramSet& s, const std::vector<ArcId>& arcs) {
  Json out = Json::array();
  for (auto a : arcs) out.push_back(s.label(a));
  return out;
}

// ---------------------------------------------------------------------------
// Argument helpers.

struct Common {
  std::string format = "text";
  unsigned threads = 1;
};

unsigned default_threads() {
  if (const char* env = std::getenv("GRAMCODE_THREADS")) {
    try {
      auto v = std::stoul(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

std::vector<std::int64_t> parse_int_list(const std::string& text, const std::string& what) {
  auto toks = io::tokenize(text);
  for (auto& t : toks)
    for (auto& c : t)
      if (c == ',') c = ' ';
  std::string joined;
  for (auto& t : toks) joined += t + " ";
  toks = io::tokenize(joined);
  require(!toks.empty(), "empty " + what);
  return io::parse_ints(toks, 0, toks.size(), what);
}

FlowMode parse_mode(const std::string& m) {
  if (m == "F") return FlowMode::F;
  if (m == "E") return FlowMode::E;
  throw ValidationError("mode must be F or E");
}

std::optional<CongruenceBlock> parse_mod(const std::vector<std::string>& mod, std::size_t cols) {
  if (mod.empty()) return std::nullopt;
  require(mod.size() >= 3, "--mod needs an H file, p and beta");
  CongruenceBlock cb;
  cb.h = io::parse_matrix(io::read_file(mod[0]));
  cb.p = io::parse_int(mod[1], "p");
  cb.beta = io::parse_ints(mod, 2, mod.size(), "beta");
  require(cb.h.cols == cols, "H must have |S| = " + std::to_string(cols) + " columns");
  if (cb.beta.size() == 1 && cb.h.rows > 1) cb.beta.assign(cb.h.rows, cb.beta[0]);
  require(cb.beta.size() == cb.h.rows, "beta must have one entry per row of H");
  return cb;
}

void echo_set(Json& cfg, const GramSet& s) {
  cfg["set"] = io::set_argument_string(s);
  cfg["q"] = s.q();
  cfg["ell"] = s.ell();
}

CLI::Option* add_set(CLI::App* cmd, std::vector<std::string>& tokens, bool required = true) {
  auto* opt = cmd->add_option("--set", tokens,
                              "gram set: full Q ELL | weight Q ELL QSTAR W1 W2 | explicit Q ELL G1 G2 ...")
                  ->expected(3, -1);
  if (required) opt->required();
  return opt;
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--threads", c.threads, "worker threads (default from GRAMCODE_THREADS)")
      ->check(CLI::Range(1u, 256u));
}

// ---------------------------------------------------------------------------
// Subcommands.

void cmd_graph(Report& rep, const std::vector<std::string>& set_toks, std::uint64_t ham_budget) {
  GramSet s = io::parse_set_argument(set_toks);
  echo_set(rep.config(), s);
  rep.config()["ham_budget"] = ham_budget;
  DeBruijnGraph g(s);
  auto& r = rep.result();
  r["nodes"] = g.node_count();
  r["arcs"] = g.arc_count();
  auto comps = strongly_connected_components(g);
  r["scc_count"] = comps.size();
  Json cj = Json::array();
  for (const auto& c : comps) {
    std::string members;
    for (auto v : c) members += (members.empty() ? "" : ",") + g.node_label(v);
    cj.push_back(members);
  }
  r["components"] = cj;
  r["balanced"] = is_balanced(g);
  r["eulerian"] = is_eulerian(g);
  r["incidence_rank"] = integer_rank(incidence(g));
  r["dimension"] = polytope_dimension(s);
  auto cl = cycle_length_lcm(g);
  r["cycle_lengths"] = cl.lengths;
  r["lambda"] = big(cl.lcm);
  auto ge = growth_exponent(g);
  r["delta"] = ge.delta;
  r["delta_bar"] = ge.delta_bar;
  auto ham = find_hamiltonian_cycle(g, ham_budget);
  switch (ham.status) {
    case HamiltonianStatus::found: {
      std::string cyc;
      for (auto v : ham.cycle) cyc += (cyc.empty() ? "" : ",") + g.node_label(v);
      r["hamiltonian"] = cyc;
      break;
    }
    case HamiltonianStatus::absent:
      r["hamiltonian"] = "none";
      break;
    case HamiltonianStatus::budget_exceeded:
      r["hamiltonian"] = "budget exceeded";
      break;
  }
}

struct EnumerateArgs {
  std::vector<std::string> set;
  std::int64_t n = 0;
  std::string mode = "F";
  std::vector<std::string> mod;
  bool list = false;
  bool closed = false;
};

void cmd_enumerate(Report& rep, const EnumerateArgs& a, const Common& c) {
  GramSet s = io::parse_set_argument(a.set);
  echo_set(rep.config(), s);
  rep.config()["n"] = a.n;
  rep.config()["mode"] = a.mode;
  rep.config()["closed"] = a.closed;
  rep.config()["mod"] = a.mod;
  rep.config()["threads"] = c.threads;
  auto& r = rep.result();
  std::vector<ProfileVector> points;
  if (a.mode == "words") {
    require(a.mod.empty(), "--mod is not supported with --mode words");
    auto found = brute_force_profiles(a.n, s, a.closed);
    r["count"] = std::to_string(found.size());
    points.assign(found.begin(), found.end());
  } else {
    auto sys = FlowSystem::for_length(s, a.n, parse_mode(a.mode), parse_mod(a.mod, s.size()));
    r["total"] = sys.total();
    if (a.list) {
      points = enumerate_points(sys);
      r["count"] = std::to_string(points.size());
    } else {
      r["count"] = big(count_points(sys, c.threads));
    }
  }
  if (a.list) {
    Json pj = Json::array();
    for (const auto& u : points) pj.push_back(to_string(u));
    r["points"] = pj;
  }
}

struct FitArgs {
  std::vector<std::string> set;
  int degree = -1;
  std::int64_t lambda = 0;
  std::int64_t residue = 0;
  std::string mode = "F";
  std::vector<std::string> mod;
  bool reciprocity = false;
};

Json fit_json(const FitResult& fr) {
  Json j;
  Json coeffs = Json::array();
  for (std::size_t k = fr.poly.coeffs.size(); k-- > 0;) coeffs.push_back(rat(fr.poly.coeffs[k]));
  j["coefficients_high_to_low"] = coeffs;
  j["leading"] = rat(fr.poly.leading());
  j["constant_c"] = rat(fr.poly.constant());
  Json samples = Json::array();
  for (const auto& v : fr.samples) samples.push_back(big(v));
  j["samples"] = samples;
  j["check_t"] = fr.poly.degree + 2;
  j["check_count"] = big(fr.observed);
  return j;
}

void cmd_fit(Report& rep, const FitArgs& a, const Common& c) {
  GramSet s = io::parse_set_argument(a.set);
  echo_set(rep.config(), s);
  DeBruijnGraph g(s);
  int degree = a.degree >= 0 ? a.degree : polytope_dimension(s);
  std::int64_t lambda = a.lambda > 0 ? a.lambda : static_cast<std::int64_t>(cycle_length_lcm(g).lcm);
  auto cong = parse_mod(a.mod, s.size());
  if (cong && a.lambda <= 0) {
    BigInt l = lambda;
    lambda = static_cast<std::int64_t>(l / boost::multiprecision::gcd(l, BigInt(cong->p)) * cong->p);
  }
  rep.config()["degree"] = degree;
  rep.config()["lambda"] = lambda;
  rep.config()["residue"] = a.residue;
  rep.config()["mode"] = a.mode;
  rep.config()["mod"] = a.mod;
  rep.config()["reciprocity"] = a.reciprocity;
  rep.config()["threads"] = c.threads;

  auto counter = [&](FlowMode m) {
    return [&, m](std::int64_t total) { return count_points(FlowSystem(s, total, m, cong), c.threads); };
  };
  if (a.reciprocity) {
    auto f = fit_quasipolynomial(counter(FlowMode::F), degree, lambda, a.residue);
    auto e = fit_quasipolynomial(counter(FlowMode::E), degree, lambda, a.residue);
    rep.result()["F"] = fit_json(f);
    rep.result()["E"] = fit_json(e);
    auto rc = reciprocity_check(f.poly, e.poly);
    rep.result()["reciprocity"] = rc.holds;
    if (rc.falsified_t) rep.result()["falsified_t"] = *rc.falsified_t;
    if (!rc.holds) throw CheckFailed("reciprocity identity does not hold");
  } else {
    rep.result()[a.mode] = fit_json(fit_quasipolynomial(counter(parse_mode(a.mode)), degree, lambda, a.residue));
  }
}

struct SimulateArgs {
  std::string word;
  int q = 2;
  int ell = 2;
  ChannelBudget budget;
  std::optional<std::uint64_t> seed;
  std::string trace_out;
  std::string replay;
  bool at_most = false;
  bool whole_gram = false;
};

Json profile_json(const ProfileVector& u, int q, int ell) {
  Json j = Json::object();
  for (GramCode c = 0; c < u.size(); ++c)
    if (u[c] != 0) j[to_digits(gram_at(c, q, ell))] = u[c];
  return j;
}

void cmd_simulate(Report& rep, const SimulateArgs& a) {
  Word x = parse_word(a.word, a.q);
  auto& cfg = rep.config();
  cfg["word"] = to_digits(x);
  cfg["q"] = a.q;
  cfg["ell"] = a.ell;
  cfg["s_syn"] = a.budget.s_syn;
  cfg["t"] = a.budget.t;
  cfg["s_seq"] = a.budget.s_seq;
  cfg["at_most"] = a.at_most;
  cfg["whole_gram"] = a.whole_gram;
  ProfileVector observed;
  ChannelTrace trace;
  if (!a.replay.empty()) {
    cfg["replay"] = a.replay;
    trace = io::trace_from_json(Json::parse(io::read_file(a.replay)));
    observed = inject(x, a.ell, trace);
  } else {
    require(a.seed.has_value(), "--seed is required for simulate");
    cfg["seed"] = *a.seed;
    auto out = transmit(x, a.ell, a.budget, *a.seed, {a.at_most, a.whole_gram});
    observed = out.observed;
    trace = out.trace;
  }
  auto& r = rep.result();
  r["input_profile"] = to_string(full_profile(x, a.ell));
  r["observed"] = to_string(observed);
  r["observed_by_gram"] = profile_json(observed, a.q, a.ell);
  r["observed_total"] = observed.total();
  r["trace"] = io::trace_to_json(trace);
  if (!a.trace_out.empty()) {
    io::write_file(a.trace_out, io::trace_to_json(trace).dump(2) + "\n");
    cfg["trace_out"] = a.trace_out;
  }
}

struct CodeBuildArgs {
  std::int64_t n_len = 0;
  int d = 1;
  std::optional<std::int64_t> p;
  std::string alphas;
  std::string beta;
  std::optional<std::int64_t> size_m;
  std::string out;
};

void echo_code(Json& j, const VarshamovCode& code) {
  j["p"] = code.p();
  j["d"] = code.d();
  j["N"] = code.length();
  j["alphas"] = code.alphas();
  j["beta"] = code.beta();
  Json rows = Json::array();
  for (std::size_t r = 0; r < code.h().rows; ++r) {
    std::vector<std::int64_t> row;
    for (std::size_t i = 0; i < code.h().cols; ++i) row.push_back(code.h().at(r, i));
    rows.push_back(to_string(ProfileVector(row)));
  }
  j["H"] = rows;
}

void cmd_code_build(Report& rep, const CodeBuildArgs& a) {
  std::vector<std::int64_t> alphas = a.alphas.empty() ? std::vector<std::int64_t>{} : parse_int_list(a.alphas, "alphas");
  std::vector<std::int64_t> beta = a.beta.empty() ? std::vector<std::int64_t>{} : parse_int_list(a.beta, "beta");
  if (alphas.empty()) {
    require(a.n_len >= 1, "give --alphas or --N");
    for (std::int64_t i = 1; i <= a.n_len; ++i) alphas.push_back(i);
  }
  std::int64_t p = a.p ? *a.p : choose_prime(static_cast<std::int64_t>(alphas.size()), a.d);
  VarshamovCode code(p, alphas, a.d, beta);
  echo_code(rep.config(), code);
  if (a.size_m) {
    rep.config()["m"] = *a.size_m;
    rep.result()["size"] = big(code_size_ambient(code, *a.size_m));
  }
  rep.result()["spec"] = io::format_code_spec(code);
  if (!a.out.empty()) {
    io::write_file(a.out, io::format_code_spec(code));
    rep.config()["out"] = a.out;
  }
}

void cmd_code_check(Report& rep, const std::string& code_file, const std::string& vec,
                    std::optional<std::int64_t> size_m) {
  VarshamovCode code = io::parse_code_spec(io::read_file(code_file));
  rep.config()["code"] = code_file;
  echo_code(rep.config(), code);
  if (!vec.empty()) {
    ProfileVector u(parse_int_list(vec, "vector"));
    rep.config()["vector"] = to_string(u);
    rep.result()["syndrome"] = code.syndrome(u);
    rep.result()["member"] = code.contains(u);
  }
  if (size_m) {
    rep.config()["m"] = *size_m;
    rep.result()["size"] = big(code_size_ambient(code, *size_m));
  }
}

void cmd_code_decode(Report& rep, const std::string& code_file, const std::string& received, std::int64_t w) {
  VarshamovCode code = io::parse_code_spec(io::read_file(code_file));
  rep.config()["code"] = code_file;
  echo_code(rep.config(), code);
  ProfileVector u(parse_int_list(received, "received"));
  rep.config()["received"] = to_string(u);
  rep.config()["max_weight"] = w;
  auto res = decode_bounded(code, u, w);
  rep.result()["codeword"] = to_string(res.codeword);
  rep.result()["error"] = to_string(res.error);
  rep.result()["weight"] = res.weight;
}

struct GrcArgs {
  std::string method = "intersect";
  std::vector<std::string> set;
  std::int64_t n = 0;
  std::string code;
  std::int64_t m = 0;
  bool override_bound = false;
  bool verify = false;
  std::string out;
};

void cmd_grc_build(Report& rep, const GrcArgs& a) {
  GramSet s = io::parse_set_argument(a.set);
  echo_set(rep.config(), s);
  rep.config()["method"] = a.method;
  rep.config()["n"] = a.n;
  rep.config()["code"] = a.code;
  require(!a.code.empty(), "--code is required");
  VarshamovCode code = io::parse_code_spec(io::read_file(a.code));
  echo_code(rep.config()["code_params"], code);
  auto build = [&]() {
    if (a.method == "intersect") return grc_intersect(code, a.n, s);
    require(a.m >= 1, "--m is required for the systematic method");
    rep.config()["m"] = a.m;
    rep.config()["override"] = a.override_bound;
    SystematicLayout layout(s, a.m);
    require(code.length() == layout.info_positions().size(),
            "AECC length must equal |I| = " + std::to_string(layout.info_positions().size()));
    return systematic_grc(aecc_codewords(code, a.m), a.n, layout, code.d() + 1, a.override_bound);
  };
  GrcCodebook book = build();
  auto& r = rep.result();
  r["size"] = book.codewords.size();
  r["declared_distance"] = book.distance;
  if (a.verify) {
    book.validate(std::numeric_limits<std::size_t>::max());
    auto dmin = verify_min_distance(book.codewords);
    r["verified_distance"] = dmin == kInfiniteDistance ? Json("inf") : Json(dmin);
  }
  if (!a.out.empty()) {
    io::write_file(a.out, io::format_codebook(book));
    rep.config()["out"] = a.out;
  }
}

void cmd_encode(Report& rep, const std::vector<std::string>& set_toks, std::int64_t n, std::int64_t m,
                const std::string& message, bool override_bound, const std::string& out) {
  GramSet s = io::parse_set_argument(set_toks);
  echo_set(rep.config(), s);
  SystematicLayout layout(s, m);
  auto v = parse_int_list(message, "message");
  rep.config()["n"] = n;
  rep.config()["m"] = m;
  rep.config()["message"] = v;
  rep.config()["override"] = override_bound;
  auto u = systematic_encode(v, n, layout, override_bound);
  Word w = euler_word(u, layout.graph());
  auto& r = rep.result();
  r["info_positions"] = gram_labels(s, layout.info_positions());
  r["loop"] = s.label(layout.loop_arc());
  r["cycle_arcs"] = gram_labels(s, layout.cycle_arcs());
  r["bound_m"] = layout.max_m(n);
  r["profile"] = to_string(u);
  r["word"] = to_digits(w);
  if (s.q() == 4) r["dna"] = dna_string(w);
  if (!out.empty()) {
    io::write_file(out, io::format_profile_file(s, n, u));
    rep.config()["out"] = out;
  }
}

ProfileVector observed_from(const std::string& word, const std::string& counts, const std::string& file, int q,
                            int ell, Json& cfg) {
  int given = !word.empty() + !counts.empty() + !file.empty();
  require(given == 1, "give exactly one of --word, --counts, --observed");
  if (!word.empty()) {
    Word x = parse_word(word, q);
    cfg["word"] = to_digits(x);
    return full_profile(x, ell);
  }
  if (!counts.empty()) {
    ProfileVector u(parse_int_list(counts, "counts"));
    require(u.size() == pow_q(q, ell), "--counts must list q^ell entries");
    cfg["counts"] = to_string(u);
    return u;
  }
  auto pf = io::parse_profile_file(io::read_file(file));
  cfg["observed"] = file;
  require(pf.gram_set.q() == q && pf.gram_set.ell() == ell, "observed profile has a different q or ell");
  require(pf.gram_set.size() == pow_q(q, ell), "observed profile must be indexed by all of [q]^ell");
  return pf.profile;
}

void cmd_decode(Report& rep, const std::string& codebook, const std::string& word, const std::string& counts,
                const std::string& file) {
  GrcCodebook book = io::parse_codebook(io::read_file(codebook));
  rep.config()["codebook"] = codebook;
  auto observed = observed_from(word, counts, file, book.gram_set.q(), book.gram_set.ell(), rep.config());
  auto res = decode_profile(book, observed);
  auto& r = rep.result();
  r["index"] = res.index;
  r["codeword"] = to_string(res.codeword);
  r["word"] = to_digits(res.word);
  r["distance"] = res.distance;
  r["foreign_mass"] = res.foreign_mass;
  r["tie"] = res.tie;
}

void cmd_rank_encode(Report& rep, int q, int ell, std::int64_t n, const std::string& perm) {
  auto layout = rank_layout(q, ell);
  auto p = parse_int_list(perm, "permutation");
  rep.config()["q"] = q;
  rep.config()["ell"] = ell;
  rep.config()["n"] = n;
  rep.config()["perm"] = p;
  auto u = rank_encode(p, n, layout);
  auto& r = rep.result();
  r["info_positions"] = gram_labels(layout.gram_set(), layout.info_positions());
  r["profile"] = to_string(u);
  r["word"] = to_digits(euler_word(u, layout.graph()));
}

void cmd_rank_decode(Report& rep, int q, int ell, const std::string& word, const std::string& counts,
                     const std::string& file) {
  auto layout = rank_layout(q, ell);
  rep.config()["q"] = q;
  rep.config()["ell"] = ell;
  auto observed = observed_from(word, counts, file, q, ell, rep.config());
  auto res = rank_readout_decode(layout, observed);
  rep.result()["perm"] = res.perm;
  rep.result()["tie"] = res.tie;
}

void cmd_tables(Report& rep, const std::string& id, const TableOptions& opts) {
  rep.config()["id"] = id;
  rep.config()["deep"] = opts.deep;
  rep.config()["row"] = opts.row ? *opts.row : std::string("all");
  rep.config()["threads"] = opts.threads;
  std::vector<TableRow> rows;
  if (id == "I")
    rows = table_one(opts);
  else if (id == "II")
    rows = table_two(opts);
  else
    rows = table_three(opts);
  require(!rows.empty(), "no table row matches the selector");
  Json out = Json::array();
  bool failed = false;
  for (const auto& row : rows) {
    Json j;
    j["row"] = row.key;
    j["quantity"] = row.quantity;
    j["computed"] = row.computed;
    j["expected"] = row.expected;
    j["status"] = to_string(row.status);
    if (!row.note.empty()) j["note"] = row.note;
    failed |= row.status == RowStatus::fail;
    out.push_back(j);
  }
  rep.result()["rows"] = out;
  if (failed) throw CheckFailed("at least one table row failed");
}

struct RoundtripArgs {
  std::string scheme = "systematic";
  std::vector<std::string> set;
  std::int64_t n = 20;
  std::int64_t m = 2;
  std::string message = "0 0 0";
  std::string perm = "0 1 2";
  int q = 2, ell = 3;
  std::string code;
  std::size_t index = 0;
  ChannelBudget budget;
  std::optional<std::uint64_t> seed;
  bool override_bound = false;
};

void cmd_roundtrip(Report& rep, const RoundtripArgs& a) {
  auto& cfg = rep.config();
  auto& r = rep.result();
  cfg["scheme"] = a.scheme;
  cfg["n"] = a.n;
  cfg["s_syn"] = a.budget.s_syn;
  cfg["t"] = a.budget.t;
  cfg["s_seq"] = a.budget.s_seq;
  const bool noisy = a.budget.s_syn + a.budget.t + a.budget.s_seq > 0;
  require(!noisy || a.seed.has_value(), "--seed is required when any channel budget is nonzero");
  if (a.seed) cfg["seed"] = *a.seed;

  auto channel = [&](const Word& x, int ell) {
    if (!noisy) return full_profile(x, ell);
    auto out = transmit(x, ell, a.budget, *a.seed);
    r["trace"] = io::trace_to_json(out.trace);
    return out.observed;
  };

  bool ok = false;
  if (a.scheme == "rank") {
    cfg["q"] = a.q;
    cfg["ell"] = a.ell;
    auto layout = rank_layout(a.q, a.ell);
    auto perm = parse_int_list(a.perm, "permutation");
    cfg["perm"] = perm;
    auto u = rank_encode(perm, a.n, layout);
    Word x = euler_word(u, layout.graph());
    auto observed = channel(x, a.ell);
    auto back = rank_readout_decode(layout, observed);
    r["profile"] = to_string(u);
    r["word"] = to_digits(x);
    r["observed"] = to_string(observed);
    r["decoded"] = back.perm;
    r["tie"] = back.tie;
    ok = back.perm == perm;
  } else if (a.scheme == "systematic") {
    GramSet s = a.set.empty() ? GramSet::full(2, 3) : io::parse_set_argument(a.set);
    echo_set(cfg, s);
    cfg["m"] = a.m;
    cfg["override"] = a.override_bound;
    SystematicLayout layout(s, a.m);
    auto v = parse_int_list(a.message, "message");
    cfg["message"] = v;
    auto u = systematic_encode(v, a.n, layout, a.override_bound);
    Word x = euler_word(u, layout.graph());
    auto observed = channel(x, s.ell());
    auto proj = project_to_set(observed, s);
    auto back = systematic_restrict(proj.on_s, layout);
    r["profile"] = to_string(u);
    r["word"] = to_digits(x);
    r["observed"] = to_string(observed);
    r["decoded"] = back;
    ok = back == v;
  } else if (a.scheme == "intersect") {
    GramSet s = a.set.empty() ? GramSet::full(2, 3) : io::parse_set_argument(a.set);
    echo_set(cfg, s);
    VarshamovCode code = a.code.empty() ? reference_code() : io::parse_code_spec(io::read_file(a.code));
    cfg["code"] = a.code.empty() ? std::string("reference") : a.code;
    cfg["index"] = a.index;
    auto book = grc_intersect(code, a.n, s);
    require(!book.codewords.empty(), "intersection codebook is empty at this n");
    require(a.index < book.codewords.size(), "codeword index out of range");
    const auto& u = book.codewords[a.index];
    Word x = euler_word(u, s);
    auto observed = channel(x, s.ell());
    auto res = decode_profile(book, observed);
    r["codebook_size"] = book.codewords.size();
    r["declared_distance"] = book.distance;
    r["profile"] = to_string(u);
    r["word"] = to_digits(x);
    r["observed"] = to_string(observed);
    r["decoded_index"] = res.index;
    r["decoded_word"] = to_digits(res.word);
    r["tie"] = res.tie;
    ok = res.index == a.index;
  } else {
    throw ValidationError("unknown scheme '" + a.scheme + "'");
  }
  r["success"] = ok;
  if (!ok) throw CheckFailed("round trip did not recover the message");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gramcode: l-gram profile coding for DNA storage channels"};
  app.require_subcommand(1);
  Common common;
  common.threads = default_threads();

  // graph-info
  std::vector<std::string> g_set;
  std::uint64_t ham_budget = kDefaultHamiltonianBudget;
  auto* graph = app.add_subcommand("graph-info", "structure of the restricted de Bruijn graph");
  add_set(graph, g_set);
  graph->add_option("--ham-budget", ham_budget, "Hamiltonian search step budget");
  add_common(graph, common);

  // enumerate
  EnumerateArgs en;
  auto* enumerate = app.add_subcommand("enumerate", "count or list profile vectors");
  add_set(enumerate, en.set);
  enumerate->add_option("--n", en.n, "word length")->required();
  enumerate->add_option("--mode", en.mode, "F, E, or words (brute force)")->check(CLI::IsMember({"F", "E", "words"}));
  enumerate->add_option("--mod", en.mod, "congruence: HFILE P BETA...")->expected(3, -1);
  enumerate->add_flag("--list", en.list, "print every point");
  enumerate->add_flag("--closed", en.closed, "words mode: closed words only");
  add_common(enumerate, common);

  // fit
  FitArgs fa;
  auto* fit = app.add_subcommand("fit", "fit the Ehrhart quasipolynomial at multiples of lambda");
  add_set(fit, fa.set);
  fit->add_option("--degree", fa.degree, "degree D (default |S| - rank A(S))");
  fit->add_option("--lambda", fa.lambda, "period (default lcm of cycle lengths, times p with --mod)");
  fit->add_option("--residue", fa.residue, "residue class of n-l+1 modulo lambda");
  fit->add_option("--mode", fa.mode, "F or E")->check(CLI::IsMember({"F", "E"}));
  fit->add_option("--mod", fa.mod, "congruence: HFILE P BETA...")->expected(3, -1);
  fit->add_flag("--reciprocity", fa.reciprocity, "fit F and E and check reciprocity");
  add_common(fit, common);

  // simulate
  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "run the synthesis/coverage/sequencing channel");
  simulate->add_option("--word", sa.word, "input word (digits, or ATGC for q=4)")->required();
  simulate->add_option("--q", sa.q, "alphabet size");
  simulate->add_option("--ell", sa.ell, "gram length");
  simulate->add_option("--ssyn", sa.budget.s_syn, "synthesis substitutions");
  simulate->add_option("--t", sa.budget.t, "lost gram occurrences");
  simulate->add_option("--sseq", sa.budget.s_seq, "sequencing substitutions");
  simulate->add_option("--seed", sa.seed, "RNG seed (required unless replaying)");
  simulate->add_option("--trace", sa.trace_out, "write the trace as JSON");
  simulate->add_option("--replay", sa.replay, "apply a stored trace instead of sampling");
  simulate->add_flag("--at-most", sa.at_most, "draw each count uniformly from 0..budget");
  simulate->add_flag("--whole-gram", sa.whole_gram, "sequencing replaces whole grams");
  add_common(simulate, common);

  // code-build
  CodeBuildArgs cb;
  auto* code_build = app.add_subcommand("code-build", "construct a Varshamov code");
  code_build->add_option("--N", cb.n_len, "length (default alphas 1..N)");
  code_build->add_option("--d", cb.d, "number of parity rows")->required();
  code_build->add_option("--p", cb.p, "prime (default smallest prime > max(N, d))");
  code_build->add_option("--alphas", cb.alphas, "comma or space separated alphas");
  code_build->add_option("--beta", cb.beta, "syndrome target (default 0)");
  code_build->add_option("--size", cb.size_m, "also count codewords in [m]^N");
  code_build->add_option("--out", cb.out, "write the code spec file");
  add_common(code_build, common);

  // code-check
  std::string cc_code, cc_vec;
  std::optional<std::int64_t> cc_size;
  auto* code_check = app.add_subcommand("code-check", "membership and size of a Varshamov code");
  code_check->add_option("--code", cc_code, "code spec file")->required();
  code_check->add_option("--vector", cc_vec, "vector to test");
  code_check->add_option("--size", cc_size, "count codewords in [m]^N");
  add_common(code_check, common);

  // code-decode
  std::string cd_code, cd_recv;
  std::int64_t cd_weight = 0;
  auto* code_decode = app.add_subcommand("code-decode", "bounded asymmetric decoding");
  code_decode->add_option("--code", cd_code, "code spec file")->required();
  code_decode->add_option("--received", cd_recv, "received vector")->required();
  code_decode->add_option("--max-weight", cd_weight, "largest error weight searched")->required();
  add_common(code_decode, common);

  // grc-build
  GrcArgs ga;
  auto* grc = app.add_subcommand("grc-build", "build an l-gram reconstruction codebook");
  grc->add_option("--method", ga.method, "intersect or systematic")->check(CLI::IsMember({"intersect", "systematic"}));
  add_set(grc, ga.set);
  grc->add_option("--n", ga.n, "word length")->required();
  grc->add_option("--code", ga.code, "Varshamov code spec file");
  grc->add_option("--m", ga.m, "systematic: message alphabet bound");
  grc->add_flag("--override", ga.override_bound, "systematic: skip the general bound on m");
  grc->add_flag("--verify", ga.verify, "check realizability and pairwise distance");
  grc->add_option("--out", ga.out, "write the codebook file");
  add_common(grc, common);

  // encode
  std::vector<std::string> e_set;
  std::int64_t e_n = 0, e_m = 0;
  std::string e_msg, e_out;
  bool e_override = false;
  auto* encode = app.add_subcommand("encode", "systematic encoding of a message to a profile and word");
  add_set(encode, e_set);
  encode->add_option("--n", e_n, "word length")->required();
  encode->add_option("--m", e_m, "message alphabet bound")->required();
  encode->add_option("--message", e_msg, "message symbols")->required();
  encode->add_flag("--override", e_override, "skip the general bound on m");
  encode->add_option("--out", e_out, "write the profile file");
  add_common(encode, common);

  // decode
  std::string d_book, d_word, d_counts, d_file;
  auto* decode = app.add_subcommand("decode", "minimum-distance decoding over a codebook");
  decode->add_option("--codebook", d_book, "codebook file")->required();
  decode->add_option("--word", d_word, "received word");
  decode->add_option("--counts", d_counts, "observed counts over [q]^ell");
  decode->add_option("--observed", d_file, "observed profile file over [q]^ell");
  add_common(decode, common);

  // rank-encode / rank-decode
  int rq = 2, rell = 3;
  std::int64_t rn = 0;
  std::string r_perm, r_word, r_counts, r_file;
  auto* rank_enc = app.add_subcommand("rank-encode", "embed a permutation into a profile");
  rank_enc->add_option("--q", rq, "alphabet size");
  rank_enc->add_option("--ell", rell, "gram length");
  rank_enc->add_option("--n", rn, "word length")->required();
  rank_enc->add_option("--perm", r_perm, "permutation of 0..m-1")->required();
  add_common(rank_enc, common);
  auto* rank_dec = app.add_subcommand("rank-decode", "read a permutation from relative counts");
  rank_dec->add_option("--q", rq, "alphabet size");
  rank_dec->add_option("--ell", rell, "gram length");
  rank_dec->add_option("--word", r_word, "received word");
  rank_dec->add_option("--counts", r_counts, "observed counts over [q]^ell");
  rank_dec->add_option("--observed", r_file, "observed profile file over [q]^ell");
  add_common(rank_dec, common);

  // tables
  std::string t_id;
  std::string t_row;
  TableOptions topts;
  auto* tables = app.add_subcommand("tables", "recompute the feasible table entries");
  tables->add_option("--id", t_id, "I, II or III")->required()->check(CLI::IsMember({"I", "II", "III"}));
  tables->add_option("--row", t_row, "single row key, e.g. c(2,3), (4,2,3), d=1");
  tables->add_flag("--deep", topts.deep, "include long-running fits");
  add_common(tables, common);

  // roundtrip
  RoundtripArgs ra;
  auto* roundtrip = app.add_subcommand("roundtrip", "message -> profile -> word -> channel -> decode");
  roundtrip->add_option("--scheme", ra.scheme, "systematic, rank or intersect")
      ->check(CLI::IsMember({"systematic", "rank", "intersect"}));
  add_set(roundtrip, ra.set, false);
  roundtrip->add_option("--n", ra.n, "word length");
  roundtrip->add_option("--m", ra.m, "systematic: message alphabet bound");
  roundtrip->add_option("--message", ra.message, "systematic: message");
  roundtrip->add_flag("--override", ra.override_bound, "systematic: skip the general bound on m");
  roundtrip->add_option("--perm", ra.perm, "rank: permutation");
  roundtrip->add_option("--q", ra.q, "rank: alphabet size");
  roundtrip->add_option("--ell", ra.ell, "rank: gram length");
  roundtrip->add_option("--code", ra.code, "intersect: code spec file (default: the [2]^3, p=13 reference code)");
  roundtrip->add_option("--index", ra.index, "intersect: codeword index");
  roundtrip->add_option("--ssyn", ra.budget.s_syn, "synthesis substitutions");
  roundtrip->add_option("--t", ra.budget.t, "lost gram occurrences");
  roundtrip->add_option("--sseq", ra.budget.s_seq, "sequencing substitutions");
  roundtrip->add_option("--seed", ra.seed, "RNG seed (required with a nonzero budget)");
  add_common(roundtrip, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  CLI::App* sub = app.get_subcommands().front();
  Report rep(sub->get_name());
  int code = 0;
  try {
    if (sub == graph)
      cmd_graph(rep, g_set, ham_budget);
    else if (sub == enumerate)
      cmd_enumerate(rep, en, common);
    else if (sub == fit)
      cmd_fit(rep, fa, common);
    else if (sub == simulate)
      cmd_simulate(rep, sa);
    else if (sub == code_build)
      cmd_code_build(rep, cb);
    else if (sub == code_check)
      cmd_code_check(rep, cc_code, cc_vec, cc_size);
    else if (sub == code_decode)
      cmd_code_decode(rep, cd_code, cd_recv, cd_weight);
    else if (sub == grc)
      cmd_grc_build(rep, ga);
    else if (sub == encode)
      cmd_encode(rep, e_set, e_n, e_m, e_msg, e_override, e_out);
    else if (sub == decode)
      cmd_decode(rep, d_book, d_word, d_counts, d_file);
    else if (sub == rank_enc)
      cmd_rank_encode(rep, rq, rell, rn, r_perm);
    else if (sub == rank_dec)
      cmd_rank_decode(rep, rq, rell, r_word, r_counts, r_file);
    else if (sub == tables) {
      topts.threads = common.threads;
      if (!t_row.empty()) topts.row = t_row;
      cmd_tables(rep, t_id, topts);
    } else if (sub == roundtrip)
      cmd_roundtrip(rep, ra);
  } catch (const CheckFailed& e) {
    rep.result()["error"] = e.what();
    code = kExitCheckFailed;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ComputationError& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return kExitComputation;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  rep.print(std::cout, common.format);
  return code;
}
