#include "dposet/cli.hpp"

#include "dposet/int_linalg.hpp"
#include "dposet/poly_matrix.hpp"
#include "dposet/poset.hpp"
#include "dposet/rcf.hpp"
#include "dposet/serialize.hpp"
#include "dposet/theory.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace dposet {

namespace {

const std::vector<std::string> kCommands = {"ranks",      "matrix",  "axioms", "hypotheses",
                                            "predict",    "verify",  "rcf"};

std::string factorization_string(const Factorization& f) {
  if (f.empty()) return "1";
  std::string s;
  for (const auto& [root, mult] : f) {
    if (!s.empty()) s += " ";
    std::string factor = root == 0    ? "x"
                         : root > 0 ? "(x - " + to_string(root) + ")"
                                    : "(x + " + to_string(Integer(-root)) + ")";
    s += factor;
    if (mult > 1) s += "^" + std::to_string(mult);
  }
  return s;
}

std::string poly_list(const std::vector<IntPoly>& ps) {
  std::string s;
  for (const auto& p : ps) s += (s.empty() ? "" : ", ") + p.str();
  return "[" + s + "]";
}

// Left-aligned text table with a header row.
class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void print(std::ostream& os) const {
    std::vector<std::size_t> width;
    for (const auto& row : rows_)
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (width.size() <= i) width.push_back(0);
        width[i] = std::max(width[i], row[i].size());
      }
    for (const auto& row : rows_) {
      std::string line;
      for (std::size_t i = 0; i < row.size(); ++i) {
        line += row[i];
        if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
      }
      os << line << "\n";
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }
std::string pass_fail(bool b) { return b ? "pass" : "fail"; }

struct Context {
  const RunConfig& config;
  std::string spec;  // canonical
  std::unique_ptr<Poset> poset;
  std::optional<Cache> cache;
  std::ostream& out;
  std::ostream& err;

  bool json() const { return config.format == "json"; }

  template <typename F>
  Json cached(const std::string& kind, int n, F compute) {
    if (cache) {
      if (auto hit = cache->get(spec, kind, n)) return *hit;
    }
    Json payload = compute();
    if (cache) cache->put(spec, kind, n, payload);
    return payload;
  }
};

void print_matrix_table(std::ostream& os, const IntMatrix& m) {
  std::vector<std::string> cells;
  std::size_t w = 1;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      cells.push_back(to_string(m(i, j)));
      w = std::max(w, cells.back().size());
    }
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::string line;
    for (Eigen::Index j = 0; j < m.cols(); ++j, ++k)
      line += (j ? " " : "") + std::string(w - cells[k].size(), ' ') + cells[k];
    os << line << "\n";
  }
}

int cmd_ranks(Context& ctx) {
  Json records = Json::array();
  for (int n = 0; n <= ctx.config.n_max; ++n)
    records.push_back(ctx.cached("rank-size", n, [&] {
      return Json{{"n", n}, {"p_n", ctx.poset->rank_size(n)}, {"delta", ctx.poset->delta(n)}};
    }));
  if (ctx.json()) {
    Json doc = report_header("ranks", ctx.spec);
    doc["n_max"] = ctx.config.n_max;
    doc["records"] = records;
    ctx.out << doc.dump(2) << "\n";
  } else {
    Table t({"n", "p_n", "delta"});
    for (const auto& r : records)
      t.add({std::to_string(r["n"].get<int>()), std::to_string(r["p_n"].get<std::size_t>()),
             std::to_string(r["delta"].get<long>())});
    t.print(ctx.out);
  }
  return 0;
}

int cmd_matrix(Context& ctx) {
  const auto& which = ctx.config.which;
  const int n = ctx.config.n;
  if (n < 0) throw UsageError("--n must be non-negative");
  if (which == "D" && n == 0) throw UsageError("D_0 is undefined: the down map starts at rank 1");
  Json payload = ctx.cached("matrix-" + which, n, [&] {
    IntMatrix m = which == "U"    ? ctx.poset->up_matrix(n)
                  : which == "D"  ? ctx.poset->down_matrix(n)
                  : which == "DU" ? ctx.poset->du_matrix(n)
                                  : ctx.poset->ud_matrix(n);
    return to_json(m);
  });
  if (ctx.json()) {
    Json doc = report_header("matrix", ctx.spec);
    doc["which"] = which;
    doc["n"] = n;
    doc["matrix"] = payload;
    ctx.out << doc.dump(2) << "\n";
  } else {
    print_matrix_table(ctx.out, matrix_from_json(payload));
  }
  return 0;
}

int cmd_axioms(Context& ctx) {
  const auto report = ctx.poset->verify_axioms(ctx.config.n_max);
  if (ctx.json()) {
    Json doc = report_header("axioms", ctx.spec);
    doc["axioms"] = to_json(report);
    ctx.out << doc.dump(2) << "\n";
  } else {
    ctx.out << "DU - UD = " << report.r << "I for n <= " << report.n_max << ": "
            << pass_fail(report.pass) << "\n";
    if (report.violation) {
      const auto& v = *report.violation;
      ctx.out << "violation at n=" << v.n << " entry (" << v.row << "," << v.col
              << "): expected " << to_string(v.expected) << ", got " << to_string(v.actual)
              << "\n";
    }
  }
  return report.pass ? 0 : 1;
}

struct Hypotheses {
  SurjectivityReport surjectivity;
  RankInequalityReport inequality;
  AuxiliaryReport auxiliary;
  Json to_json() const {
    return Json{{"down_surjectivity", dposet::to_json(surjectivity)},
                {"rank_inequality", dposet::to_json(inequality)},
                {"auxiliary", dposet::to_json(auxiliary)}};
  }
};

Hypotheses compute_hypotheses(const Context& ctx, int l) {
  return {check_down_surjectivity(*ctx.poset, ctx.config.n_max),
          check_rank_inequality(*ctx.poset, l, ctx.config.n_max),
          auxiliary_combinatorial_checks(*ctx.poset, ctx.config.n_max)};
}

void print_hypotheses(std::ostream& os, const Hypotheses& h) {
  os << "down maps surjective over Z (n <= " << h.surjectivity.records.size() << "): "
     << yes_no(h.surjectivity.all_surjective());
  if (h.surjectivity.first_failure) os << ", first failure at n=" << *h.surjectivity.first_failure;
  os << "\n";
  os << "rank inequality (l=" << h.inequality.l << "): " << yes_no(h.inequality.holds());
  if (h.inequality.first_failure) os << ", first failure at n=" << *h.inequality.first_failure;
  os << "\n";
  os << "auxiliary check (" << h.auxiliary.kind << "): " << yes_no(h.auxiliary.holds()) << "\n";
  if (!h.auxiliary.records.empty()) {
    Table t({"n", h.auxiliary.records.front().lhs_name, h.auxiliary.records.front().rhs_name,
             "holds"});
    for (const auto& r : h.auxiliary.records)
      t.add({std::to_string(r.n), to_string(r.lhs), to_string(r.rhs), yes_no(r.holds)});
    t.print(os);
  }
}

int cmd_hypotheses(Context& ctx) {
  const int l = effective_l(ctx.config, ctx.poset->r());
  const auto h = compute_hypotheses(ctx, l);
  if (ctx.json()) {
    Json doc = report_header("hypotheses", ctx.spec);
    doc["n_max"] = ctx.config.n_max;
    doc["l"] = l;
    doc["hypotheses"] = h.to_json();
    ctx.out << doc.dump(2) << "\n";
  } else {
    print_hypotheses(ctx.out, h);
  }
  if (!h.auxiliary.holds()) return 1;
  return h.surjectivity.all_surjective() && h.inequality.holds() ? 0 : 2;
}

int cmd_predict(Context& ctx) {
  Json records = Json::array();
  bool all = true;
  for (int n = 0; n <= ctx.config.n_max; ++n) {
    records.push_back(ctx.cached("predict", n, [&] {
      const auto spectrum = predicted_char_polys(*ctx.poset, n);
      const auto factors = predicted_invariant_factors(*ctx.poset, n);
      const bool du_ok = char_poly(ctx.poset->du_matrix(n)) == spectrum.du_poly();
      const bool ud_ok = char_poly(ctx.poset->ud_matrix(n)) == spectrum.ud_poly();
      Json fs = Json::array(), diag = Json::array();
      for (const auto& f : factors.factors) fs.push_back(to_json(f));
      for (const auto& d : predicted_snf_diagonal(*ctx.poset, n, Convention::APlusX))
        diag.push_back(to_json(d));
      return Json{{"n", n},
                  {"p_n", ctx.poset->rank_size(n)},
                  {"delta", ctx.poset->delta(n)},
                  {"char_poly_du", to_json(spectrum.du)},
                  {"char_poly_ud", to_json(spectrum.ud)},
                  {"m", factors.m},
                  {"factors", fs},
                  {"snf_diagonal", diag},
                  {"checks", {{"char_poly_du", pass_fail(du_ok)}, {"char_poly_ud", pass_fail(ud_ok)}}}};
    }));
    const auto& c = records.back()["checks"];
    all = all && c["char_poly_du"] == "pass" && c["char_poly_ud"] == "pass";
  }
  if (ctx.json()) {
    Json doc = report_header("predict", ctx.spec);
    doc["n_max"] = ctx.config.n_max;
    doc["records"] = records;
    ctx.out << doc.dump(2) << "\n";
  } else {
    Table t({"n", "p_n", "delta", "m", "ch(DU)", "ch(UD)", "invariant factors", "checks"});
    for (int n = 0; n <= ctx.config.n_max; ++n) {
      const auto& r = records[static_cast<std::size_t>(n)];
      std::vector<IntPoly> fs;
      for (const auto& f : r["factors"]) fs.push_back(poly_from_json(f));
      const bool ok = r["checks"]["char_poly_du"] == "pass" && r["checks"]["char_poly_ud"] == "pass";
      t.add({std::to_string(n), std::to_string(r["p_n"].get<std::size_t>()),
             std::to_string(r["delta"].get<long>()), std::to_string(r["m"].get<int>()),
             factorization_string(predicted_char_polys(*ctx.poset, n).du),
             factorization_string(predicted_char_polys(*ctx.poset, n).ud), poly_list(fs),
             pass_fail(ok)});
    }
    t.print(ctx.out);
  }
  return all ? 0 : 1;
}

VerifyOptions verify_options(Context& ctx, int l) {
  VerifyOptions opt;
  opt.l = l;
  opt.base.seed = ctx.config.seed;
  opt.keep_certificates = ctx.config.certificates;
  if (ctx.cache) {
    const std::string kind = "verify-l" + std::to_string(l) + "-seed" +
                             std::to_string(ctx.config.seed) +
                             (ctx.config.certificates ? "-cert" : "-nocert");
    opt.lookup = [&ctx, kind](int n) -> std::optional<RankRecord> {
      auto hit = ctx.cache->get(ctx.spec, kind, n);
      if (!hit) return std::nullopt;
      try {
        return rank_record_from_json(*hit);
      } catch (const std::exception&) {
        return std::nullopt;
      }
    };
    opt.store = [&ctx, kind](const RankRecord& r) {
      ctx.cache->put(ctx.spec, kind, r.n, to_json(r, false));
    };
  }
  return opt;
}

int cmd_verify(Context& ctx) {
  const int l = effective_l(ctx.config, ctx.poset->r());
  const auto axioms = ctx.poset->verify_axioms(ctx.config.n_max);
  const auto hyp = compute_hypotheses(ctx, l);
  const auto report = verify_conjecture(*ctx.poset, ctx.config.n_max, verify_options(ctx, l));

  int code = 0;
  if (!axioms.pass) code = 1;
  else if (report.has_obstruction()) code = 2;
  else if (!report.all_pass()) code = 1;

  if (ctx.json()) {
    Json doc = to_json(report, ctx.config.timing);
    Json ordered = report_header("verify", ctx.spec);
    ordered["n_max"] = doc["n_max"];
    ordered["l"] = doc["l"];
    ordered["seed"] = doc["seed"];
    ordered["axioms"] = to_json(axioms);
    ordered["hypotheses"] = hyp.to_json();
    ordered["all_pass"] = doc["all_pass"];
    ordered["exit_code"] = code;
    ordered["records"] = doc["records"];
    ctx.out << ordered.dump(2) << "\n";
  } else {
    ctx.out << "spec " << ctx.spec << "  n_max " << ctx.config.n_max << "  l " << l << "  seed "
            << ctx.config.seed << "  convention " << to_string(Convention::APlusX) << "\n";
    ctx.out << "axioms: " << pass_fail(axioms.pass) << "\n";
    print_hypotheses(ctx.out, hyp);
    std::vector<std::string> header{"n", "p_n", "delta", "method", "rcf", "cert", "pred", "SNF(DU+xI) nonunit part"};
    if (ctx.config.timing) header.push_back("seconds");
    header.push_back("obstructions");
    Table t(header);
    for (const auto& r : report.records) {
      std::vector<IntPoly> nonunit;
      for (const auto& d : r.diagonal)
        if (d.degree() > 0) nonunit.push_back(d);
      std::vector<std::string> row{std::to_string(r.n),         std::to_string(r.p_n),
                                   std::to_string(r.delta),     r.method,
                                   pass_fail(r.rcf_pass),       pass_fail(r.certificate_pass),
                                   yes_no(r.matches_prediction), poly_list(nonunit)};
      if (ctx.config.timing) {
        std::ostringstream s;
        s.precision(3);
        s << std::fixed << r.seconds;
        row.push_back(s.str());
      }
      std::string obs;
      for (const auto& o : r.obstructions) obs += (obs.empty() ? "" : " ") + std::string(to_string(o.code));
      row.push_back(obs.empty() ? "-" : obs);
      t.add(row);
    }
    t.print(ctx.out);
    ctx.out << "verdict: " << (code == 0 ? "all ranks pass" : code == 2 ? "obstruction" : "failure")
            << "\n";
  }
  return code;
}

int cmd_rcf(Context& ctx) {
  const int n = ctx.config.n;
  if (n < 0) throw UsageError("--n must be non-negative");
  const int l = effective_l(ctx.config, ctx.poset->r());
  auto opt = verify_options(ctx, l);
  opt.keep_certificates = false;
  opt.lookup = nullptr;
  opt.store = nullptr;
  const auto report = verify_conjecture(*ctx.poset, n, opt);
  const auto& rec = report.records.back();
  std::optional<RCFDecomposition> dec;
  if (rec.rcf_pass)
    dec = make_decomposition(ctx.poset->du_matrix(n), rec.generators, rec.annihilators);
  int code = rec.pass() ? 0 : (rec.obstructions.empty() ? 1 : 2);
  if (ctx.json()) {
    Json doc = report_header("rcf", ctx.spec);
    doc["n"] = n;
    doc["l"] = l;
    doc["seed"] = ctx.config.seed;
    doc["method"] = rec.method;
    doc["verified"] = rec.rcf_pass;
    doc["decomposition"] = dec ? to_json(*dec) : Json(nullptr);
    Json obs = Json::array();
    for (const auto& o : rec.obstructions) obs.push_back(to_json(o));
    doc["obstructions"] = obs;
    ctx.out << doc.dump(2) << "\n";
  } else {
    ctx.out << "DU_" << n << " (" << ctx.spec << "), method " << rec.method << ", rcf "
            << pass_fail(rec.rcf_pass) << "\n";
    if (dec) {
      ctx.out << "annihilators: " << poly_list(dec->annihilators) << "\n";
      ctx.out << "basis (columns):\n";
      print_matrix_table(ctx.out, dec->basis);
    }
    for (const auto& o : rec.obstructions)
      ctx.out << to_string(o.code) << " at n=" << o.n << ": " << o.detail << "\n";
  }
  return code;
}

}  // namespace

int effective_l(const RunConfig& config, int r) {
  if (config.l) return *config.l;
  return r == 1 ? 2 : 1;
}

RunConfig parse_run_config(const std::vector<std::string>& args) {
  RunConfig c;
  CLI::App app{"dposet"};
  app.set_help_flag();
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--spec", c.spec, "poset spec, e.g. young, yf, young^2, young*yf, z(3)");
  app.add_option("--max-n", c.n_max, "largest rank")->check(CLI::Range(0, 1000));
  app.add_option("--l", c.l, "base-case cutoff for the induction")->check(CLI::Range(0, 1000));
  app.add_option("--seed", c.seed, "seed of the randomized base-case search");
  app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"table", "json"}));
  app.add_option("--cache-dir", c.cache_dir, "disk cache directory");
  app.add_flag("--no-cache", c.no_cache, "ignore the cache");
  app.add_option("--which", c.which, "matrix: U, D, DU or UD")
      ->check(CLI::IsMember({"U", "D", "DU", "UD"}));
  app.add_option("--n", c.n, "rank for matrix and rcf");
  app.add_flag("--timing", c.timing, "include per-rank timing");
  bool no_certs = false;
  app.add_flag("--no-certificates", no_certs, "omit SNF certificates from verify reports");
  app.add_option("--output", c.output, "write the report to a file");
  for (const auto& name : kCommands) app.add_subcommand(name);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  c.certificates = !no_certs;
  c.command = app.get_subcommands().front()->get_name();
  return c;
}

std::vector<std::string> to_args(const RunConfig& c) {
  std::vector<std::string> a{c.command, "--spec", c.spec, "--max-n", std::to_string(c.n_max),
                             "--seed", std::to_string(c.seed), "--format", c.format,
                             "--which", c.which, "--n", std::to_string(c.n)};
  if (c.l) a.insert(a.end(), {"--l", std::to_string(*c.l)});
  if (c.cache_dir) a.insert(a.end(), {"--cache-dir", *c.cache_dir});
  if (c.no_cache) a.push_back("--no-cache");
  if (c.timing) a.push_back("--timing");
  if (!c.certificates) a.push_back("--no-certificates");
  if (c.output) a.insert(a.end(), {"--output", *c.output});
  return a;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (config.output) {
    file.open(*config.output, std::ios::trunc);
    if (!file) throw UsageError("cannot open output file " + *config.output);
    sink = &file;
  }
  Context ctx{config, {}, nullptr, std::nullopt, *sink, err};
  try {
    const auto spec = parse_spec(config.spec);
    ctx.spec = to_string(spec);
    ctx.poset = std::make_unique<Poset>(spec);
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
  if (config.cache_dir && !config.no_cache) ctx.cache.emplace(*config.cache_dir);

  const auto& cmd = config.command;
  if (cmd == "ranks") return cmd_ranks(ctx);
  if (cmd == "matrix") return cmd_matrix(ctx);
  if (cmd == "axioms") return cmd_axioms(ctx);
  if (cmd == "hypotheses") return cmd_hypotheses(ctx);
  if (cmd == "predict") return cmd_predict(ctx);
  if (cmd == "verify") return cmd_verify(ctx);
  if (cmd == "rcf") return cmd_rcf(ctx);
  throw UsageError("unknown command " + cmd);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  constexpr const char* kUsage =
      "usage: dposet {ranks|matrix|axioms|hypotheses|predict|verify|rcf} [--spec S] "
      "[--max-n N] [--l L] [--seed S] [--format table|json] [--cache-dir DIR] [--no-cache] "
      "[--which U|D|DU|UD] [--n N] [--timing] [--no-certificates] [--output FILE]\n";
  if (std::find_if(args.begin(), args.end(), [](const std::string& a) {
        return a == "-h" || a == "--help";
      }) != args.end()) {
    out << kUsage;
    return static_cast<int>(ExitCode::Pass);
  }
  try {
    return run(parse_run_config(args), out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n" << kUsage;
    return static_cast<int>(ExitCode::Usage);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::VerificationFailure);
  }
}

}  // namespace dposet
