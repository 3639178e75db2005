// Command-line laboratory: splitting types, Monte-Carlo jumping-locus
// sampling, exhaustive line tables, bound calculators, canned example
// verifications and Fitting-ideal certificates.  Results are appended as
// JSON-lines records (or CSV where it makes sense).
//
// Exit codes: 0 success, 2 invalid configuration or input, 3 degenerate
// sampling setup, 4 internal invariant violation.

#include <CLI11.hpp>
#include <json.hpp>

#include <jumplab/bounds.hpp>
#include <jumplab/lab.hpp>
#include <jumplab/serialize.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#ifndef JUMPLAB_VERSION
#define JUMPLAB_VERSION "jumplab-unversioned"
#endif

using nlohmann::json;
using namespace jumplab;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitInvariant = 4;

std::string rational_str(const Rational& r) { return r.str(); }

json rational_json(const Rational& r) {
  return {{"exact", rational_str(r)}, {"approx", static_cast<double>(r)}};
}

// --bundle accepts a named constructor (tangent, cotangent, conic:<d>,
// schwarzenberger:<p>,<q>, sum:<a>,<b>,...) or a path to a serialized
// presentation.
SheafPresentation<Fp> resolve_bundle(const std::string& name) {
  auto ints_after = [&](std::size_t colon) {
    std::vector<int> vals;
    std::stringstream ss(name.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) vals.push_back(std::stoi(tok));
    return vals;
  };
  if (name == "tangent") return euler_tangent<Fp>();
  if (name == "cotangent") return conic_example_bundle<Fp>(1);
  if (name.rfind("conic:", 0) == 0) {
    auto v = ints_after(5);
    if (v.size() != 1) throw std::invalid_argument("--bundle conic:<d>");
    return conic_example_bundle<Fp>(v[0]);
  }
  if (name.rfind("schwarzenberger:", 0) == 0) {
    auto v = ints_after(15);
    if (v.size() != 2) throw std::invalid_argument("--bundle schwarzenberger:<p>,<q>");
    return schwarzenberger<Fp>(v[0], v[1]);
  }
  if (name.rfind("sum:", 0) == 0) {
    auto v = ints_after(3);
    if (v.empty()) throw std::invalid_argument("--bundle sum:<a>,<b>,...");
    return line_bundle_sum<Fp>(v);
  }
  std::ifstream in(name);
  if (!in) throw std::invalid_argument("--bundle: no such named bundle or file: " + name);
  return read_presentation<Fp>(in);
}

json config_json(const ExperimentConfig& cfg) {
  json thresholds = json::array();
  for (const auto& t : cfg.jump_thresholds) thresholds.push_back(rational_str(t));
  return {{"bundle", cfg.bundle_name},
          {"curve_degree", cfg.curve_degree},
          {"field_order", cfg.field_order},
          {"trials", cfg.trials},
          {"seed", cfg.seed},
          {"jump_thresholds", thresholds}};
}

json histogram_json(const JumpHistogram& hist) {
  json rows = json::array();
  for (const auto& [mu, count] : hist.mu_counts)
    rows.push_back({{"mu", rational_str(mu)}, {"count", count}});
  return rows;
}

json estimates_json(const JumpHistogram& hist) {
  json rows = json::array();
  for (const auto& est : hist.estimates) {
    json row = {{"threshold", rational_str(est.threshold)},
                {"hits", est.hits},
                {"freq", est.freq},
                {"ci_lo", est.ci_lo}};
    row["chat"] = est.chat ? json(*est.chat) : json();
    row["ci_hi"] = est.ci_hi ? json(*est.ci_hi) : json();
    rows.push_back(std::move(row));
  }
  return rows;
}

json report_json(const JumpReport& rep) {
  json expected = json::array(), actual = json::array();
  for (const auto& v : rep.expected.entries) expected.push_back(rational_str(v));
  for (const auto& v : rep.actual_panel.entries) actual.push_back(rational_str(v));
  return {{"splitting", rep.splitting.parts},
          {"actual_panel", actual},
          {"expected_panel", expected},
          {"mu", rational_json(rep.mu)},
          {"expected_codim", rational_json(rep.expected_codim)},
          {"rank2", rep.rank2}};
}

// one JSONL record per invocation; callers fill "result"
json base_record(const json& config) {
  return {{"schema", 1}, {"version", JUMPLAB_VERSION}, {"config", config}};
}

void emit(const json& record, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << record.dump() << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::app);
  if (!out) throw std::invalid_argument("--out: cannot open " + out_path);
  out << record.dump() << '\n';
}

void emit_csv(const JumpHistogram& hist, const std::string& out_path) {
  std::ostringstream os;
  os << "threshold,hits,freq,chat,ci_lo,ci_hi\n";
  for (const auto& est : hist.estimates) {
    os << rational_str(est.threshold) << ',' << est.hits << ',' << est.freq << ',';
    if (est.chat) os << *est.chat;
    os << ',' << est.ci_lo << ',';
    if (est.ci_hi) os << *est.ci_hi;
    os << '\n';
  }
  if (out_path.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream out(out_path, std::ios::app);
    if (!out) throw std::invalid_argument("--out: cannot open " + out_path);
    out << os.str();
  }
}

long long elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

std::vector<Rational> parse_thresholds(const std::vector<std::string>& toks) {
  std::vector<Rational> out;
  for (const auto& t : toks) out.emplace_back(t);
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"exact splitting-type laboratory for bundles on P^2"};
  app.require_subcommand(1);

  std::string bundle = "tangent";
  std::string curve_path;
  std::string out_path;
  std::string format = "jsonl";
  int degree = 1;
  std::uint64_t field = 101;
  long long trials = 1000;
  std::uint64_t seed = 0;
  std::vector<std::string> threshold_toks = {"1"};

  auto add_common = [&](CLI::App* sub, bool sampling) {
    sub->add_option("--bundle", bundle, "named bundle or presentation file");
    sub->add_option("--field", field, "prime field order q");
    sub->add_option("--out", out_path, "append records to this file");
    if (sampling) {
      sub->add_option("--degree", degree, "curve degree d");
      sub->add_option("--trials", trials, "sample count N");
      sub->add_option("--seed", seed, "base RNG seed");
      sub->add_option("--thresholds", threshold_toks, "jump thresholds (rationals)");
      sub->add_option("--format", format, "jsonl or csv")
          ->check(CLI::IsMember({"jsonl", "csv"}));
    }
  };

  auto* sp = app.add_subcommand("splitting", "splitting type of one bundle on one curve");
  add_common(sp, false);
  sp->add_option("--curve", curve_path, "serialized curve file")->required();

  auto* sa = app.add_subcommand("sample", "Monte-Carlo jumping-locus sampling");
  add_common(sa, true);

  auto* li = app.add_subcommand("lines", "exhaustive splitting table over all F_q lines");
  add_common(li, false);

  auto* bo = app.add_subcommand("bounds", "numeric bound calculators");
  int dq = 0, e = 0, f = 0, g = 0, k = 2, rank = 2, dimx = 2, d = 1, dimm = 0;
  std::string mu_tok = "0", a_tok = "0";
  bo->add_option("--dq", dq, "c1(Q).H");
  bo->add_option("--e", e, "c1(E).H");
  bo->add_option("--f", f, "c2(E)");
  bo->add_option("--mu", mu_tok, "panel defect (rational)");
  bo->add_option("--g", g, "genus");
  bo->add_option("--k", k, "freeness constant");
  bo->add_option("--rank", rank, "bundle rank");
  bo->add_option("--dimx", dimx, "dim X");
  bo->add_option("--d", d, "curve degree");
  bo->add_option("--a-value", a_tok, "Fujita-type invariant (rational)");
  bo->add_option("--dimm", dimm, "dim M");
  bo->add_option("--out", out_path, "append records to this file");

  auto* ve = app.add_subcommand("verify-example", "re-run a canned example");
  std::string which;
  ve->add_option("name", which, "ramella | schwarzenberger | conic")
      ->required()
      ->check(CLI::IsMember({"ramella", "schwarzenberger", "conic"}));
  add_common(ve, true);

  auto* fi = app.add_subcommand("fitting", "Fitting-ideal minors and adjugate certificates");
  std::string matrix_path;
  int fit_n = 0, fit_j = 0, adj_r = 0;
  fi->add_option("--matrix", matrix_path, "serialized form matrix")->required();
  fi->add_option("--n", fit_n, "generator count of the presented module")->required();
  fi->add_option("--j", fit_j, "Fitting index j");
  fi->add_option("--adjugate", adj_r, "emit an adjugate-kernel certificate at rank r");
  fi->add_option("--out", out_path, "append records to this file");

  CLI11_PARSE(app, argc, argv);
  auto t0 = std::chrono::steady_clock::now();

  if (sp->parsed()) {
    auto pres = resolve_bundle(bundle);
    std::ifstream in(curve_path);
    if (!in) throw std::invalid_argument("--curve: cannot open " + curve_path);
    auto s = read_curve<Fp>(in);
    auto rep = jump_report(pres, s);
    json rec = base_record({{"bundle", bundle}, {"curve", curve_path}});
    rec["result"] = report_json(rep);
    rec["runtime_ms"] = elapsed_ms(t0);
    emit(rec, out_path);
    return 0;
  }

  if (sa->parsed()) {
    ExperimentConfig cfg;
    cfg.bundle_name = bundle;
    cfg.curve_degree = degree;
    cfg.field_order = field;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.jump_thresholds = parse_thresholds(threshold_toks);
    auto pres = resolve_bundle(bundle);
    auto hist = sample_jump_distribution(pres, cfg);
    if (format == "csv") {
      emit_csv(hist, out_path);
    } else {
      json rec = base_record(config_json(cfg));
      rec["histogram"] = histogram_json(hist);
      rec["rejected"] = hist.rejected;
      rec["certified"] = hist.certified;
      rec["degenerate"] = hist.degenerate;
      rec["estimates"] = estimates_json(hist);
      rec["runtime_ms"] = elapsed_ms(t0);
      emit(rec, out_path);
    }
    return hist.degenerate ? kExitDegenerate : 0;
  }

  if (li->parsed()) {
    auto pres = resolve_bundle(bundle);
    auto table = enumerate_lines(pres, field);
    json rows = json::array();
    for (const auto& rec : table.lines) {
      json row = {{"normal", rec.normal}, {"certified", rec.certified}};
      if (rec.certified) {
        row["splitting"] = rec.splitting.parts;
        row["mu"] = rational_str(rec.mu);
        row["jumping"] = rec.jumping;
      }
      rows.push_back(std::move(row));
    }
    json rec = base_record({{"bundle", bundle}, {"field_order", field}});
    rec["lines"] = rows;
    rec["jumping_count"] = table.jumping_count;
    rec["min_mu"] = rational_str(table.min_mu);
    rec["runtime_ms"] = elapsed_ms(t0);
    emit(rec, out_path);
    return 0;
  }

  if (bo->parsed()) {
    Rational mu(mu_tok), a_value(a_tok);
    json result;
    if (dq != 0 || e != 0 || f != 0) {
      auto b = p2_relcanonical_bound(dq, e, f);
      result["p2_relcanonical_bound"] = {{"radicand", rational_str(b.radicand)},
                                         {"approx", b.approx}};
      if (b.exact) result["p2_relcanonical_bound"]["exact"] = rational_str(*b.exact);
      auto z = zeta_prime(e, f);
      result["zeta_prime"] = {{"radicand", rational_str(z.radicand)}, {"approx", z.approx}};
      if (z.exact) result["zeta_prime"]["exact"] = rational_str(*z.exact);
    }
    result["expected_codim_rank2"] = rational_str(expected_codim_rank2(mu));
    result["gm_codim_bound"] = rational_str(gm_codim_bound(mu, rank, k));
    auto tg = tangentgaps_bound(mu, rank, g, dimx);
    result["tangentgaps"] = {{"weak", rational_str(tg.weak)},
                             {"strong", rational_str(tg.strong)}};
    auto md = moduli_dim_bounds(dimm, g, dimx);
    result["moduli_dim_bounds"] = {{"lower", md.lower}, {"upper", md.upper}};
    result["disconnected_dim_bound"] = rational_str(disconnected_dim_bound(a_value, dimm, g));
    result["genfinite_dim_bound"] = rational_str(genfinite_dim_bound(dimm, g));
    json rec = base_record({{"dq", dq}, {"e", e}, {"f", f},  {"mu", mu_tok},
                            {"g", g},   {"k", k}, {"rank", rank},
                            {"dimx", dimx}, {"d", d}, {"a_value", a_tok}, {"dimm", dimm}});
    rec["result"] = result;
    rec["runtime_ms"] = elapsed_ms(t0);
    emit(rec, out_path);
    return 0;
  }

  if (ve->parsed()) {
    json result;
    int exit_code = 0;
    if (which == "ramella") {
      // balanced splitting of the restricted tangent bundle, d = 1..6
      json per_degree = json::array();
      for (int dd = 1; dd <= 6; ++dd) {
        ExperimentConfig cfg;
        cfg.bundle_name = "tangent";
        cfg.curve_degree = dd;
        cfg.field_order = field;
        cfg.trials = trials;
        cfg.seed = seed + static_cast<std::uint64_t>(dd);
        cfg.jump_thresholds = {Rational(1)};
        auto hist = sample_jump_distribution(euler_tangent<Fp>(), cfg);
        long long balanced = 0;
        // balanced type (ceil(3d/2), floor(3d/2)) has defect < 1
        for (const auto& [mu, count] : hist.mu_counts)
          if (mu < 1) balanced += count;
        per_degree.push_back({{"d", dd},
                              {"certified", hist.certified},
                              {"balanced", balanced},
                              {"balanced_fraction",
                               hist.certified
                                   ? static_cast<double>(balanced) /
                                         static_cast<double>(hist.certified)
                                   : 0.0}});
      }
      result["per_degree"] = per_degree;
    } else if (which == "schwarzenberger") {
      auto table = enumerate_lines(schwarzenberger<Fp>(4, 0), field);
      result["lines"] = table.lines.size();
      result["jumping_count"] = table.jumping_count;
      json types = json::array();
      for (const auto& rec : table.lines)
        if (rec.jumping) types.push_back(rec.splitting.parts);
      result["jumping_types"] = types;
    } else {  // conic
      json per_degree = json::array();
      for (int dd = 1; dd <= 3; ++dd) {
        auto rep = verify_conic_example(dd, field, trials, seed);
        per_degree.push_back({{"d", dd},
                              {"general_mean", rational_str(rep.general_mean)},
                              {"through_mean", rational_str(rep.through_mean)},
                              {"gap", rational_str(rep.gap)}});
      }
      result["per_degree"] = per_degree;
    }
    json rec = base_record({{"example", which},
                            {"field_order", field},
                            {"trials", trials},
                            {"seed", seed}});
    rec["result"] = result;
    rec["runtime_ms"] = elapsed_ms(t0);
    emit(rec, out_path);
    return exit_code;
  }

  if (fi->parsed()) {
    std::ifstream in(matrix_path);
    if (!in) throw std::invalid_argument("--matrix: cannot open " + matrix_path);
    auto m = read_form_matrix<Fp>(in);
    json result;
    auto gens = fitting_generators(m, fit_n, fit_j);
    result["j"] = gens.j;
    result["minor_size"] = gens.minor_size;
    result["kind"] = gens.kind == IdealKind::Unit
                         ? "unit"
                         : gens.kind == IdealKind::Zero ? "zero" : "proper";
    result["generator_count"] = gens.minors.size();
    if (adj_r > 0) {
      auto cert = adjugate_kernel_auto(m, adj_r);
      FormMatrix<Fp> det_row = {{cert.det_a}};
      std::ostringstream audit;
      write_form_matrix(audit, det_row);
      FormMatrix<Fp> kv(cert.kernel_vectors.begin(), cert.kernel_vectors.end());
      write_form_matrix(audit, kv);
      result["adjugate"] = {{"rows", cert.selected_rows},
                            {"cols", cert.selected_cols},
                            {"kernel_vectors", cert.kernel_vectors.size()},
                            {"audit", audit.str()}};
      for (const auto& v : cert.kernel_vectors)
        if (!annihilates(m, v))
          throw std::logic_error("fitting: certificate fails to annihilate");
    }
    json rec = base_record({{"matrix", matrix_path}, {"n", fit_n}, {"j", fit_j}});
    rec["result"] = result;
    rec["runtime_ms"] = elapsed_ms(t0);
    emit(rec, out_path);
    return 0;
  }

  return kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const WindowInconsistency& ex) {
    std::cerr << "invariant violation: " << ex.what() << '\n';
    return kExitInvariant;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitInvalid;
  } catch (const std::logic_error& ex) {
    std::cerr << "invariant violation: " << ex.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitInvalid;
  }
}
