#pragma once

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ordinarium/density.hpp"
#include "ordinarium/gl2count.hpp"
#include "ordinarium/hypell.hpp"
#include "ordinarium/modforms.hpp"
#include "ordinarium/number_field.hpp"
#include "ordinarium/parallel.hpp"
#include "ordinarium/permgrp.hpp"
#include "ordinarium/report.hpp"
#include "ordinarium/splitting.hpp"

namespace ordinarium::cli {

enum Exit : int { kOk = 0, kFail = 1, kUsage = 2 };

/// "1,0,1" -> 1 + x^2 (ascending coefficients).
inline IntPoly parse_poly(const std::string& s) {
  std::vector<BigInt> c;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char ch) { return std::isspace(ch); }), tok.end());
    BigInt v;
    if (tok.empty() || v.set_str(tok, 10) != 0) throw PreconditionError("bad polynomial coefficient '" + tok + "' in '" + s + "'");
    c.push_back(v);
  }
  require(!c.empty(), "empty polynomial");
  return IntPoly(c);
}

inline Partition parse_partition(const std::string& s) {
  Partition p;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      p.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw PreconditionError("bad partition part '" + tok + "'");
    }
  }
  return p;
}

/// "COEFFS:PREDICATE" or "COEFFS:partition:PARTS".
inline Clause parse_clause(const std::string& s) {
  const auto c1 = s.find(':');
  require(c1 != std::string::npos, "clause '" + s + "' must look like COEFFS:PREDICATE");
  const auto c2 = s.find(':', c1 + 1);
  Clause cl;
  cl.field = NumberField::make(parse_poly(s.substr(0, c1)));
  cl.predicate = parse_predicate(s.substr(c1 + 1, c2 == std::string::npos ? std::string::npos : c2 - c1 - 1));
  if (cl.predicate == Predicate::partition) {
    require(c2 != std::string::npos, "partition clause needs COEFFS:partition:PARTS");
    cl.partition = parse_partition(s.substr(c2 + 1));
  } else {
    require(c2 == std::string::npos, "unexpected trailing text in clause '" + s + "'");
  }
  return cl;
}

inline Rational parse_rational_arg(const std::string& s) {
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0) throw PreconditionError("bad rational '" + s + "'");
  r.canonicalize();
  return r;
}

inline Relation parse_relation(const std::string& s) {
  if (s == "approx" || s == "~") return Relation::approx;
  if (s == "at-least" || s == ">=") return Relation::at_least;
  if (s == "positive" || s == ">0") return Relation::positive;
  throw PreconditionError("unknown relation '" + s + "' (approx, at-least, positive)");
}

inline std::string fixed(double v, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

inline std::string coords_string(const NFElement& a) {
  std::string s;
  for (const auto& c : a.coords()) s += (s.empty() ? "" : " ") + c.get_str();
  return s;
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  unsigned threads = 1;
};

// Writes the CSV when a path was given.
inline void emit(const CsvTable& t, const std::string& path, const std::string& command, const nlohmann::json& config) {
  if (!path.empty()) write_text_file(path, t.str(report_footer(command, config)));
}

inline int print_density(Context& ctx, const DensityReport& r, const std::optional<PredictedBound>& expect) {
  ctx.out << r.label << ": " << r.hits << " / " << r.total;
  if (auto f = r.fraction()) ctx.out << " = " << fixed(*f);
  else ctx.out << " (undefined)";
  ctx.out << "\n";
  if (!expect) return kOk;
  const Comparison c = compare(r, *expect);
  ctx.out << "expected " << to_string(expect->relation) << " " << fixed(expect->value, 4) << ": " << to_string(c.outcome)
          << " (slack " << fixed(c.slack, 4) << ")\n";
  return c.outcome == Outcome::pass ? kOk : kFail;
}

// ---------------------------------------------------------------------------

struct SplitOpts {
  std::string field;
  std::vector<u64> primes;
  std::string out;
};

inline int cmd_split(Context& ctx, const SplitOpts& o) {
  const Field k = NumberField::make(parse_poly(o.field));
  CsvTable t({"p", "type", "inertia_partition", "certified"});
  for (u64 p : o.primes) {
    const SplittingType st = splitting_type(*k, p);
    if (o.primes.size() == 1) ctx.out << st.to_string() << "\n";
    else ctx.out << p << ": " << st.to_string() << "\n";
    std::string parts;
    for (int v : st.inertia_partition()) parts += (parts.empty() ? "" : " ") + std::to_string(v);
    t.add({std::to_string(p), st.to_string().substr(0, st.to_string().find(' ')), parts, st.certified ? "1" : "0"});
  }
  emit(t, o.out, "split", {{"field", k->defining_poly().to_coeff_string()}, {"primes", o.primes}});
  return kOk;
}

struct SearchOpts {
  std::vector<std::string> clauses;
  u64 lo = 2;
  u64 hi = 100000;
  u64 density_x = 0;
  std::string out;
};

inline int cmd_search(Context& ctx, const SearchOpts& o) {
  std::vector<Clause> cls;
  for (const auto& s : o.clauses) cls.push_back(parse_clause(s));
  const SearchCondition cond(cls);
  const SearchResult r = search_prime(cond, o.lo, o.hi);
  ctx.out << "witness: " << r.to_string() << "\n";
  ctx.out << "skipped (uncertified): " << r.skipped_uncertified << "\n";
  CsvTable t({"quantity", "value"});
  t.add({"witness", r.witness ? std::to_string(*r.witness) : ""});
  t.add({"skipped_uncertified", std::to_string(r.skipped_uncertified)});
  if (o.density_x) {
    const DensityReport d = joint_density_estimate(cond, o.density_x, ctx.threads);
    print_density(ctx, d, std::nullopt);
    t.add({"hits", std::to_string(d.hits)});
    t.add({"certified_total", std::to_string(d.total)});
    t.add({"fraction", d.fraction() ? fixed(*d.fraction()) : ""});
  }
  emit(t, o.out, "search-primes", {{"clauses", o.clauses}, {"lo", o.lo}, {"hi", o.hi}, {"density_x", o.density_x}});
  return kOk;
}

struct GroupOpts {
  std::vector<int> qs{2, 3};
  std::string out;
};

inline int cmd_group(Context& ctx, const GroupOpts& o) {
  CsvTable t({"q", "order", "generators", "witness"});
  bool ok = true;
  for (int q : o.qs) {
    const Transitive2qReport r = verify_transitive_2q(q);
    ctx.out << "S_" << 2 * q << ": " << r.total_subgroups << " subgroups, " << r.transitive.size() << " transitive ("
            << r.transitive_classes << " classes), cycle type (" << q << "," << q << ") in all: " << (r.all_pass ? "PASS" : "FAIL")
            << "\n";
    ok = ok && r.all_pass;
    for (const auto& e : r.transitive) {
      std::string gens;
      for (const auto& g : e.generators) gens += (gens.empty() ? "" : " ") + g.to_string();
      t.add({std::to_string(q), std::to_string(e.order), gens, e.witness ? e.witness->to_string() : ""});
    }
  }
  emit(t, o.out, "verify-group", {{"q", o.qs}});
  return ok ? kOk : kFail;
}

struct Gl2Opts {
  u64 lmax = 13;
  std::string out;
};

inline int cmd_gl2(Context& ctx, const Gl2Opts& o) {
  require(o.lmax >= 3, "--lmax must be at least 3");
  bool ok = true;
  for (u64 ell : primes_between(3, o.lmax)) {
    u64 total = 0;
    u64 mismatches = 0;
    const bool exhaustive = ell <= gl2::kTraceDetBudget;
    for (u64 tr = 0; tr < ell; ++tr)
      for (u64 det = 1; det < ell; ++det) {
        const u64 closed = gl2::count_trace_det(ell, tr, det);
        total += closed;
        if (exhaustive && closed != gl2::enumerate_trace_det(ell, tr, det)) ++mismatches;
      }
    const bool order_ok = total == gl2::gl2_order(ell);
    ok = ok && mismatches == 0 && order_ok;
    ctx.out << "ell = " << ell << ": trace-det census " << (exhaustive ? (mismatches == 0 ? "PASS" : "FAIL") : "closed form only")
            << ", order sum " << (order_ok ? "PASS" : "FAIL") << "\n";
  }
  for (auto [ell, n] : std::vector<std::pair<u64, u64>>{{5, 1}, {7, 2}, {11, 3}}) {
    if (ell > o.lmax) continue;
    const auto tv = gl2::find_valid_t(ell, n);
    const auto r = gl2::centralizer_check(ell, n, *tv);
    ok = ok && r.only_scalars && r.commutants.size() == ell - 1;
    ctx.out << "commutant (ell, n) = (" << ell << ", " << n << "): " << r.commutants.size() << " elements, "
            << (r.only_scalars ? "PASS" : "FAIL") << "\n";
  }
  CsvTable t({"ell", "g'", "d", "n", "c", "|C|", "|A|", "ratio", "ell*ratio"});
  const auto ells = primes_between(3, o.lmax);
  for (std::int64_t c : {0, 1, 2}) {
    const auto rep = gl2::ratio_bound_check({1, 1, 1, c}, ells, 4.0);
    for (const auto& row : rep.rows)
      t.add({std::to_string(row.ell), std::to_string(row.gp), std::to_string(row.d), std::to_string(row.n), std::to_string(row.c),
             std::to_string(row.size_c), row.size_a.get_str(), fixed(row.ratio), fixed(row.ell_ratio)});
    ok = ok && rep.pass;
    ctx.out << "ratio bound c = " << c << ": max ell*|C|/|A| = " << fixed(rep.kappa, 4) << " " << (rep.pass ? "PASS" : "FAIL") << "\n";
  }
  emit(t, o.out, "verify-gl2", {{"lmax", o.lmax}});
  ctx.out << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kOk : kFail;
}

struct CurveOpts {
  u64 p = 7;
  std::string t = "1";
  u64 lmax = 60;
  std::string mode = "dichotomy";
  u64 budget = kPointBudget;
  std::string out;
  std::string json;
};

inline nlohmann::json scan_row_json(const ScanRow& r) {
  nlohmann::json j{{"ell", r.ell}, {"status", to_string(r.verdict.status)}, {"outcome", r.outcome}};
  if (r.verdict.frobenius) {
    j["counts"] = nlohmann::json::array();
    for (const auto& n : r.verdict.frobenius->counts) j["counts"].push_back(n.get_str());
    j["charpoly"] = r.verdict.frobenius->charpoly.to_coeff_string();
  }
  if (r.norm) j["N"] = r.norm->get_str();
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline int cmd_curve(Context& ctx, const CurveOpts& o) {
  const ScanMode mode = parse_scan_mode(o.mode);
  const ScanConfig cfg{o.p, parse_rational_arg(o.t), o.lmax, o.budget, ctx.threads};
  const ScanReport rep = family_scan(mode, cfg);
  CsvTable t({"ell", "status", "middle_mod", "hw_rank", "N", "c", "outcome", "charpoly"});
  for (const auto& r : rep.rows) {
    const auto& v = r.verdict;
    t.add({std::to_string(r.ell), to_string(v.status), v.middle_mod ? std::to_string(*v.middle_mod) : "",
           v.hw_rank ? std::to_string(*v.hw_rank) : "", r.norm ? r.norm->get_str() : "", r.c ? r.c->get_str() : "", r.outcome,
           v.frobenius ? v.frobenius->charpoly.to_coeff_string() : ""});
  }
  const nlohmann::json config{{"p", o.p}, {"t", cfg.t.get_str()}, {"lmax", o.lmax}, {"mode", o.mode}, {"budget", o.budget}};
  emit(t, o.out, "curve-scan", config);

  ctx.out << "family p = " << o.p << ", t = " << cfg.t.get_str() << ", genus " << rep.genus << ", mode " << to_string(mode)
          << ", ell <= " << o.lmax << "\n";
  ctx.out << "checked " << rep.checked << ", passed " << rep.passed << ", skipped (bad reduction) " << rep.skipped_bad
          << ", unresolved " << rep.unresolved << ", excluded " << rep.excluded << ", exceptions " << rep.exceptions.size() << "\n";
  if (mode == ScanMode::density) print_density(ctx, rep.density, std::nullopt);
  if (mode == ScanMode::split && !rep.c_values.empty()) {
    ctx.out << "observed c:";
    for (const auto& [c, k] : rep.c_values) ctx.out << " " << c.get_str() << " (x" << k << ")";
    ctx.out << "\n";
  }
  for (const auto& e : rep.exceptions) ctx.out << "EXCEPTION " << scan_row_json(e).dump() << "\n";
  if (!o.json.empty()) {
    nlohmann::json j{{"summary",
                      {{"checked", rep.checked},
                       {"passed", rep.passed},
                       {"skipped_bad", rep.skipped_bad},
                       {"unresolved", rep.unresolved},
                       {"excluded", rep.excluded}}},
                     {"exceptions", nlohmann::json::array()}};
    for (const auto& e : rep.exceptions) j["exceptions"].push_back(scan_row_json(e));
    j["footer"] = report_footer("curve-scan", config);
    write_text_file(o.json, j.dump(2) + "\n");
  }
  ctx.out << (rep.pass() ? "PASS" : "FAIL") << "\n";
  return rep.pass() ? kOk : kFail;
}

struct FormOpts {
  std::string in;
  u64 xmax = 10000;
  std::string out;
  std::optional<double> expect;
  std::string relation = "approx";
};

inline int cmd_form(Context& ctx, const FormOpts& o) {
  const mf::NewformData f = mf::load(o.in);
  CsvTable t({"p", "a_p", "norm", "p_ordinary", "lambda_profile", "a_pg", "congruence"});
  bool ok = true;
  for (const auto& [p, a] : f.ap()) {
    if (p > o.xmax || f.level() % p == 0) continue;
    const bool ord = mf::is_p_ordinary(f, p);
    const Rational n = mf::integral_norm(a);
    const mf::LambdaProfile prof = mf::lambda_ordinary_profile(f, p);
    std::string profile = prof.certified ? "" : "uncertified";
    for (const auto& l : prof.lambdas) profile += (profile.empty() ? "" : " ") + std::string(l.ordinary ? "1" : "0");
    const mf::EichlerShimura es = mf::eichler_shimura_charpoly(f, p);
    // a_{p,g} = (-1)^g N(a_p) mod p, from expanding the product over embeddings.
    const BigInt signed_norm = f.degree() % 2 ? BigInt(-n.get_num()) : BigInt(n.get_num());
    const bool cong = reduce_mod(es.middle, p) == reduce_mod(signed_norm, p);
    const bool transfer = (reduce_mod(es.middle, p) != 0) == ord;
    ok = ok && cong && transfer;
    t.add({std::to_string(p), coords_string(a), n.get_str(), ord ? "1" : "0", profile, es.middle.get_str(),
           cong && transfer ? "ok" : "FAIL"});
  }
  const mf::OrdinaryDensity d = mf::ordinary_density(f, o.xmax);
  nlohmann::json config{{"in", o.in}, {"xmax", o.xmax}};
  std::optional<PredictedBound> expect;
  if (o.expect) {
    expect = PredictedBound{*o.expect, parse_relation(o.relation)};
    config["expect"] = *o.expect;
    config["relation"] = o.relation;
  }
  emit(t, o.out, "mf-ordinary", config);
  ctx.out << "level " << f.level() << ", [K_f:Q] = " << f.degree() << ", gaps " << d.gaps << "\n";
  ctx.out << "Eichler-Shimura congruence and ordinariness transfer: " << (ok ? "PASS" : "FAIL") << "\n";
  const int dens = print_density(ctx, d.report, expect);
  return ok && dens == kOk ? kOk : kFail;
}

struct DensityOpts {
  std::string source = "primes";
  u64 x = 10000;
  std::string field;
  std::string pred = "completely-split";
  std::string partition;
  u64 p = 7;
  std::string t = "1";
  std::string in;
  std::optional<double> expect;
  std::string relation = "approx";
  std::string out;
};

inline int cmd_density(Context& ctx, const DensityOpts& o) {
  nlohmann::json config{{"source", o.source}, {"x", o.x}};
  DensityReport r;
  if (o.source == "primes") {
    const PrimeCountingSanity s = prime_counting_sanity(o.x);
    ctx.out << "pi(" << s.x << ") = " << s.pi << ", ratio to X/log X = " << fixed(s.ratio, 4) << " "
            << (s.in_range ? "PASS" : "FAIL") << "\n";
    CsvTable t({"x", "pi", "ratio", "in_range"});
    t.add({std::to_string(s.x), std::to_string(s.pi), fixed(s.ratio), s.in_range ? "1" : "0"});
    emit(t, o.out, "density-report", config);
    return s.in_range ? kOk : kFail;
  }
  if (o.source == "field") {
    require(!o.field.empty(), "--field is required for --source field");
    std::string clause = o.field + ":" + o.pred;
    if (!o.partition.empty()) clause += ":" + o.partition;
    r = joint_density_estimate(SearchCondition({parse_clause(clause)}), o.x, ctx.threads);
    r.label = o.pred;
    config["field"] = o.field;
    config["pred"] = o.pred;
    if (!o.partition.empty()) config["partition"] = o.partition;
  } else if (o.source == "family") {
    r = density_scan(o.p, parse_rational_arg(o.t), o.x, ctx.threads);
    config["p"] = o.p;
    config["t"] = parse_rational_arg(o.t).get_str();
  } else if (o.source == "form") {
    require(!o.in.empty(), "--in is required for --source form");
    r = mf::ordinary_density(mf::load(o.in), o.x).report;
    config["in"] = o.in;
  } else {
    throw PreconditionError("unknown --source '" + o.source + "' (primes, field, family, form)");
  }
  std::optional<PredictedBound> expect;
  if (o.expect) {
    expect = PredictedBound{*o.expect, parse_relation(o.relation)};
    config["expect"] = *o.expect;
    config["relation"] = o.relation;
  }
  CsvTable t({"label", "x", "hits", "total", "fraction", "outcome"});
  const int rc = print_density(ctx, r, expect);
  t.add({r.label, std::to_string(r.x), std::to_string(r.hits), std::to_string(r.total), r.fraction() ? fixed(*r.fraction()) : "",
         expect ? to_string(compare(r, *expect).outcome) : ""});
  emit(t, o.out, "density-report", config);
  return rc;
}

// ---------------------------------------------------------------------------

/// Parses args (without the program name) and runs one subcommand.
/// Exit codes: 0 success, 1 verification failure, 2 usage error.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ordinarium: ordinary primes of GL2-type abelian varieties", "ordinarium"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "TOML file with one [subcommand] table; flags override it");
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (default: ORDINARIUM_THREADS or 1)");

  SplitOpts split;
  auto* s_split = app.add_subcommand("split", "splitting type of p in Q[x]/(f)");
  s_split->add_option("--field", split.field, "defining polynomial, ascending coefficients")->required();
  s_split->add_option("--prime", split.primes, "prime(s)")->required();
  s_split->add_option("--out", split.out, "CSV output path");

  SearchOpts search;
  auto* s_search = app.add_subcommand("search-primes", "least prime satisfying splitting conditions");
  s_search->add_option("--clause", search.clauses, "COEFFS:PREDICATE or COEFFS:partition:PARTS")->required();
  s_search->add_option("--lo", search.lo, "start of the range");
  s_search->add_option("--hi", search.hi, "end of the range");
  s_search->add_option("--density", search.density_x, "also estimate the joint density up to X");
  s_search->add_option("--out", search.out, "CSV output path");

  GroupOpts group;
  auto* s_group = app.add_subcommand("verify-group", "transitive subgroups of S_2q contain a (q,q) element");
  s_group->add_option("--q", group.qs, "q values (2 and/or 3)");
  s_group->add_option("--out", group.out, "CSV output path");

  Gl2Opts gl2o;
  auto* s_gl2 = app.add_subcommand("verify-gl2", "GL_2(F_ell) counting checks");
  s_gl2->add_option("--lmax", gl2o.lmax, "largest ell");
  s_gl2->add_option("--out", gl2o.out, "CSV output path");

  CurveOpts curve;
  auto* s_curve = app.add_subcommand("curve-scan", "ordinariness scans over the hyperelliptic family");
  s_curve->add_option("--p", curve.p, "family prime (odd, not 5)");
  s_curve->add_option("--t", curve.t, "parameter t (integer or num/den)");
  s_curve->add_option("--lmax", curve.lmax, "largest ell");
  s_curve->add_option("--mode", curve.mode, "dichotomy, split or density");
  s_curve->add_option("--budget", curve.budget, "point-count budget on ell^i");
  s_curve->add_option("--out", curve.out, "CSV output path");
  s_curve->add_option("--json", curve.json, "JSON exception report path");

  FormOpts form;
  auto* s_form = app.add_subcommand("mf-ordinary", "ordinariness of newform coefficient data");
  s_form->add_option("--in", form.in, "newform JSON")->required();
  s_form->add_option("--xmax", form.xmax, "largest prime");
  s_form->add_option("--out", form.out, "CSV output path");
  s_form->add_option("--expect", form.expect, "predicted ordinary density");
  s_form->add_option("--relation", form.relation, "approx, at-least or positive");

  DensityOpts dens;
  auto* s_dens = app.add_subcommand("density-report", "density estimates against predicted bounds");
  s_dens->add_option("--source", dens.source, "primes, field, family or form");
  s_dens->add_option("--x", dens.x, "upper bound X (ell_max for family)");
  s_dens->add_option("--field", dens.field, "defining polynomial (source field)");
  s_dens->add_option("--pred", dens.pred, "splitting predicate (source field)");
  s_dens->add_option("--partition", dens.partition, "parts for --pred partition");
  s_dens->add_option("--p", dens.p, "family prime (source family)");
  s_dens->add_option("--t", dens.t, "family parameter (source family)");
  s_dens->add_option("--in", dens.in, "newform JSON (source form)");
  s_dens->add_option("--expect", dens.expect, "predicted density");
  s_dens->add_option("--relation", dens.relation, "approx, at-least or positive");
  s_dens->add_option("--out", dens.out, "CSV output path");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    Context ctx{out, err, threads ? threads : threads_from_env()};
    if (s_split->parsed()) return cmd_split(ctx, split);
    if (s_search->parsed()) return cmd_search(ctx, search);
    if (s_group->parsed()) return cmd_group(ctx, group);
    if (s_gl2->parsed()) return cmd_gl2(ctx, gl2o);
    if (s_curve->parsed()) return cmd_curve(ctx, curve);
    if (s_form->parsed()) return cmd_form(ctx, form);
    if (s_dens->parsed()) return cmd_density(ctx, dens);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const OracleMismatch& e) {
    err << "oracle mismatch: " << e.what() << "\n";
    return kFail;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}

}  // namespace ordinarium::cli
