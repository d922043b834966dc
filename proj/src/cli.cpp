#include "anticyc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "anticyc/arith.hpp"
#include "anticyc/arithstat.hpp"
#include "anticyc/curve.hpp"
#include "anticyc/decimal.hpp"
#include "anticyc/density.hpp"
#include "anticyc/errors.hpp"
#include "anticyc/indefinite.hpp"
#include "anticyc/ingest.hpp"
#include "anticyc/iwasawa.hpp"
#include "anticyc/local.hpp"
#include "anticyc/modp.hpp"
#include "anticyc/quadfield.hpp"

namespace anticyc {
namespace {

using ojson = nlohmann::ordered_json;

struct Table {
  std::string name;
  std::vector<std::string> cols;
  std::vector<std::vector<ojson>> rows;

  void add(std::vector<ojson> row) { rows.push_back(std::move(row)); }
};

struct OutputSpec {
  std::string format = "csv";
  std::string output;
  int decimals = 16;
  bool truncate = false;
};

std::string csv_cell(const ojson& v) {
  std::string s;
  if (v.is_null()) return "";
  if (v.is_string()) s = v.get<std::string>();
  else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ' ';
      s += v[i].is_string() ? v[i].get<std::string>() : v[i].dump();
    }
  } else s = v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return s;
}

void render(const std::vector<Table>& tables, const OutputSpec& spec, std::ostream& os) {
  if (spec.format == "json") {
    ojson doc = ojson::object();
    for (const auto& t : tables) {
      ojson rows = ojson::array();
      for (const auto& r : t.rows) {
        ojson o = ojson::object();
        for (std::size_t i = 0; i < t.cols.size(); ++i) o[t.cols[i]] = r[i];
        rows.push_back(o);
      }
      doc[t.name] = rows;
    }
    os << doc.dump(1) << "\n";
    return;
  }
  bool sections = tables.size() > 1;
  for (std::size_t k = 0; k < tables.size(); ++k) {
    const auto& t = tables[k];
    if (sections) os << (k ? "\n" : "") << "# " << t.name << "\n";
    for (std::size_t i = 0; i < t.cols.size(); ++i) os << (i ? "," : "") << t.cols[i];
    os << "\n";
    for (const auto& r : t.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
      os << "\n";
    }
  }
}

std::string dec(const Rat& q, const OutputSpec& o) {
  return o.truncate ? decimal_trunc(q, o.decimals) : decimal_round(q, o.decimals);
}

std::string dec(long double v, const OutputSpec& o) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(std::min(o.decimals, 18)) << v;
  return os.str();
}

ojson big(const Int& n) {
  if (n.fits_slong_p()) return ojson(static_cast<std::int64_t>(n.get_si()));
  return ojson(n.get_str());
}

ojson u64_list(const std::vector<std::uint64_t>& v) { return ojson(v); }

template <class Set>
ojson set_list(const Set& s) {
  return ojson(std::vector<std::uint64_t>(s.begin(), s.end()));
}

struct Resolved {
  CurveQ curve;
  std::optional<CurveRecord> record;
  std::string name;
};

CurveStore make_store(const std::string& cache_dir, bool offline) {
  StoreOptions o = StoreOptions::from_env();
  if (!cache_dir.empty()) o.cache_dir = cache_dir;
  o.offline = o.offline || offline;
  return CurveStore(o);
}

// A fixture label, or "[a1,a2,a3,a4,a6]" / "[A,B]".
Resolved resolve(CurveStore& store, const std::string& spec) {
  if (!spec.empty() && spec.front() == '[') {
    if (spec.back() != ']') fail(ErrorCode::InvalidArgument, "bad curve literal " + spec);
    std::vector<Int> v;
    std::stringstream ss(spec.substr(1, spec.size() - 2));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
      try {
        v.emplace_back(tok);
      } catch (const std::exception&) {
        fail(ErrorCode::InvalidArgument, "bad integer '" + tok + "' in " + spec);
      }
    }
    Resolved r;
    if (v.size() == 2) r.curve = CurveQ::short_form(v[0], v[1]);
    else if (v.size() == 5) r.curve = CurveQ(v[0], v[1], v[2], v[3], v[4]);
    else fail(ErrorCode::InvalidArgument, "curve literal needs 2 or 5 integers: " + spec);
    if (r.curve.disc() == 0) fail(ErrorCode::InvalidArgument, "singular curve " + spec);
    r.name = r.curve.str();
    return r;
  }
  Resolved r;
  r.record = store.fetch_curve(spec);
  r.curve = r.record->curve();
  r.name = spec;
  return r;
}

const CurveRecord& need_record(const Resolved& r, const char* what) {
  if (!r.record) fail(ErrorCode::MissingData, std::string(what) + " needs ingested data; pass a curve label");
  return *r.record;
}

KData q_data(const CurveRecord& rec) {
  KData k;
  k.rank_Q = rec.rank;
  k.sha_Q = rec.sha_order;
  k.torsion_Q = rec.torsion_structure;
  k.source = "ingested (" + rec.source + ")";
  return k;
}

std::uint64_t field_d(std::int64_t d) {
  if (d == 0) fail(ErrorCode::InvalidArgument, "--d must be nonzero");
  return static_cast<std::uint64_t>(d < 0 ? -d : d);
}

const char* kCondNames[7] = {"p_splits",   "level_splits", "good_ordinary",     "p_coprime_6NphiNh",
                             "ap_not_pm1", "surjective",   "ramified_at_level"};

int exit_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument:
      return kExitUsage;
    case ErrorCode::MissingData:
    case ErrorCode::MissingTwist:
    case ErrorCode::MissingGenerator:
    case ErrorCode::NotFound:
    case ErrorCode::NetworkUnavailable:
      return kExitDataMissing;
    case ErrorCode::BadReduction:
    case ErrorCode::SmallPrime:
    case ErrorCode::NonMinimalModel:
    case ErrorCode::RamifiedBadPrime:
    case ErrorCode::AdditiveBadPrime:
    case ErrorCode::HypothesisFailed:
    case ErrorCode::InExceptionalSet:
    case ErrorCode::NotAdmissible:
    case ErrorCode::PointAtInfinity:
      return kExitHypothesis;
    default:
      return kExitFailure;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"anticyc: anticyclotomic Iwasawa invariant calculator"};
  app.require_subcommand(1);
  app.fallthrough();

  OutputSpec ospec;
  unsigned jobs = 0;
  bool offline = false;
  std::string cache_dir;
  app.add_option("--format", ospec.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output,-o", ospec.output, "write to this file instead of stdout");
  app.add_option("--decimals", ospec.decimals, "decimal places for ratios")->check(CLI::Range(1, 200));
  app.add_flag("--truncate", ospec.truncate, "truncate decimals instead of rounding");
  app.add_option("--jobs,-j", jobs, "worker threads (0 = all cores)");
  app.add_flag("--offline", offline, "never touch the network");
  app.add_option("--cache-dir", cache_dir, "record cache directory");

  std::string curve_arg;
  std::vector<std::string> labels;
  std::uint64_t p = 0, pmin = 7, pmax = 0, dmax = 0, lmax = 10000, x = 0, range = 0;
  std::int64_t d = 0, disc = 0;
  int precision = 6;
  std::string sha = "1", alpha = "1", tau = "1", torsion = "1", setting = "anticyclotomic";
  std::vector<std::uint64_t> torsion_primes;

  auto* ap = app.add_subcommand("ap", "a_p, #E(F_p) and #E(F_p^2)");
  ap->add_option("curve", curve_arg)->required();
  ap->add_option("--p", p);
  ap->add_option("--pmax", pmax);

  auto* anom = app.add_subcommand("anomalous", "Q- and K-anomalous primes 7 <= p <= pmax");
  anom->add_option("curve", curve_arg)->required();
  anom->add_option("--d", d)->required();
  anom->add_option("--pmax", pmax)->default_val(500);

  auto* ridg = app.add_subcommand("ridgdill", "rational torsion versus Q-anomalous primes");
  ridg->add_option("curve", curve_arg)->required();
  ridg->add_option("--pmax", pmax)->default_val(500);
  ridg->add_option("--torsion", torsion_primes, "torsion primes for a literal curve")->delimiter(',');

  auto* dens = app.add_subcommand("density", "k, delta(S) and the residue classes r_Omega");
  dens->add_option("curve", curve_arg)->required();
  dens->add_option("--p", p)->required();

  auto* crs = app.add_subcommand("cr-scan", "empirical density of primes d satisfying (CR)");
  crs->add_option("curve", curve_arg)->required();
  crs->add_option("--p", p)->required();
  crs->add_option("--dmax", dmax)->default_val(100000);

  auto* t2 = app.add_subcommand("table2", "#S_p, #T_p and #S_p/p^2");
  t2->add_option("--pmin", pmin)->default_val(7);
  t2->add_option("--pmax", pmax)->default_val(149);

  auto* bnd = app.add_subcommand("bounds", "explicit density bounds and Cohen-Lenstra f0");
  bnd->add_option("--p", p)->required();
  bnd->add_option("--d", d);
  bnd->add_option("--lmax", lmax)->default_val(10000);

  auto* eul = app.add_subcommand("euler", "Euler characteristic and its classification");
  eul->add_option("curve", curve_arg);
  eul->add_option("--p", p)->required();
  eul->add_option("--d", d);
  eul->add_option("--sha", sha);
  eul->add_option("--alpha", alpha);
  eul->add_option("--tau", tau);
  eul->add_option("--torsion", torsion);
  eul->add_option("--setting", setting)->check(CLI::IsMember({"cyclotomic", "anticyclotomic"}));

  auto* t48 = app.add_subcommand("thm48", "vanishing from K-anomaly (rank 0 over K)");
  t48->add_option("curve", curve_arg)->required();
  t48->add_option("--d", d)->required();
  t48->add_option("--p", p)->required();

  auto* t74 = app.add_subcommand("thm74", "Sel = 0 over K^d_inf versus Sha(E/K^d)[p] = 0");
  t74->add_option("curve", curve_arg)->required();
  t74->add_option("--d", d)->required();
  t74->add_option("--p", p)->required();

  auto* adm = app.add_subcommand("admissible", "the seven admissibility conditions");
  adm->add_option("curve", curve_arg)->required();
  adm->add_option("--d", d)->required();
  adm->add_option("--p", p)->required();

  auto* heeg = app.add_subcommand("heegner", "v_p of the p-adic log of a generator");
  heeg->add_option("curve", curve_arg)->required();
  heeg->add_option("--d", d)->required();
  heeg->add_option("--p", p)->required();
  heeg->add_option("--precision", precision)->default_val(6);

  auto* cls = app.add_subcommand("classnumber", "class numbers of imaginary quadratic fields");
  cls->add_option("--d", d, "K = Q(sqrt(-d))");
  cls->add_option("--disc", disc, "fundamental discriminant D < 0");
  cls->add_option("--range", range, "every fundamental D with -range < D < 0");

  auto* shs = app.add_subcommand("sha-scan", "odd Sha frequencies over K^d, 5 <= d <= 150");
  shs->add_option("labels", labels);
  shs->add_option("--dmax", dmax)->default_val(150);

  auto* hs = app.add_subcommand("height-scan", "E2/E3 membership counts for H(E) <= x");
  hs->add_option("--x", x)->required();
  hs->add_option("--p", p)->required();
  hs->add_option("--d", d);

  auto* fet = app.add_subcommand("fetch", "fetch (or load) a curve record");
  fet->add_option("labels", labels)->required();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::vector<Table> tables;
  try {
    CurveStore store = make_store(cache_dir, offline);

    if (ap->parsed()) {
      Resolved r = resolve(store, curve_arg);
      Table t{"ap", {"p", "a_p", "n_p", "ordinary", "n_p2"}, {}};
      auto emit = [&](std::uint64_t q) {
        TraceRecord tr = trace_at(r.curve, q);
        t.add({tr.p, tr.a_p, tr.n_p, tr.ordinary, big(count_points_fp2(tr))});
      };
      if (p) emit(p);
      else {
        if (!pmax) fail(ErrorCode::InvalidArgument, "give --p or --pmax");
        Int D = r.curve.disc();
        for (auto q : primes_up_to(pmax))
          if (mod_u64(D, q) != 0) emit(q);
      }
      tables.push_back(t);
    } else if (anom->parsed()) {
      Resolved r = resolve(store, curve_arg);
      std::uint64_t dd = field_d(d);
      QuadField K(dd);
      AnomalousScan s = anomalous_scan(r.curve, dd, pmax, jobs);
      Table t{"primes", {"p", "a_p", "splitting", "q_anomalous", "k_anomalous"}, {}};
      unsigned nq = 0, nk = 0;
      for (const auto& rec : s.records) {
        t.add({rec.p, rec.a_p, splitting_name(splitting(rec.p, K)), rec.q_anomalous, rec.k_anomalous});
        nq += rec.q_anomalous;
        nk += rec.k_anomalous;
      }
      Table sk{"skipped", {"p", "reason"}, {}};
      for (auto q : s.bad_primes) sk.add({q, "bad_reduction"});
      for (auto q : s.ramified_primes) sk.add({q, "ramified"});
      Table sum{"summary", {"curve", "d", "pmax", "classified", "q_anomalous", "k_anomalous"}, {}};
      sum.add({r.name, dd, pmax, s.records.size(), nq, nk});
      tables = {sum, t, sk};
    } else if (ridg->parsed()) {
      Resolved r = resolve(store, curve_arg);
      std::vector<std::uint64_t> ells = torsion_primes;
      if (ells.empty()) {
        const CurveRecord& rec = need_record(r, "ridgdill");
        Int order = 1;
        for (auto n : rec.torsion_structure) order *= static_cast<unsigned long>(n);
        ells = prime_divisors_u64(order);
      }
      Int N = r.record ? r.record->conductor : conductor(r.curve);
      Table t{"ridgdill", {"curve", "torsion_prime", "checked", "q_anomalous", "congruence_failures", "ridgdill"}, {}};
      AnomalousScan s = anomalous_scan(r.curve, 1, pmax, jobs);
      for (auto ell : ells) {
        unsigned checked = 0, qa = 0, bad = 0;
        for (const auto& rec : s.records) {
          if (rec.p == ell || mod_u64(N, rec.p) == 0) continue;
          ++checked;
          qa += rec.q_anomalous;
          bad += (static_cast<std::int64_t>(rec.p) + 1 - rec.a_p) % static_cast<std::int64_t>(ell) != 0;
        }
        t.add({r.name, ell, checked, qa, bad, qa == 0});
      }
      tables.push_back(t);
    } else if (dens->parsed()) {
      Resolved r = resolve(store, curve_arg);
      CRContext ctx = compute_k(r.curve, p);
      DensityResult dr = delta_S(ctx);
      std::vector<std::uint64_t> exc(ctx.bad_primes.begin(), ctx.bad_primes.begin() + ctx.k);
      std::vector<std::uint64_t> sorted = ctx.bad_primes;
      std::sort(sorted.begin(), sorted.end());
      Table c{"context", {"curve", "p", "N", "t", "k", "delta", "n_count", "delta_omega", "bad_primes", "exceptional"}, {}};
      c.add({r.name, p, big(ctx.N), ctx.t, ctx.k, str(dr.delta), big(dr.n_count), str(dr.delta_omega), u64_list(sorted),
             u64_list(exc)});
      Table om{"omega", {"omega", "size", "residues"}, {}};
      for (const auto& o : admissible_omegas(ctx)) {
        auto cls = residue_classes(ctx, o);
        om.add({u64_list(o.primes()), cls.size(), set_list(cls)});
      }
      Table in{"inert_classes", {"q", "modulus", "criterion", "residues"}, {}};
      Table dis{"discrepancy", {"q", "modulus", "residues"}, {}};
      for (auto q : sorted) {
        if (q == 2) continue;
        InertClassSets s = inert_class_sets(q);
        in.add({q, s.modulus, "jacobi", set_list(s.jacobi)});
        in.add({q, s.modulus, "discriminant", set_list(s.discriminant)});
        dis.add({q, s.modulus, set_list(s.discrepancy)});
      }
      tables = {c, om, in, dis};
    } else if (crs->parsed()) {
      Resolved r = resolve(store, curve_arg);
      CRContext ctx = compute_k(r.curve, p);
      CRScan s = cr_scan(ctx, dmax, jobs);
      DensityResult dr = delta_S(ctx);
      Table t{"cr_scan", {"curve", "p", "dmax", "in_S", "primes", "density", "delta_S"}, {}};
      t.add({r.name, p, dmax, s.in_S, s.primes, s.density ? ojson(dec(*s.density, ospec)) : ojson(nullptr),
             str(dr.delta)});
      tables.push_back(t);
    } else if (t2->parsed()) {
      Table t{"table2", {"p", "frakS", "frakT", "ratio"}, {}};
      for (auto q : primes_in(pmin, pmax)) {
        FamilyScanResult fr = frak_S(q, jobs);
        t.add({q, fr.frak_S, fr.frak_T, dec(fr.ratio_S, ospec)});
      }
      tables.push_back(t);
    } else if (bnd->parsed()) {
      std::optional<QuadField> K;
      if (d) K.emplace(field_d(d));
      TamagawaBound tb = tamagawa_density_bound(p, K, lmax);
      Approx f0 = cohen_lenstra_f0(p);
      Table t{"bounds",
              {"p", "d", "lmax", "tamagawa_partial_sum", "dominating_sum", "zeta_p_minus_1", "E3_bound", "cohen_lenstra_f0"},
              {}};
      ojson E3 = p >= 7 ? ojson(dec(E3_bound(p, K, jobs), ospec)) : ojson(nullptr);
      t.add({p, K ? ojson(K->d()) : ojson(nullptr), lmax, dec(tb.partial_sum, ospec), dec(tb.dominating, ospec),
             dec(tb.zeta_bound, ospec), E3, dec(f0.value, ospec)});
      tables.push_back(t);
    } else if (eul->parsed()) {
      EulerCharInputs in;
      std::string name = "manual";
      if (!curve_arg.empty()) {
        Resolved r = resolve(store, curve_arg);
        const CurveRecord& rec = need_record(r, "euler");
        name = r.name;
        if (d) {
          QuadField K(field_d(d));
          in = anticyclotomic_inputs(r.curve, K, p, store.kdata(r.name, static_cast<std::int64_t>(K.d())));
        } else {
          in = cyclotomic_inputs(r.curve, p, q_data(rec));
        }
      } else {
        in.p = p;
        in.sha_p = Int(sha);
        in.alpha_p = Int(alpha);
        in.tau = Int(tau);
        in.torsion_p = Int(torsion);
        in.setting = setting == "cyclotomic" ? Setting::CyclotomicQ : Setting::AnticyclotomicK;
        in.notes = {"all factors supplied on the command line"};
      }
      Int chi = euler_characteristic(in);
      VanishingReport rep = classify(chi, p);
      Table t{"euler",
              {"curve", "p", "setting", "sha_p", "alpha_p", "tau", "torsion_p", "chi", "mu_lambda_zero", "selmer_trivial",
               "notes"},
              {}};
      std::vector<std::string> notes = in.notes;
      notes.insert(notes.end(), rep.notes.begin(), rep.notes.end());
      std::string joined;
      for (const auto& n : notes) joined += (joined.empty() ? "" : "; ") + n;
      t.add({name, p, in.setting == Setting::CyclotomicQ ? "cyclotomic" : "anticyclotomic", big(in.sha_p),
             big(in.alpha_p), big(in.tau), big(in.torsion_p), big(chi), rep.mu_zero_and_lambda_zero, rep.selmer_trivial,
             joined});
      tables.push_back(t);
    } else if (t48->parsed()) {
      Resolved r = resolve(store, curve_arg);
      need_record(r, "thm48");
      QuadField K(field_d(d));
      Theorem48Report rep = theorem48_decide(r.curve, K, p, store.kdata(r.name, static_cast<std::int64_t>(K.d())));
      Table t{"thm48", {"curve", "d", "p", "a_p", "splitting", "k_anomalous", "chi", "mu_lambda_zero", "selmer_trivial"}, {}};
      t.add({r.name, K.d(), p, rep.a_p, splitting_name(rep.split), rep.k_anomalous, big(rep.report.chi),
             rep.report.mu_zero_and_lambda_zero, rep.report.selmer_trivial});
      tables.push_back(t);
    } else if (t74->parsed()) {
      Resolved r = resolve(store, curve_arg);
      need_record(r, "thm74");
      std::uint64_t dd = field_d(d);
      Theorem74Report rep = theorem74_decide(r.curve, dd, p, store.kdata(r.name, static_cast<std::int64_t>(dd)));
      std::string joined;
      for (const auto& n : rep.notes) joined += (joined.empty() ? "" : "; ") + n;
      Table t{"thm74", {"curve", "d", "p", "a_p", "chi_Q", "sha_K_p", "selmer_trivial", "notes"}, {}};
      t.add({r.name, rep.d, rep.p, rep.a_p, big(rep.chi_Q), rep.sha_K_p ? big(*rep.sha_K_p) : ojson(nullptr),
             rep.selmer_trivial ? ojson(*rep.selmer_trivial) : ojson(nullptr), joined});
      tables.push_back(t);
    } else if (adm->parsed()) {
      Resolved r = resolve(store, curve_arg);
      QuadField K(field_d(d));
      ImageData img;
      if (r.record) img.nonmaximal_primes = r.record->nonmaximal_primes;
      AdmissibilityReport rep = admissible(r.curve, K, p, img);
      Table c{"conditions", {"index", "condition", "value", "provenance", "detail"}, {}};
      for (std::size_t i = 0; i < 7; ++i) {
        const Condition& k = rep.conditions[i];
        c.add({i + 1, kCondNames[i], tri_name(k.value), provenance_name(k.source), k.detail});
      }
      Table s{"summary", {"curve", "d", "p", "admissible", "undecided"}, {}};
      s.add({r.name, K.d(), p, rep.admissible, rep.undecided});
      tables = {s, c};
    } else if (heeg->parsed()) {
      Resolved r = resolve(store, curve_arg);
      need_record(r, "heegner");
      std::uint64_t dd = field_d(d);
      HeegnerInput in = store.heegner_input(r.name, static_cast<std::int64_t>(dd), p);
      int rk = store.rank_over_K({r.name, static_cast<std::int64_t>(dd)});
      Theorem109Report rep = heegner_report(in, store.image_data(r.name), rk, precision);
      std::string joined;
      for (const auto& n : rep.notes) joined += (joined.empty() ? "" : "; ") + n;
      Table t{"heegner",
              {"curve", "d", "p", "v_log", "unit", "certified_precision", "invariants_vanish", "bdp_valuation",
               "admissible", "point_on", "notes"},
              {}};
      t.add({r.name, dd, p, rep.v_log, rep.unit, rep.certified_precision, rep.invariants_vanish,
             rep.bdp_constant_valuation, rep.admissibility.admissible, in.on_twist ? "twist" : "curve", joined});
      tables.push_back(t);
    } else if (cls->parsed()) {
      Table t{"classnumber", {"D", "d", "h"}, {}};
      auto emit = [&](const QuadField& K) { t.add({K.disc(), K.d(), K.class_number()}); };
      if (range) {
        for (std::int64_t D = -1; D > -static_cast<std::int64_t>(range); --D)
          if (is_fundamental_discriminant(D)) emit(QuadField::from_discriminant(D));
      } else if (disc) {
        emit(QuadField::from_discriminant(disc));
      } else if (d) {
        emit(QuadField(field_d(d)));
      } else {
        fail(ErrorCode::InvalidArgument, "give --d, --disc or --range");
      }
      tables.push_back(t);
    } else if (shs->parsed()) {
      if (labels.empty()) labels = store.fixture_labels();
      Table t{"sha_scan", {"curve", "disc", "p3", "p5", "p_ge7", "eligible_d", "missing_d"}, {}};
      Table detail{"sha_odd", {"curve", "d", "sha_odd"}, {}};
      for (const auto& label : labels) {
        ShaRow row = sha_frequency_row(store, label, 5, dmax);
        t.add({label, row.eligible.size(), row.with3, row.with5, row.with_ge7, u64_list(row.eligible),
               u64_list(row.missing)});
        for (const auto& [dd, s] : row.sha_odd) detail.add({label, dd, big(s)});
      }
      tables = {t, detail};
    } else if (hs->parsed()) {
      std::optional<QuadField> K;
      if (d) K.emplace(field_d(d));
      HeightScanCounts c = height_scan(x, p, K, jobs);
      Table t{"height_scan", {"x", "p", "d", "total", "e2", "e3", "dagger_excluded"}, {}};
      t.add({x, p, K ? ojson(K->d()) : ojson(nullptr), c.total, c.e2, c.e3, c.dagger_excluded});
      tables.push_back(t);
    } else if (fet->parsed()) {
      Table t{"records", {"label", "ainvs", "conductor", "rank", "torsion", "twists", "source"}, {}};
      std::vector<CurveRecord> recs;
      for (const auto& label : labels) recs.push_back(store.fetch_curve(label));
      if (ospec.format == "json" && recs.size() == 1 && ospec.output.empty()) {
        out << serialize(recs[0]);
        return kExitOk;
      }
      for (const auto& rec : recs) {
        t.add({rec.label, rec.curve().str(), big(rec.conductor), rec.rank, u64_list(rec.torsion_structure),
               rec.twists.size(), rec.source});
      }
      tables.push_back(t);
    }
  } catch (const Error& e) {
    err << "error [" << code_name(e.code()) << "]: " << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }

  if (ospec.output.empty()) {
    render(tables, ospec, out);
  } else {
    std::ofstream file(ospec.output, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << ospec.output << "\n";
      return kExitFailure;
    }
    render(tables, ospec, file);
  }
  return kExitOk;
}

}  // namespace anticyc
