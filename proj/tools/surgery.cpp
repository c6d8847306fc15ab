// Command-line front end: exact d-invariants, Dedekind sums, Casson-Walker
// invariants, Seifert reductions, plumbing lattice maximization and the
// distance-one surgery obstruction pipeline. All numeric I/O is decimal
// integers and "n/d" rationals; no floating point anywhere.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "surgery/casson.hpp"
#include "surgery/lens.hpp"
#include "surgery/obstruction.hpp"
#include "surgery/plumbing.hpp"
#include "surgery/report.hpp"
#include "surgery/seifert.hpp"
#include "surgery/version.hpp"

namespace fs = std::filesystem;
using namespace surgery;

namespace {

int64_t checked_pos_mod(int64_t a, int64_t m) {
  int64_t r = a % m;
  return r < 0 ? r + m : r;
}

lens::OrientedLensSpace parse_lens(int64_t p, int64_t q) {
  if (p == 0) throw std::domain_error("lens order 0 is degenerate");
  int sign = p < 0 ? -1 : 1;
  int64_t pa = p < 0 ? -p : p;
  if (pa == 1) return {sign, lens::LensSpace::s3()};
  return {sign, lens::LensSpace(pa, checked_pos_mod(q, pa))};
}

void atomic_write(const fs::path& path, const std::string& data) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + tmp.string());
    os << data;
  }
  fs::rename(tmp, path);
}

struct CheckOptions {
  std::string format = "text";
  bool allow_small_q = false;
  obstruction::Toggles toggles;
};

void emit_reports(const std::vector<obstruction::ObstructionReport>& reps,
                  const std::string& format, std::ostream& os) {
  if (format == "csv") {
    os << report::kCsvHeader << "\n";
    for (const auto& r : reps)
      for (const auto& row : report::to_csv_rows(r)) os << row << "\n";
  } else if (format == "jsonl" || format == "json") {
    for (const auto& r : reps) os << report::to_json_line(r) << "\n";
  } else {
    for (const auto& r : reps) os << report::to_text(r);
  }
}

std::string render_reports(const std::vector<obstruction::ObstructionReport>& reps,
                           const std::string& format) {
  std::ostringstream os;
  emit_reports(reps, format, os);
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact distance-one surgery obstruction toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  // ---- d -------------------------------------------------------------
  auto* cmd_d = app.add_subcommand("d", "correction term d(L(p,q), t)");
  std::vector<int64_t> d_lens_args;
  int64_t d_label = 0;
  bool d_trace = false;
  cmd_d->add_option("--lens", d_lens_args, "lens space parameters p q (p < 0 reverses orientation)")
      ->expected(2)
      ->required();
  cmd_d->add_option("--t", d_label, "Spin^c label in [0, |p|-1]")->required();
  cmd_d->add_flag("--trace", d_trace, "print the recursion trace");

  // ---- dedekind --------------------------------------------------------
  auto* cmd_ded = app.add_subcommand("dedekind", "Dedekind sum s(b,a)");
  int64_t ded_b = 0, ded_a = 0;
  cmd_ded->add_option("b", ded_b, "first argument")->required();
  cmd_ded->add_option("a", ded_a, "modulus, a >= 1")->required();

  // ---- casson-walker ---------------------------------------------------
  auto* cmd_cw = app.add_subcommand("casson-walker", "Casson-Walker invariant");
  std::vector<int64_t> cw_lens, cw_seifert;
  cmd_cw->add_option("--lens", cw_lens, "lambda(L(a,b)) for a > b > 0 (a < 0 reverses)")->expected(2);
  cmd_cw->add_option("--seifert", cw_seifert,
                     "lambda of M(0,0;1/k,1/(p-k),1/(m-k)) given p m k")
      ->expected(3);

  // ---- seifert ---------------------------------------------------------
  auto* cmd_sf = app.add_subcommand("seifert", "Seifert fibration utilities");
  cmd_sf->require_subcommand(1);
  std::vector<int64_t> sf_pkm;
  std::vector<std::string> sf_fibers;
  auto add_fib_opts = [&](CLI::App* c) {
    c->add_option("--pkm", sf_pkm, "surgery parameters p k m for the simple knot")->expected(3);
    c->add_option("--fiber", sf_fibers, "extra fiber alpha:beta (repeatable)");
  };
  auto* sf_norm = cmd_sf->add_subcommand("normalize", "normal form and euler number");
  add_fib_opts(sf_norm);
  auto* sf_tolens = cmd_sf->add_subcommand("to-lens", "recognize as a lens space");
  add_fib_opts(sf_tolens);
  auto* sf_con = cmd_sf->add_subcommand("constructions", "the three distance-one constructions");
  int64_t sf_p = 0;
  sf_con->add_option("p", sf_p, "odd p > 1")->required();

  // ---- plumbing-d --------------------------------------------------------
  auto* cmd_pd = app.add_subcommand("plumbing-d", "d-invariants of the plumbed manifolds");
  int64_t pd_p = 0, pd_m = 0, pd_k = 0;
  int pd_s = 0;
  std::string pd_framing = "auto", pd_method = "closed";
  cmd_pd->add_option("p", pd_p)->required();
  cmd_pd->add_option("m", pd_m)->required();
  cmd_pd->add_option("k", pd_k)->required();
  cmd_pd->add_option("--s", pd_s, "orbit step s in 0..3")->check(CLI::Range(0, 3));
  cmd_pd->add_option("--framing", pd_framing, "pos|neg|auto (sign of pm-k^2)");
  cmd_pd->add_option("--method", pd_method, "closed|lattice|both");

  // ---- check -------------------------------------------------------------
  auto* cmd_check = app.add_subcommand("check", "obstruction pipeline for (p, q)");
  int64_t ck_p = 0, ck_q = 0;
  std::optional<int64_t> ck_m, ck_k;
  CheckOptions ck;
  cmd_check->add_option("p", ck_p, "odd p > 1")->required();
  cmd_check->add_option("q", ck_q, "target q (sign included)")->required();
  cmd_check->add_option("--m", ck_m, "restrict to this slope m");
  cmd_check->add_option("--k", ck_k, "restrict to this winding number k");
  cmd_check->add_option("--format", ck.format, "text|json|csv");
  cmd_check->add_flag("--allow-small-q", ck.allow_small_q, "permit |q| <= 7 (outside theorem scope)");
  bool ck_no_cwint = false;
  cmd_check->add_flag("--no-cw-integrality", ck_no_cwint, "disable the Casson-Walker integrality filter");

  // ---- enumerate ----------------------------------------------------------
  auto* cmd_enum = app.add_subcommand("enumerate", "sweep all candidates up to bounds");
  int64_t en_pmax = 0, en_qbound = 0;
  std::string en_format = "csv", en_out, en_cache;
  int en_jobs = 1;
  bool en_no_cwint = false;
  cmd_enum->add_option("--p-max", en_pmax, "largest p")->required();
  cmd_enum->add_option("--q-bound", en_qbound, "largest |q|")->required();
  cmd_enum->add_option("--format", en_format, "csv|jsonl|text");
  cmd_enum->add_option("--out", en_out, "output file (default stdout)");
  cmd_enum->add_option("--cache-dir", en_cache, "report cache directory");
  cmd_enum->add_option("--jobs", en_jobs, "worker threads")->check(CLI::PositiveNumber);
  cmd_enum->add_flag("--no-cw-integrality", en_no_cwint);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_d->parsed()) {
      auto L = parse_lens(d_lens_args[0], d_lens_args[1]);
      Rational v = lens::d_lens(L.space, d_label);
      if (L.sign < 0) v = -v;
      if (d_trace) {
        for (const auto& step : lens::d_lens_trace(L.space, d_label))
          std::cout << "# d(" << step.space.str() << "," << step.label
                    << ") = " << to_string(step.value) << "\n";
      }
      std::cout << to_string(v) << "\n";
      return 0;
    }

    if (cmd_ded->parsed()) {
      std::cout << to_string(casson::dedekind_sum(ded_b, ded_a)) << "\n";
      return 0;
    }

    if (cmd_cw->parsed()) {
      if (!cw_lens.empty()) {
        auto L = parse_lens(cw_lens[0], cw_lens[1]);
        Rational v = L.space.is_s3() ? Rational(0)
                                     : casson::lambda_lens(L.space.p, L.space.q);
        if (L.sign < 0) v = -v;
        std::cout << to_string(v) << "\n";
        return 0;
      }
      if (!cw_seifert.empty()) {
        auto v = casson::lambda_surgered(cw_seifert[0], cw_seifert[1], cw_seifert[2]);
        if (!v) {
          std::cerr << "error: no closed form for lambda(M) in this regime\n";
          return 1;
        }
        std::cout << to_string(*v) << "\n";
        return 0;
      }
      std::cerr << "error: casson-walker needs --lens or --seifert\n";
      return 1;
    }

    if (cmd_sf->parsed()) {
      if (sf_con->parsed()) {
        for (const auto& c : seifert::verify_constructions(sf_p))
          std::cout << "m=" << c.m << " k=" << c.k << " -> " << c.result.str() << "\n";
        return 0;
      }
      seifert::SeifertFibration f;
      if (!sf_pkm.empty())
        f = seifert::surgery_on_simple_knot(sf_pkm[0], sf_pkm[1], sf_pkm[2]);
      for (const auto& spec : sf_fibers) {
        auto colon = spec.find(':');
        if (colon == std::string::npos)
          throw std::domain_error("fiber must be alpha:beta");
        f.fibers.push_back({std::stoll(spec.substr(0, colon)),
                            std::stoll(spec.substr(colon + 1))});
      }
      if (f.fibers.empty()) throw std::domain_error("no fibers given");
      if (sf_norm->parsed()) {
        auto nf = f.normal_form();
        std::cout << f.str() << "  euler=" << to_string(f.euler()) << "\n";
        std::cout << "normal form: e0=" << nf.e0;
        for (const auto& fb : nf.fibers)
          std::cout << " (" << fb.alpha << "," << fb.beta << ")";
        std::cout << "\n";
        return 0;
      }
      auto L = seifert::to_lens(f);
      if (!L) {
        std::cout << "not a lens space (three exceptional fibers)\n";
        return 0;
      }
      std::cout << lens::oriented_normal_form(*L).str()
                << "  (presentation " << L->str() << ")\n";
      return 0;
    }

    if (cmd_pd->parsed()) {
      plumbing::Framing fr;
      if (pd_framing == "pos")
        fr = plumbing::Framing::positive;
      else if (pd_framing == "neg")
        fr = plumbing::Framing::negative;
      else
        fr = (Integer(pd_p) * pd_m - Integer(pd_k) * pd_k > 0)
                 ? plumbing::Framing::positive
                 : plumbing::Framing::negative;
      if (pd_method == "closed" || pd_method == "both")
        std::cout << "closed: " << to_string(plumbing::d_closed_form(pd_p, pd_m, pd_k, pd_s, fr))
                  << "\n";
      if (pd_method == "lattice" || pd_method == "both") {
        auto form = plumbing::intersection_form(pd_p, pd_m, pd_k, fr);
        auto rep = plumbing::paper_maximizer(pd_p, pd_m, pd_k, fr, pd_s);
        std::cout << "lattice: " << to_string(plumbing::d_plumbing(form, rep)) << "\n";
      }
      return 0;
    }

    if (cmd_check->parsed()) {
      if (ck_p <= 1 || ck_p % 2 == 0) throw std::domain_error("p must be odd > 1");
      if (std::llabs(ck_q) <= 7) {
        if (!ck.allow_small_q)
          throw std::domain_error("|q| <= 7 is outside theorem scope (use --allow-small-q)");
        std::cerr << "warning: |q| <= 7 is outside theorem scope\n";
      }
      ck.toggles.cw_integrality = !ck_no_cwint;
      std::vector<obstruction::ObstructionReport> reps;
      if (ck_m && ck_k) {
        reps.push_back(obstruction::check_candidate(ck_p, ck_q, *ck_m, *ck_k, ck.toggles));
      } else {
        int64_t qa = std::llabs(ck_q);
        for (int64_t k = 1; 2 * k <= ck_p; ++k) {
          if (ck_k && *ck_k != k) continue;
          for (int64_t sgn : {+1, -1}) {
            int64_t num = k * k + sgn * qa;  // pm = k^2 +- |q|
            if (num % ck_p != 0) continue;
            int64_t m = num / ck_p;
            if (ck_m && *ck_m != m) continue;
            reps.push_back(obstruction::check_candidate(ck_p, ck_q, m, k, ck.toggles));
          }
        }
        if (reps.empty()) {
          std::cout << "no homological solutions (p=" << ck_p << ", q=" << ck_q << ")\n";
          return 0;
        }
      }
      emit_reports(reps, ck.format, std::cout);
      return 0;
    }

    if (cmd_enum->parsed()) {
      obstruction::Toggles toggles;
      toggles.cw_integrality = !en_no_cwint;
      if (const char* env = std::getenv("SURGERY_CACHE_DIR"); env && *env)
        en_cache = env;  // the environment variable overrides --cache-dir

      std::vector<obstruction::ObstructionReport> reps;
      if (en_cache.empty()) {
        reps = obstruction::enumerate_candidates(en_pmax, en_qbound, toggles, en_jobs);
      } else {
        fs::create_directories(en_cache);
        // same candidate order as enumerate_candidates, per-candidate cached
        struct K { int64_t p, q, m, k; };
        std::vector<K> cand;
        for (int64_t p = 3; p <= en_pmax; p += 2)
          for (int64_t k = 1; 2 * k <= p; ++k) {
            int64_t k2 = k * k;
            for (int64_t m = (k2 - en_qbound) / p - 2; m <= (k2 + en_qbound) / p + 2; ++m) {
              Integer D = Integer(p) * m - k2;
              Integer qpz = abs(D);
              if (qpz <= 7 || qpz > en_qbound) continue;
              cand.push_back({p, -qpz.get_si(), m, k});
              cand.push_back({p, qpz.get_si(), m, k});
            }
          }
        std::sort(cand.begin(), cand.end(), [](const K& a, const K& b) {
          return std::tie(a.p, a.q, a.m, a.k) < std::tie(b.p, b.q, b.m, b.k);
        });
        for (const auto& c : cand) {
          std::ostringstream key;
          key << "v=" << kToolVersion << ";p=" << c.p << ";q=" << c.q << ";m=" << c.m
              << ";k=" << c.k << ";cwint=" << (toggles.cw_integrality ? 1 : 0);
          fs::path file = fs::path(en_cache) / (report::fnv1a64_hex(key.str()) + ".json");
          bool loaded = false;
          if (fs::exists(file)) {
            std::ifstream is(file);
            std::string line;
            if (std::getline(is, line)) {
              try {
                reps.push_back(report::from_json_line(line));
                loaded = true;
              } catch (const std::domain_error&) {
                loaded = false;  // stale or corrupt entry: recompute
              }
            }
          }
          if (!loaded) {
            auto rep = obstruction::check_candidate(c.p, c.q, c.m, c.k, toggles);
            atomic_write(file, report::to_json_line(rep) + "\n");
            reps.push_back(std::move(rep));
          }
        }
      }

      std::string payload = render_reports(reps, en_format);
      if (en_out.empty()) {
        std::cout << payload;
      } else {
        atomic_write(en_out, payload);
        report::RunManifest man;
        man.command = "enumerate";
        man.parameters = {{"p_max", std::to_string(en_pmax)},
                          {"q_bound", std::to_string(en_qbound)},
                          {"format", en_format},
                          {"cw_integrality", toggles.cw_integrality ? "1" : "0"}};
        man.tool_version = kToolVersion;
        man.output_digest = report::fnv1a64_hex(payload);
        atomic_write(en_out + ".manifest.json", report::manifest_json(man));
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
