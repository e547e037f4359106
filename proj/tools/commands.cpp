#include "commands.hpp"

#include <algorithm>
#include <sstream>

#include "cliffkit/curve/riemann_roch.hpp"
#include "cliffkit/exactla/linalg.hpp"
#include "cliffkit/koszul/koszul.hpp"
#include "cliffkit/linser/checks.hpp"
#include "cliffkit/linser/clifford.hpp"
#include "cliffkit/linser/multiplication.hpp"
#include "cliffkit/secant/secant.hpp"
#include "cliffkit/shiffer/shiffer.hpp"

namespace cliff::cli {

using curve::Curve;
using curve::Divisor;
using curve::Fp;
using linser::LineBundle;

namespace {

// Suites above this genus skip the dense secant and Koszul computations.
constexpr int kSuiteGenusLimit = 5;

const Curve& need_curve(const Loaded& in) {
  if (!in.curve) throw PreconditionError(in.spec.source + ": the file declares no curve");
  return *in.curve;
}

Record make(const std::string& id, const std::string& claim, const RunConfig& cfg, Mode mode = Mode::Exact) {
  Record r;
  r.id = id;
  r.claim = claim;
  r.seed = cfg.seed;
  r.mode = mode;
  return r;
}

Divisor random_divisor(const Curve& C, int d, uint64_t seed, const Divisor& avoid = {}) {
  Rng rng(seed);
  Divisor D;
  while (D.degree() < d) {
    auto P = C.sample_place(rng);
    if (D.coefficient(P) == 0 && avoid.coefficient(P) == 0) D.add(P, 1);
  }
  return D;
}

std::string kind_name(curve::InfinityKind k) {
  return k == curve::InfinityKind::Split ? "split" : "totally ramified";
}

std::string hist_str(const std::map<size_t, size_t>& h) {
  std::ostringstream os;
  bool first = true;
  for (auto [k, v] : h) {
    os << (first ? "" : " ") << k << ":" << v;
    first = false;
  }
  return os.str();
}

std::map<std::string, Divisor> declared(const Loaded& in) {
  if (!in.curve) return {};
  return curve::build_divisors(in.spec, *in.curve);
}

// Variations are built at Finite places only.
bool finite_effective(const Divisor& D) {
  if (!D.is_effective() || D.degree() == 0) return false;
  for (const auto& P : D.support())
    if (!P.is_finite()) return false;
  return true;
}

bool too_big(const Curve& C) { return C.genus() > kSuiteGenusLimit; }

}  // namespace

Loaded load(const RunConfig& cfg) {
  Loaded out;
  out.spec = curve::parse_spec_file(cfg.spec_path);
  if (out.spec.has_curve()) out.curve = curve::build_curve(out.spec, cfg.prime);
  return out;
}

Report cmd_info(const RunConfig& cfg, const Loaded& in) {
  Report rep;
  if (in.curve) {
    const Curve& C = *in.curve;
    auto r = make("info.curve", "canonical degree equals 2g - 2", cfg);
    const int degK = C.canonical_divisor().degree();
    r.set("name", in.spec.name)
        .set("p", static_cast<long long>(C.p()))
        .set("n", static_cast<long long>(C.n()))
        .set("deg_f", static_cast<long long>(C.m()))
        .set("genus", static_cast<long long>(C.genus()))
        .set("infinity", kind_name(C.infinity_kind()))
        .set("infinite_places", static_cast<long long>(C.num_infinite_places()))
        .set("canonical_degree", static_cast<long long>(degK))
        .set("rational_places", static_cast<long long>(C.rational_places().size()));
    rep.add(r.pass_if(degK == 2 * C.genus() - 2));
  }
  if (!in.spec.layers.empty()) {
    const auto T = curve::build_tower(in.spec);
    for (size_t i = 1; i <= T.layers(); ++i) {
      auto r = make("info.tower.layer" + std::to_string(i), "pushforward genus equals the Hurwitz genus", cfg);
      const int g = T.genus(i);
      r.set("degree", static_cast<long long>(T.degree(i)))
          .set("genus", static_cast<long long>(g))
          .set("hurwitz_genus", static_cast<long long>(T.hurwitz_genus(i)))
          .set("h0_F", static_cast<long long>(T.h0(i, 1)))
          .set("h0_2F", static_cast<long long>(T.h0(i, 2)))
          .set("h0_K_minus_F", static_cast<long long>(T.h1(i, 1)))
          .set("h0_K_minus_2F", static_cast<long long>(T.h1(i, 2)));
      rep.add(r.pass_if(g == T.hurwitz_genus(i)));
    }
  }
  return rep;
}

Report cmd_rr(const RunConfig& cfg, const Loaded& in) {
  Report rep;
  const Curve& C = need_curve(in);
  const Divisor K = C.canonical_divisor();
  for (const auto& [name, D] : declared(in)) {
    auto r = make("rr." + name, "basis verified and Riemann-Roch identity holds", cfg);
    const auto B = curve::riemann_roch_space(C, D);
    std::string why;
    const bool ok = curve::verify_basis(C, B, &why);
    const int h0 = static_cast<int>(B.dim());
    const int h1 = static_cast<int>(curve::h0(C, K - D));
    r.set("divisor", D.str())
        .set("degree", static_cast<long long>(D.degree()))
        .set("h0", static_cast<long long>(h0))
        .set("h0_K_minus_D", static_cast<long long>(h1));
    if (!ok) r.set("basis_error", why);
    rep.add(r.pass_if(ok && h0 - h1 == D.degree() - C.genus() + 1));
  }
  // A declared fiber F against the first tower layer, which must be the
  // same cover.
  const auto decl = declared(in);
  if (!in.spec.layers.empty() && decl.count("F")) {
    const auto T = curve::build_tower(in.spec);
    const Divisor& F = decl.at("F");
    for (int k = 1; k <= 2; ++k) {
      auto r = make("rr.tower.F" + std::to_string(k), "h0(kF) agrees with pushforward bookkeeping", cfg);
      const int direct = static_cast<int>(curve::h0(C, F * k));
      r.set("k", static_cast<long long>(k))
          .set("riemann_roch", static_cast<long long>(direct))
          .set("pushforward", static_cast<long long>(T.h0(1, k)));
      rep.add(r.pass_if(direct == T.h0(1, k) && T.genus(1) == C.genus()));
    }
  }
  return rep;
}

Report cmd_cliff(const RunConfig& cfg, const Loaded& in) {
  Report rep;
  const Curve& C = need_curve(in);
  const auto K = LineBundle::canonical(C);
  linser::SearchOptions opt;
  opt.budget_deg = cfg.budget_deg;
  opt.seed = cfg.seed;
  opt.threads = cfg.parallel;
  {
    const auto res = linser::cliff_bundle(C, K, opt);
    auto r = make("cliff.curve", "minimum over eligible divisors, witness reproduces the value", cfg,
                  res.certified ? Mode::Exhaustive : Mode::Sampled);
    r.set("degree_bound", static_cast<long long>(res.degree_bound))
        .set("candidates", static_cast<long long>(res.candidates))
        .set("eligible", static_cast<long long>(res.eligible))
        .set("excluded_by_codim", static_cast<long long>(res.excluded_by_codim));
    if (res.value) {
      r.set("value", static_cast<long long>(*res.value)).set("witness", res.witness.str());
      rep.add(r.pass_if(linser::cliff_pair(C, K, res.witness) == *res.value));
    } else {
      r.set("value", "none");
      rep.add(r.pass_if(res.eligible == 0));
    }
  }
  if (cfg.twist_degree >= 2) {
    const int d = cfg.twist_degree;
    const Divisor D = random_divisor(C, d, Rng::derive(cfg.seed, 1), K.representative);
    const auto L = K.twist(D);
    auto o = opt;
    o.require_very_ample = false;
    const auto res = linser::cliff_bundle(C, L, o);
    auto r = make("cliff.twist", "cliff(C, K(D)) = deg D - 2, attained at D", cfg,
                  res.certified ? Mode::Exhaustive : Mode::Sampled);
    const int at_D = linser::cliff_pair(C, L, D);
    r.set("D", D.str()).set("d", static_cast<long long>(d)).set("cliff_at_D", static_cast<long long>(at_D));
    r.set("value", res.value ? std::to_string(*res.value) : "none");
    if (res.value) r.set("witness", res.witness.str());
    rep.add(r.pass_if(res.value && *res.value == d - 2 && at_D == d - 2));
  }
  for (const auto& [name, D] : declared(in)) {
    if (!D.is_effective() || D.degree() == 0) continue;
    auto r = make("petri." + name, "Petri map and square map are surjective together", cfg);
    r.set("divisor", D.str());
    try {
      const auto pr = linser::petri_check(C, D, cfg.seed);
      r.set("petri_rank", static_cast<long long>(pr.petri_rank))
          .set("petri_target", static_cast<long long>(pr.petri_target))
          .set("square_rank", static_cast<long long>(pr.square_rank))
          .set("square_target", static_cast<long long>(pr.square_target))
          .set("petri_surjective", pr.petri_surjective() ? "yes" : "no");
      rep.add(r.pass_if(pr.agree()));
    } catch (const PreconditionError& e) {
      r.set("skipped", e.what());
      rep.add(r);
    }
  }
  return rep;
}

Report cmd_shiffer(const RunConfig& cfg, const Loaded& in) {
  Report rep;
  const Curve& C = need_curve(in);
  const auto K = LineBundle::canonical(C);
  const linser::Evaluator eK(C, K);
  auto decl = declared(in);
  if (decl.empty()) decl["D"] = random_divisor(C, 2, Rng::derive(cfg.seed, 2), K.representative);
  for (const auto& [name, D] : decl) {
    if (!finite_effective(D)) continue;
    const bool overlap = !D.disjoint_from(K.representative);
    const auto rb = shiffer::rank_bounds_check(eK, eK, D, cfg.trials, cfg.seed, cfg.parallel, overlap);
    auto r = make("shiffer.bounds." + name, "every sampled rank lies in [d - 2r, d - r]", cfg, Mode::Sampled);
    r.set("divisor", D.str())
        .set("r", static_cast<long long>(rb.r1))
        .set("lower", static_cast<long long>(rb.lower))
        .set("upper", static_cast<long long>(rb.upper))
        .set("histogram", hist_str(rb.histogram))
        .set("upper_attained", rb.upper_attained() ? "yes" : "no");
    rep.add(r.pass_if(rb.all_within()));

    const auto w = shiffer::min_rank_witness(C, eK, D, cfg.seed, overlap);
    auto rw = make("shiffer.witness." + name, "a variation of rank d - 2r exists on D", cfg);
    rw.set("method", w.method).set("rank", static_cast<long long>(w.rank)).set("target", static_cast<long long>(w.target));
    if (!w.detail.empty()) rw.set("detail", w.detail);
    rep.add(rw.pass_if(w.ok()));
  }
  {
    const auto T = linser::mult_map(C, K, K);
    Rng rng(Rng::derive(cfg.seed, 3));
    size_t agree = 0;
    const size_t count = 50;
    for (size_t i = 0; i < count; ++i) {
      const auto P = C.sample_place(rng);
      const auto A = shiffer::shiffer_matrix(eK, eK, shiffer::unit_datum(Divisor::point(P), C.p()));
      const auto B = shiffer::point_matrix(T, shiffer::evaluation_functional(C, T.b12, P));
      std::optional<Fp> scale;
      bool ok = true;
      for (size_t a = 0; a < A.rows() && ok; ++a)
        for (size_t b = 0; b < A.cols() && ok; ++b) {
          if (!scale && !B(a, b).is_zero()) scale = A(a, b) / B(a, b);
          if (scale && A(a, b) != *scale * B(a, b)) ok = false;
        }
      if (ok && scale && !scale->is_zero()) ++agree;
    }
    auto r = make("shiffer.cross_oracle", "point variation is a nonzero multiple of the evaluation matrix", cfg,
                  Mode::Sampled);
    r.set("points", static_cast<long long>(count)).set("agree", static_cast<long long>(agree));
    rep.add(r.pass_if(agree == count));
  }
  return rep;
}

Report cmd_detpres(const RunConfig& cfg, const Loaded& in) {
  Report rep;
  const Curve& C = need_curve(in);
  const auto L1 = LineBundle::of(random_divisor(C, cfg.deg1, Rng::derive(cfg.seed, 4)));
  const auto L2 = LineBundle::of(random_divisor(C, cfg.deg2, Rng::derive(cfg.seed, 5)));
  const auto res = secant::det_presented(C, L1, L2, cfg.k, cfg.seed, cfg.oversample, cfg.parallel);
  auto r = make("detpres.k" + std::to_string(cfg.k), "span of minors equals the ideal of the secant cloud", cfg,
                Mode::Sampled);
  r.set("deg1", static_cast<long long>(res.deg1))
      .set("deg2", static_cast<long long>(res.deg2))
      .set("vars", static_cast<long long>(res.vars))
      .set("monomials", static_cast<long long>(res.monomials))
      .set("minors_dim", static_cast<long long>(res.minors_dim))
      .set("ideal_dim", static_cast<long long>(res.ideal_dim))
      .set("cloud", static_cast<long long>(res.cloud))
      .set("hypothesis", res.hyp_main ? "holds" : "fails");
  if (res.exact_quadrics) r.set("exact_quadrics", static_cast<long long>(*res.exact_quadrics));
  r.set("verdict_detail", res.verdict);
  if (res.hyp_main)
    r.pass_if(res.equal());
  else if (!res.contained)
    r.pass_if(false);
  rep.add(r);
  return rep;
}

Report cmd_secant(const RunConfig& cfg, const Loaded& in) {
  Report rep;
  const Curve& C = need_curve(in);
  const int g = C.genus();
  const auto L = LineBundle::of(random_divisor(C, 2 * g + 3, Rng::derive(cfg.seed, 6)));
  for (int j = 1; j <= 3; ++j) {
    const auto res = secant::rank_locus_containment(C, L, j, cfg.trials, Rng::derive(cfg.seed, 10 + j), cfg.parallel);
    auto r = make("secant.containment.j" + std::to_string(j), "sums of j points have rank at most j", cfg,
                  Mode::Sampled);
    r.set("deg_L", static_cast<long long>(L.degree()))
        .set("trials", static_cast<long long>(res.trials))
        .set("histogram", hist_str(res.histogram));
    rep.add(r.pass_if(res.violations == 0));
  }
  if (g >= 1) {
    const Divisor D = random_divisor(C, 3, Rng::derive(cfg.seed, 7), C.canonical_divisor());
    const auto h = secant::hassett_witness(C, D, cfg.seed, cfg.oversample, cfg.parallel);
    auto r = make("secant.off_curve_plane", "rank d - 2 variation on K(D) whose plane misses every rational point",
                  cfg, Mode::Exhaustive);
    r.set("D", D.str())
        .set("method", h.method)
        .set("rank", static_cast<long long>(h.rank))
        .set("target", static_cast<long long>(h.target_rank))
        .set("places_tested", static_cast<long long>(h.places_tested))
        .set("places_on_plane", static_cast<long long>(h.places_on_plane))
        .set("ideal_dim", static_cast<long long>(h.ideal_dim))
        .set("forms_not_vanishing", static_cast<long long>(h.forms_not_vanishing))
        .set("certificate", "a point of C on the plane would force h0(L^-1) > 0");
    rep.add(r.pass_if(h.rank_ok() && h.avoids_curve()));
  }
  for (int p = 1; p <= 2; ++p) {
    Rng rng(Rng::derive(cfg.seed, 20 + p));
    const Divisor D = random_divisor(C, p, rng.next(), L.representative);
    const auto phi = shiffer::random_star_datum(D, C.p(), rng);
    const auto t = secant::tangent_space_check(C, L, phi);
    auto r = make("secant.tangent.p" + std::to_string(p), "kernel of the minor Jacobian is the span of 2D", cfg);
    r.set("kernel_dim", static_cast<long long>(t.kernel_dim))
        .set("expected_dim", static_cast<long long>(t.expected_dim))
        .set("contains_2D", t.contains_2d ? "yes" : "no");
    if (t.skipped) {
      r.set("skipped", t.reason);
      rep.add(r);
    } else {
      rep.add(r.pass_if(t.equal()));
    }
  }
  return rep;
}

Report cmd_koszul(const RunConfig& cfg, const Loaded& in) {
  Report rep;
  const Curve& C = need_curve(in);
  const int g = C.genus();
  const auto K = LineBundle::canonical(C);
  const koszul::KoszulComplex KC(C, K, cfg.entry_budget);
  const int pmax = cfg.pmax >= 0 ? cfg.pmax : std::max(0, g - 1);
  const int qmax = cfg.qmax;
  {
    auto r = make("koszul.table", "boundaries square to zero and the dual complex gives the same dimensions", cfg);
    bool ok = true;
    std::ostringstream rows;
    for (int q = 0; q <= qmax; ++q) {
      rows << (q ? "; " : "") << "q=" << q << ":";
      for (int p = 0; p <= pmax; ++p) {
        const auto s = KC.slice(p, q);
        ok = ok && s.square_zero && KC.dual_dim(p, q) == s.dim();
        rows << " " << s.dim();
      }
    }
    r.set("window", "p<=" + std::to_string(pmax) + " q<=" + std::to_string(qmax)).set("table", rows.str());
    rep.add(r.pass_if(ok));
  }
  if (g >= 2) {
    const size_t k02 = KC.dim(0, 2);
    const bool qn = linser::mult_map(C, K, K).surjective();
    auto r = make("koszul.k02", "K_{0,2}(K) vanishes exactly when Sym^2 H0(K) -> H0(2K) is onto", cfg);
    r.set("K02", static_cast<long long>(k02)).set("quadratically_normal", qn ? "yes" : "no");
    rep.add(r.pass_if((k02 == 0) == qn));
  }
  if (g >= 3 && 2 <= qmax) {
    auto r = make("koszul.duality", "dim K_{p,2}(K) = dim K_{g-p-2,1}(K)", cfg);
    bool ok = true;
    std::ostringstream pairs;
    for (int p = 0; p <= g - 2; ++p) {
      const size_t a = KC.dim(p, 2), b = KC.dim(g - p - 2, 1);
      ok = ok && a == b;
      pairs << (p ? " " : "") << a << "/" << b;
    }
    r.set("pairs", pairs.str());
    rep.add(r.pass_if(ok));
  }
  for (const auto& [name, D] : declared(in)) {
    if (!finite_effective(D)) continue;
    auto r = make("koszul.class." + name, "variation on D with its image wedge is a nontrivial cocycle", cfg);
    r.set("divisor", D.str());
    const size_t h0_rest = curve::h0(C, K.representative - D);
    try {
      const auto cr = koszul::verify_nontrivial_class(KC, K, D, cfg.seed);
      r.set("c", static_cast<long long>(cr.c))
          .set("cocycle", cr.cocycle ? "yes" : "no")
          .set("coboundary", cr.coboundary ? "yes" : "no")
          .set("slice_dim", static_cast<long long>(cr.slice_dim));
      // The construction needs a positive rank and an eligible divisor.
      if (cr.c >= 1 && h0_rest >= 2)
        r.pass_if(cr.nontrivial());
      else
        r.set("note", "outside the construction's hypotheses");
    } catch (const Error& e) {
      r.set("skipped", e.what());
    }
    rep.add(r);
  }
  if (cfg.twist_degree >= 3) {
    const int d = cfg.twist_degree;
    const Divisor D = random_divisor(C, d, Rng::derive(cfg.seed, 8), K.representative);
    const auto L = K.twist(D);
    const koszul::KoszulComplex KL(C, L, cfg.entry_budget);
    const auto cr = koszul::verify_nontrivial_class(KL, L, D, cfg.seed);
    auto r = make("koszul.twist_class", "K(D): rank d - 2 variation gives a nontrivial class in K_{d-2,2}", cfg);
    r.set("D", D.str())
        .set("c", static_cast<long long>(cr.c))
        .set("cocycle", cr.cocycle ? "yes" : "no")
        .set("coboundary", cr.coboundary ? "yes" : "no");
    rep.add(r.pass_if(cr.c == d - 2 && cr.nontrivial()));
    for (int p = 0; p < d - 2; ++p) {
      const auto tr = koszul::verify_decomposable_trivial(KL, p, cfg.trials / 10 + 1, Rng::derive(cfg.seed, 30 + p));
      auto rt = make("koszul.decomposable.p" + std::to_string(p), "decomposable cocycles below cliff are coboundaries",
                     cfg, Mode::Sampled);
      rt.set("samples", static_cast<long long>(tr.samples))
          .set("cocycles", static_cast<long long>(tr.cocycles))
          .set("coboundaries", static_cast<long long>(tr.coboundaries))
          .set("vacuous", tr.vacuous ? "yes" : "no");
      rep.add(rt.pass_if(tr.all_trivial()));
    }
  }
  return rep;
}

Report cmd_suite(const RunConfig& cfg, const Loaded& in) {
  Report rep;
  rep.append(cmd_info(cfg, in));
  if (!in.curve) return rep;
  rep.append(cmd_rr(cfg, in));
  rep.append(cmd_cliff(cfg, in));
  rep.append(cmd_shiffer(cfg, in));
  if (too_big(*in.curve)) {
    auto r = make("suite.skipped", "dense secant and Koszul checks skipped above the suite genus limit", cfg);
    r.set("genus", static_cast<long long>(in.curve->genus())).set("limit", static_cast<long long>(kSuiteGenusLimit));
    rep.add(r);
    return rep;
  }
  auto dp = cfg;
  dp.deg1 = dp.deg2 = 2 * in.curve->genus() + 2;
  dp.k = 1;
  rep.append(cmd_detpres(dp, in));
  rep.append(cmd_secant(cfg, in));
  rep.append(cmd_koszul(cfg, in));
  return rep;
}

}  // namespace cliff::cli
