// kornlab command-line driver.
//
// Exit codes: 0 success, 1 check violation, 2 usage/parameter error,
// 3 solver non-convergence.

#include "kornlab/diffops.hpp"
#include "kornlab/generate.hpp"
#include "kornlab/io.hpp"
#include "kornlab/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <thread>

namespace kl = kornlab;

namespace {

struct ShapeFlags {
  std::string shape = "square";
  int dim = 2;
  double radius = 1.0;
  double r_inner = 0.5;
  double r_outer = 1.0;
  double arm = 1.0;
  double width = 0.5;
  double alpha = 2.0;
  double length = 1.0;
  std::vector<double> box_lo{0.0, 0.0, 0.0};
  std::vector<double> box_hi{1.0, 1.0, 1.0};
  std::vector<double> center{0.0, 0.0, 0.0};
  double scale = 1.0;
  std::vector<double> translate{0.0, 0.0, 0.0};
  std::string shape_json;  // overrides the flag-built descriptor when set

  void attach(CLI::App* cmd) {
    cmd->add_option("--shape", shape,
                    "square|box|ball|annulus|lshape|cusp (default square)");
    cmd->add_option("--dim", dim, "spatial dimension (1, 2 or 3)")
        ->check(CLI::Range(1, 3));
    cmd->add_option("--radius", radius, "ball radius");
    cmd->add_option("--r-inner", r_inner, "annulus inner radius");
    cmd->add_option("--r-outer", r_outer, "annulus outer radius");
    cmd->add_option("--arm", arm, "l-shape arm length");
    cmd->add_option("--width", width, "l-shape arm width");
    cmd->add_option("--alpha", alpha, "cusp exponent (> 1)");
    cmd->add_option("--length", length, "cusp length");
    cmd->add_option("--box-lo", box_lo, "box lower corner")->expected(1, 3);
    cmd->add_option("--box-hi", box_hi, "box upper corner")->expected(1, 3);
    cmd->add_option("--center", center, "ball/annulus center")->expected(1, 3);
    cmd->add_option("--scale", scale, "scale the shape about the origin");
    cmd->add_option("--translate", translate, "translate the shape")->expected(1, 3);
    cmd->add_option("--shape-json", shape_json, "full shape descriptor as JSON");
  }

  static kl::Coord to_coord(const std::vector<double>& v) {
    kl::Coord c{0, 0, 0};
    for (size_t d = 0; d < v.size() && d < 3; ++d) c[d] = v[d];
    return c;
  }

  kl::ShapeDescriptor build() const {
    if (!shape_json.empty()) return kl::ShapeDescriptor::parse_json(shape_json);
    kl::ShapeDescriptor s = kl::ShapeDescriptor::unit_box(dim);
    if (shape == "square" || shape == "box") {
      s = (shape == "square") ? kl::ShapeDescriptor::unit_box(dim)
                              : kl::ShapeDescriptor::box(to_coord(box_lo), to_coord(box_hi));
    } else if (shape == "ball") {
      s = kl::ShapeDescriptor::ball(to_coord(center), radius);
    } else if (shape == "annulus") {
      s = kl::ShapeDescriptor::annulus(to_coord(center), r_inner, r_outer);
    } else if (shape == "lshape") {
      s = kl::ShapeDescriptor::l_shape(arm, width);
    } else if (shape == "cusp") {
      s = kl::ShapeDescriptor::cusp(alpha, length);
    } else {
      throw kl::ParameterError("unknown --shape: " + shape);
    }
    bool transformed = scale != 1.0;
    for (double t : translate) transformed = transformed || t != 0.0;
    if (transformed)
      s = kl::ShapeDescriptor::transformed(std::move(s), scale, to_coord(translate));
    return s;
  }
};

std::string resolve_out(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* dir = std::getenv("KORNLAB_OUT_DIR");
  if (!dir || !*dir) return path;
  return std::string(dir) + "/" + path;
}

void emit(const std::string& path, const std::string& csv, const std::string& json,
          const std::string& format) {
  const std::string& body = (format == "json") ? json : csv;
  if (path.empty())
    std::cout << body;
  else
    kl::write_file(resolve_out(path), body);
}

// ---------------------------------------------------------------------------

struct IdentitiesArgs {
  ShapeFlags shape;
  double h = 1.0 / 32.0;
  std::string family = "forward";
  int seeds = 20;
  double threshold = 1e-12;
  double adj_threshold = 1e-13;
  std::string out, format = "csv";
};

int run_identities(const IdentitiesArgs& a) {
  kl::StencilFamily fam = kl::StencilFamily::parse(a.family);
  kl::MaskPtr mask = kl::rasterize_covering(a.shape.build(), a.shape.dim, a.h);
  std::vector<kl::ResidualRecord> recs;
  bool ok = true;

  for (int s = 0; s < a.seeds; ++s) {
    std::uint64_t seed = 1000 + std::uint64_t(s);
    kl::VectorField u =
        kl::generate(kl::GeneratorSpec::random_fourier(2.5, seed), mask, false);
    kl::IdentityResiduals r = kl::identity_residuals(u, fam);
    recs.push_back({"hodge-sym", fam.name(), a.h, r.hodge_sym, seed});
    recs.push_back({"hodge-skw", fam.name(), a.h, r.hodge_skw, seed});
    ok = ok && r.hodge_sym <= a.threshold && r.hodge_skw <= a.threshold;

    kl::VectorField uc =
        kl::generate(kl::GeneratorSpec::random_fourier(2.5, seed), mask, true);
    kl::IdentityResiduals rc = kl::identity_residuals(uc, fam);
    recs.push_back({"korn-identity", fam.name(), a.h, rc.korn_identity, seed});
    ok = ok && rc.korn_identity <= a.threshold;

    // Summation by parts lives in the dual pair for the shift families; the
    // centered family is self-paired and keeps its one-sided boundary
    // closure, so forcing it against a machine threshold fails (documented).
    kl::StencilFamily adj_fam = (fam.tag == kl::FamilyTag::Centered)
                                    ? fam
                                    : kl::StencilFamily::dual_pair();
    kl::VectorField ua = (fam.tag == kl::FamilyTag::Centered)
                             ? kl::generate(kl::GeneratorSpec::trig(
                                                kl::Coord{0.75, 1.25, 0}, seed),
                                            mask, false)
                             : uc;
    kl::GeneratorSpec cols = kl::GeneratorSpec::random_fourier(2.5, seed + 77);
    if (fam.tag == kl::FamilyTag::Centered && mask->shape().is_axis_box()) {
      kl::Coord lo, hi;
      mask->shape().bounding_box(a.shape.dim, lo, hi);
      cols = kl::GeneratorSpec::bump_on(lo, hi, seed + 77);
    }
    kl::MatrixField phi = kl::generate_matrix(cols, mask, true);
    double defect = kl::adjointness_defect(ua, phi, adj_fam);
    recs.push_back({"adjointness", adj_fam.name(), a.h, defect, seed});
    ok = ok && defect <= ((fam.tag == kl::FamilyTag::Centered) ? a.threshold
                                                               : a.adj_threshold);
  }

  emit(a.out, kl::residuals_to_csv(recs), kl::residuals_to_json(recs), a.format);
  return ok ? 0 : 1;
}

struct KornArgs {
  ShapeFlags shape;
  std::string mode = "first";
  double p = 2.0;
  double h = 1.0 / 32.0;
  std::vector<int> refine;  // 1/h list; overrides --h when given
  std::string family = "forward";
  double tol = 1e-8;
  std::uint64_t seed = 1;
  int restarts = 8;
  int max_iters = 3000;
  long eig_max_iters = 2000;
  std::string out, format = "csv";
};

int run_korn(const KornArgs& a) {
  kl::StencilFamily fam = kl::StencilFamily::parse(a.family);
  std::vector<double> hs;
  if (!a.refine.empty())
    for (int n : a.refine) hs.push_back(1.0 / double(n));
  else
    hs.push_back(a.h);

  std::vector<kl::EstimateRecord> recs;
  for (double h : hs) {
    kl::MaskPtr mask = kl::rasterize_covering(a.shape.build(), a.shape.dim, h);
    kl::KornEstimate e;
    kl::EigOptions eig;
    eig.tol = a.tol;
    eig.seed = a.seed;
    eig.max_iters = a.eig_max_iters;
    if (a.mode == "first" && a.p == 2.0) {
      e = kl::korn_first_p2(mask, fam, eig);
    } else if (a.mode == "second" && a.p == 2.0) {
      e = kl::korn_second_p2(mask, fam, eig);
    } else {
      kl::QuotientOptions opts;
      opts.seed = a.seed;
      opts.restarts = a.restarts;
      opts.max_iters = a.max_iters;
      kl::KornMode mode =
          (a.mode == "first") ? kl::KornMode::First : kl::KornMode::Second;
      e = kl::korn_general_p(mask, a.p, mode, fam, opts);
    }
    recs.push_back({a.shape.shape, std::move(e)});
  }
  emit(a.out, kl::estimates_to_csv(recs), kl::estimates_to_json(recs), a.format);
  return 0;
}

struct PkArgs {
  ShapeFlags shape;
  double p = 2.0;
  bool weighted = false;
  double h = 1.0 / 32.0;
  std::string family = "forward";
  double tol = 1e-8;
  std::uint64_t seed = 1;
  std::string out, format = "csv";
};

int run_pk(const PkArgs& a) {
  kl::StencilFamily fam = kl::StencilFamily::parse(a.family);
  kl::MaskPtr mask = kl::rasterize_covering(a.shape.build(), a.shape.dim, a.h);
  kl::KornEstimate e =
      kl::poincare_korn_best(mask, a.p, a.weighted, fam, a.tol, a.seed);
  std::vector<kl::EstimateRecord> recs;
  recs.push_back({a.shape.shape, std::move(e)});
  emit(a.out, kl::estimates_to_csv(recs), kl::estimates_to_json(recs), a.format);
  return 0;
}

struct MaskArgs {
  ShapeFlags shape;
  double h = 1.0 / 32.0;
  std::string out;        // mask csv
  std::string shape_out;  // shape descriptor (json or kv by extension)
  std::string field;      // e.g. "bump:7" or "fourier:3" or "trig:5"
  std::string field_out, field_format = "csv";
};

int run_mask(const MaskArgs& a) {
  kl::MaskPtr mask = kl::rasterize_covering(a.shape.build(), a.shape.dim, a.h);
  if (!a.out.empty()) kl::write_file(resolve_out(a.out), mask->to_csv());
  if (!a.shape_out.empty()) {
    const std::string& p = a.shape_out;
    bool json = p.size() > 5 && p.substr(p.size() - 5) == ".json";
    kl::write_file(resolve_out(p),
                   json ? mask->shape().to_json() : mask->shape().to_kv());
  }
  if (!a.field.empty()) {
    auto colon = a.field.find(':');
    std::string kind = a.field.substr(0, colon);
    std::uint64_t seed =
        colon == std::string::npos ? 1 : std::stoull(a.field.substr(colon + 1));
    kl::GeneratorSpec spec = kl::GeneratorSpec::bump(seed);
    if (kind == "fourier") spec = kl::GeneratorSpec::random_fourier(2.5, seed);
    else if (kind == "trig") spec = kl::GeneratorSpec::trig(kl::Coord{1, 1, 0}, seed);
    else if (kind != "bump") throw kl::ParameterError("mask: unknown --field " + kind);
    kl::VectorField u = kl::generate(spec, mask, kind == "bump");
    std::string body = (a.field_format == "json") ? u.to_json() : u.to_csv();
    if (a.field_out.empty())
      std::cout << body;
    else
      kl::write_file(resolve_out(a.field_out), body);
  }
  std::cerr << "nodes=" << mask->num_nodes() << " interior=" << mask->num_interior()
            << " diameter=" << mask->diameter() << "\n";
  return 0;
}

struct VerifyArgs {
  std::string suite = "quick";
  std::vector<std::string> checks;
  double h = 1.0 / 32.0;
  std::vector<double> ps{1.0, 1.5, 2.0, 3.0};
  int seeds = 50;
  double boundary_slack = 0.02;
  std::string out, format = "json";
  std::string dossier;
};

int run_verify(const VerifyArgs& a) {
  kl::CorpusRequest req;
  req.checks = a.checks;
  if (req.checks.empty())
    req.checks = {"pk-weighted", "pk-bounded", "pk-boundary", "div-trace"};
  int seeds = a.seeds;
  double h = a.h;
  if (a.suite == "acceptance") {
    seeds = 500;
    h = 1.0 / 32.0;
  }
  req.masks.push_back({"square", kl::rasterize_covering(
                                     kl::ShapeDescriptor::unit_box(2), 2, h)});
  req.masks.push_back(
      {"ball", kl::rasterize_covering(
                   kl::ShapeDescriptor::ball(kl::Coord{0, 0, 0}, 1.0), 2, h)});
  for (int s = 0; s < seeds; ++s)
    req.generators.push_back(kl::GeneratorSpec::random_fourier(2.5, 10 + std::uint64_t(s)));
  req.p_values = a.ps;
  req.boundary_slack = a.boundary_slack;

  kl::CorpusResult res = kl::run_corpus(req);
  emit(a.out, kl::reports_to_csv(res.reports), kl::reports_to_json(res.reports),
       a.format);
  if (!res.all_pass && !a.dossier.empty()) {
    std::vector<kl::VerificationReport> bad;
    for (const auto& r : res.reports)
      if (!r.pass) bad.push_back(r);
    kl::write_file(resolve_out(a.dossier), kl::reports_to_json(bad));
  }
  std::cerr << res.reports.size() << " checks, " << res.failures << " failures\n";
  return res.all_pass ? 0 : 1;
}

struct SweepArgs {
  ShapeFlags shape;
  std::string vary = "p";
  double from = 1.1, to = 4.0;
  int steps = 12;
  std::string mode = "pk-plain";
  double h = 1.0 / 16.0;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out, format = "csv";
};

int run_sweep(const SweepArgs& a) {
  if (a.steps < 1) throw kl::ParameterError("sweep: steps must be >= 1");
  std::vector<double> values;
  for (int i = 0; i < a.steps; ++i)
    values.push_back(a.steps == 1
                         ? a.from
                         : a.from + (a.to - a.from) * double(i) / double(a.steps - 1));

  std::vector<kl::SweepRow> rows(values.size());
  auto run_cell = [&](size_t i) {
    double v = values[i];
    kl::SweepRow row;
    row.vary = a.vary;
    row.vary_value = v;
    row.shape = a.shape.shape;
    row.h = a.h;
    row.mode = a.mode;
    row.seed = a.seed;
    kl::StencilFamily fam = kl::StencilFamily::forward();
    if (a.vary == "p") {
      row.p = v;
      kl::MaskPtr mask = kl::rasterize_covering(a.shape.build(), a.shape.dim, a.h);
      kl::KornEstimate e;
      if (a.mode == "first" || a.mode == "second") {
        kl::QuotientOptions opts;
        opts.seed = a.seed;
        opts.restarts = 4;
        opts.max_iters = 160;
        e = kl::korn_general_p(mask, v,
                               a.mode == "first" ? kl::KornMode::First
                                                 : kl::KornMode::Second,
                               fam, opts);
      } else {
        e = kl::poincare_korn_best(mask, v, a.mode == "pk-weighted", fam, 1e-8,
                                   a.seed);
      }
      row.value = e.value;
      row.residual = e.residual;
      row.bound = kl::bound_direction_name(e.bound);
    } else if (a.vary == "alpha") {
      row.p = 2.0;
      kl::ShapeDescriptor cusp = kl::ShapeDescriptor::cusp(v, 1.0);
      kl::MaskPtr mask = kl::rasterize_covering(cusp, 2, a.h);
      kl::KornEstimate e = kl::poincare_korn_best(mask, 2.0, false, fam, 1e-8, a.seed);
      row.value = e.value;
      row.residual = e.residual;
      row.bound = kl::bound_direction_name(e.bound);
      row.shape = "cusp";
    } else if (a.vary == "aspect") {
      row.p = 2.0;
      kl::Coord hi{v, 1.0, 1.0};
      kl::ShapeDescriptor box = kl::ShapeDescriptor::box(kl::Coord{0, 0, 0}, hi);
      kl::MaskPtr mask = kl::rasterize_covering(box, a.shape.dim, a.h);
      kl::KornEstimate e = kl::poincare_korn_best(mask, 2.0, false, fam, 1e-8, a.seed);
      row.value = e.value;
      row.residual = e.residual;
      row.bound = kl::bound_direction_name(e.bound);
      row.shape = "box";
    } else {
      throw kl::ParameterError("sweep: --vary must be p, alpha or aspect");
    }
    rows[i] = std::move(row);
  };

  const int jobs = std::max(1, a.jobs);
  if (jobs == 1) {
    for (size_t i = 0; i < values.size(); ++i) run_cell(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (int t = 0; t < jobs; ++t)
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < values.size(); i = next.fetch_add(1))
          run_cell(i);
      });
    for (auto& th : pool) th.join();
  }

  emit(a.out, kl::sweep_to_csv(rows), kl::sweep_to_json(rows), a.format);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kornlab: discrete Korn / Poincare-Korn constants and identity checks"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");  // keep -h free for --h overrides
  app.set_config("--config", "", "plain-text key=value configuration file");
  bool dump_config = false;
  app.add_flag("--dump-config", dump_config,
               "print the canonical configuration and exit");

  // info
  double info_p = 2.0, info_diam = 1.0;
  int info_n = 2;
  bool info_json = false;
  CLI::App* info = app.add_subcommand("info", "print the explicit constants");
  info->set_help_flag("--help");
  info->add_option("--p", info_p)->check(CLI::PositiveNumber);
  info->add_option("--N", info_n)->check(CLI::Range(1, 3));
  info->add_option("--diam", info_diam)->check(CLI::PositiveNumber);
  info->add_flag("--json", info_json);

  IdentitiesArgs ia;
  CLI::App* ident = app.add_subcommand("identities", "operator identity residuals");
  ident->set_help_flag("--help");
  ia.shape.attach(ident);
  ident->add_option("--h", ia.h)->check(CLI::PositiveNumber);
  ident->add_option("--family", ia.family);
  ident->add_option("--seeds", ia.seeds)->check(CLI::PositiveNumber);
  ident->add_option("--threshold", ia.threshold);
  ident->add_option("--adj-threshold", ia.adj_threshold);
  ident->add_option("--out", ia.out);
  ident->add_option("--format", ia.format)->check(CLI::IsMember({"csv", "json"}));

  KornArgs ka;
  CLI::App* korn = app.add_subcommand("korn", "Korn constant estimates");
  korn->set_help_flag("--help");
  ka.shape.attach(korn);
  korn->add_option("--mode", ka.mode)->check(CLI::IsMember({"first", "second"}));
  korn->add_option("--p", ka.p)->check(CLI::PositiveNumber);
  korn->add_option("--h", ka.h)->check(CLI::PositiveNumber);
  korn->add_option("--refine", ka.refine)->delimiter(',');
  korn->add_option("--family", ka.family);
  korn->add_option("--tol", ka.tol)->check(CLI::PositiveNumber);
  korn->add_option("--seed", ka.seed);
  korn->add_option("--restarts", ka.restarts);
  korn->add_option("--max-iters", ka.max_iters);
  korn->add_option("--eig-max-iters", ka.eig_max_iters);
  korn->add_option("--out", ka.out);
  korn->add_option("--format", ka.format)->check(CLI::IsMember({"csv", "json"}));

  PkArgs pa;
  CLI::App* pk = app.add_subcommand("pk", "best Poincare-Korn constants");
  pk->set_help_flag("--help");
  pa.shape.attach(pk);
  pk->add_option("--p", pa.p)->check(CLI::PositiveNumber);
  pk->add_flag("--weighted", pa.weighted);
  pk->add_option("--h", pa.h)->check(CLI::PositiveNumber);
  pk->add_option("--family", pa.family);
  pk->add_option("--tol", pa.tol)->check(CLI::PositiveNumber);
  pk->add_option("--seed", pa.seed);
  pk->add_option("--out", pa.out);
  pk->add_option("--format", pa.format)->check(CLI::IsMember({"csv", "json"}));

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "inequality corpus");
  verify->set_help_flag("--help");
  verify->add_option("--suite", va.suite)->check(CLI::IsMember({"quick", "acceptance"}));
  verify->add_option("--checks", va.checks)->delimiter(',');
  verify->add_option("--h", va.h)->check(CLI::PositiveNumber);
  verify->add_option("--p-list", va.ps)->delimiter(',');
  verify->add_option("--seeds", va.seeds)->check(CLI::PositiveNumber);
  verify->add_option("--boundary-slack", va.boundary_slack);
  verify->add_option("--out", va.out);
  verify->add_option("--dossier", va.dossier);
  verify->add_option("--format", va.format)->check(CLI::IsMember({"csv", "json"}));

  MaskArgs ma;
  CLI::App* maskc = app.add_subcommand("mask", "rasterize a shape and export it");
  maskc->set_help_flag("--help");
  ma.shape.attach(maskc);
  maskc->add_option("--h", ma.h)->check(CLI::PositiveNumber);
  maskc->add_option("--out", ma.out);
  maskc->add_option("--shape-out", ma.shape_out);
  maskc->add_option("--field", ma.field, "sample a generator: bump:SEED|fourier:SEED|trig:SEED");
  maskc->add_option("--field-out", ma.field_out);
  maskc->add_option("--field-format", ma.field_format)->check(CLI::IsMember({"csv", "json"}));

  SweepArgs sa;
  CLI::App* sweep = app.add_subcommand("sweep", "parametric sweeps (exploratory)");
  sweep->set_help_flag("--help");
  sa.shape.attach(sweep);
  sweep->add_option("--vary", sa.vary)->check(CLI::IsMember({"p", "alpha", "aspect"}));
  sweep->add_option("--from", sa.from);
  sweep->add_option("--to", sa.to);
  sweep->add_option("--steps", sa.steps);
  sweep->add_option("--mode", sa.mode);
  sweep->add_option("--h", sa.h)->check(CLI::PositiveNumber);
  sweep->add_option("--seed", sa.seed);
  sweep->add_option("--jobs", sa.jobs)->check(CLI::PositiveNumber);
  sweep->add_option("--out", sa.out);
  sweep->add_option("--format", sa.format)->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (dump_config) {
      std::cout << app.config_to_str(false, false);
      return 0;
    }
    if (info->parsed()) {
      kl::ExplicitConstants c = kl::explicit_constants(info_p, info_n, info_diam);
      if (info_json) {
        std::cout << "{\"p\":" << info_p << ",\"N\":" << info_n
                  << ",\"diam\":" << info_diam << ",\"C_pN\":" << c.c_pn
                  << ",\"kappa_omega\":" << c.kappa_omega
                  << ",\"kappa_boundary\":" << c.kappa_boundary << "}\n";
      } else {
        std::cout.precision(12);
        std::cout << "C_pN            = " << c.c_pn << "\n"
                  << "kappa_omega     = " << c.kappa_omega << "\n"
                  << "kappa_boundary  = " << c.kappa_boundary << "\n";
      }
      return 0;
    }
    if (maskc->parsed()) return run_mask(ma);
    if (ident->parsed()) return run_identities(ia);
    if (korn->parsed()) return run_korn(ka);
    if (pk->parsed()) return run_pk(pa);
    if (verify->parsed()) return run_verify(va);
    if (sweep->parsed()) return run_sweep(sa);
    return 2;
  } catch (const kl::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const kl::OptimizationStallError& e) {
    std::cerr << "optimization stalled: " << e.what()
              << " (best=" << e.best_value << ")\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
