// g2cb: exact certification toolkit for the genus-2 conic-bundle geometry.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "g2cb/report.hpp"
#include "g2cb/rng.hpp"

namespace {

using g2cb::Json;

g2cb::HyperellipticCurve load_curve(const std::string& path, const std::string& field) {
  std::optional<std::string> override_spec;
  if (!field.empty()) override_spec = field;
  return g2cb::load_curve_file(path, override_spec);
}

g2cb::Scalar parse_coord(const std::string& text, const g2cb::FieldContext& ctx) {
  return g2cb::Scalar::parse(text, ctx);
}

int cmd_verify(const std::string& curve_path, const std::string& field, std::uint64_t seed, int samples,
               int workers, const std::vector<std::string>& checks, const std::string& out,
               const std::string& cache_dir) {
  g2cb::VerifyConfig cfg;
  cfg.curve_path = curve_path;
  if (!field.empty()) cfg.field_override = field;
  cfg.seed = seed;
  cfg.samples = samples;
  cfg.workers = workers;
  cfg.checks = checks;
  cfg.cache_dir = cache_dir;
  g2cb::Report report = g2cb::run_verify(cfg);
  std::string dump = report.json.dump(2) + "\n";
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) g2cb::fail(g2cb::Errc::InvalidInput, "cannot write report to '" + out + "'");
    f << dump;
    for (const auto& check : report.json["checks"])
      std::cout << "[" << check["status"].get<std::string>() << "] " << check["name"].get<std::string>()
                << "\n";
    std::cout << "overall: " << report.json["overall"].get<std::string>() << "\n";
  } else {
    std::cout << dump;
  }
  return report.passed ? 0 : 1;
}

int cmd_quadrics(const std::string& curve_path, const std::string& field) {
  auto curve = load_curve(curve_path, field);
  auto cm = g2cb::ClassifyingMap::build(curve);
  Json j;
  j["dim"] = cm.certified_dim();
  Json basis = Json::array();
  for (const auto& q : cm.quadrics()) basis.push_back(q.str());
  j["basis"] = basis;
  for (const auto& q : cm.quadrics()) std::cout << q.str() << "\n";
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_fiber(const std::string& curve_path, const std::string& field, const std::string& point) {
  auto curve = load_curve(curve_path, field);
  auto cm = g2cb::ClassifyingMap::build(curve);

  std::vector<std::string> parts;
  std::string cur;
  for (char c : point) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 4) g2cb::fail(g2cb::Errc::InvalidInput, "--point needs \"p0,p1,p2,p3\"");
  Eigen::Matrix<g2cb::Scalar, 4, 1> coords;
  for (int i = 0; i < 4; ++i) coords(i) = parse_coord(parts[static_cast<size_t>(i)], curve.context());
  g2cb::P3Point p(coords);

  g2cb::FiberResult fr = g2cb::fiber_conic(cm, p);
  Json j;
  j["rank"] = fr.conic.rank();
  j["class"] = g2cb::fiber_class_name(fr.cls);
  Json gram = Json::array();
  for (int r = 0; r < 3; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 3; ++c) row.push_back(fr.conic.gram()(r, c).str());
    gram.push_back(row);
  }
  j["gram"] = gram;
  j["divisor_checked"] = fr.divisor_checked.has_value() ? Json(*fr.divisor_checked) : Json(false);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_kummer(const std::string& curve_path, const std::string& field, std::uint64_t seed, int samples,
               const std::string& cache_dir) {
  auto curve = load_curve(curve_path, field);
  if (curve.context().kind() != g2cb::FieldKind::Prime)
    g2cb::fail(g2cb::Errc::InvalidInput, "Kummer interpolation needs a prime-field curve");
  auto cm = g2cb::ClassifyingMap::build(curve);

  g2cb::ArtifactCache cache(cache_dir);
  std::string key = g2cb::ArtifactCache::key_for(curve.context(), curve.coeffs());
  std::optional<g2cb::QuarticSurface> quartic;
  bool cached = false;
  if (auto payload = cache.get(key)) {
    if (payload->contains("quartic")) {
      g2cb::ExactVector coeffs(35);
      for (int i = 0; i < 35; ++i)
        coeffs(i) = g2cb::Scalar::parse((*payload)["quartic"][static_cast<size_t>(i)].get<std::string>(),
                                        curve.context());
      quartic.emplace(coeffs);
      cached = true;
    }
  }
  if (!quartic) {
    auto samples_vec = g2cb::sample_secant_images(cm, samples, g2cb::SeededRng::hash_label(seed, "kummer_samples"));
    quartic.emplace(g2cb::kummer_quartic(cm, samples_vec));
    Json payload = Json::object();
    Json qc = Json::array();
    for (int i = 0; i < 35; ++i) qc.push_back(quartic->coeffs()(i).str());
    payload["quartic"] = qc;
    cache.put(key, payload);
  }

  Json j;
  Json qc = Json::array();
  for (int i = 0; i < 35; ++i) qc.push_back(quartic->coeffs()(i).str());
  j["quartic"] = qc;
  j["basis_note"] =
      "coefficients over the 35 graded-lex quartic monomials in the coordinates of the canonical "
      "quadric basis (m0, m1, m2, z4^2 - Q_f)";
  Json nodes = Json::array();
  try {
    g2cb::NodeCertificate cert = g2cb::node_certificate(cm, *quartic, g2cb::SeededRng::hash_label(seed, "nodes"));
    for (const auto& n : cert.nodes) nodes.push_back(n.str());
  } catch (const g2cb::Error& e) {
    if (e.code() != g2cb::Errc::SkippedUnsplit) throw;
    nodes = Json{{"skipped", e.what()}};
  }
  j["nodes"] = nodes;
  j["tangent_cone_alpha"] = g2cb::tangent_cone_check(*quartic).str();
  j["cached"] = cached;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_cohomology(int kmin, int kmax) {
  g2cb::SteinerLab lab;
  Json rows = Json::array();
  for (const auto& row : lab.table(kmin, kmax))
    rows.push_back(Json{{"k", row.k}, {"h0", row.h0}, {"h1", row.h1}, {"h2", row.h2}, {"chi", row.chi()}});
  std::cout << Json{{"rows", rows}}.dump(2) << "\n";
  return 0;
}

int cmd_bundle_report() {
  g2cb::SteinerLab lab;
  g2cb::ChernClass cd = lab.chern_dual();
  g2cb::EndReport end = lab.end_cohomology();
  g2cb::NormalBundleReport nb = lab.normal_bundle_splitting();
  Json j;
  j["chern"] = Json{{"rank", cd.rank}, {"c1", cd.c1}, {"c2", cd.c2}};
  j["slope"] = lab.slope_dual().get_str();
  j["stable"] = lab.hoppe_stable();
  j["hom"] = end.hom;
  j["ext1"] = end.ext1;
  j["dimB"] = lab.dim_B();
  j["normal_splitting"] = Json::array({nb.splitting[0], nb.splitting[1]});
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact certification toolkit for the genus-2 conic-bundle geometry"};
  app.require_subcommand(1);

  std::string curve_path, field, point, out, cache_dir;
  std::uint64_t seed = 42;
  int samples = 50, workers = 1, kmin = -3, kmax = 2;
  std::vector<std::string> checks;

  auto* verify = app.add_subcommand("verify", "run the full certification pipeline");
  verify->add_option("--curve", curve_path, "curve JSON file")->required();
  verify->add_option("--field", field, "field override: rationals | prime:<p>");
  verify->add_option("--seed", seed, "64-bit seed");
  verify->add_option("--samples", samples, "sample count for the Kummer sweeps");
  verify->add_option("--workers", workers, "worker threads for sample sweeps");
  verify->add_option("--checks", checks, "subset of checks to run")->delimiter(',');
  verify->add_option("--out", out, "write the JSON report here");
  verify->add_option("--cache-dir", cache_dir, "artifact cache directory");

  auto* quadrics = app.add_subcommand("quadrics", "emit the canonical quadric basis");
  quadrics->add_option("--curve", curve_path, "curve JSON file")->required();
  quadrics->add_option("--field", field, "field override");

  auto* fiber = app.add_subcommand("fiber", "classify the fiber conic over a point of P^3");
  fiber->add_option("--curve", curve_path, "curve JSON file")->required();
  fiber->add_option("--field", field, "field override");
  fiber->add_option("--point", point, "comma-separated p0,p1,p2,p3")->required();

  auto* kummer = app.add_subcommand("kummer", "interpolate the Kummer quartic and certify its nodes");
  kummer->add_option("--curve", curve_path, "curve JSON file")->required();
  kummer->add_option("--field", field, "field override");
  kummer->add_option("--seed", seed, "64-bit seed");
  kummer->add_option("--samples", samples, "secant-image sample count");
  kummer->add_option("--cache-dir", cache_dir, "artifact cache directory");

  auto* cohomology = app.add_subcommand("cohomology", "twist table of the chart bundle");
  cohomology->add_option("--min", kmin, "lowest twist");
  cohomology->add_option("--max", kmax, "highest twist");

  app.add_subcommand("bundle-report", "Chern data, stability, deformations, normal bundle");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("verify"))
      return cmd_verify(curve_path, field, seed, samples, workers, checks, out, cache_dir);
    if (app.got_subcommand("quadrics")) return cmd_quadrics(curve_path, field);
    if (app.got_subcommand("fiber")) return cmd_fiber(curve_path, field, point);
    if (app.got_subcommand("kummer")) return cmd_kummer(curve_path, field, seed, samples, cache_dir);
    if (app.got_subcommand("cohomology")) return cmd_cohomology(kmin, kmax);
    if (app.got_subcommand("bundle-report")) return cmd_bundle_report();
  } catch (const g2cb::Error& e) {
    std::cerr << "error [" << g2cb::errc_name(e.code()) << "]: " << e.what() << "\n";
    return g2cb::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
