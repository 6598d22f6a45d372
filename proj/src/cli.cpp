#include "detsum/cli.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "detsum/asymptotics.hpp"
#include "detsum/channel.hpp"
#include "detsum/constructions.hpp"
#include "detsum/detsum.hpp"
#include "detsum/errors.hpp"
#include "detsum/io.hpp"
#include "detsum/lie_volume.hpp"

namespace detsum {

namespace {

namespace fs = std::filesystem;
using io::json;

constexpr const char* kReportSchema = R"({
  "type": "object",
  "required": ["code", "m", "n_r", "regime", "predicted", "lower_bound", "measured", "verdict"],
  "properties": {
    "code": {"type": "string"},
    "m": {"type": "integer"},
    "n_r": {"type": "integer"},
    "regime": {"type": "string"},
    "predicted": {
      "type": "object",
      "required": ["exponent", "polylog"],
      "properties": {"exponent": {"type": "number"}, "polylog": {"type": "boolean"}}
    },
    "lower_bound": {"type": "number"},
    "measured": {
      "type": "object",
      "required": ["slope", "stderr", "r2", "points"],
      "properties": {
        "slope": {"type": "number"},
        "stderr": {"type": "number"},
        "r2": {"type": "number"},
        "points": {"type": "integer"}
      }
    },
    "verdict": {"type": "string", "enum": ["MATCHES_PREDICTION", "INCONCLUSIVE", "MISMATCH"]}
  }
})";

struct Ctx {
  std::string command;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  int threads = 0;
  double budget = 2e10;

  io::RunManifest manifest(std::uint64_t seed = 0) const {
    io::RunManifest m;
    m.command = command;
    m.config_hash = io::config_hash(command);
    m.seed = seed;
    m.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return m;
  }
  EnumOptions enum_opts() const {
    EnumOptions o;
    o.threads = threads;
    o.node_budget = budget;
    return o;
  }
};

json fit_to_json(const GrowthFit& fit) {
  return json{{"slope", fit.slope},
              {"stderr", fit.stderr_slope},
              {"r2", fit.r2},
              {"points", static_cast<int>(fit.points_used.size())},
              {"zeros_excluded", fit.zeros_excluded}};
}

json curve_to_json(const DmtCurve& curve) {
  json v = json::array();
  for (auto [r, d] : curve.vertices) v.push_back(json::array({r, d}));
  return json{{"label", curve.label}, {"vertices", v}};
}

int cmd_construct(Ctx& ctx, const std::string& code, const std::string& out) {
  MatrixLattice lat = io::resolve_code(code);
  std::cout << "code: " << lat.tag << "\nn: " << lat.n << "\nk: " << lat.k
            << "\ncovolume: " << lat.covolume
            << "\nexact_det: " << (lat.has_exact_det() ? "yes" : "no")
            << "\nintegral_gram: " << (lat.gram2_int ? "yes" : "no") << "\n";
  if (!out.empty()) {
    json doc = io::lattice_to_json(lat);
    doc["manifest"] = ctx.manifest().to_json();
    io::write_json(out, doc);
  }
  return 0;
}

int cmd_enumerate(Ctx& ctx, const std::string& code, const std::string& radii_s,
                  const std::string& out) {
  MatrixLattice lat = io::resolve_code(code);
  ShellCountTable table = shell_counts(lat, io::parse_grid(radii_s), ctx.enum_opts());
  if (out.empty()) {
    std::cout << "M,count\n";
    for (std::size_t i = 0; i < table.radii.size(); ++i)
      std::cout << table.radii[i] << "," << table.counts[i] << "\n";
  } else {
    auto m = ctx.manifest();
    m.outputs = {out};
    io::write_shell_csv(out, table, m);
  }
  return 0;
}

int cmd_sum(Ctx& ctx, const std::string& code, int m, const std::string& radii_s,
            const std::string& policy_s, const std::string& out) {
  MatrixLattice lat = io::resolve_code(code);
  ZeroDetPolicy policy = policy_s == "skip" ? ZeroDetPolicy::Skip : ZeroDetPolicy::Reject;
  DetSumTable table = inverse_det_sum(lat, m, io::parse_grid(radii_s), policy, ctx.enum_opts());
  if (out.empty()) {
    std::cout << "M,count,sum,unit_count,normalized\n";
    for (const auto& r : table.rows)
      std::cout << r.radius << "," << r.count << "," << r.sum << "," << r.unit_count << ","
                << r.normalized << "\n";
  } else {
    auto man = ctx.manifest();
    man.outputs = {out};
    io::write_detsum_csv(out, table, man);
  }
  return 0;
}

int cmd_fit(Ctx& ctx, const std::string& in, const std::string& col, const std::string& window_s,
            const std::string& out) {
  std::vector<std::string> header;
  auto cols = io::read_csv_columns(in, &header);
  int mcol = -1, vcol = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "M") mcol = static_cast<int>(i);
    if (header[i] == col) vcol = static_cast<int>(i);
  }
  if (mcol < 0) throw UsageError("no 'M' column in " + in);
  if (vcol < 0) throw UsageError("no '" + col + "' column in " + in);
  std::vector<std::pair<double, double>> table;
  for (std::size_t r = 0; r < cols[mcol].size(); ++r)
    table.emplace_back(cols[mcol][r], cols[vcol][r]);

  GrowthFit fit;
  if (!window_s.empty()) {
    auto w = io::parse_grid(window_s);
    if (w.size() < 2) throw UsageError("--window wants lo:hi");
    fit = fit_growth(table, std::make_pair(w.front(), w.back()));
  } else {
    fit = fit_growth_default(table);
  }
  json doc = fit_to_json(fit);
  doc["column"] = col;
  doc["manifest"] = ctx.manifest().to_json();
  if (out.empty())
    std::cout << doc.dump(2) << "\n";
  else
    io::write_json(out, doc);
  return 0;
}

int cmd_predict(Ctx& ctx, const std::string& code, int n_r, const std::string& out) {
  MatrixLattice lat = io::resolve_code(code);
  ExponentPrediction p = predicted_exponent(lat.info, n_r);
  json doc{{"code", lat.tag},           {"n", p.n},
           {"k", lat.k},                {"n_r", n_r},
           {"regime", regime_name(p.regime)}, {"exponent", p.exponent},
           {"polylog", p.polylog}};
  doc["manifest"] = ctx.manifest().to_json();
  if (out.empty())
    std::cout << doc.dump(2) << "\n";
  else
    io::write_json(out, doc);
  return 0;
}

int cmd_dmt(Ctx& ctx, int n, int k, int n_r, const std::string& code, const std::string& out) {
  json doc{{"n", n}, {"k", k}, {"n_r", n_r},
           {"sum_lower_exponent", dmt_sum_lower_exponent(n, k, n_r)},
           {"optimal", curve_to_json(optimal_dmt(n, n_r))}};
  if (!code.empty()) {
    MatrixLattice lat = io::resolve_code(code);
    DmtSegment seg = code_dmt_segment(lat.info, n_r);
    doc["code_segment"] = curve_to_json(seg.curve);
    doc["code_segment"]["d1_unclipped"] = seg.d1_unclipped;
    doc["code_segment"]["meets_optimal"] = seg.meets_optimal;
  }
  doc["manifest"] = ctx.manifest().to_json();
  if (out.empty())
    std::cout << doc.dump(2) << "\n";
  else
    io::write_json(out, doc);
  return 0;
}

int cmd_lie(Ctx& ctx, const std::string& family_s, int n, const std::string& out) {
  RootFamily family;
  if (family_s == "complex")
    family = RootFamily::Complex;
  else if (family_s == "real")
    family = RootFamily::Real;
  else if (family_s == "quaternion")
    family = RootFamily::Quaternion;
  else
    throw UsageError("--family must be complex, real or quaternion");

  RestrictedRootData data = build_root_data(family, n);
  VolumeExponentDetail detail;
  Rational t = volume_exponent(data, &detail);

  json rows = json::array();
  for (int j = 0; j < data.rank; ++j)
    rows.push_back(json{{"j", j + 1},
                        {"two_psi_beta", detail.psi_values[j].str()},
                        {"weight_beta", detail.weight_values[j].str()}});
  json doc{{"family", family_s},
           {"n", n},
           {"rank", data.rank},
           {"positive_roots", static_cast<int>(data.positive_roots.size())},
           {"table", rows},
           {"argmin_j", detail.argmin + 1},
           {"T", t.str()}};
  doc["manifest"] = ctx.manifest().to_json();
  if (out.empty()) {
    std::cout << "family: " << family_s << "  n: " << n << "  rank: " << data.rank << "\n";
    std::cout << "j  2*psi(beta~_j)  lambda1(beta_j)\n";
    for (int j = 0; j < data.rank; ++j)
      std::cout << j + 1 << "  " << detail.psi_values[j].str() << "  "
                << detail.weight_values[j].str() << "\n";
    std::cout << "argmin j = " << detail.argmin + 1 << "\nT = " << t.str() << "\n";
  } else {
    io::write_json(out, doc);
  }
  return 0;
}

int cmd_simulate(Ctx& ctx, const std::string& code, int n_r, const std::string& snr_s,
                 std::uint64_t blocks, std::uint64_t seed, const std::string& out) {
  MatrixLattice lat = io::resolve_code(code);
  Codebook cb = qam_codebook(lat);
  SimConfig cfg;
  cfg.n_r = n_r;
  cfg.snr_db = io::parse_grid(snr_s);
  cfg.blocks = blocks;
  cfg.seed = seed;
  cfg.threads = ctx.threads;
  auto rows = simulate(cb, cfg);
  if (out.empty()) {
    std::cout << "snr_db,blocks,errors,bler,ci95\n";
    for (const auto& r : rows)
      std::cout << r.snr_db << "," << r.blocks << "," << r.block_errors << "," << r.bler << ","
                << r.ci95_half_width << "\n";
  } else {
    auto man = ctx.manifest(seed);
    man.outputs = {out};
    io::write_bler_csv(out, rows, man);
  }
  return 0;
}

int cmd_report(Ctx& ctx, const std::string& code, int m, int n_r, const std::string& radii_s,
               const std::string& out_dir) {
  MatrixLattice lat = io::resolve_code(code);
  std::vector<double> radii = io::parse_grid(radii_s);
  std::sort(radii.begin(), radii.end());

  // half-max radius row feeds the bounded-regime ratio test
  std::vector<double> enum_radii = radii;
  double half = radii.back() / 2.0;
  bool have_half = false;
  for (double r : enum_radii)
    if (std::abs(r - half) < 1e-9 * half) have_half = true;
  if (!have_half) enum_radii.push_back(half);
  std::sort(enum_radii.begin(), enum_radii.end());

  DetSumTable table = inverse_det_sum(lat, m, enum_radii, ZeroDetPolicy::Reject, ctx.enum_opts());

  std::vector<std::pair<double, double>> fit_rows;
  double sum_half = 0.0, sum_max = 0.0;
  for (const auto& row : table.rows) {
    bool in_grid = false;
    for (double r : radii)
      if (std::abs(row.radius - r) < 1e-9 * r) in_grid = true;
    if (in_grid) fit_rows.emplace_back(row.radius, row.sum);
    if (std::abs(row.radius - half) < 1e-9 * half) sum_half = row.sum;
    if (std::abs(row.radius - radii.back()) < 1e-9 * radii.back()) sum_max = row.sum;
  }
  GrowthFit fit = fit_growth_default(fit_rows);
  ExponentPrediction pred = predicted_exponent(lat.info, n_r);
  double lower = dmt_sum_lower_exponent(lat.n, lat.k, n_r);

  // Verdict thresholds (pinned): power laws within +-0.35; bounded/polylog
  // regimes must be sub-power (slope <= 0.5) with S(Mmax)/S(Mmax/2) <= 1.5.
  std::string verdict;
  if (pred.exponent >= 1.0) {
    double err = std::abs(fit.slope - pred.exponent);
    verdict = err <= 0.35 ? "MATCHES_PREDICTION" : (err > 0.75 ? "MISMATCH" : "INCONCLUSIVE");
  } else {
    double ratio = sum_half > 0 ? sum_max / sum_half : std::numeric_limits<double>::infinity();
    if (ratio <= 1.5 && fit.slope <= 0.5)
      verdict = "MATCHES_PREDICTION";
    else if (ratio > 2.5 || fit.slope > 1.0)
      verdict = "MISMATCH";
    else
      verdict = "INCONCLUSIVE";
  }

  fs::create_directories(out_dir);
  std::string csv_path = (fs::path(out_dir) / ("detsum_" + lat.tag + "_m" + std::to_string(m) +
                                               ".csv")).string();
  std::string json_path = (fs::path(out_dir) / ("report_" + lat.tag + ".json")).string();

  auto man = ctx.manifest();
  man.outputs = {csv_path, json_path};
  io::write_detsum_csv(csv_path, table, man);

  json doc{{"code", lat.tag},
           {"m", m},
           {"n_r", n_r},
           {"regime", regime_name(pred.regime)},
           {"predicted", json{{"exponent", pred.exponent}, {"polylog", pred.polylog}}},
           {"lower_bound", lower},
           {"measured", fit_to_json(fit)},
           {"half_ratio", sum_half > 0 ? sum_max / sum_half : 0.0},
           {"table_csv", csv_path},
           {"verdict", verdict}};
  doc["manifest"] = man.to_json();
  if (auto err = io::schema_violation(doc, json::parse(kReportSchema)))
    throw Error("report does not match its schema: " + *err);
  io::write_json(json_path, doc);

  std::cout << "code " << lat.tag << ": measured slope " << fit.slope << " vs predicted "
            << pred.exponent << (pred.polylog ? " (polylog)" : "") << " -> " << verdict << "\n";
  return verdict == "MISMATCH" ? 3 : 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
  CLI::App app{"algebraic space-time lattice codes: inverse determinant sums, growth exponents, "
               "tradeoff curves and error-rate simulation"};
  app.require_subcommand(1);

  Ctx ctx;
  {
    std::string joined = "detsum";
    for (const auto& a : args) joined += " " + a;
    ctx.command = joined;
  }
  app.add_option("--threads", ctx.threads, "worker thread cap (0 = hardware)");
  app.add_option("--budget", ctx.budget, "enumeration node budget");

  // construct
  auto* c_construct = app.add_subcommand("construct", "build a lattice and print its data");
  std::string code, out, radii, policy = "reject", col = "sum", window, family = "complex";
  std::string snr;
  int m = 2, n_r = 1, n = 2, kdim = 8;
  std::uint64_t blocks = 100000, seed = 0;
  c_construct->add_option("--code", code, "builtin name or descriptor path")->required();
  c_construct->add_option("--out", out, "write descriptor JSON here");

  auto* c_enum = app.add_subcommand("enumerate", "shell counts |L(M)|");
  c_enum->add_option("--code", code)->required();
  c_enum->add_option("--radii", radii, "start:stop:gN or start:stop:step")->required();
  c_enum->add_option("--out", out, "CSV output path");

  auto* c_sum = app.add_subcommand("sum", "inverse determinant sum table");
  c_sum->add_option("--code", code)->required();
  c_sum->add_option("-m,--m", m, "inverse determinant exponent")->required();
  c_sum->add_option("--radii", radii)->required();
  c_sum->add_option("--policy", policy, "zero-determinant policy: reject|skip");
  c_sum->add_option("--out", out, "CSV output path");

  auto* c_fit = app.add_subcommand("fit", "log-log growth fit of a table column");
  std::string in_path, fit_out;
  c_fit->add_option("--in", in_path, "input CSV")->required();
  c_fit->add_option("--col", col, "column to fit (default sum)");
  c_fit->add_option("--window", window, "fit window lo:hi (default: drop smallest 25%)");
  c_fit->add_option("--out", fit_out, "JSON output path");

  auto* c_predict = app.add_subcommand("predict", "closed-form growth exponent");
  c_predict->add_option("--code", code)->required();
  c_predict->add_option("--nr", n_r, "receive antennas")->required();
  c_predict->add_option("--out", fit_out, "JSON output path");

  auto* c_dmt = app.add_subcommand("dmt", "tradeoff curves and the sum lower bound");
  c_dmt->add_option("--n", n)->required();
  c_dmt->add_option("--k", kdim)->required();
  c_dmt->add_option("--nr", n_r)->required();
  c_dmt->add_option("--code", code, "also emit this code's r in [0,1] segment");
  c_dmt->add_option("--out", fit_out, "JSON output path");

  auto* c_lie = app.add_subcommand("lie", "ball-volume growth exponent from root data");
  c_lie->add_option("--family", family, "complex|real|quaternion")->required();
  c_lie->add_option("--n", n)->required();
  c_lie->add_option("--out", fit_out, "JSON output path");

  auto* c_sim = app.add_subcommand("simulate", "Rayleigh MC with exhaustive ML decoding");
  c_sim->add_option("--code", code)->required();
  c_sim->add_option("--nr", n_r)->required();
  c_sim->add_option("--snr", snr, "SNR grid in dB")->required();
  c_sim->add_option("--blocks", blocks, "blocks per SNR point");
  c_sim->add_option("--seed", seed, "RNG seed");
  c_sim->add_option("--out", out, "CSV output path");

  auto* c_report = app.add_subcommand("report", "sum + fit + prediction with a verdict");
  c_report->add_option("--code", code)->required();
  c_report->add_option("-m,--m", m)->required();
  c_report->add_option("--nr", n_r)->required();
  c_report->add_option("--radii", radii)->required();
  std::string out_dir = ".";
  c_report->add_option("--out-dir", out_dir, "output directory");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (c_construct->parsed()) return cmd_construct(ctx, code, out);
    if (c_enum->parsed()) return cmd_enumerate(ctx, code, radii, out);
    if (c_sum->parsed()) return cmd_sum(ctx, code, m, radii, policy, out);
    if (c_fit->parsed()) return cmd_fit(ctx, in_path, col, window, fit_out);
    if (c_predict->parsed()) return cmd_predict(ctx, code, n_r, fit_out);
    if (c_dmt->parsed()) return cmd_dmt(ctx, n, kdim, n_r, code, fit_out);
    if (c_lie->parsed()) return cmd_lie(ctx, family, n, fit_out);
    if (c_sim->parsed()) return cmd_simulate(ctx, code, n_r, snr, blocks, seed, out);
    if (c_report->parsed()) return cmd_report(ctx, code, m, n_r, radii, out_dir);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const RadiusTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace detsum
