#include "dimscope/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "dimscope/baselines.hpp"
#include "dimscope/correlation_integral.hpp"
#include "dimscope/datasets.hpp"
#include "dimscope/error.hpp"
#include "dimscope/fci_estimator.hpp"
#include "dimscope/fci_model.hpp"
#include "dimscope/io.hpp"
#include "dimscope/multiscale.hpp"
#include "dimscope/rng.hpp"

namespace dimscope {
namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::string field;
  std::istringstream in(text);
  while (std::getline(in, field, ',')) {
    try {
      values.push_back(parse_double(field));
    } catch (const InvalidInput&) {
      throw UsageError("not a number: '" + field + "'");
    }
  }
  return values;
}

std::pair<double, double> parse_pair(const std::string& text,
                                     const char* what) {
  const auto v = parse_list(text);
  if (v.size() != 2) {
    throw UsageError(std::string(what) + " expects two comma-separated numbers");
  }
  return {v[0], v[1]};
}

/// Sidecar record of one run, written next to its main output.
class Manifest {
 public:
  explicit Manifest(std::string command)
      : command_(std::move(command)), start_(std::chrono::steady_clock::now()) {}

  void flag(const std::string& key, const std::string& value) {
    flags_.emplace_back(key, value);
  }
  void flag(const std::string& key, double value) { flag(key, format_double(value)); }
  void flag(const std::string& key, std::size_t value) {
    flag(key, std::to_string(value));
  }
  void flag(const std::string& key, std::uint64_t value, int) {
    flag(key, std::to_string(value));
  }

  void write(const fs::path& output) const {
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start_)
                               .count();
    KeyValues kv{{"command", command_}, {"version", kVersion}};
    for (const auto& [k, v] : flags_) kv.emplace_back("flag." + k, v);
    kv.emplace_back("output", output.string());
    kv.emplace_back("wall_seconds", format_double(seconds));
    fs::path path = output;
    path += ".manifest";
    write_file_atomic(path, [&](std::ostream& os) { write_key_values(os, kv); });
  }

 private:
  std::string command_;
  KeyValues flags_;
  std::chrono::steady_clock::time_point start_;
};

void write_kv_file(const fs::path& path, const KeyValues& kv) {
  write_file_atomic(path, [&](std::ostream& os) { write_key_values(os, kv); });
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  SyntheticSpec spec;
  std::string out;
};

int do_generate(const GenerateArgs& a, std::ostream& out) {
  Manifest manifest("generate");
  const DataSet data = generate(a.spec);
  save_dataset(a.out, data);
  fs::path meta = a.out;
  meta += ".meta";
  write_kv_file(meta, describe(a.spec));
  for (const auto& [k, v] : describe(a.spec)) manifest.flag(k, v);
  manifest.write(a.out);
  out << data.n_samples() << ' ' << data.ambient_dim() << '\n';
  return kExitOk;
}

struct EstimateArgs {
  std::string in;
  std::string out;
  std::size_t subsample = kDefaultCurvePoints;
  std::optional<double> d_max;
  std::size_t min_samples = 5;
  bool multistart = true;
  std::uint64_t seed = 0;
};

int do_estimate(const EstimateArgs& a, std::ostream& out) {
  Manifest manifest("estimate");
  const DataSet data = load_dataset(a.in);
  EstimatorConfig cfg;
  cfg.subsample = a.subsample;
  cfg.d_max = a.d_max;
  cfg.min_samples = a.min_samples;
  cfg.multistart = a.multistart;
  cfg.seed = a.seed;
  const IdEstimate est = estimate_id_global(data, cfg);
  out << format_double(est.d_est) << '\n';
  if (!a.out.empty()) {
    write_kv_file(a.out, {{"d_est", format_double(est.d_est)},
                          {"d_sphere", format_double(est.fit.d_sphere)},
                          {"r_s", format_double(est.fit.r_s)},
                          {"rss", format_double(est.fit.rss)},
                          {"converged", est.fit.converged ? "true" : "false"},
                          {"n_curve_points", std::to_string(est.fit.n_curve_points)},
                          {"n_samples_used", std::to_string(est.n_samples_used)}});
    manifest.flag("in", a.in);
    manifest.flag("subsample", a.subsample);
    manifest.flag("d_max", a.d_max.value_or(default_d_max(data.ambient_dim())));
    manifest.flag("min_samples", a.min_samples);
    manifest.flag("multistart", a.multistart ? "true" : "false");
    manifest.flag("seed", a.seed, 0);
    manifest.write(a.out);
  }
  return kExitOk;
}

struct MultiscaleArgs {
  std::string in;
  std::string out;
  std::size_t centers = 20;
  std::string scale_kind = "knn";
  std::string scales = "auto";
  std::size_t min_reliable = 20;
  std::uint64_t seed = 0;
  std::size_t subsample = kDefaultCurvePoints;
};

int do_multiscale(const MultiscaleArgs& a, std::ostream& out) {
  Manifest manifest("multiscale");
  const DataSet data = load_dataset(a.in);
  if (a.centers < 1 || a.centers > data.n_samples()) {
    throw UsageError("--centers must lie in [1, N]");
  }
  MultiscaleConfig cfg;
  cfg.n_reliable = a.min_reliable;
  cfg.estimator.subsample = a.subsample;
  cfg.estimator.seed = a.seed;
  Rng rng(a.seed);

  const bool knn = a.scale_kind == "knn";
  MultiscaleResult result;
  if (a.scales == "auto") {
    if (knn) {
      result = multiscale_estimate(data, a.centers,
                                   default_knn_scales(data.n_samples()), rng, cfg);
    } else {
      const ScaleSelector selector = [&data](std::size_t c) {
        return auto_radius_scales(data, c);
      };
      result = multiscale_estimate(data, a.centers, selector, rng, cfg);
    }
  } else {
    std::vector<Scale> scales;
    for (double v : parse_list(a.scales)) {
      if (knn) {
        if (v < 1 || v != std::floor(v) || v > static_cast<double>(data.n_samples() - 1)) {
          throw UsageError("knn scales must be integers in [1, N-1]");
        }
        scales.push_back(Scale::knn(static_cast<std::size_t>(v)));
      } else {
        if (!(v > 0)) throw UsageError("radius scales must be positive");
        scales.push_back(Scale::radius(v));
      }
    }
    std::sort(scales.begin(), scales.end(),
              [](const Scale& x, const Scale& y) { return x.value < y.value; });
    result = multiscale_estimate(data, a.centers, scales, rng, cfg);
  }

  write_file_atomic(a.out, [&](std::ostream& os) {
    write_profiles_csv(os, result.profiles);
  });
  fs::path summary = a.out;
  summary += ".summary";
  write_file_atomic(summary, [&](std::ostream& os) {
    os << "center,min_d_est\n";
    for (const auto& m : result.per_center_minima) {
      os << m.center_index << ',' << (m.min_d_est ? format_double(*m.min_d_est) : "")
         << '\n';
    }
    os << "d_summary," << format_double(result.d_summary) << '\n';
  });
  manifest.flag("in", a.in);
  manifest.flag("centers", a.centers);
  manifest.flag("scale_kind", a.scale_kind);
  manifest.flag("scales", a.scales);
  manifest.flag("min_reliable", a.min_reliable);
  manifest.flag("subsample", a.subsample);
  manifest.flag("seed", a.seed, 0);
  manifest.write(a.out);
  out << format_double(result.d_summary) << '\n';
  return kExitOk;
}

struct BaselineArgs {
  std::string in;
  std::string out;
  std::string method;
  std::string band = "0.0005,0.05";
  std::string criterion = "gap";
  double mass = kDefaultMassFraction;
  std::size_t centers = 20;
  std::string radii = "auto";
  std::uint64_t seed = 0;
};

std::vector<double> auto_mpca_radii(const DataSet& data) {
  const DistanceList d = pairwise_distances(data);
  std::vector<double> radii;
  for (int k = 1; k <= 20; ++k) {
    radii.push_back(sorted_quantile(d.values, 0.05 * k));
  }
  radii.back() = std::nextafter(radii.back(), INFINITY);
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  return radii;
}

int do_baseline(const BaselineArgs& a, std::ostream& out) {
  Manifest manifest("baseline");
  const DataSet data = load_dataset(a.in);
  manifest.flag("in", a.in);
  manifest.flag("method", a.method);
  if (a.method == "corrdim") {
    const auto [lo, hi] = parse_pair(a.band, "--band");
    const CorrDimFit fit = corrdim_estimate(data, {lo, hi});
    write_kv_file(a.out, {{"d_est", format_double(fit.d_est)},
                          {"q_lo", format_double(fit.band.lo)},
                          {"q_hi", format_double(fit.band.hi)},
                          {"n_points_used", std::to_string(fit.n_points_used)},
                          {"r_squared", format_double(fit.r_squared)}});
    manifest.flag("band", a.band);
    out << format_double(fit.d_est) << '\n';
  } else if (a.method == "gpca") {
    PcaCriterion criterion;
    if (a.criterion == "gap") {
      criterion = PcaCriterion::gap;
    } else if (a.criterion == "mass") {
      criterion = PcaCriterion::mass;
    } else {
      throw UsageError("--criterion must be gap or mass");
    }
    const PcaSpectrum spectrum = pca_spectrum(data);
    const std::size_t d = gpca_estimate(spectrum, criterion, a.mass);
    write_file_atomic(a.out, [&](std::ostream& os) { write_spectrum_csv(os, spectrum); });
    manifest.flag("criterion", a.criterion);
    manifest.flag("mass", a.mass);
    out << d << '\n';
  } else if (a.method == "mpca") {
    if (a.centers < 1 || a.centers > data.n_samples()) {
      throw UsageError("--centers must lie in [1, N]");
    }
    Rng rng(a.seed);
    const auto centers = choose_centers(data.n_samples(), a.centers, rng);
    const auto radii = a.radii == "auto" ? auto_mpca_radii(data) : parse_list(a.radii);
    const MpcaProfile profile = mpca_profile(data, centers, radii, a.mass);
    write_file_atomic(a.out, [&](std::ostream& os) { write_mpca_csv(os, profile); });
    manifest.flag("centers", a.centers);
    manifest.flag("radii", a.radii);
    manifest.flag("mass", a.mass);
    manifest.flag("seed", a.seed, 0);
    out << '[' << profile.bound_lo << ',' << profile.bound_hi << "]\n";
  } else {
    throw UsageError("--method must be corrdim, gpca or mpca");
  }
  manifest.write(a.out);
  return kExitOk;
}

struct CurveArgs {
  std::string in;
  std::string out;
  std::string model;
  bool raw = false;
  std::size_t points = kDefaultCurvePoints;
  std::uint64_t seed = 0;
};

int do_curve(const CurveArgs& a, std::ostream& out) {
  Manifest manifest("curve");
  const DataSet data = load_dataset(a.in);
  if (data.n_samples() < 2) throw InvalidInput("a curve needs at least 2 samples");
  std::optional<FciParams> params;
  if (!a.model.empty()) {
    const auto [d, rs] = parse_pair(a.model, "--model");
    if (!(d > 0) || !(rs > 0)) throw UsageError("--model needs d > 0 and r_s > 0");
    params = FciParams{d, rs};
  }
  const DistanceList dists =
      pairwise_distances(a.raw ? data : center_and_project(data));
  EcdfCurve curve = empirical_correlation_integral(dists);
  if (a.points != 0 && curve.size() > a.points) {
    Rng rng(a.seed);
    curve = subsample_curve(curve, a.points, rng);
  }
  write_file_atomic(a.out, [&](std::ostream& os) {
    os << "r,rho_empirical,rho_model\n";
    for (std::size_t k = 0; k < curve.size(); ++k) {
      os << format_double(curve.r[k]) << ',' << format_double(curve.rho[k]) << ',';
      if (params) os << format_double(fci_model_value(curve.r[k], *params));
      os << '\n';
    }
  });
  manifest.flag("in", a.in);
  manifest.flag("model", a.model);
  manifest.flag("raw", a.raw ? "true" : "false");
  manifest.flag("points", a.points);
  manifest.flag("seed", a.seed, 0);
  manifest.write(a.out);
  out << curve.size() << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Intrinsic dimension estimation with the full correlation integral",
               "dimscope"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a synthetic dataset");
  g->add_option("--family", gen.spec.family,
                "hypercube, binary, gaussian, sphere, cmanifold, swissroll, blobs or union")
      ->required();
  g->add_option("--d", gen.spec.d, "Intrinsic dimension");
  g->add_option("--D", gen.spec.ambient_dim, "Ambient dimension");
  g->add_option("--n", gen.spec.n, "Number of samples")->required();
  g->add_option("--seed", gen.spec.seed, "Random seed");
  g->add_option("--blobs", gen.spec.blobs, "Blobs per image");
  g->add_option("--noise", gen.spec.noise, "Gaussian noise level")
      ->check(CLI::NonNegativeNumber);
  g->add_option("--radius", gen.spec.radius, "Sphere radius");
  g->add_option("--d2", gen.spec.d_second, "Union: dimension of the second cube");
  g->add_option("--n2", gen.spec.n_second, "Union: samples of the second cube");
  g->add_option("--out", gen.out, "Output path (.csv or .dset)")->required();

  EstimateArgs est;
  auto* e = app.add_subcommand("estimate", "Global intrinsic dimension");
  e->add_option("--in", est.in)->required();
  e->add_option("--subsample", est.subsample, "Curve points used in the fit");
  e->add_option("--d-max", est.d_max, "Upper bound of the fitted dimension");
  e->add_option("--min-samples", est.min_samples);
  e->add_option("--multistart", est.multistart, "Fit from the whole start grid");
  e->add_option("--seed", est.seed);
  e->add_option("--out", est.out, "Key-value result file");

  MultiscaleArgs ms;
  auto* m = app.add_subcommand("multiscale", "Local estimates over growing neighborhoods");
  m->add_option("--in", ms.in)->required();
  m->add_option("--centers", ms.centers);
  m->add_option("--scale-kind", ms.scale_kind)
      ->check(CLI::IsMember({"knn", "radius"}));
  m->add_option("--scales", ms.scales, "Comma-separated scales or 'auto'");
  m->add_option("--min-reliable", ms.min_reliable);
  m->add_option("--subsample", ms.subsample);
  m->add_option("--seed", ms.seed);
  m->add_option("--out", ms.out, "Profiles CSV")->required();

  BaselineArgs bl;
  auto* b = app.add_subcommand("baseline", "Reference estimators");
  b->add_option("--in", bl.in)->required();
  b->add_option("--method", bl.method)
      ->required()
      ->check(CLI::IsMember({"corrdim", "gpca", "mpca"}));
  b->add_option("--band", bl.band, "CorrDim quantile band qlo,qhi");
  b->add_option("--criterion", bl.criterion)->check(CLI::IsMember({"gap", "mass"}));
  b->add_option("--mass", bl.mass, "Mass fraction of the mass criterion");
  b->add_option("--centers", bl.centers);
  b->add_option("--radii", bl.radii, "Comma-separated radii or 'auto'");
  b->add_option("--seed", bl.seed);
  b->add_option("--out", bl.out)->required();

  CurveArgs cv;
  auto* c = app.add_subcommand("curve", "Empirical correlation integral");
  c->add_option("--in", cv.in)->required();
  c->add_option("--model", cv.model, "Overlay the model with sphere dimension d and radius r_s");
  c->add_flag("--raw", cv.raw, "Skip centering and projection");
  c->add_option("--points", cv.points, "Curve points kept, 0 for all");
  c->add_option("--seed", cv.seed);
  c->add_option("--out", cv.out)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (g->parsed()) return do_generate(gen, out);
    if (e->parsed()) return do_estimate(est, out);
    if (m->parsed()) return do_multiscale(ms, out);
    if (b->parsed()) return do_baseline(bl, out);
    return do_curve(cv, out);
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const InvalidSpec& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const UnfittableCurve& ex) {
    err << "fit failed: " << ex.what() << '\n';
    return kExitFit;
  } catch (const NoReliableScale& ex) {
    err << "fit failed: " << ex.what() << '\n';
    return kExitFit;
  } catch (const DegenerateSpectrum& ex) {
    err << "fit failed: " << ex.what() << '\n';
    return kExitFit;
  } catch (const Error& ex) {
    err << "data error: " << ex.what() << '\n';
    return kExitData;
  } catch (const std::ios_base::failure& ex) {
    err << "data error: " << ex.what() << '\n';
    return kExitData;
  }
}

}  // namespace dimscope
