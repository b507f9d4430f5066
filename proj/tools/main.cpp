// Command line front end: certification, pole tables, impulse responses,
// stability-region sweeps, and topology generators.
//
// Exit codes: 0 success, 1 negative verdict on a valid run, 2 input error,
// 3 numerical failure.

#include "fdn/charpoly.hpp"
#include "fdn/region.hpp"
#include "fdn/roots.hpp"
#include "fdn/serialize.hpp"
#include "fdn/simulate.hpp"
#include "fdn/statespace.hpp"
#include "fdn/topologies.hpp"
#include "fdn/unilossless.hpp"
#include "fdn/wav.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegativeVerdict = 1;
constexpr int kExitInputError = 2;
constexpr int kExitNumericalError = 3;

struct NegativeVerdict {};  // valid run, scripting-visible "no"

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

fdn::Cplx parse_pair_flag(const std::string& text, const char* what) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) {
      return fdn::Cplx{std::stod(text), 0.0};
    }
    return fdn::Cplx{std::stod(text.substr(0, comma)),
                     std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw fdn::ParseError(std::string(what) + ": expected re[,im], got '" +
                          text + "'");
  }
}

fdn::DelayVec parse_delays(const std::vector<int>& raw) {
  fdn::DelayVec m(raw.begin(), raw.end());
  fdn::validate_delays(m);
  return m;
}

// ---------------------------------------------------------------------------
// analyze

int run_analyze(const std::string& file, double tol, double zero_tol,
                const std::string& out, const std::string& recheck_path) {
  const fdn::Mat a = fdn::load_matrix(file);

  if (!recheck_path.empty()) {
    std::ifstream in(recheck_path);
    if (!in) throw fdn::ParseError(recheck_path + ": cannot open report");
    nlohmann::json report = nlohmann::json::parse(in, nullptr, true);
    const double worst = fdn::recheck_certificates(a, report);
    nlohmann::json result{{"max_certificate_residual", worst},
                          {"tol", tol},
                          {"ok", worst <= tol}};
    write_text(out, result.dump(2) + "\n");
    return worst <= tol ? kExitOk : kExitNegativeVerdict;
  }

  const fdn::UnilosslessReport report =
      fdn::is_unilossless(a, {.tol = tol, .zero_tol = zero_tol});
  write_text(out, fdn::report_to_json(a, report).dump(2) + "\n");
  return report.unilossless ? kExitOk : kExitNegativeVerdict;
}

// ---------------------------------------------------------------------------
// poles

std::vector<fdn::Cplx> poles_by_method(const fdn::Mat& a,
                                       const fdn::DelayVec& m,
                                       const std::string& method) {
  if (method == "minors") {
    return fdn::poly_roots(fdn::generalized_charpoly(a, m)).roots;
  }
  return fdn::statespace_poles(fdn::FdnSystem(a, m)).roots;
}

void print_pole_table(const std::vector<fdn::Cplx>& roots,
                      const std::string& label) {
  std::printf("# method: %s\n", label.c_str());
  std::printf("%-24s %-24s %-16s %-12s\n", "re", "im", "magnitude",
              "| |r|-1 |");
  double max_dev = 0.0;
  for (const fdn::Cplx& r : roots) {
    const double mag = std::abs(r);
    max_dev = std::max(max_dev, std::abs(mag - 1.0));
    std::printf("%- 24.15g %- 24.15g %-16.12g %-12.4g\n", r.real(), r.imag(),
                mag, std::abs(mag - 1.0));
  }
  std::printf("# max | |r|-1 | = %.6g\n", max_dev);
}

int run_poles(const std::string& file, std::vector<int> delays_flag,
              std::string method, double tol) {
  fdn::Mat a;
  std::optional<fdn::DelayVec> delays;
  try {
    const fdn::FdnSystem sys = fdn::load_system(file);
    a = sys.A;
    delays = sys.m;
  } catch (const fdn::ParseError&) {
    a = fdn::load_matrix(file);
  }
  if (!delays_flag.empty()) delays = parse_delays(delays_flag);
  if (!delays) {
    throw fdn::ParseError(
        "poles: no delays; pass --delays or use a system file");
  }
  if (static_cast<Eigen::Index>(delays->size()) != a.rows()) {
    throw fdn::ParseError("poles: delay count must match matrix dimension");
  }

  const long order = fdn::system_order(*delays);
  if (method == "auto") {
    // Coefficient-based roots get ill-conditioned for long delays.
    method = order <= 64 ? "both" : "statespace";
  }

  std::vector<fdn::Cplx> primary;
  if (method == "both") {
    const auto minors = poles_by_method(a, *delays, "minors");
    const auto ss = poles_by_method(a, *delays, "statespace");
    double gap = 0.0;
    for (size_t i = 0; i < minors.size(); ++i) {
      gap = std::max(gap, std::abs(minors[i] - ss[i]));
    }
    if (gap > 1e-6) {
      std::fprintf(stderr,
                   "warning: minors and statespace poles disagree by %.3g; "
                   "printing both sets\n",
                   gap);
      print_pole_table(minors, "minors");
      print_pole_table(ss, "statespace");
    } else {
      print_pole_table(minors, "minors (statespace agrees to 1e-6)");
    }
    primary = minors;
  } else {
    primary = poles_by_method(a, *delays, method);
    print_pole_table(primary, method);
  }

  double max_dev = 0.0;
  for (const fdn::Cplx& r : primary) {
    max_dev = std::max(max_dev, std::abs(std::abs(r) - 1.0));
  }
  const bool lossless = max_dev <= tol;
  std::printf("# verdict: %s (tol %.3g)\n", lossless ? "lossless" : "not_lossless",
              tol);
  return lossless ? kExitOk : kExitNegativeVerdict;
}

// ---------------------------------------------------------------------------
// ir

int run_ir(const std::string& file, long samples, const std::string& out,
           int rate, const std::string& wav_format) {
  const fdn::FdnSystem sys = fdn::load_system(file);
  const std::vector<fdn::Cplx> ir = fdn::render_ir(sys, samples);

  double peak = 0.0;
  for (const fdn::Cplx& s : ir) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
      throw std::runtime_error(
          "ir: non-finite sample encountered; the system is unstable");
    }
    peak = std::max(peak, std::abs(s.real()));
  }

  const bool is_csv = out.size() >= 4 && out.substr(out.size() - 4) == ".csv";
  nlohmann::json info{{"samples", samples}, {"out", out}, {"peak", peak}};
  if (is_csv) {
    std::ostringstream csv;
    csv.precision(17);
    csv << "index,re,im\n";
    for (size_t k = 0; k < ir.size(); ++k) {
      csv << k << "," << ir[k].real() << "," << ir[k].imag() << "\n";
    }
    write_text(out, csv.str());
    info["format"] = "csv";
  } else {
    const double scale = peak > 0.0 ? 1.0 / peak : 1.0;
    std::vector<double> real_part;
    real_part.reserve(ir.size());
    for (const fdn::Cplx& s : ir) real_part.push_back(s.real() * scale);
    fdn::write_wav_mono(out, real_part, rate,
                        wav_format == "pcm16" ? fdn::WavFormat::pcm16
                                              : fdn::WavFormat::float32);
    info["format"] = wav_format;
    info["sample_rate"] = rate;
    info["scale"] = scale;
  }
  std::cout << info.dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// region

int run_region(const std::string& eps_flag, int k, int angles, double tol,
               const std::string& out) {
  const fdn::Cplx eps = parse_pair_flag(eps_flag, "--eps");
  if (std::abs(std::abs(eps) - 1.0) > 1e-9) {
    throw fdn::ParseError("region: |eps| must be 1");
  }
  fdn::RegionSweepOptions opts;
  opts.angles = angles;
  opts.radial_tol = tol;
  const auto boundary = fdn::region_boundary(eps, k, opts);
  write_text(out, fdn::region_csv(boundary));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// topology

const std::vector<int> kDefaultPrimes{149, 211, 263, 293, 347, 401,
                                      457, 509, 563, 613, 673, 727};

int run_topology_schroeder(std::vector<double> g, std::vector<int> m,
                           const std::string& out) {
  if (g.size() != 6 || m.size() != 6) {
    throw fdn::ParseError("schroeder: need exactly 6 gains and 6 delays");
  }
  std::array<double, 6> ga;
  std::array<int, 6> ma;
  std::copy(g.begin(), g.end(), ga.begin());
  std::copy(m.begin(), m.end(), ma.begin());
  fdn::save_json(fdn::system_to_json(fdn::schroeder(ga, ma)), out);
  return kExitOk;
}

int run_topology_allpass(const std::string& core, int n, std::uint64_t seed,
                         std::vector<double> g, std::vector<int> m,
                         std::vector<int> m2, const std::string& out) {
  fdn::Mat a;
  if (!core.empty()) {
    a = fdn::load_matrix(core);
  } else {
    a = fdn::random_unitary(n, seed);
  }
  const auto nn = static_cast<size_t>(a.rows());
  if (g.empty()) g.assign(nn, 0.5);
  if (m.empty()) m.assign(kDefaultPrimes.begin(),
                          kDefaultPrimes.begin() + static_cast<long>(nn));
  if (m2.empty()) {
    for (size_t i = 0; i < nn; ++i) m2.push_back(kDefaultPrimes[i] / 2 + 3);
  }
  if (g.size() != nn || m.size() != nn || m2.size() != nn) {
    throw fdn::ParseError("allpass: g, m, m2 must all have length n");
  }
  const fdn::AllpassFdn ap =
      fdn::allpass_fdn(a, g, parse_delays(m), parse_delays(m2));
  fdn::save_json(fdn::system_to_json(fdn::FdnSystem(ap.a_ap, ap.m_ap)), out);
  return kExitOk;
}

int run_topology_sdn(std::vector<double> y, const std::string& kind,
                     std::vector<int> m, const std::string& out) {
  if (y.empty()) throw fdn::ParseError("sdn: --y must be nonempty");
  fdn::RVec yv(static_cast<Eigen::Index>(y.size()));
  for (size_t i = 0; i < y.size(); ++i) {
    yv[static_cast<Eigen::Index>(i)] = y[i];
  }
  const fdn::Mat a =
      kind == "householder" ? fdn::sdn_householder(yv) : fdn::sdn_even(yv);
  if (m.empty()) {
    m.assign(kDefaultPrimes.begin(),
             kDefaultPrimes.begin() + static_cast<long>(y.size()));
  }
  fdn::save_json(fdn::system_to_json(fdn::FdnSystem(a, parse_delays(m))), out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feedback delay network analysis toolkit"};
  app.require_subcommand(1);

  // analyze
  std::string an_file, an_out = "-", an_recheck;
  double an_tol = 1e-8, an_zero_tol = 0.0;
  auto* analyze = app.add_subcommand(
      "analyze", "Certify a feedback matrix (block-wise diagonal similarity "
                 "to unitary) and emit a JSON report");
  analyze->add_option("matrix", an_file, "matrix or system file")->required();
  analyze->add_option("--tol", an_tol, "certification tolerance");
  analyze->add_option("--zero-tol", an_zero_tol,
                      "structural-zero threshold for reducibility");
  analyze->add_option("--out", an_out, "output path (default stdout)");
  analyze->add_option("--recheck", an_recheck,
                      "verify the certificates of an existing report "
                      "against this matrix");

  // poles
  std::string po_file, po_method = "auto";
  std::vector<int> po_delays;
  double po_tol = 1e-8;
  auto* poles = app.add_subcommand(
      "poles", "Compute system poles for a matrix plus delays");
  poles->add_option("matrix", po_file, "matrix or system file")->required();
  poles->add_option("--delays", po_delays, "delay lengths in samples")
      ->delimiter(',');
  poles->add_option("--method", po_method,
                    "minors | statespace | both | auto")
      ->check(CLI::IsMember({"minors", "statespace", "both", "auto"}));
  poles->add_option("--tol", po_tol, "losslessness tolerance");

  // ir
  std::string ir_file, ir_out = "ir.wav", ir_format = "float32";
  long ir_samples = 48000;
  int ir_rate = 48000;
  auto* ir = app.add_subcommand("ir", "Render an impulse response");
  ir->add_option("system", ir_file, "system file")->required();
  ir->add_option("--samples", ir_samples, "length in samples");
  ir->add_option("--out", ir_out, ".wav or .csv output path")->required();
  ir->add_option("--rate", ir_rate, "WAV sample rate");
  ir->add_option("--format", ir_format, "pcm16 | float32")
      ->check(CLI::IsMember({"pcm16", "float32"}));

  // region
  std::string rg_eps = "-1,0", rg_out = "-";
  int rg_k = 2, rg_angles = 256;
  double rg_tol = 1e-6;
  auto* region = app.add_subcommand(
      "region", "Sweep the lossless region boundary of a 2x2 family with "
                "delays [1, k]");
  region->add_option("--eps", rg_eps, "determinant, re[,im], |eps| = 1");
  region->add_option("--k", rg_k, "second delay length")->required();
  region->add_option("--angles", rg_angles, "angle grid size");
  region->add_option("--tol", rg_tol, "radial tolerance");
  region->add_option("--out", rg_out, "CSV path (default stdout)");

  // topology
  auto* topology =
      app.add_subcommand("topology", "Write a classic reverb topology as a "
                                     "system file");
  topology->require_subcommand(1);

  std::vector<double> sc_g{0.7, 0.7, 0.7, 0.7, 0.5, 0.5};
  std::vector<int> sc_m{241, 263, 293, 307, 89, 97};
  std::string sc_out = "schroeder.json";
  auto* schroeder_cmd = topology->add_subcommand(
      "schroeder", "four parallel combs into two serial allpasses");
  schroeder_cmd->add_option("--g", sc_g, "6 gains")->delimiter(',');
  schroeder_cmd->add_option("--m", sc_m, "6 delays")->delimiter(',');
  schroeder_cmd->add_option("--out", sc_out, "output system file");

  std::string ap_core, ap_out = "allpass.json";
  int ap_n = 4;
  std::uint64_t ap_seed = 1;
  std::vector<double> ap_g;
  std::vector<int> ap_m, ap_m2;
  auto* allpass_cmd = topology->add_subcommand(
      "allpass", "FDN with each delay extended by a comb allpass");
  allpass_cmd->add_option("--core", ap_core,
                          "core feedback matrix file (default: random "
                          "unitary)");
  allpass_cmd->add_option("--n", ap_n, "core size when random");
  allpass_cmd->add_option("--seed", ap_seed, "random seed");
  allpass_cmd->add_option("--g", ap_g, "allpass gains, |g| < 1")
      ->delimiter(',');
  allpass_cmd->add_option("--m", ap_m, "main delays")->delimiter(',');
  allpass_cmd->add_option("--m2", ap_m2, "allpass delays")->delimiter(',');
  allpass_cmd->add_option("--out", ap_out, "output system file");

  std::vector<double> sdn_y;
  std::vector<int> sdn_m;
  std::string sdn_kind = "even", sdn_out = "sdn.json";
  auto* sdn_cmd = topology->add_subcommand(
      "sdn", "scattering junction feedback matrix");
  sdn_cmd->add_option("--y", sdn_y, "junction weights")
      ->delimiter(',')
      ->required();
  sdn_cmd->add_option("--kind", sdn_kind, "even | householder")
      ->check(CLI::IsMember({"even", "householder"}));
  sdn_cmd->add_option("--m", sdn_m, "delays")->delimiter(',');
  sdn_cmd->add_option("--out", sdn_out, "output system file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (*analyze) {
      return run_analyze(an_file, an_tol, an_zero_tol, an_out, an_recheck);
    }
    if (*poles) return run_poles(po_file, po_delays, po_method, po_tol);
    if (*ir) return run_ir(ir_file, ir_samples, ir_out, ir_rate, ir_format);
    if (*region) return run_region(rg_eps, rg_k, rg_angles, rg_tol, rg_out);
    if (*schroeder_cmd) return run_topology_schroeder(sc_g, sc_m, sc_out);
    if (*allpass_cmd) {
      return run_topology_allpass(ap_core, ap_n, ap_seed, ap_g, ap_m, ap_m2,
                                  ap_out);
    }
    if (*sdn_cmd) return run_topology_sdn(sdn_y, sdn_kind, sdn_m, sdn_out);
  } catch (const fdn::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumericalError;
  }
  return kExitOk;
}
