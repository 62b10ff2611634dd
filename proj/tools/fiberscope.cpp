#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fiberscope/building.hpp"
#include "fiberscope/complex_io.hpp"
#include "fiberscope/davis_morse.hpp"
#include "fiberscope/error.hpp"
#include "fiberscope/estimate.hpp"
#include "fiberscope/flag_complex.hpp"
#include "fiberscope/homology.hpp"
#include "fiberscope/jnw_search.hpp"
#include "fiberscope/magic_cube.hpp"

namespace fs = fiberscope;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInput = 4;

struct Source {
  int k = 0;
  int p = 0;
  std::string complex_file;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--k", k, "rank of the type-A building");
    cmd->add_option("--p", p, "prime field order");
    cmd->add_option("--complex-file", complex_file, "complex in the text format");
  }

  fs::FlagComplex load() const {
    if (!complex_file.empty()) return fs::read_complex_file(complex_file);
    if (k <= 0 || p <= 0) throw fs::Error(fs::ErrorCode::InvalidArgument, "give --k and --p, or --complex-file");
    fs::BuildOptions options;
    options.distances = false;
    return fs::build_typeA(k, p, options).complex();
  }
};

// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fs::Error(fs::ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

std::string join(const std::vector<std::size_t>& values, char sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out.push_back(sep);
    out += std::to_string(values[i]);
  }
  return out;
}

int cmd_build(int k, int p, const std::string& out_path) {
  const fs::Building b = fs::build_typeA(k, p);
  const auto& c = b.complex();
  const auto girth = fs::girth_and_square_free(c);
  std::ostringstream s;
  s << "vertices " << c.vertex_count() << '\n';
  s << "edges " << c.edge_count() << '\n';
  s << "f_vector " << join(fs::f_vector(c), ',') << '\n';
  s << "chi " << fs::chromatic_number(c).colors << '\n';
  s << "kappa2 " << fs::charney_davis(c, 2).str() << '\n';
  s << "girth " << (girth.girth ? std::to_string(*girth.girth) : std::string("inf")) << '\n';
  s << "square_free " << (girth.square_free ? "true" : "false") << '\n';
  s << "chambers " << b.chamber_count() << '\n';
  s << "thickness " << b.thickness() << '\n';
  std::cout << s.str();
  if (!out_path.empty()) emit(out_path, fs::to_text(c));
  return kExitOk;
}

fs::MoveSystem colored_moves(const fs::FlagComplex& c) {
  const auto coloring = fs::chromatic_number(c);
  return fs::move_system_from_coloring(c, coloring.color_of);
}

int run(int argc, char** argv) {
  CLI::App app{"fiberscope: buildings, random subcomplexes and legal-coset certificates"};
  app.require_subcommand(1);

  int build_k = 0;
  int build_p = 0;
  std::string build_out;
  auto* build = app.add_subcommand("build", "construct the type-A_k building over F_p and summarize it");
  build->add_option("--k", build_k, "rank")->required();
  build->add_option("--p", build_p, "prime")->required();
  build->add_option("--out", build_out, "write the complex file here");

  Source est_src;
  std::string predicate = "not-connected";
  std::uint64_t est_samples = 100'000;
  std::uint64_t est_seed = 0;
  unsigned est_workers = 1;
  bool est_exhaustive = false;
  std::string est_out;
  auto* estimate = app.add_subcommand("estimate", "fraction of induced subcomplexes satisfying a predicate");
  est_src.add_to(estimate);
  estimate->add_option("--predicate", predicate, "not-connected | not-acyclic:k | trivial-top:d | not-chamber:d");
  estimate->add_option("--samples", est_samples, "sample count");
  estimate->add_option("--seed", est_seed, "PRNG seed");
  estimate->add_option("--workers", est_workers, "worker threads");
  estimate->add_flag("--exhaustive", est_exhaustive, "exact census over all subsets");
  estimate->add_option("--out", est_out, "CSV output path");

  Source cert_src;
  int cert_m = 1;
  std::string cert_mode = "hom";
  std::string cert_strategy = "exhaustive";
  std::uint64_t cert_samples = 100'000;
  std::uint64_t cert_seed = 0;
  unsigned cert_workers = 1;
  bool cert_sharply = false;
  std::string cert_out;
  auto* certify = app.add_subcommand("certify", "search for a legal coset of the coloring move system");
  cert_src.add_to(certify);
  certify->add_option("--m", cert_m, "fibering degree m (checks (m-1)-legality)");
  certify->add_option("--mode", cert_mode, "hom | conn");
  certify->add_option("--strategy", cert_strategy, "exhaustive | sampled");
  certify->add_option("--samples", cert_samples, "samples for the sampled strategy");
  certify->add_option("--seed", cert_seed, "PRNG seed");
  certify->add_option("--workers", cert_workers, "worker threads");
  certify->add_flag("--sharply", cert_sharply, "require sharp legality");
  certify->add_option("--out", cert_out, "certificate JSON path");

  std::string verify_path;
  auto* verify = app.add_subcommand("verify-certificate", "replay a certificate from scratch");
  verify->add_option("path", verify_path, "certificate JSON")->required();

  Source pig_src;
  int pig_m = 1;
  std::string pig_mode = "hom";
  std::string pig_strategy = "exhaustive";
  std::uint64_t pig_samples = 100'000;
  std::uint64_t pig_seed = 0;
  unsigned pig_workers = 1;
  bool pig_sharply = false;
  auto* pigeonhole = app.add_subcommand("pigeonhole", "compare bad-subcomplex counts with 2^(n - chi - 1)");
  pig_src.add_to(pigeonhole);
  pigeonhole->add_option("--m", pig_m, "fibering degree m");
  pigeonhole->add_option("--mode", pig_mode, "hom | conn");
  pigeonhole->add_option("--strategy", pig_strategy, "exhaustive | sampled");
  pigeonhole->add_option("--samples", pig_samples, "samples for the sampled strategy");
  pigeonhole->add_option("--seed", pig_seed, "PRNG seed");
  pigeonhole->add_option("--workers", pig_workers, "worker threads");
  pigeonhole->add_flag("--sharply", pig_sharply, "add the trivial-top-homology count (needs m = dim L)");

  int cube_k = 0;
  int cube_p = 0;
  std::vector<std::size_t> cube_panels;
  std::string cube_out;
  auto* cube = app.add_subcommand("cube", "projection magic cube of a list of panels, as CSV");
  cube->add_option("--k", cube_k, "rank")->required();
  cube->add_option("--p", cube_p, "prime")->required();
  cube->add_option("--panels", cube_panels, "panel indices")->required()->delimiter(',');
  cube->add_option("--out", cube_out, "CSV output path");

  std::string ball_file;
  int ball_radius = 3;
  std::string ball_sigma;
  std::string ball_out;
  auto* ball = app.add_subcommand("ball", "dump a ball of the Davis complex with heights");
  ball->add_option("--complex-file", ball_file, "complex in the text format")->required();
  ball->add_option("--radius", ball_radius, "word-length radius");
  ball->add_option("--sigma0", ball_sigma, "initial state as hex; heights use the coloring move system");
  ball->add_option("--out", ball_out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (*build) return cmd_build(build_k, build_p, build_out);

  if (*estimate) {
    const auto complex = est_src.load();
    const auto pred = fs::parse_predicate(predicate);
    const auto result = est_exhaustive ? fs::census(complex, pred, est_workers)
                                       : fs::estimate_fraction(complex, pred, est_samples, est_seed, est_workers);
    emit(est_out, fs::csv_header() + "\n" + fs::csv_row(result) + "\n");
    return kExitOk;
  }

  if (*certify) {
    const auto complex = cert_src.load();
    fs::SearchOptions options;
    options.strategy = fs::parse_strategy(cert_strategy);
    options.samples = cert_samples;
    options.seed = cert_seed;
    options.workers = cert_workers;
    options.sharply = cert_sharply;
    const auto result =
        fs::coset_search(complex, colored_moves(complex), cert_m, fs::parse_mode(cert_mode), options);
    if (!result.certificate) {
      std::cout << "NOT-FOUND strategy=" << cert_strategy << " searched=" << result.space << '\n';
      return kExitNegative;
    }
    emit(cert_out, fs::to_json(*result.certificate));
    if (!cert_out.empty()) std::cout << "FOUND position=" << result.position << " out=" << cert_out << '\n';
    return kExitOk;
  }

  if (*verify) {
    std::ifstream in(verify_path, std::ios::binary);
    if (!in) throw fs::Error(fs::ErrorCode::InvalidArgument, "cannot read " + verify_path);
    std::stringstream text;
    text << in.rdbuf();
    const auto report = fs::verify_certificate(text.str());
    if (report.ok) {
      std::cout << "PASS\n";
      return kExitOk;
    }
    std::cout << "FAIL\n";
    for (const auto& f : report.failures) std::cout << "  " << f << '\n';
    return kExitNegative;
  }

  if (*pigeonhole) {
    const auto complex = pig_src.load();
    fs::SearchOptions options;
    options.strategy = fs::parse_strategy(pig_strategy);
    options.samples = pig_samples;
    options.seed = pig_seed;
    options.workers = pig_workers;
    const auto r = fs::pigeonhole_check(complex, pig_m, fs::parse_mode(pig_mode), pig_sharply, options);
    std::cout << "vertices " << r.vertices << '\n' << "chi " << r.chromatic << '\n';
    if (r.exhaustive) {
      std::cout << "bad_count " << r.bad.hits << '\n';
      if (r.top) std::cout << "top_trivial_count " << r.top->hits << '\n';
      std::cout << "threshold 2^" << r.threshold_log2 << " = " << r.threshold << '\n';
    } else {
      std::cout << "bad_fraction " << fs::csv_row(r.bad) << '\n';
      if (r.top) std::cout << "top_trivial_fraction " << fs::csv_row(*r.top) << '\n';
      std::cout << "threshold_fraction 2^-" << (r.chromatic + 1) << '\n';
    }
    std::cout << "verdict " << fs::to_string(r.verdict) << '\n';
    return r.verdict == fs::PigeonholeVerdict::NotImplied ? kExitNegative : kExitOk;
  }

  if (*cube) {
    const auto b = fs::build_typeA(cube_k, cube_p);
    const auto c = fs::cube_from_panels(b, cube_panels);
    const auto weight = fs::verify_magic(c);
    std::ostringstream s;
    s << "# n=" << c.dimension() << " t=" << c.side() << " N=" << weight << '\n';
    for (std::size_t i = 0; i < c.dimension(); ++i) s << "i_" << (i + 1) << ',';
    s << "weight\n";
    c.for_each_nonzero([&](const fs::MagicCube::Index& idx, std::uint64_t w) { s << join(idx, ',') << ',' << w << '\n'; });
    emit(cube_out, s.str());
    return kExitOk;
  }

  if (*ball) {
    const auto complex = fs::read_complex_file(ball_file);
    const auto cayley = fs::racg_ball(complex, ball_radius);
    std::optional<fs::HeightAssignment> heights;
    if (!ball_sigma.empty()) {
      const auto sigma0 = fs::VertexSet::from_hex(complex.vertex_count(), ball_sigma);
      heights = fs::assign_heights(cayley, sigma0, colored_moves(complex));
    }
    std::ostringstream s;
    fs::dump_ball(s, cayley, heights ? &*heights : nullptr);
    emit(ball_out, s.str());
    return kExitOk;
  }
  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const fs::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case fs::ErrorCode::BudgetExceeded:
      case fs::ErrorCode::CapExceeded:
      case fs::ErrorCode::TooLarge:
        return kExitBudget;
      case fs::ErrorCode::NotFound:
        return kExitNegative;
      default:
        return kExitInput;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
