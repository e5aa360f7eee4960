// mpos: command-line front end over the C API.
//
//   mpos validate SYSTEM.json
//   mpos vc SYSTEM.json -n N [--inverse] [--naive] [-i IN.csv] [-o OUT.csv]
//   mpos fourier SYSTEM.json STEP.csv [--inverse] [--poisson] [-o OUT.csv]
//   mpos verify SYSTEM.json [--level 1|2] [--seed S]
//   mpos tile SYSTEM.json --depth N [--format pgm|pgm-ascii|csv] [-o OUT]
//
// Exit status: 0 success, 1 an identity failed, 2 usage or configuration error.

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mpos/mpos.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIdentity = 1;
constexpr int kExitUsage = 2;

/// Failure carrying a stable error name for the "error: Name: detail" line.
struct CliError {
  std::string name;
  std::string detail;
};

[[noreturn]] void raise_status(int status) {
  std::string msg = mpos_last_error();
  const std::string name = mpos_status_name(status);
  // Library messages already start with "Name: ".
  if (msg.rfind(name + ": ", 0) == 0) msg.erase(0, name.size() + 2);
  throw CliError{name, msg};
}

void check(int status) {
  if (status != MPOS_OK) raise_status(status);
}

using SystemPtr = std::unique_ptr<mpos_system, decltype(&mpos_system_free)>;
using TilePtr = std::unique_ptr<mpos_tile, decltype(&mpos_tile_free)>;

SystemPtr load_system(const std::string& path) {
  mpos_system* raw = nullptr;
  check(mpos_system_from_file(path.c_str(), &raw));
  return SystemPtr(raw, mpos_system_free);
}

std::uint64_t point_budget() {
  const char* env = std::getenv("MPOS_POINT_BUDGET");
  if (env == nullptr || *env == '\0') return std::uint64_t{1} << 20;
  std::uint64_t v = 0;
  const char* end = env + std::char_traits<char>::length(env);
  auto [ptr, ec] = std::from_chars(env, end, v);
  if (ec != std::errc() || ptr != end || v == 0)
    throw CliError{"InvalidArgument", std::string("MPOS_POINT_BUDGET must be a positive integer, got '") + env + "'"};
  return v;
}

// ---- complex CSV ---------------------------------------------------------

/// Shortest decimal that reads back to the same double.
std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, const std::string& where) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw CliError{"ParseError", where + ": '" + std::string(s) + "' is not a number"};
  return v;
}

/// Appends one "re,im" (or bare "re") line as two doubles.
void parse_complex_line(const std::string& line, const std::string& where, std::vector<double>& out) {
  const auto comma = line.find(',');
  if (comma == std::string::npos) {
    out.push_back(parse_double(line, where));
    out.push_back(0.0);
    return;
  }
  if (line.find(',', comma + 1) != std::string::npos)
    throw CliError{"ParseError", where + ": expected 're,im'"};
  out.push_back(parse_double(std::string_view(line).substr(0, comma), where));
  out.push_back(parse_double(std::string_view(line).substr(comma + 1), where));
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

std::vector<double> read_complex_csv(std::istream& is, const std::string& name) {
  std::vector<double> v;
  std::string line;
  for (int lineno = 1; std::getline(is, line); ++lineno) {
    if (blank(line) || line[0] == '#') continue;
    parse_complex_line(line, name + ":" + std::to_string(lineno), v);
  }
  return v;
}

void write_complex_csv(std::ostream& os, const std::vector<double>& v) {
  for (std::size_t i = 0; i + 1 < v.size(); i += 2) os << format_double(v[i]) << ',' << format_double(v[i + 1]) << '\n';
}

template <class Body>
void with_input(const std::string& path, Body&& body) {
  if (path.empty() || path == "-") {
    body(std::cin, std::string("<stdin>"));
    return;
  }
  std::ifstream is(path);
  if (!is) throw CliError{"IoError", "cannot open " + path};
  body(is, path);
}

template <class Body>
void with_output(const std::string& path, Body&& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw CliError{"IoError", "cannot open " + path + " for writing"};
  body(os);
  if (!os) throw CliError{"IoError", "write to " + path + " failed"};
}

// ---- step-function files -------------------------------------------------

struct StepFile {
  int space = MPOS_PRIMAL;
  int n = 0;
  int p = 0;
  std::vector<double> coeffs;  // interleaved re, im
};

int parse_int(std::string_view s, const std::string& where) {
  while (!s.empty() && (s.front() == ' ' || s.back() == '\r' || s.back() == ' ')) {
    if (s.front() == ' ') s.remove_prefix(1);
    else s.remove_suffix(1);
  }
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw CliError{"ParseError", where + ": '" + std::string(s) + "' is not an integer"};
  return v;
}

StepFile read_step_file(std::istream& is, const std::string& name) {
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!blank(line) && line[0] != '#') break;
  }
  if (lineno == 0 || blank(line)) throw CliError{"ParseError", name + ": missing 'space,n,p' header"};
  std::vector<std::string> fields;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
  if (fields.size() != 3) throw CliError{"ParseError", name + ": header must be 'space,n,p'"};
  StepFile sf;
  const std::string where = name + ":" + std::to_string(lineno);
  std::string space = fields[0];
  space.erase(0, space.find_first_not_of(' '));
  space.erase(space.find_last_not_of(" \r") + 1);
  if (space == "X") sf.space = MPOS_PRIMAL;
  else if (space == "X*") sf.space = MPOS_DUAL;
  else throw CliError{"ParseError", where + ": space must be X or X*, got '" + space + "'"};
  sf.n = parse_int(fields[1], where);
  sf.p = parse_int(fields[2], where);
  while (std::getline(is, line)) {
    ++lineno;
    if (blank(line) || line[0] == '#') continue;
    parse_complex_line(line, name + ":" + std::to_string(lineno), sf.coeffs);
  }
  return sf;
}

void write_step_file(std::ostream& os, const StepFile& sf) {
  os << (sf.space == MPOS_PRIMAL ? "X" : "X*") << ',' << sf.n << ',' << sf.p << '\n';
  write_complex_csv(os, sf.coeffs);
}

// ---- commands ------------------------------------------------------------

std::string join_digit(const std::vector<long long>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

void print_table(std::ostream& os, const char* title, const std::vector<unsigned>& t, unsigned m) {
  os << title << '\n';
  for (unsigned i = 0; i < m; ++i) {
    os << ' ';
    for (unsigned j = 0; j < m; ++j) os << ' ' << t[i * m + j];
    os << '\n';
  }
}

int cmd_validate(const std::string& config) {
  SystemPtr sys = load_system(config);
  const unsigned m = mpos_system_radix(sys.get());
  const std::size_t d = mpos_system_dim(sys.get());
  std::vector<long long> mat(d * d);
  check(mpos_system_matrix(sys.get(), mat.data()));
  mpos_certificate cert{};
  check(mpos_system_certificate(sys.get(), &cert));

  std::ostream& os = std::cout;
  os << "valid: yes\n";
  if (*mpos_system_label(sys.get())) os << "label: " << mpos_system_label(sys.get()) << '\n';
  os << "dimension: " << d << '\n' << "m: " << m << '\n'
     << "det sign: " << (mpos_system_det_sign(sys.get()) > 0 ? "+" : "-") << '\n' << "matrix:";
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<long long> row(mat.begin() + static_cast<long>(i * d), mat.begin() + static_cast<long>((i + 1) * d));
    os << ' ' << join_digit(row);
  }
  os << '\n'
     << "certificate: min |eigenvalue| = " << format_double(cert.min_eigen_modulus) << ", ||M^-" << cert.power
     << "|| = " << format_double(cert.inverse_power_norm) << '\n';
  for (int space : {MPOS_PRIMAL, MPOS_DUAL}) {
    os << (space == MPOS_PRIMAL ? "digits D:" : "digits D*:");
    std::vector<long long> v(d);
    for (unsigned i = 0; i < m; ++i) {
      check(mpos_system_digit(sys.get(), space, i, v.data()));
      os << ' ' << join_digit(v);
    }
    os << '\n';
  }
  std::vector<unsigned> table(static_cast<std::size_t>(m) * m);
  check(mpos_system_add_table(sys.get(), MPOS_PRIMAL, table.data()));
  print_table(os, "addition table D (s_i + s_j = s_k mod M):", table, m);
  check(mpos_system_add_table(sys.get(), MPOS_DUAL, table.data()));
  print_table(os, "addition table D*:", table, m);
  check(mpos_system_char_table(sys.get(), table.data()));
  print_table(os, "character exponents e(a,b), exp(2 pi i <M^-1 s_a, s*_b>) = exp(2 pi i e/m):", table, m);
  return kExitOk;
}

int cmd_vc(const std::string& config, int n, bool inverse, bool naive, const std::string& input,
           const std::string& output) {
  SystemPtr sys = load_system(config);
  std::vector<double> in;
  with_input(input, [&](std::istream& is, const std::string& name) { in = read_complex_csv(is, name); });
  std::vector<double> out(in.size());
  check(mpos_vc(sys.get(), n, inverse ? MPOS_INVERSE : MPOS_FORWARD, naive ? 1 : 0, in.data(), in.size() / 2,
                out.data()));
  with_output(output, [&](std::ostream& os) { write_complex_csv(os, out); });
  return kExitOk;
}

int cmd_fourier(const std::string& config, const std::string& input, bool inverse, bool poisson,
                const std::string& output) {
  SystemPtr sys = load_system(config);
  StepFile f;
  with_input(input, [&](std::istream& is, const std::string& name) { f = read_step_file(is, name); });
  const int want = inverse ? MPOS_DUAL : MPOS_PRIMAL;
  if (f.space != want)
    throw CliError{"SpaceMismatch", inverse ? "--inverse expects a function on X*" : "expected a function on X (use --inverse for X*)"};

  if (poisson) {
    if (inverse) throw CliError{"SpaceMismatch", "--poisson needs a function on X"};
    double lhs[2], rhs[2];
    check(mpos_poisson(sys.get(), f.n, f.p, f.coeffs.data(), f.coeffs.size() / 2, lhs, rhs));
    std::cerr << "poisson sum over H:  " << format_double(lhs[0]) << ',' << format_double(lhs[1]) << '\n'
              << "poisson sum over H*: " << format_double(rhs[0]) << ',' << format_double(rhs[1]) << '\n';
  }

  StepFile g;
  g.coeffs.resize(f.coeffs.size());
  check(mpos_fourier(sys.get(), f.space, f.n, f.p, f.coeffs.data(), f.coeffs.size() / 2, &g.space, &g.n, &g.p,
                     g.coeffs.data()));
  with_output(output, [&](std::ostream& os) { write_step_file(os, g); });
  return kExitOk;
}

struct VerifyState {
  std::string first_failure;
};

void on_identity(const char* name, int passed, const char* detail, void* user) {
  auto* st = static_cast<VerifyState*>(user);
  std::cout << (passed ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
  if (!passed && st->first_failure.empty()) st->first_failure = name;
}

int cmd_verify(const std::string& config, int level, std::uint64_t seed) {
  VerifyState st;
  int all_passed = 0;
  check(mpos_verify_file(config.c_str(), level, seed, on_identity, &st, &all_passed));
  std::cout.flush();
  if (!all_passed) {
    std::cerr << "first failing identity: " << st.first_failure << '\n';
    return kExitIdentity;
  }
  return kExitOk;
}

struct TileOptions {
  int depth = 0;
  std::string format = "pgm";
  std::string output;
  int width = 512;
  int height = 512;
  int colour_scale = -1;
  bool check_similarity = false;
  std::uint64_t measure = 0;
  std::uint64_t seed = 1;
};

int cmd_tile(const std::string& config, const TileOptions& o) {
  SystemPtr sys = load_system(config);
  const std::uint64_t budget = point_budget();
  mpos_tile* raw = nullptr;
  check(mpos_tile_create(sys.get(), o.depth, budget, &raw));
  TilePtr tile(raw, mpos_tile_free);

  if (o.format == "csv") {
    check(mpos_tile_write_csv(tile.get(), o.output.c_str()));
  } else {
    check(mpos_tile_write_pgm(tile.get(), o.output.c_str(), o.width, o.height, o.format == "pgm" ? 1 : 0,
                              o.colour_scale));
  }
  if (const auto c = mpos_tile_coincident(tile.get())) std::cerr << "coincident points: " << c << '\n';

  int status = kExitOk;
  if (o.check_similarity && o.depth >= 1) {
    int passed = 0;
    check(mpos_self_similarity(sys.get(), o.depth, budget, &passed));
    std::cerr << "self-similarity at depth " << o.depth << ": " << (passed ? "pass" : "FAIL") << '\n';
    if (!passed) status = kExitIdentity;
  }
  if (o.measure) {
    double est = 0.0, se = 0.0;
    check(mpos_measure_estimate(sys.get(), o.measure, o.depth, o.seed, budget, &est, &se));
    std::cerr << "measure estimate: " << format_double(est) << " +- " << format_double(se) << " (diagnostic)\n";
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic analysis on matrix number systems: VC transforms, step-function Fourier transforms, tiles"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mpos_version()));

  std::string config;

  auto* validate = app.add_subcommand("validate", "Check a system file and print its tables");
  validate->add_option("config", config, "System JSON file")->required();

  int vc_n = 0;
  bool vc_inverse = false, vc_naive = false;
  std::string vc_in, vc_out;
  auto* vc = app.add_subcommand("vc", "Vilenkin-Chrestenson transform of m^n complex values (CSV re,im)");
  vc->add_option("config", config, "System JSON file")->required();
  vc->add_option("-n,--scale", vc_n, "Scale n (input has m^n lines)")->required()->check(CLI::NonNegativeNumber);
  vc->add_flag("--inverse", vc_inverse, "Inverse direction");
  vc->add_flag("--naive", vc_naive, "Direct O(m^2n) evaluation instead of the fast path");
  vc->add_option("-i,--input", vc_in, "Input CSV (default: stdin)");
  vc->add_option("-o,--output", vc_out, "Output CSV (default: stdout)");

  bool f_inverse = false, f_poisson = false;
  std::string f_in, f_out;
  auto* fourier = app.add_subcommand("fourier", "Fourier transform of a step function file");
  fourier->add_option("config", config, "System JSON file")->required();
  fourier->add_option("input", f_in, "Step-function file: 'space,n,p' header then m^(n+p) 're,im' lines")
      ->required();
  fourier->add_flag("--inverse", f_inverse, "Input lives on X*; transform back to X");
  fourier->add_flag("--poisson", f_poisson, "Print both sides of the Poisson summation formula to stderr");
  fourier->add_option("-o,--output", f_out, "Output file (default: stdout)");

  int level = 1;
  std::uint64_t verify_seed = 1;
  auto* verify = app.add_subcommand("verify", "Run the identity suite on a system");
  verify->add_option("config", config, "System JSON file")->required();
  verify->add_option("--level", level, "1: scales n <= 3, 2: n <= 6")->check(CLI::Range(1, 2));
  verify->add_option("--seed", verify_seed, "Seed for the random test vectors");

  TileOptions topt;
  auto* tile = app.add_subcommand("tile", "Render the depth-n approximation of the tile");
  tile->add_option("config", config, "System JSON file")->required();
  tile->add_option("--depth", topt.depth, "Depth n (m^n points, capped by MPOS_POINT_BUDGET)")
      ->required()
      ->check(CLI::NonNegativeNumber);
  tile->add_option("--format", topt.format, "pgm (P5), pgm-ascii (P2) or csv")
      ->check(CLI::IsMember({"pgm", "pgm-ascii", "csv"}));
  tile->add_option("-o,--output", topt.output, "Output file (default: stdout)");
  tile->add_option("--width", topt.width, "Raster width")->check(CLI::PositiveNumber);
  tile->add_option("--height", topt.height, "Raster height")->check(CLI::PositiveNumber);
  tile->add_option("--colour-scale", topt.colour_scale, "Colour pixels by their scale-c cell index");
  tile->add_flag("--check", topt.check_similarity, "Run the exact self-similarity check at this depth");
  tile->add_option("--measure", topt.measure, "Monte Carlo samples for the measure diagnostic");
  tile->add_option("--seed", topt.seed, "Seed for --measure");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(config);
    if (*vc) return cmd_vc(config, vc_n, vc_inverse, vc_naive, vc_in, vc_out);
    if (*fourier) return cmd_fourier(config, f_in, f_inverse, f_poisson, f_out);
    if (*verify) return cmd_verify(config, level, verify_seed);
    if (*tile) return cmd_tile(config, topt);
  } catch (const CliError& e) {
    std::cout.flush();
    std::cerr << "error: " << e.name << ": " << e.detail << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
