// Command-line front end: emits transition coefficients, per-J sweeps,
// cone profiles and effective-medium numbers as CSV or JSON lines, and
// runs the oracle self-verification suites.
//
// Exit codes: 0 success, 2 input error, 3 verification failure.

#include <CLI11.hpp>
#include <json.hpp>

#include "cbs/bistatic.hpp"
#include "cbs/verify.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace {

using cbs::Channel;
using cbs::ChannelKind;
using cbs::HalfInt;
using cbs::Transition;
using cbs::WCoeffs;

using Cell = std::variant<std::string, double>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string render_csv(const Table& t) {
  std::ostringstream out;
  for (size_t i = 0; i < t.header.size(); ++i)
    out << t.header[i] << (i + 1 < t.header.size() ? "," : "\n");
  for (const auto& row : t.rows)
    for (size_t i = 0; i < row.size(); ++i) {
      if (const auto* s = std::get_if<std::string>(&row[i]))
        out << *s;
      else
        out << format_real(std::get<double>(row[i]));
      out << (i + 1 < row.size() ? "," : "\n");
    }
  return out.str();
}

std::string render_json_lines(const Table& t) {
  std::ostringstream out;
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj;
    for (size_t i = 0; i < row.size(); ++i) {
      if (const auto* s = std::get_if<std::string>(&row[i]))
        obj[t.header[i]] = *s;
      else
        obj[t.header[i]] = std::get<double>(row[i]);
    }
    out << obj.dump() << "\n";
  }
  return out.str();
}

// Writes through a temporary in the same directory so readers never see a
// partial file.
void emit(const Table& t, const std::string& format,
          const std::string& output_path) {
  const std::string text =
      format == "json" ? render_json_lines(t) : render_csv(t);
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(output_path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string());
    f << text;
  }
  fs::rename(tmp, target);
}

ChannelKind parse_channel(const std::string& name) {
  if (name == "hpar") return ChannelKind::HelPar;
  if (name == "hperp") return ChannelKind::HelPerp;
  if (name == "lpar") return ChannelKind::LinPar;
  if (name == "lperp") return ChannelKind::LinPerp;
  throw std::invalid_argument(
      "unknown channel '" + name + "' (expected hpar, hperp, lpar, lperp)");
}

struct CommonFlags {
  std::string format = "csv";
  std::string output;
  double phi = 0.0;
  std::optional<double> phi_deg;

  double scan_angle() const {
    return phi_deg ? *phi_deg * std::numbers::pi / 180.0 : phi;
  }
};

void add_output_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--output", flags.output,
                  "Write to FILE (atomic) instead of stdout");
}

void add_phi_flags(CLI::App* cmd, CommonFlags& flags) {
  auto* rad = cmd->add_option(
      "--phi", flags.phi, "Scan angle vs incident linear polarization [rad]");
  cmd->add_option("--phi-deg", flags.phi_deg, "Scan angle in degrees")
      ->excludes(rad);
}

int cmd_coeffs(const std::string& j_text, const std::string& je_text,
               const CommonFlags& flags) {
  const Transition t(HalfInt::parse(j_text), HalfInt::parse(je_text));
  const WCoeffs w = cbs::w_coeffs(t);
  Table table;
  table.header = {"j", "je", "m_j", "s0", "s1", "s2", "w1", "w2", "w3"};
  table.rows.push_back({t.j.str(), t.je.str(), cbs::multiplicity_ratio(t),
                        cbs::s_coeff(t, 0), cbs::s_coeff(t, 1),
                        cbs::s_coeff(t, 2), w.w1, w.w2, w.w3});
  emit(table, flags.format, flags.output);
  return 0;
}

int cmd_sweep(const std::string& jmax_text, const std::string& type,
              const std::string& channel_name, const std::string& quantity,
              const CommonFlags& flags) {
  const HalfInt jmax = HalfInt::parse(jmax_text);
  if (jmax.twice() > 50)
    throw std::invalid_argument("sweep supports jmax <= 25");
  const Channel channel{parse_channel(channel_name), flags.scan_angle()};
  const double phi_out =
      (channel.kind == ChannelKind::LinPar ||
       channel.kind == ChannelKind::LinPerp)
          ? channel.phi
          : 0.0;

  Table table;
  if (quantity == "single")
    table.header = {"j", "je", "channel", "phi", "gamma_s"};
  else if (quantity == "contrast")
    table.header = {"j", "je", "channel", "phi",
                    "gamma_l2", "gamma_c2", "contrast"};
  else
    table.header = {"j", "je", "channel", "phi",
                    "gamma_s", "gamma_l2", "gamma_c2", "alpha"};

  const long long dje = type == "plus" ? 2 : (type == "zero" ? 0 : -2);
  for (long long tj = 0; tj <= jmax.twice(); ++tj) {
    const long long tje = tj + dje;
    if (tje < 0) continue;
    if (tj == 0 && tje == 0) continue;
    const Transition t(HalfInt::from_twice(tj), HalfInt::from_twice(tje));
    const WCoeffs w = cbs::w_coeffs(t);
    std::vector<Cell> row{t.j.str(), t.je.str(),
                          cbs::channel_name(channel.kind), phi_out};
    if (quantity == "single") {
      row.emplace_back(cbs::gamma_single(w, channel));
    } else if (quantity == "contrast") {
      row.emplace_back(cbs::gamma_ladder(w, channel));
      row.emplace_back(cbs::gamma_crossed_zero(w, channel));
      row.emplace_back(cbs::contrast(w, channel));
    } else {
      row.emplace_back(cbs::gamma_single(w, channel));
      row.emplace_back(cbs::gamma_ladder(w, channel));
      row.emplace_back(cbs::gamma_crossed_zero(w, channel));
      row.emplace_back(cbs::enhancement(w, channel, 0.0));
    }
    table.rows.push_back(std::move(row));
  }
  emit(table, flags.format, flags.output);
  return 0;
}

int cmd_cone(const std::string& j_text, const std::string& je_text,
             const std::string& channel_name, double mu_max, int points,
             const CommonFlags& flags) {
  const Transition t(HalfInt::parse(j_text), HalfInt::parse(je_text));
  const Channel channel{parse_channel(channel_name), flags.scan_angle()};
  const cbs::ConeProfile cone = cbs::cone_profile(t, channel, mu_max, points);
  Table table;
  table.header = {"mu", "gamma_c2", "alpha"};
  for (size_t i = 0; i < cone.mu.size(); ++i)
    table.rows.push_back(
        {cone.mu[i], cone.gamma_crossed[i], cone.alpha[i]});
  emit(table, flags.format, flags.output);
  return 0;
}

int cmd_medium(const std::string& j_text, const std::string& je_text,
               double detuning, double density, double wavenumber,
               const CommonFlags& flags) {
  const Transition t(HalfInt::parse(j_text), HalfInt::parse(je_text));
  if (!(density > 0) || !(wavenumber > 0))
    throw std::invalid_argument("density and wavenumber must be positive");
  const double sigma = cbs::total_cross_section(t, detuning, wavenumber);
  const double ell = cbs::mean_free_path(sigma, density);
  const double k_ell = wavenumber * ell;
  Table table;
  table.header = {"j",       "je",          "detuning", "density",
                  "wavenumber", "sigma_tot", "mean_free_path", "k_ell"};
  table.rows.push_back({t.j.str(), t.je.str(), detuning, density, wavenumber,
                        sigma, ell, k_ell});
  emit(table, flags.format, flags.output);
  if (k_ell <= 10.0)
    std::cerr << "warning: k*l = " << format_real(k_ell)
              << " is outside the weak-scattering regime (k*l >> 1)\n";
  return 0;
}

int cmd_verify(const std::string& level) {
  const auto started = std::chrono::steady_clock::now();
  const cbs::VerifyReport report = cbs::run_verification(
      level == "full" ? cbs::VerifyLevel::Full : cbs::VerifyLevel::Fast);
  const auto elapsed = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - started)
                           .count();
  std::cout << report;
  std::cout << (report.all_pass() ? "verification passed"
                                  : "verification FAILED")
            << " (" << level << " level, " << format_real(elapsed) << " s)\n";
  return report.all_pass() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Coherent backscattering of polarized light by atoms with a "
      "degenerate dipole transition: single/double scattering bistatic "
      "coefficients, interference contrast, enhancement factors and cone "
      "profiles."};
  app.require_subcommand(1);

  std::string j_text, je_text, jmax_text = "10";
  std::string type = "plus", channel_name = "hpar", quantity = "alpha";
  std::string level = "fast";
  double mu_max = 10.0, detuning = 0.0, density = 1e-3, wavenumber = 1.0;
  int points = 101;
  CommonFlags flags;

  auto* coeffs = app.add_subcommand(
      "coeffs", "Vertex weights and s-coefficients of one transition");
  coeffs->add_option("--j", j_text, "Ground-state J (\"3\" or \"3/2\")")
      ->required();
  coeffs->add_option("--je", je_text, "Excited-state Je")->required();
  add_output_flags(coeffs, flags);

  auto* sweep = app.add_subcommand(
      "sweep", "One quantity across ground-state J values");
  sweep->add_option("--jmax", jmax_text, "Largest J (<= 25)");
  sweep->add_option("--type", type, "Transition type Je - J")
      ->check(CLI::IsMember({"plus", "zero", "minus"}));
  sweep->add_option("--channel", channel_name, "Polarization channel")
      ->check(CLI::IsMember({"hpar", "hperp", "lpar", "lperp"}));
  sweep->add_option("--quantity", quantity, "What to tabulate")
      ->check(CLI::IsMember({"single", "contrast", "alpha"}));
  add_phi_flags(sweep, flags);
  add_output_flags(sweep, flags);

  auto* cone = app.add_subcommand(
      "cone", "Backscattering cone profile gamma_C2(mu), alpha(mu)");
  cone->add_option("--j", j_text)->required();
  cone->add_option("--je", je_text)->required();
  cone->add_option("--channel", channel_name, "Polarization channel")
      ->check(CLI::IsMember({"hpar", "hperp", "lpar", "lperp"}));
  cone->add_option("--mu-max", mu_max, "Largest reduced angle mu = k l theta");
  cone->add_option("--points", points, "Number of grid points");
  add_phi_flags(cone, flags);
  add_output_flags(cone, flags);

  auto* medium = app.add_subcommand(
      "medium", "Cross-section, mean free path and k*l of the dilute gas");
  medium->add_option("--j", j_text)->required();
  medium->add_option("--je", je_text)->required();
  medium->add_option("--detuning", detuning, "Detuning in linewidth units");
  medium->add_option("--density", density, "Number density")->required();
  medium->add_option("--wavenumber", wavenumber, "Wavenumber")->required();
  add_output_flags(medium, flags);

  auto* verify = app.add_subcommand(
      "verify", "Run the oracle cross-check suites");
  verify->add_option("--level", level, "fast or full")
      ->check(CLI::IsMember({"fast", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // --help exits cleanly, bad flags are input errors
  }

  try {
    if (coeffs->parsed()) return cmd_coeffs(j_text, je_text, flags);
    if (sweep->parsed())
      return cmd_sweep(jmax_text, type, channel_name, quantity, flags);
    if (cone->parsed())
      return cmd_cone(j_text, je_text, channel_name, mu_max, points, flags);
    if (medium->parsed())
      return cmd_medium(j_text, je_text, detuning, density, wavenumber, flags);
    if (verify->parsed()) return cmd_verify(level);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
