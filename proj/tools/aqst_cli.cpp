// Copyright 2026 The AQST Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// aqst: command-line front end for single runs, figure sweeps, cQED
// parameter derivation, closed-form oracles and diagnostics.
//
// Exit codes: 0 ok, 1 invalid config, 2 numerical failure, 3 I/O failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "aqst/aqst.hpp"

namespace {

using aqst::json;

enum Exit : int { kOk = 0, kInvalidConfig = 1, kNumerical = 2, kIo = 3 };

struct Common {
  std::string config;
  std::string out;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  std::size_t threads = 1;
};

void add_common(CLI::App* sub, Common& c, bool config_required) {
  auto* opt = sub->add_option("--config", c.config, "JSON configuration file");
  if (config_required) opt->required();
  sub->add_option("--out", c.out, "output path (stdout summary only when omitted)");
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json", "svg"}));
  sub->add_option("--seed", c.seed, "root seed (overrides the config)");
  sub->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
}

json read_json(const std::string& path) {
  if (path.empty()) return json();
  std::ifstream in(path);
  if (!in) throw aqst::IoError(path, "cannot open configuration file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw aqst::ConfigError(path + ": malformed JSON: " + e.what());
  }
}

aqst::RunConfig load_config(const Common& c) {
  aqst::RunConfig cfg = aqst::parse_run_config(read_json(c.config));
  if (c.seed) {
    cfg.seed = *c.seed;
    cfg.source["seed"] = *c.seed;
  }
  cfg.threads = c.threads;
  return cfg;
}

void deliver(const Common& c, const std::string& content, const std::string& summary) {
  if (!c.out.empty()) {
    aqst::write_text(c.out, content);
    std::cerr << "wrote " << c.out << "\n";
  }
  std::cout << summary;
}

int cmd_run(const Common& c) {
  const auto cfg = load_config(c);
  const auto rec = aqst::run(cfg);
  std::ostringstream s;
  s << "instance " << rec.metadata.value("instance", std::string()) << "\n";
  for (const auto& [k, v] : rec.scalars) s << k << " = " << v << "\n";
  for (const auto& w : rec.warnings) s << "warning: " << w << "\n";
  deliver(c, aqst::emit_string(rec, aqst::parse_format(c.format)), s.str());
  return kOk;
}

int cmd_fig2c(const Common& c) {
  auto o = aqst::parse_fig2c_options(read_json(c.config));
  if (c.seed) o.seed = *c.seed;
  o.threads = c.threads;
  const auto res = aqst::sweep_fig2c(o);
  std::ostringstream s;
  const aqst::Fig2cCell* best = &res.cells.front();
  for (const auto& cell : res.cells)
    if (cell.fidelity > best->fidelity) best = &cell;
  s << res.cells.size() << " cells; best fidelity " << best->fidelity << " at lambda/kappa_b "
    << best->lambda_over_kappa_b << ", gamma/kappa_b " << best->gamma_over_kappa_b << "\n";
  deliver(c, aqst::emit_string(res, aqst::parse_format(c.format)), s.str());
  return kOk;
}

int cmd_fig3c(const Common& c) {
  auto req = aqst::parse_fig3c_request(read_json(c.config));
  req.curves.threads = req.inset.threads = c.threads;
  const auto fmt = aqst::parse_format(c.format);
  std::ostringstream s;
  if (req.mode == aqst::Fig3cRequest::Mode::kInset) {
    const auto res = aqst::sweep_fig3c_inset(req.inset);
    for (const auto& f : res.fits)
      s << "Omega/kappa " << f.omega_over_kappa << ": slope " << f.fit.slope << ", prefactor " << f.prefactor << "\n";
    deliver(c, aqst::emit_string(res, fmt), s.str());
  } else {
    const auto res = aqst::sweep_fig3c(req.curves);
    for (const auto& cv : res.curves)
      s << cv.set.label << ": chi_b/2pi " << cv.set.chi_b / aqst::kTwoPi << " MHz, kappa/2pi "
        << cv.set.kappa / aqst::kTwoPi << " MHz, peak " << cv.result.best_avg_fidelity << " at "
        << cv.result.best_time << " us\n";
    deliver(c, aqst::emit_string(res, fmt), s.str());
  }
  return kOk;
}

int cmd_derive(const Common& c) {
  const json doc = read_json(c.config);
  std::vector<double> phi;
  if (doc.is_object() && doc.contains("phi_BI")) {
    phi = aqst::sweep_config_detail::positive_list(doc["phi_BI"], "phi_BI");
  } else {
    for (int i = 0; i < 9; ++i)
      phi.push_back(aqst::kTablePhiBILow + (aqst::kTablePhiBIHigh - aqst::kTablePhiBILow) * i / 8.0);
  }
  const json rows = aqst::derive_table(phi);
  std::string content;
  switch (aqst::parse_format(c.format)) {
    case aqst::Format::kJson: content = json{{"units", "MHz/2pi unless suffixed"}, {"rows", rows}}.dump(2) + "\n"; break;
    case aqst::Format::kCsv: {
      std::ostringstream os;
      os.imbue(std::locale::classic());
      os.precision(12);
      bool first = true;
      for (const auto& [k, v] : rows[0].items()) os << (first ? "" : ",") << k, first = false;
      os << "\n";
      for (const auto& r : rows) {
        first = true;
        for (const auto& [k, v] : r.items()) os << (first ? "" : ",") << v.get<double>(), first = false;
        os << "\n";
      }
      content = os.str();
      break;
    }
    case aqst::Format::kSvg: {
      aqst::svg::Series chi{"chi_BR", {}, {}}, om{"Omega", {}, {}};
      for (const auto& r : rows) {
        chi.x.push_back(r["Phi_BI"].get<double>());
        chi.y.push_back(r["chi_BR"].get<double>());
        om.x.push_back(r["Phi_BI"].get<double>());
        om.y.push_back(r["Omega1"].get<double>());
      }
      content = aqst::svg::line_plot("derived cQED rates", "Phi_BI", "rate / 2pi (MHz)", {chi, om}, false, false, true);
      break;
    }
  }
  std::ostringstream s;
  for (const auto& r : rows)
    s << "Phi_BI " << r["Phi_BI"].get<double>() << ": chi_BR/2pi " << r["chi_BR"].get<double>() << " MHz, Omega/2pi "
      << r["Omega1"].get<double>() << " MHz\n";
  deliver(c, content, s.str());
  return kOk;
}

int cmd_oracle(const Common& c) {
  const auto rec = aqst::oracle_record(load_config(c));
  std::ostringstream s;
  for (const auto& [k, v] : rec.scalars) s << k << " = " << v << "\n";
  deliver(c, aqst::emit_string(rec, aqst::parse_format(c.format)), s.str());
  return kOk;
}

int cmd_diagnose(const Common& c) {
  const auto rep = aqst::diagnose(load_config(c));
  const auto fmt = aqst::parse_format(c.format);
  std::string content;
  const auto& orth = rep["orthogonality"];
  const auto times = orth["times_us"].get<std::vector<double>>();
  if (fmt == aqst::Format::kJson) {
    content = rep.dump(2) + "\n";
  } else if (fmt == aqst::Format::kCsv) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << "time_us,overlap_z_pair,overlap_x_pair\n";
    for (std::size_t i = 0; i < times.size(); ++i)
      os << times[i] << ',' << orth["z_pair"][i].get<double>() << ',' << orth["x_pair"][i].get<double>() << "\n";
    content = os.str();
  } else {
    content = aqst::svg::line_plot("logical orthogonality", "time (us)", "|<phi0|phi1>|",
                                   {{"Z pair", times, orth["z_pair"].get<std::vector<double>>()},
                                    {"X pair", times, orth["x_pair"].get<std::vector<double>>()}});
  }
  std::ostringstream s;
  s << "instance " << rep["instance"].get<std::string>() << "\n"
    << "dark manifold (targets): " << (rep["dark_manifold_targets"]["verdict"].get<bool>() ? "pass" : "fail") << "\n"
    << "dark manifold (initial): " << (rep["dark_manifold_initial"]["verdict"].get<bool>() ? "pass" : "fail") << "\n"
    << "max logical overlap: " << orth["max_overlap"].get<double>() << "\n"
    << "final state separable: " << (rep["separability_final"]["separable"].get<bool>() ? "yes" : "no") << "\n";
  deliver(c, content, s.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Autonomous quantum state transfer simulator"};
  app.set_version_flag("--version", aqst::kVersion);
  app.require_subcommand(1);
  Common c;
  auto* run = app.add_subcommand("run", "simulate one configuration");
  auto* f2 = app.add_subcommand("sweep-fig2c", "cascaded fidelity over (lambda/kappa_b, gamma/Omega)");
  auto* f3 = app.add_subcommand("sweep-fig3c", "cQED cardinal-average curves, or the ideal-model inset");
  auto* dv = app.add_subcommand("derive", "cQED parameter table from the circuit values");
  auto* orc = app.add_subcommand("oracle", "closed-form predictions for a configuration");
  auto* dg = app.add_subcommand("diagnose", "dark-manifold, orthogonality and separability checks");
  add_common(run, c, true);
  add_common(f2, c, false);
  add_common(f3, c, false);
  add_common(dv, c, false);
  add_common(orc, c, true);
  add_common(dg, c, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalidConfig;
  }

  try {
    if (*run) return cmd_run(c);
    if (*f2) return cmd_fig2c(c);
    if (*f3) return cmd_fig3c(c);
    if (*dv) return cmd_derive(c);
    if (*orc) return cmd_oracle(c);
    if (*dg) return cmd_diagnose(c);
  } catch (const aqst::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const aqst::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const aqst::DegenerateOracle& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const aqst::ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const json::exception& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
  return kInvalidConfig;
}
