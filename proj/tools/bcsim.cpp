// Copyright 2026 The nullshift Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// bcsim: command-line front end for the backscatter link experiments.
//
//   bcsim <pmd|roc|ber|cfo|retx|theory|compare> [--config FILE] [--KEY VALUE ...]
//
// Exit status: 0 success, 1 bad configuration, 2 numerical failure.

#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nullshift/experiments.hpp"

namespace {

using namespace nullshift;

constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

std::string dashed(std::string_view key) {
  std::string s(key);
  for (auto& c : s) {
    if (c == '_') c = '-';
  }
  return s;
}

// "out.csv" + "snr10" -> "out_snr10.csv"
std::string with_suffix(const std::string& path, const std::string& suffix) {
  const auto dot = path.rfind(".csv");
  if (dot != std::string::npos && dot + 4 == path.size()) {
    return path.substr(0, dot) + "_" + suffix + ".csv";
  }
  return path + "_" + suffix + ".csv";
}

void write_curve(const SimCurve& curve, const std::string& path) {
  emit_csv(curve, path);
  std::printf("wrote %s\n", path.c_str());
}

void print_curve(const SimCurve& curve, const char* xlabel, const char* ylabel) {
  std::printf("%12s %14s %12s %10s\n", xlabel, ylabel, "ci95", "trials");
  for (const auto& p : curve.points) {
    std::printf("%12.6g %14.6g %12.3g %10lld\n", p.abscissa, p.value, p.ci95,
                static_cast<long long>(p.trials));
  }
}

struct Options {
  std::string config_file;
  std::string out;
  std::map<std::string, std::string> settings;
  std::map<std::string, CLI::Option*> handles;
};

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& help,
                      Options& opts, const std::string& default_out) {
  CLI::App* cmd = app.add_subcommand(name, help);
  cmd->add_option("--config", opts.config_file, "key = value configuration file");
  cmd->add_option("--out,-o", opts.out, "output CSV path (default " + default_out + ")");
  for (const auto& key : config_keys()) {
    const std::string k(key.name);
    std::string flag = "--" + dashed(k);
    if (dashed(k) != k) flag += ",--" + k;
    // All subcommands share storage; only the chosen one parses.
    auto& slot = opts.settings[k];
    CLI::Option* opt = cmd->add_option(flag, slot, std::string(key.help));
    opts.handles[name + "/" + k] = opt;
  }
  return cmd;
}

SystemConfig resolve_config(const Options& opts, const std::string& command) {
  SystemConfig cfg;
  if (!opts.config_file.empty()) cfg = load_config_file(opts.config_file, cfg);
  for (const auto& key : config_keys()) {
    const std::string k(key.name);
    const auto it = opts.handles.find(command + "/" + k);
    if (it != opts.handles.end() && it->second->count() > 0) {
      apply_setting(cfg, k, opts.settings.at(k));
    }
  }
  cfg.validate();
  return cfg;
}

int run_command(const std::string& command, const SystemConfig& cfg, std::string out) {
  if (out.empty()) out = command + ".csv";
  if (command == "pmd") {
    const SimCurve curve = run_pmd_sweep(cfg);
    print_curve(curve, "snr_db", "pmd");
    write_curve(curve, out);
  } else if (command == "roc") {
    for (double snr : cfg.snr_db) {
      const RocResult roc = run_roc(cfg, snr, cfg.eta_grid);
      const SimCurve curve = roc_to_curve(cfg, roc);
      std::printf("snr %g dB: PD at PFA 0.1 = %.4f\n", snr, pd_at_pfa(roc, 0.1));
      print_curve(curve, "pfa", "pd");
      write_curve(curve, cfg.snr_db.size() == 1 ? out : with_suffix(out, "snr" + format_double(snr)));
    }
  } else if (command == "ber") {
    const SimCurve curve = run_ber_sweep(cfg);
    print_curve(curve, "snr_db", "ber");
    write_curve(curve, out);
  } else if (command == "cfo") {
    const auto curves = run_cfo_study(cfg, cfg.cfo_grid);
    for (std::size_t i = 0; i < curves.size(); ++i) {
      std::printf("cfo %g\n", cfg.cfo_grid[i]);
      print_curve(curves[i], "snr_db", "ber");
      write_curve(curves[i], with_suffix(out, "cfo" + format_double(cfg.cfo_grid[i])));
    }
  } else if (command == "retx") {
    const SimCurve curve = run_retx(cfg);
    print_curve(curve, "snr_db", "p_retx");
    write_curve(curve, out);
  } else if (command == "theory") {
    const TheoryCurve theory = run_theory(cfg, default_quadrature());
    const SimCurve curve = theory_to_curve(cfg, theory);
    print_curve(curve, "snr_db", "probability");
    write_curve(curve, out);
    if (theory.any_failed()) {
      for (std::size_t i = 0; i < theory.failed.size(); ++i) {
        if (theory.failed[i]) {
          std::fprintf(stderr, "numerical failure at snr %g: %s\n", theory.abscissa[i],
                       theory.failure[i].c_str());
        }
      }
      return kExitNumerical;
    }
  } else if (command == "compare") {
    const TheoryCurve theory = run_theory(cfg, default_quadrature());
    const SimCurve theory_curve = theory_to_curve(cfg, theory);
    const SimCurve sim = cfg.scheme == Scheme::kOok ? run_pmd_sweep(cfg) : run_ber_sweep(cfg);
    write_curve(theory_curve, with_suffix(out, "theory"));
    write_curve(sim, with_suffix(out, "sim"));
    std::printf("%10s %14s %14s %12s %s\n", "snr_db", "theory", "simulated", "ci95", "status");
    for (const auto& a : compare_curves(theory_curve, sim)) {
      const char* status = !a.checked ? "below floor" : (a.agrees ? "agree" : "DISAGREE");
      std::printf("%10g %14.6g %14.6g %12.3g %s\n", a.snr_db, a.theory, a.simulated, a.ci95,
                  status);
    }
    if (theory.any_failed()) return kExitNumerical;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Backscatter-over-OFDM link simulator"};
  app.require_subcommand(1);
  Options opts;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"pmd", "OOK missed-detection probability vs SNR at a fixed false-alarm rate"},
      {"roc", "empirical ROC of the OOK energy detector, one curve per SNR"},
      {"ber", "device (or primary, --metric primary) bit error rate vs SNR"},
      {"cfo", "device BER vs SNR for each carrier frequency offset in --cfo-grid"},
      {"retx", "CRC-5 frame retransmission probability vs SNR"},
      {"theory", "analytical PMD (ook) or BER (fsk1, fsk2) vs SNR"},
      {"compare", "analytical curve against Monte Carlo (use --channel-mode iid)"},
  };
  for (const auto& [name, help] : commands) add_command(app, name, help, opts, name + ".csv");
  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const SystemConfig cfg = resolve_config(opts, command);
    return run_command(command, cfg, opts.out);
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s (error estimate %g)\n", e.what(),
                 e.error_estimate());
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
}
