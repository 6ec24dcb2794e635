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

#include <doctest.h>

#include <atomic>
#include <clocale>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <locale>
#include <random>

#include "nullshift/experiments.hpp"

using namespace nullshift;

namespace {

SystemConfig quick(Scheme scheme) {
  SystemConfig cfg;
  cfg.scheme = scheme;
  cfg.trials = 4000;
  cfg.min_errors = 1'000'000;  // fixed budget
  cfg.roc_trials = 4000;
  cfg.threads = 1;
  return cfg;
}

SimCurve random_curve(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  SimCurve c;
  c.set_meta("kind", "test");
  c.set_meta("landing_b0", "2,5,8");
  c.set_meta("note", "a = b, with spaces");
  for (int i = 0; i < 9; ++i) {
    CurvePoint p;
    p.abscissa = u(rng);
    p.value = std::ldexp(u(rng), -40);
    p.ci95 = 1.0 / 3.0;
    p.scheme = "FSK2";
    p.n = 512;
    p.gamma = 0.1;
    p.pfa_target = 1e-3;
    p.cfo = -0.05;
    p.seed = 18446744073709551615ULL;
    p.trials = 123456789012LL;
    c.points.push_back(p);
  }
  return c;
}

}  // namespace

TEST_CASE("config keys, grids and files") {
  SystemConfig cfg;
  apply_setting(cfg, "scheme", "FSK-2");
  apply_setting(cfg, "l-direct", "3");
  apply_setting(cfg, "snr", "0:2.5:10");
  apply_setting(cfg, "trials", "1e5");
  apply_setting(cfg, "seed", "18446744073709551615");
  apply_setting(cfg, "channel_mode", "iid");
  CHECK(cfg.scheme == Scheme::kFsk2);
  CHECK(cfg.effective_zeta() == 2);
  CHECK(cfg.l_direct == 3);
  CHECK(cfg.snr_db == std::vector<double>{0, 2.5, 5, 7.5, 10});
  CHECK(cfg.trials == 100000);
  CHECK(cfg.seed == 18446744073709551615ULL);
  CHECK(cfg.channel_mode == ChannelMode::kIidFrequency);
  CHECK(parse_grid("1,2, 4") == std::vector<double>{1, 2, 4});
  CHECK(parse_grid("7") == std::vector<double>{7});

  CHECK_THROWS_AS(apply_setting(cfg, "bogus", "1"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "gamma", "0.5x"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "trials", "1.5"), ConfigError);
  CHECK_THROWS_AS(parse_grid("0:0:10"), ConfigError);

  SystemConfig from_text;
  apply_config_text(from_text, "# comment\n gamma = 1  # trailing\n\nn=128\n");
  CHECK(from_text.gamma == 1.0);
  CHECK(from_text.n == 128);
  CHECK(from_text.cp_len() == 16);
  CHECK_THROWS_AS(apply_config_text(from_text, "gamma 1\n"), ConfigError);

  const auto path = std::filesystem::temp_directory_path() / "nullshift_cfg_test.cfg";
  {
    std::FILE* f = std::fopen(path.c_str(), "w");
    std::fputs("scheme = fsk1\npfa_target = 0.01\n", f);
    std::fclose(f);
  }
  const SystemConfig loaded = load_config_file(path.string());
  CHECK(loaded.scheme == Scheme::kFsk1);
  CHECK(loaded.pfa_target == 0.01);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_config_file("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("config validation") {
  SystemConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  for (auto [key, value] : std::vector<std::pair<const char*, const char*>>{
           {"n", "32"}, {"gamma", "1.5"}, {"trials", "0"}, {"pfa_target", "1"},
           {"l_direct", "10"}, {"sigma_v", "0"}, {"crc_preset", "32"}}) {
    SystemConfig bad;
    apply_setting(bad, key, value);
    CAPTURE(key);
    CHECK_THROWS_AS(bad.validate(), ConfigError);
  }
}

TEST_CASE("CSV round trip is lossless") {
  std::mt19937_64 rng(1);
  const SimCurve c = random_curve(rng);
  const std::string text = to_csv(c);
  CHECK(from_csv(text) == c);
  CHECK(to_csv(from_csv(text)) == text);

  SimCurve with_nan = c;
  with_nan.points[0].value = std::numeric_limits<double>::quiet_NaN();
  const SimCurve back = from_csv(to_csv(with_nan));
  CHECK(std::isnan(back.points[0].value));

  const auto path = std::filesystem::temp_directory_path() / "nullshift_curve_test.csv";
  emit_csv(c, path.string());
  CHECK(parse_csv(path.string()) == c);
  std::filesystem::remove(path);
}

TEST_CASE("CSV layout and rejection of bad input") {
  SimCurve c;
  CHECK_THROWS_AS(to_csv(c), ConfigError);
  c.set_meta("kind", "x");
  c.points.push_back(CurvePoint{0.5, 0.25, 0.125, "OOK", 64, 1, 0.001, 0, 3, 10});
  CHECK(to_csv(c) ==
        "# kind=x\n"
        "abscissa,value,ci95,scheme,N,gamma,pfa_target,cfo,seed,trials\n"
        "0.5,0.25,0.125,OOK,64,1,0.001,0,3,10\n");
  CHECK_THROWS_AS(from_csv("abscissa,value,ci95,scheme,N,gamma,pfa_target,cfo,seed,trials\n"),
                  ConfigError);
  CHECK_THROWS_AS(from_csv("x,y\n1,2\n"), ConfigError);
  CHECK_THROWS_AS(from_csv(std::string(kCsvHeader) + "\n1,2,3\n"), ConfigError);
}

TEST_CASE("CSV formatting ignores the global locale") {
  SimCurve c;
  c.points.push_back(CurvePoint{1.5, 0.25, 0.125, "OOK", 64, 0.75, 0.001, 0.05, 3, 10});
  const std::string before = to_csv(c);
  bool switched = false;
  for (const char* name : {"de_DE.UTF-8", "de_DE.utf8", "fr_FR.UTF-8", "C.UTF-8"}) {
    try {
      std::locale::global(std::locale(name));
      std::setlocale(LC_ALL, name);
      switched = true;
      break;
    } catch (const std::runtime_error&) {
    }
  }
  CHECK(to_csv(c) == before);
  CHECK(from_csv(before) == c);
  if (switched) {
    std::locale::global(std::locale::classic());
    std::setlocale(LC_ALL, "C");
  }
}

TEST_CASE("trial runner is deterministic and honours its budget") {
  const TrialFn fn = [](std::uint64_t t) {
    Rng rng = trial_rng(9, 1, t);
    return TrialTally{0, (rng() % 7 == 0) ? 1 : 0, 1};
  };
  RunBudget budget;
  budget.max_trials = 50000;
  budget.min_errors = 1000;
  budget.batch = 512;
  const TrialTally one = run_trials(fn, budget, 1);
  const TrialTally many = run_trials(fn, budget, 4);
  CHECK(one.trials == many.trials);
  CHECK(one.errors == many.errors);
  CHECK(one.errors >= 1000);
  CHECK(one.trials % 512 == 0);
  CHECK(one.trials < 50000);

  budget.min_errors = 1'000'000;
  CHECK(run_trials(fn, budget, 2).trials == 50000);

  std::atomic<int> calls{0};
  CHECK_THROWS_AS(parallel_for(
                      100,
                      [&](std::int64_t i) {
                        ++calls;
                        if (i == 37) throw NumericalError("boom", 1.0);
                      },
                      3),
                  NumericalError);
}

TEST_CASE("PMD sweep limits") {
  SystemConfig cfg = quick(Scheme::kOok);
  cfg.gamma = 0.0;
  cfg.pfa_target = 0.1;
  cfg.snr_db = {10.0};
  const SimCurve c = run_pmd_sweep(cfg);
  REQUIRE(c.points.size() == 1);
  CHECK(std::abs(c.points[0].value - 0.9) < 3.0 * c.points[0].ci95 + 1e-3);

  // Twice the trials shrink the interval by about sqrt(2).
  SystemConfig wide = quick(Scheme::kOok);
  wide.gamma = 0.25;
  wide.snr_db = {10.0};
  const double ci1 = run_pmd_sweep(wide).points[0].ci95;
  wide.trials *= 2;
  const double ci2 = run_pmd_sweep(wide).points[0].ci95;
  CHECK(ci1 / ci2 == doctest::Approx(std::sqrt(2.0)).epsilon(0.1));

  CHECK_THROWS_AS(run_pmd_sweep(quick(Scheme::kFsk2)), ConfigError);
}

TEST_CASE("ROC shape") {
  SystemConfig cfg = quick(Scheme::kOok);
  const RocResult roc = run_roc(cfg, 10.0);
  CHECK(roc.points.back().pfa == 1.0);
  CHECK(roc.points.back().pd == 1.0);
  for (std::size_t i = 1; i < roc.points.size(); ++i) {
    CHECK(roc.points[i].pfa >= roc.points[i - 1].pfa);
    CHECK(roc.points[i].pd >= roc.points[i - 1].pd);
  }
  const double pd = pd_at_pfa(roc, 0.1);
  CHECK(pd > 0.0);
  CHECK(pd < 1.0);
  const SimCurve curve = roc_to_curve(cfg, roc);
  CHECK(curve.points.size() == roc.points.size());
  CHECK(curve.meta_value("kind") == "roc");
}

TEST_CASE("BER sweeps") {
  SystemConfig cfg = quick(Scheme::kFsk2);
  cfg.gamma = 0.0;
  cfg.snr_db = {20.0};
  const auto flat = run_ber_sweep(cfg);
  CHECK(std::abs(flat.points[0].value - 0.5) < 3.0 * flat.points[0].ci95);

  // Device activity never changes primary decisions.
  SystemConfig primary = quick(Scheme::kOok);
  primary.metric = BerMetric::kPrimary;
  primary.snr_db = {0.0, 10.0};
  primary.gamma = 0.0;
  const auto quiet = run_ber_sweep(primary);
  primary.gamma = 1.0;
  const auto loud = run_ber_sweep(primary);
  CHECK(quiet.meta_value("errors") == loud.meta_value("errors"));

  // Zero CFO reproduces the plain sweep exactly.
  SystemConfig f2 = quick(Scheme::kFsk2);
  f2.gamma = 1.0;
  f2.snr_db = {10.0};
  const auto plain = run_ber_sweep(f2);
  const auto study = run_cfo_study(f2, {0.0, 0.05});
  CHECK(study.size() == 2);
  CHECK(study[0].points == plain.points);
}

TEST_CASE("retransmission probability limits") {
  SystemConfig cfg = quick(Scheme::kFsk2);
  cfg.trials = 3000;
  cfg.gamma = 0.0;
  const PointEstimate random = retransmission_probability(cfg, 20.0, cfg.trials);
  CHECK(random.p >= 0.96 - random.ci95);
  CHECK(std::abs(random.p - 31.0 / 32.0) < 3.0 * random.ci95 + 1e-3);

  cfg.gamma = 1.0;
  CHECK(retransmission_probability(cfg, 200.0, 500).p == 0.0);

  SystemConfig ook = quick(Scheme::kOok);
  ook.gamma = 1.0;
  ook.trials = 500;
  CHECK(retransmission_probability(ook, 200.0, 500).p < 0.03);

  SystemConfig sweep = quick(Scheme::kFsk2);
  sweep.gamma = 1.0;
  sweep.trials = 2000;
  sweep.snr_db = {0.0, 10.0, 20.0, 30.0};
  const SimCurve c = run_retx(sweep);
  for (std::size_t i = 1; i < c.points.size(); ++i) {
    CHECK(c.points[i].value <= c.points[i - 1].value + 2.0 * c.points[i - 1].ci95);
  }
}

TEST_CASE("CSV output does not depend on the thread count") {
  SystemConfig cfg = quick(Scheme::kFsk2);
  cfg.snr_db = {5.0, 15.0};
  cfg.min_errors = 50;
  cfg.trials = 20000;
  cfg.threads = 1;
  const std::string a = to_csv(run_ber_sweep(cfg));
  cfg.threads = 4;
  const std::string b = to_csv(run_ber_sweep(cfg));
  CHECK(a == b);
  CHECK(a.find("threads") == std::string::npos);
}

TEST_CASE("theory curves and comparisons") {
  SystemConfig cfg;
  cfg.snr_db = {10.0, 20.0};
  const TheoryCurve th = run_theory(cfg, default_quadrature());
  const SimCurve c = theory_to_curve(cfg, th);
  CHECK(c.meta_value("kind") == "theory_pmd");
  CHECK(from_csv(to_csv(c)) == c);

  SimCurve sim = c;
  sim.points[0].value *= 1.05;
  sim.points[1].value *= 2.0;
  for (auto& p : sim.points) p.ci95 = 0.0;
  const auto cmp = compare_curves(c, sim);
  CHECK(cmp[0].agrees);
  CHECK_FALSE(cmp[1].agrees);
}
