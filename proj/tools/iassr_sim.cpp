// Command-line experiment runner.
//
//   iassr_sim run --figure fig4 --config config/default.cfg --trials 200 --seed 1 --out results
//   iassr_sim run --figure all --out results
//   iassr_sim describe --config config/default.cfg

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "iassr/errors.hpp"
#include "iassr/experiments.hpp"
#include "iassr/network.hpp"

namespace {

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::istringstream field(item);
    T v{};
    if (!(field >> v) || !(field >> std::ws).eof())
      throw iassr::Error(iassr::ErrorCode::InvalidArgument, std::string("bad ") + what + " value '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw iassr::Error(iassr::ErrorCode::InvalidArgument, std::string("empty ") + what + " list");
  return out;
}

void describe(const iassr::Scenario& s) {
  const auto st = iassr::build_statistics(s);
  for (iassr::Scheme sc : {iassr::Scheme::IaSsr, iassr::Scheme::De, iassr::Scheme::PureIa, iassr::Scheme::PureJsdm}) {
    const auto p = iassr::plan_transmission(st, sc);
    std::cout << iassr::scheme_name(sc) << " (tc = " << p.tc_len << ")\n";
    for (const auto& e : p.edges)
      std::cout << "  cluster " << e.cluster << " edge  M = (" << e.M[0] << "," << e.M[1] << "," << e.M[2]
                << ") S = " << (e.candidates.empty() ? 0 : e.candidates.front().total()) << '\n';
    for (const auto& c : p.centers)
      std::cout << "  cluster " << c.cluster << " centre of BS " << c.bs << "  M = " << c.B.M()
                << " S = " << c.streams << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IA-SSR multi-cell massive MIMO simulator"};
  app.require_subcommand(1);

  std::string config = IASSR_DEFAULT_CONFIG;
  std::string figure, out_dir = "results", snr_list, t_list;
  int trials = 100;
  std::uint64_t seed = 0;
  bool serial = false;

  CLI::App* run = app.add_subcommand("run", "run one figure's experiment and write <out>/<figure>.csv");
  run->add_option("--figure", figure, "fig2..fig11 or all")->required();
  run->add_option("--config", config, "scenario INI file");
  run->add_option("--trials", trials, "Monte Carlo trials per point");
  run->add_option("--seed", seed, "base seed; trial t uses seed + t (default: config seed)");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--snr-db", snr_list, "comma-separated SNR grid in dB");
  run->add_option("--coherence-T", t_list, "comma-separated coherence block lengths");
  run->add_flag("--serial", serial, "run trials on one thread");

  CLI::App* desc = app.add_subcommand("describe", "print the cluster division and beam counts");
  desc->add_option("--config", config, "scenario INI file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const iassr::Scenario scenario = iassr::load_scenario(config);
    if (*desc) {
      describe(scenario);
      return 0;
    }

    std::vector<std::string> figures;
    if (figure == "all") figures = iassr::figure_ids();
    else figures.push_back(figure);

    std::filesystem::create_directories(out_dir);
    for (const auto& f : figures) {
      iassr::ExperimentSpec spec = iassr::default_spec(f, scenario.config);
      spec.trials = trials;
      if (run->count("--seed")) spec.seed = seed;
      if (!snr_list.empty()) spec.snr_db = parse_list<double>(snr_list, "SNR");
      if (!t_list.empty()) spec.coherence_T = parse_list<int>(t_list, "coherence T");
      if (serial) spec.exec = iassr::Execution::Serial;
      spec.validate();

      const auto t0 = std::chrono::steady_clock::now();
      const auto rows = iassr::run_experiment(scenario, spec);
      const std::filesystem::path path = std::filesystem::path(out_dir) / (f + ".csv");
      std::ofstream os(path, std::ios::binary);
      if (!os) throw iassr::Error(iassr::ErrorCode::Io, "cannot write " + path.string());
      iassr::write_csv(os, rows);
      if (!os) throw iassr::Error(iassr::ErrorCode::Io, "write failed: " + path.string());
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::cerr << f << ": " << rows.size() << " rows -> " << path.string() << " (" << secs << " s)\n";
    }
  } catch (const iassr::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    const auto c = e.code();
    return c == iassr::ErrorCode::InvalidArgument || c == iassr::ErrorCode::Config ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
