#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "iassr/errors.hpp"
#include "iassr/scenario.hpp"

namespace iassr {

namespace pt = boost::property_tree;

static Point parse_point(const std::string& text) {
  std::string t = text;
  for (char& c : t)
    if (c == ',') c = ' ';
  std::istringstream is(t);
  Point p;
  if (!(is >> p.x >> p.y)) throw Error(ErrorCode::Config, "bad position '" + text + "'");
  std::string rest;
  if (is >> rest) throw Error(ErrorCode::Config, "bad position '" + text + "'");
  return p;
}

template <class T>
static void read_opt(const pt::ptree& sec, const char* key, T& dst) {
  const pt::ptree::path_type path(key, '/');
  if (sec.get_child_optional(path)) dst = sec.get<T>(path);
}

Scenario parse_scenario(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream is(text);
    pt::read_ini(is, tree);
  } catch (const pt::ptree_error& e) {
    throw Error(ErrorCode::Config, e.what());
  }

  Scenario s;
  ScenarioConfig& c = s.config;
  try {
    if (auto sec = tree.get_child_optional(pt::ptree::path_type("scenario", '/'))) {
      static const std::set<std::string> known{
          "num_bs", "Nt", "Nr", "spacing_ratio", "carrier_hz", "cell_radius_m", "site_distance_m",
          "sector_half_width_deg", "reference_distance_m", "noise_variance", "snr_db", "coherence_T",
          "feedback_rate_F", "quant_bits_Q", "eigen_threshold", "ue_correlation", "seed"};
      for (const auto& kv : *sec)
        if (!known.count(kv.first)) throw Error(ErrorCode::Config, "unknown scenario key '" + kv.first + "'");
      read_opt(*sec, "num_bs", c.num_bs);
      read_opt(*sec, "Nt", c.nt);
      read_opt(*sec, "Nr", c.nr);
      read_opt(*sec, "spacing_ratio", c.spacing_ratio);
      read_opt(*sec, "carrier_hz", c.carrier_hz);
      read_opt(*sec, "cell_radius_m", c.cell_radius_m);
      read_opt(*sec, "site_distance_m", c.site_distance_m);
      read_opt(*sec, "sector_half_width_deg", c.sector_half_width_deg);
      read_opt(*sec, "reference_distance_m", c.reference_distance_m);
      read_opt(*sec, "noise_variance", c.noise_variance);
      read_opt(*sec, "snr_db", c.snr_db);
      read_opt(*sec, "coherence_T", c.coherence_T);
      read_opt(*sec, "feedback_rate_F", c.feedback_rate_F);
      read_opt(*sec, "quant_bits_Q", c.quant_bits_Q);
      read_opt(*sec, "eigen_threshold", c.eigen_threshold);
      read_opt(*sec, "ue_correlation", c.ue_correlation);
      read_opt(*sec, "seed", c.seed);
    }
    for (const auto& [name, sec] : tree) {
      if (name.rfind("cluster_", 0) != 0) continue;
      ClusterSpec cl;
      cl.id = std::stoi(name.substr(8));
      cl.position = parse_point(sec.get<std::string>("position"));
      read_opt(sec, "ring_radius_m", cl.ring_radius_m);
      read_opt(sec, "num_users", cl.num_users);
      s.clusters.push_back(cl);
    }
  } catch (const pt::ptree_error& e) {
    throw Error(ErrorCode::Config, e.what());
  } catch (const std::logic_error& e) {
    throw Error(ErrorCode::Config, e.what());
  }
  std::sort(s.clusters.begin(), s.clusters.end(),
            [](const ClusterSpec& a, const ClusterSpec& b) { return a.id < b.id; });
  for (std::size_t k = 0; k < s.clusters.size(); ++k)
    if (s.clusters[k].id != static_cast<int>(k))
      throw Error(ErrorCode::Config, "cluster ids must be 0..J-1");
  s.validate();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::Io, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_scenario(ss.str());
}

std::string format_scenario(const Scenario& s) {
  const ScenarioConfig& c = s.config;
  std::ostringstream o;
  o << std::setprecision(17);
  o << "[scenario]\n"
    << "num_bs = " << c.num_bs << "\n"
    << "Nt = " << c.nt << "\n"
    << "Nr = " << c.nr << "\n"
    << "spacing_ratio = " << c.spacing_ratio << "\n"
    << "carrier_hz = " << c.carrier_hz << "\n"
    << "cell_radius_m = " << c.cell_radius_m << "\n"
    << "site_distance_m = " << c.site_distance_m << "\n"
    << "sector_half_width_deg = " << c.sector_half_width_deg << "\n"
    << "reference_distance_m = " << c.reference_distance_m << "\n"
    << "noise_variance = " << c.noise_variance << "\n"
    << "snr_db = " << c.snr_db << "\n"
    << "coherence_T = " << c.coherence_T << "\n"
    << "feedback_rate_F = " << c.feedback_rate_F << "\n"
    << "quant_bits_Q = " << c.quant_bits_Q << "\n"
    << "eigen_threshold = " << c.eigen_threshold << "\n"
    << "ue_correlation = " << c.ue_correlation << "\n"
    << "seed = " << c.seed << "\n";
  for (const auto& cl : s.clusters) {
    o << "\n[cluster_" << cl.id << "]\n"
      << "position = " << cl.position.x << ", " << cl.position.y << "\n"
      << "ring_radius_m = " << cl.ring_radius_m << "\n"
      << "num_users = " << cl.num_users << "\n";
  }
  return o.str();
}

}  // namespace iassr
