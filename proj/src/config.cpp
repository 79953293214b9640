#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ia/experiment.hpp"

namespace ia {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    parts.push_back(trim(item));
  }
  return parts;
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const int parsed = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: " + key + " expects an integer, got '" +
                                value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const std::uint64_t parsed = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: " + key + " expects an integer, got '" +
                                value + "'");
  }
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double parsed = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: " + key + " expects a number, got '" +
                                value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "on") return true;
  if (value == "false" || value == "0" || value == "off") return false;
  throw std::invalid_argument("config: " + key + " expects true/false, got '" +
                              value + "'");
}

std::vector<double> parse_double_list(const std::string& key,
                                      const std::string& value) {
  std::vector<double> out;
  for (const std::string& part : split(value, ',')) {
    if (!part.empty()) out.push_back(parse_double(key, part));
  }
  return out;
}

// Scalar broadcasts to all users; a comma list must match K entries.
void assign_per_user(std::vector<int>& field, int users, const std::string& key,
                     const std::string& value) {
  const std::vector<std::string> parts = split(value, ',');
  if (parts.size() == 1) {
    field.assign(users, parse_int(key, parts[0]));
    return;
  }
  if (static_cast<int>(parts.size()) != users) {
    throw std::invalid_argument("config: " + key + " list must have K=" +
                                std::to_string(users) + " entries");
  }
  field.clear();
  for (const std::string& part : parts) {
    field.push_back(parse_int(key, part));
  }
}

}  // namespace

void apply_key_value(ExperimentConfig& cfg, const std::string& raw_key,
                     const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  if (key == "K") {
    const int users = parse_int(key, value);
    if (users < 1) throw std::invalid_argument("config: K must be >= 1");
    // Resize per-user vectors, keeping the existing (symmetric) fill.
    const int tx = cfg.network.tx_antennas.empty() ? 2 : cfg.network.tx_antennas[0];
    const int rx = cfg.network.rx_antennas.empty() ? 2 : cfg.network.rx_antennas[0];
    const int d = cfg.network.streams.empty() ? 1 : cfg.network.streams[0];
    const double p = cfg.network.powers.empty() ? 1.0 : cfg.network.powers[0];
    cfg.network.user_count = users;
    cfg.network.tx_antennas.assign(users, tx);
    cfg.network.rx_antennas.assign(users, rx);
    cfg.network.streams.assign(users, d);
    cfg.network.powers.assign(users, p);
  } else if (key == "M") {
    assign_per_user(cfg.network.tx_antennas, cfg.network.user_count, key, value);
  } else if (key == "N") {
    assign_per_user(cfg.network.rx_antennas, cfg.network.user_count, key, value);
  } else if (key == "d") {
    assign_per_user(cfg.network.streams, cfg.network.user_count, key, value);
  } else if (key == "snr_db") {
    cfg.snr_db_list = parse_double_list(key, value);
  } else if (key == "seeds") {
    cfg.seeds = parse_int(key, value);
  } else if (key == "master_seed") {
    cfg.master_seed = parse_u64(key, value);
  } else if (key == "algorithms") {
    cfg.algorithms.clear();
    for (const std::string& name : split(value, ',')) {
      const auto kind = manifold_from_string(name);
      if (!kind) {
        throw std::invalid_argument("config: unknown algorithm '" + name + "'");
      }
      cfg.algorithms.push_back(*kind);
    }
  } else if (key == "max_iterations") {
    cfg.stop.max_iterations = parse_int(key, value);
  } else if (key == "cost_tolerance") {
    cfg.stop.cost_tolerance = parse_double(key, value);
  } else if (key == "relative_tolerance") {
    cfg.stop.relative_tolerance = parse_double(key, value);
  } else if (key == "beta_reset") {
    cfg.beta_reset = parse_bool(key, value);
  } else if (key == "output_dir") {
    cfg.output_dir = value;
  } else if (key == "reference_snr_db") {
    cfg.reference_snr_db = parse_double(key, value);
  } else if (key == "rate_reoptimize") {
    cfg.rate_reoptimize = parse_bool(key, value);
  } else if (key == "angle_seed") {
    cfg.angle_seed = parse_int(key, value);
  } else if (key == "threads") {
    cfg.threads = parse_int(key, value);
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("config: cannot open '" + path + "'");
  }
  ExperimentConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: " + path + ":" +
                                  std::to_string(line_no) +
                                  ": expected key = value");
    }
    apply_key_value(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  validate(cfg.network);
  if (cfg.seeds < 1) {
    throw std::invalid_argument("config: seeds must be >= 1");
  }
  if (cfg.algorithms.empty()) {
    throw std::invalid_argument("config: algorithms must be nonempty");
  }
  if (cfg.stop.max_iterations < 0 || cfg.stop.cost_tolerance < 0.0 ||
      cfg.stop.relative_tolerance < 0.0) {
    throw std::invalid_argument("config: stop rule fields must be >= 0");
  }
  if (cfg.angle_seed < 0 || cfg.angle_seed >= cfg.seeds) {
    throw std::invalid_argument("config: angle_seed must be in [0, seeds)");
  }
  if (cfg.threads < 0) {
    throw std::invalid_argument("config: threads must be >= 0");
  }
}

std::string config_summary(const ExperimentConfig& cfg) {
  std::ostringstream out;
  const auto list_int = [&](const std::vector<int>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  };
  out << "K=" << cfg.network.user_count << "\nM=";
  list_int(cfg.network.tx_antennas);
  out << "\nN=";
  list_int(cfg.network.rx_antennas);
  out << "\nd=";
  list_int(cfg.network.streams);
  out << "\nsnr_db=";
  for (std::size_t i = 0; i < cfg.snr_db_list.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", cfg.snr_db_list[i]);
    out << (i ? "," : "") << buf;
  }
  out << "\nseeds=" << cfg.seeds << "\nmaster_seed=" << cfg.master_seed
      << "\nalgorithms=";
  for (std::size_t i = 0; i < cfg.algorithms.size(); ++i) {
    out << (i ? "," : "") << to_string(cfg.algorithms[i]);
  }
  char buf[96];
  std::snprintf(buf, sizeof buf,
                "\nmax_iterations=%d\ncost_tolerance=%.12g\n"
                "relative_tolerance=%.12g",
                cfg.stop.max_iterations, cfg.stop.cost_tolerance,
                cfg.stop.relative_tolerance);
  out << buf;
  std::snprintf(buf, sizeof buf, "\nreference_snr_db=%.12g",
                cfg.reference_snr_db);
  out << "\nbeta_reset=" << (cfg.beta_reset ? "true" : "false") << buf
      << "\nrate_reoptimize=" << (cfg.rate_reoptimize ? "true" : "false")
      << "\nangle_seed=" << cfg.angle_seed << "\n";
  return out.str();
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  // FNV-1a, 64 bit.
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : config_summary(cfg)) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

}  // namespace ia
