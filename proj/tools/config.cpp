#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "csv.hpp"

namespace rfehsim {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      const std::string_view item = trim(s.substr(start, i - start));
      if (!item.empty()) out.push_back(item);
      start = i + 1;
    }
  }
  return out;
}

double parse_number(std::string_view text, std::string_view key) {
  const std::string_view body = trim(text);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec != std::errc() || end != body.data() + body.size()) {
    throw ConfigError("value for '" + std::string(key) + "' is not a number: '" +
                      std::string(body) + "'");
  }
  return value;
}

std::uint64_t parse_unsigned(std::string_view text, std::string_view key) {
  const std::string_view body = trim(text);
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec != std::errc() || end != body.data() + body.size()) {
    throw ConfigError("value for '" + std::string(key) + "' is not a non-negative integer: '" +
                      std::string(body) + "'");
  }
  return value;
}

double parse_duration_s(std::string_view text, std::string_view key) {
  std::string_view body = trim(text);
  double scale = 0.0;
  if (body.size() > 2 && body.substr(body.size() - 2) == "ms") {
    scale = 1e-3;
    body = trim(body.substr(0, body.size() - 2));
  } else if (body.size() > 1 && body.back() == 's') {
    scale = 1.0;
    body = trim(body.substr(0, body.size() - 1));
  } else {
    throw ConfigError("duration value for '" + std::string(key) + "' needs an s or ms suffix: '" +
                      std::string(body) + "'");
  }
  return scale * parse_number(body, key);
}

struct ProfileKeys {
  bool is_profile_key(std::string_view key) const {
    return key == "beta" || key == "p_f" || key == "p_s";
  }
};

void apply_profile_key(rfeh::ConsumptionProfile& profile, std::string_view key,
                       std::string_view value) {
  if (key == "beta") {
    profile.beta_w = parse_power(value, key);
  } else if (key == "p_f") {
    profile.per_branch_w = parse_power(value, key);
  } else if (key == "p_s") {
    profile.summation_w = parse_power(value, key);
  } else {
    throw ConfigError("unknown profile key '" + std::string(key) + "'");
  }
}

}  // namespace

double parse_power(std::string_view text, std::string_view key) {
  std::string_view body = trim(text);
  double scale = 0.0;
  if (body.size() > 2 && body.substr(body.size() - 2) == "mW") {
    scale = 1e-3;
    body = trim(body.substr(0, body.size() - 2));
  } else if (body.size() > 1 && body.back() == 'W') {
    scale = 1.0;
    body = trim(body.substr(0, body.size() - 1));
  } else {
    throw ConfigError("power value for '" + std::string(key) + "' needs a W or mW suffix: '" +
                      std::string(body) + "'");
  }
  return scale * parse_number(body, key);
}

rfeh::CombinerKind technique_from_string(std::string_view name) {
  const std::string_view body = trim(name);
  if (body == "sc") return rfeh::CombinerKind::SC;
  if (body == "egc") return rfeh::CombinerKind::EGC;
  if (body == "mrc") return rfeh::CombinerKind::MRC;
  throw ConfigError("unknown technique '" + std::string(body) + "' (expected sc, egc, or mrc)");
}

rfeh::EstimateMode mode_from_string(std::string_view name) {
  const std::string_view body = trim(name);
  if (body == "analytic") return rfeh::EstimateMode::Analytic;
  if (body == "mc" || body == "monte_carlo") return rfeh::EstimateMode::MonteCarlo;
  throw ConfigError("unknown mode '" + std::string(body) + "' (expected analytic or mc)");
}

std::vector<std::complex<double>> parse_complex_list(std::string_view text) {
  std::vector<std::complex<double>> out;
  for (std::string_view raw : split_list(text)) {
    std::string token;
    for (const char c : raw) {
      if (c != ' ' && c != '\t') token.push_back(c);
    }
    if (token.empty()) continue;

    const bool imaginary = token.back() == 'j' || token.back() == 'i';
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i + 1 < token.size(); ++i) {
      const char c = token[i];
      const char prev = token[i - 1];
      if ((c == '+' || c == '-') && prev != 'e' && prev != 'E') split = i;
    }

    if (split == std::string::npos) {
      if (imaginary) {
        std::string body = token.substr(0, token.size() - 1);
        if (body.empty() || body == "+" || body == "-") body += "1";
        out.emplace_back(0.0, parse_number(body, "channel"));
      } else {
        out.emplace_back(parse_number(token, "channel"), 0.0);
      }
      continue;
    }

    if (!imaginary) {
      throw ConfigError("complex value '" + token + "' has two parts but no trailing j");
    }
    const double real = parse_number(token.substr(0, split), "channel");
    std::string imag_body = token.substr(split, token.size() - split - 1);
    if (imag_body == "+" || imag_body == "-") imag_body += "1";
    out.emplace_back(real, parse_number(imag_body, "channel"));
  }
  if (out.empty()) {
    throw ConfigError("channel list is empty");
  }
  return out;
}

RunConfig::RunConfig() {
  profiles = {
      {0.0, 0.5e-3, 1e-3, rfeh::CombinerKind::SC},
      {1e-3, 0.5e-3, 1e-3, rfeh::CombinerKind::EGC},
      {2e-3, 0.5e-3, 1e-3, rfeh::CombinerKind::MRC},
  };
}

rfeh::ConsumptionProfile& RunConfig::profile_for(rfeh::CombinerKind kind) {
  for (auto& profile : profiles) {
    if (profile.kind == kind) return profile;
  }
  throw ConfigError(std::string("no consumption profile for technique ") + rfeh::to_string(kind));
}

const rfeh::ConsumptionProfile& RunConfig::profile_for(rfeh::CombinerKind kind) const {
  for (const auto& profile : profiles) {
    if (profile.kind == kind) return profile;
  }
  throw ConfigError(std::string("no consumption profile for technique ") + rfeh::to_string(kind));
}

void RunConfig::validate() const {
  if (antennas.empty()) {
    throw ConfigError("antennas list is empty");
  }
  if (format != "csv" && format != "pretty") {
    throw ConfigError("format must be csv or pretty, got '" + format + "'");
  }
  try {
    for (const std::size_t k : antennas) {
      make_spec(*this, k).validate();
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

RunConfig parse_config_text(std::string_view text) {
  RunConfig config;
  rfeh::ConsumptionProfile* section = nullptr;
  const ProfileKeys profile_keys;

  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_number;
    std::string_view line = text.substr(start, end - start);
    start = end + 1;

    const std::size_t comment = line.find_first_of("#;");
    if (comment != std::string_view::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;

    const auto fail = [&](const std::string& message) {
      throw ConfigError("config line " + std::to_string(line_number) + ": " + message);
    };

    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      const std::string_view name = trim(line.substr(1, line.size() - 2));
      try {
        section = &config.profile_for(technique_from_string(name));
      } catch (const ConfigError& e) {
        fail(e.what());
      }
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) fail("expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) fail("empty key");
    if (value.empty()) fail("empty value for '" + std::string(key) + "'");

    try {
      if (section != nullptr && profile_keys.is_profile_key(key)) {
        apply_profile_key(*section, key, value);
      } else if (key == "seed") {
        config.seed = parse_unsigned(value, key);
      } else if (key == "trials") {
        config.trials = parse_unsigned(value, key);
      } else if (key == "antennas") {
        config.antennas.clear();
        for (const auto item : split_list(value)) {
          config.antennas.push_back(static_cast<std::size_t>(parse_unsigned(item, key)));
        }
      } else if (key == "techniques") {
        config.techniques.clear();
        for (const auto item : split_list(value)) {
          config.techniques.push_back(technique_from_string(item));
        }
      } else if (key == "path_loss") {
        config.path_loss = parse_number(value, key);
      } else if (key == "eta") {
        config.efficiency = parse_number(value, key);
      } else if (key == "harvest_time") {
        config.harvest_time_s = parse_duration_s(value, key);
      } else if (key == "pt_min") {
        config.pt_min_w = parse_power(value, key);
      } else if (key == "pt_max") {
        config.pt_max_w = parse_power(value, key);
      } else if (key == "pt_step") {
        config.pt_step_w = parse_power(value, key);
      } else if (key == "format") {
        config.format = std::string(value);
      } else if (profile_keys.is_profile_key(key)) {
        fail("key '" + std::string(key) + "' must appear inside a technique section");
      } else {
        fail("unknown key '" + std::string(key) + "'");
      }
    } catch (const ConfigError& e) {
      const std::string what = e.what();
      if (what.rfind("config line", 0) == 0) throw;
      fail(what);
    }
  }
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open config file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw IoError("cannot read config file: " + path);
  }
  return parse_config_text(buffer.str());
}

std::string dump_config(const RunConfig& config) {
  std::ostringstream out;
  out << "seed = " << config.seed << '\n';
  out << "trials = " << config.trials << '\n';
  out << "antennas = ";
  for (std::size_t i = 0; i < config.antennas.size(); ++i) {
    if (i != 0) out << ", ";
    out << config.antennas[i];
  }
  out << '\n';
  out << "techniques = ";
  for (std::size_t i = 0; i < config.techniques.size(); ++i) {
    if (i != 0) out << ", ";
    out << rfeh::to_string(config.techniques[i]);
  }
  out << '\n';
  out << "path_loss = " << format_double(config.path_loss) << '\n';
  out << "eta = " << format_double(config.efficiency) << '\n';
  out << "harvest_time = " << format_double(config.harvest_time_s) << " s\n";
  out << "pt_min = " << format_double(config.pt_min_w) << " W\n";
  out << "pt_max = " << format_double(config.pt_max_w) << " W\n";
  out << "pt_step = " << format_double(config.pt_step_w) << " W\n";
  out << "format = " << config.format << '\n';
  for (const auto& profile : config.profiles) {
    out << '\n' << '[' << rfeh::to_string(profile.kind) << "]\n";
    out << "beta = " << format_double(profile.beta_w) << " W\n";
    out << "p_f = " << format_double(profile.per_branch_w) << " W\n";
    out << "p_s = " << format_double(profile.summation_w) << " W\n";
  }
  return out.str();
}

std::uint64_t config_digest(const RunConfig& config) {
  const std::string canonical = dump_config(config);
  std::uint64_t hash = 14695981039346656037ULL;
  for (const unsigned char c : canonical) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::vector<double> make_grid(const RunConfig& config) {
  const double lo = config.pt_min_w;
  const double hi = config.pt_max_w;
  const double step = config.pt_step_w;
  if (!(hi >= lo)) {
    throw ConfigError("pt_max must be >= pt_min");
  }
  if (hi == lo) return {lo};
  if (!(step > 0.0)) {
    throw ConfigError("pt_step must be positive when pt_max > pt_min");
  }

  const double span = hi - lo;
  const auto count = static_cast<std::uint64_t>(std::llround(span / step));
  std::vector<double> grid;
  if (count >= 1 && std::abs(span - static_cast<double>(count) * step) <= step * 1e-9) {
    // The step divides the span: interpolate so endpoints and interior points
    // land on the representable decimals the user wrote (0.1, 0.2, ...).
    grid.reserve(count + 1);
    for (std::uint64_t i = 0; i <= count; ++i) {
      grid.push_back(lo + (span * static_cast<double>(i)) / static_cast<double>(count));
    }
  } else {
    for (double v = lo; v <= hi + step * 1e-9; v += step) grid.push_back(v);
  }
  return grid;
}

rfeh::ExperimentSpec make_spec(const RunConfig& config, std::size_t num_antennas) {
  rfeh::ExperimentSpec spec;
  spec.channel_config.num_antennas = num_antennas;
  spec.channel_config.path_loss = config.path_loss;
  spec.channel_config.distribution = rfeh::FadingDistribution::Rayleigh;
  spec.harvester.efficiency = config.efficiency;
  spec.harvester.harvest_time_s = config.harvest_time_s;
  spec.profiles = config.profiles;
  spec.techniques = config.techniques;
  spec.transmit_power_grid_w = make_grid(config);
  spec.trials = config.trials;
  spec.seed = config.seed;
  return spec;
}

}  // namespace rfehsim
