// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "esdd/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "esdd/error.hpp"

namespace esdd {

int FrontendConfig::target_samples() const {
  return static_cast<int>(std::llround(duration_s * mel.sample_rate));
}

int FrontendConfig::frames() const {
  return mel.frames_for(target_samples());
}

GridMeta ExperimentConfig::grid() const {
  return patch_grid(frontend.frames(), frontend.mel.n_mels, encoder.patch);
}

void ExperimentConfig::validate() const {
  frontend.mel.validate();
  encoder.validate();
  branch.validate();
  training.class_weights.validate();

  if (frontend.duration_s <= 0.0)
    throw ConfigError("frontend.duration_s must be > 0");
  if (frontend.mel.n_mels % encoder.patch != 0)
    throw ConfigError("frontend.n_mels must be divisible by the patch size (" +
                      std::to_string(encoder.patch) + ")");
  if (frontend.frames() < encoder.patch)
    throw ConfigError(
        "frontend.duration_s too short: fewer frames than one patch");
  if (fusion.k < 1 || fusion.k > encoder.depth)
    throw ConfigError("fusion.k (" + std::to_string(fusion.k) +
                      ") must be between 1 and encoder.depth (" +
                      std::to_string(encoder.depth) + ")");
  GridMeta g = grid();
  if (split == SplitMode::kFrequency && g.h % 2 != 0)
    throw ConfigError("split.mode=frequency requires an even patch-row count "
                      "(frontend.n_mels / 16), got H=" + std::to_string(g.h));
  if (split == SplitMode::kChannel && encoder.dim % 2 != 0)
    throw ConfigError(
        "split.mode=channel requires even encoder.dim, got encoder.dim=" +
        std::to_string(encoder.dim));
  if (training.batch_size < 1)
    throw ConfigError("training.batch_size must be >= 1");
  if (training.epochs < 1) throw ConfigError("training.epochs must be >= 1");
  if (training.lr < 0.0) throw ConfigError("training.lr must be >= 0");
  if (training.optimizer != "adam" && training.optimizer != "sgd")
    throw ConfigError("training.optimizer must be adam or sgd");
  if (training.max_steps < 0)
    throw ConfigError("training.max_steps must be >= 0");
  if (training.checkpoint_every < 1)
    throw ConfigError("training.checkpoint_every must be >= 1");
  if (augmentation.ratio < 0.0 || augmentation.ratio > 1.0)
    throw ConfigError("augmentation.ratio must be in [0, 1]");
  if (augmentation.gl_iterations < 1)
    throw ConfigError("augmentation.gl_iterations must be >= 1");
  if (frontend.specaug_cfg.n_freq_masks < 0 ||
      frontend.specaug_cfg.n_time_masks < 0 ||
      frontend.specaug_cfg.max_freq_width < 0 ||
      frontend.specaug_cfg.max_time_width < 0)
    throw ConfigError("specaug mask counts and widths must be >= 0");
}

namespace {

struct KeyValue {
  std::map<std::string, std::string> kv;
  std::vector<std::string> order;
};

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

KeyValue parse_kv(const std::string& text) {
  KeyValue out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key or value");
    if (out.kv.count(key))
      throw ConfigError("duplicate config key: " + key);
    out.kv[key] = value;
    out.order.push_back(key);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + ": '" + v + "' is not a number");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    long l = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return static_cast<int>(l);
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + ": '" + v + "' is not an integer");
  }
}

uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    unsigned long long l = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return static_cast<uint64_t>(l);
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + ": '" + v +
                      "' is not an unsigned integer");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError("config key " + key + ": '" + v + "' is not true/false");
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  KeyValue kv = parse_kv(text);
  ExperimentConfig c;

  using Setter = std::function<void(const std::string&, const std::string&)>;
  std::map<std::string, Setter> setters;
  auto set_d = [&](const std::string& k, double* dst) {
    setters[k] = [dst](const std::string& key, const std::string& v) {
      *dst = parse_double(key, v);
    };
  };
  auto set_i = [&](const std::string& k, int* dst) {
    setters[k] = [dst](const std::string& key, const std::string& v) {
      *dst = parse_int(key, v);
    };
  };
  auto set_b = [&](const std::string& k, bool* dst) {
    setters[k] = [dst](const std::string& key, const std::string& v) {
      *dst = parse_bool(key, v);
    };
  };

  setters["seed"] = [&c](const std::string& key, const std::string& v) {
    c.seed = parse_u64(key, v);
  };
  set_i("frontend.sample_rate", &c.frontend.mel.sample_rate);
  set_d("frontend.duration_s", &c.frontend.duration_s);
  set_d("frontend.frame_length_s", &c.frontend.mel.frame_length_s);
  set_d("frontend.frame_shift_s", &c.frontend.mel.frame_shift_s);
  set_i("frontend.n_mels", &c.frontend.mel.n_mels);
  set_d("frontend.fmin_hz", &c.frontend.mel.fmin_hz);
  set_d("frontend.fmax_hz", &c.frontend.mel.fmax_hz);
  set_d("frontend.log_floor", &c.frontend.mel.log_floor);
  set_b("frontend.specaug", &c.frontend.specaug);
  set_i("frontend.specaug_freq_masks", &c.frontend.specaug_cfg.n_freq_masks);
  set_i("frontend.specaug_freq_width", &c.frontend.specaug_cfg.max_freq_width);
  set_i("frontend.specaug_time_masks", &c.frontend.specaug_cfg.n_time_masks);
  set_i("frontend.specaug_time_width", &c.frontend.specaug_cfg.max_time_width);
  set_i("encoder.depth", &c.encoder.depth);
  set_i("encoder.dim", &c.encoder.dim);
  set_i("encoder.heads", &c.encoder.heads);
  set_d("encoder.mlp_ratio", &c.encoder.mlp_ratio);
  setters["fusion.mode"] = [&c](const std::string&, const std::string& v) {
    c.fusion.mode = fusion_mode_from_string(v);
  };
  set_i("fusion.k", &c.fusion.k);
  setters["split.mode"] = [&c](const std::string&, const std::string& v) {
    c.split = split_mode_from_string(v);
  };
  set_i("branch.dim", &c.branch.dim);
  set_i("branch.layers", &c.branch.layers);
  set_i("training.batch_size", &c.training.batch_size);
  set_i("training.epochs", &c.training.epochs);
  set_d("training.lr", &c.training.lr);
  setters["training.optimizer"] = [&c](const std::string&,
                                       const std::string& v) {
    c.training.optimizer = v;
  };
  set_d("training.weight_fake", &c.training.class_weights.w_fake);
  set_d("training.weight_real", &c.training.class_weights.w_real);
  set_i("training.max_steps", &c.training.max_steps);
  set_d("training.target_loss", &c.training.target_loss);
  set_i("training.checkpoint_every", &c.training.checkpoint_every);
  set_b("training.augment", &c.training.augment);
  set_d("augmentation.ratio", &c.augmentation.ratio);
  set_i("augmentation.gl_iterations", &c.augmentation.gl_iterations);

  for (const std::string& key : kv.order) {
    auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown config key: " + key);
    it->second(key, kv.kv[key]);
  }

  // SpecAug fills with the log floor so masked cells look like silence.
  c.frontend.specaug_cfg.fill_value = std::log(c.frontend.mel.log_floor);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open config file: " + path);
  std::string text((std::istreambuf_iterator<char>(f)),
                   std::istreambuf_iterator<char>());
  try {
    return parse_config_text(text);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream o;
  o.precision(17);
  o << "seed = " << c.seed << "\n";
  o << "frontend.sample_rate = " << c.frontend.mel.sample_rate << "\n";
  o << "frontend.duration_s = " << c.frontend.duration_s << "\n";
  o << "frontend.frame_length_s = " << c.frontend.mel.frame_length_s << "\n";
  o << "frontend.frame_shift_s = " << c.frontend.mel.frame_shift_s << "\n";
  o << "frontend.n_mels = " << c.frontend.mel.n_mels << "\n";
  o << "frontend.fmin_hz = " << c.frontend.mel.fmin_hz << "\n";
  o << "frontend.fmax_hz = " << c.frontend.mel.fmax_hz << "\n";
  o << "frontend.log_floor = " << c.frontend.mel.log_floor << "\n";
  o << "frontend.specaug = " << (c.frontend.specaug ? "true" : "false") << "\n";
  o << "frontend.specaug_freq_masks = " << c.frontend.specaug_cfg.n_freq_masks
    << "\n";
  o << "frontend.specaug_freq_width = " << c.frontend.specaug_cfg.max_freq_width
    << "\n";
  o << "frontend.specaug_time_masks = " << c.frontend.specaug_cfg.n_time_masks
    << "\n";
  o << "frontend.specaug_time_width = " << c.frontend.specaug_cfg.max_time_width
    << "\n";
  o << "encoder.depth = " << c.encoder.depth << "\n";
  o << "encoder.dim = " << c.encoder.dim << "\n";
  o << "encoder.heads = " << c.encoder.heads << "\n";
  o << "encoder.mlp_ratio = " << c.encoder.mlp_ratio << "\n";
  o << "fusion.mode = " << to_string(c.fusion.mode) << "\n";
  o << "fusion.k = " << c.fusion.k << "\n";
  o << "split.mode = " << to_string(c.split) << "\n";
  o << "branch.dim = " << c.branch.dim << "\n";
  o << "branch.layers = " << c.branch.layers << "\n";
  o << "training.batch_size = " << c.training.batch_size << "\n";
  o << "training.epochs = " << c.training.epochs << "\n";
  o << "training.lr = " << c.training.lr << "\n";
  o << "training.optimizer = " << c.training.optimizer << "\n";
  o << "training.weight_fake = " << c.training.class_weights.w_fake << "\n";
  o << "training.weight_real = " << c.training.class_weights.w_real << "\n";
  o << "training.max_steps = " << c.training.max_steps << "\n";
  o << "training.target_loss = " << c.training.target_loss << "\n";
  o << "training.checkpoint_every = " << c.training.checkpoint_every << "\n";
  o << "training.augment = " << (c.training.augment ? "true" : "false") << "\n";
  o << "augmentation.ratio = " << c.augmentation.ratio << "\n";
  o << "augmentation.gl_iterations = " << c.augmentation.gl_iterations << "\n";
  return o.str();
}

ExperimentConfig desk_preset() { return ExperimentConfig{}; }

ExperimentConfig paper_preset() {
  ExperimentConfig c;
  c.encoder.dim = 768;
  c.encoder.heads = 12;
  c.branch.dim = 64;
  c.training.batch_size = 32;
  c.training.epochs = 20;
  return c;
}

}  // namespace esdd
