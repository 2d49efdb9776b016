// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "esdd/audio.hpp"
#include "esdd/config.hpp"
#include "esdd/eval.hpp"
#include "esdd/model.hpp"
#include "esdd/specaug.hpp"
#include "esdd/synth.hpp"
#include "esdd/vocoder.hpp"

namespace py = pybind11;

namespace {

using esdd::MelConfig;
using esdd::MelSpec;
using esdd::Waveform;

Waveform waveform_from_array(py::array_t<double, py::array::c_style |
                                                      py::array::forcecast> a,
                             int sample_rate) {
  if (a.ndim() != 1) throw std::invalid_argument("samples must be 1-D");
  Waveform w;
  w.sample_rate = sample_rate;
  w.samples.assign(a.data(), a.data() + a.size());
  return w;
}

py::array_t<double> array_from_matrix(const Eigen::MatrixXd& m) {
  py::array_t<double> out({static_cast<py::ssize_t>(m.rows()),
                           static_cast<py::ssize_t>(m.cols())});
  auto buf = out.mutable_unchecked<2>();
  for (py::ssize_t r = 0; r < m.rows(); ++r)
    for (py::ssize_t c = 0; c < m.cols(); ++c) buf(r, c) = m(r, c);
  return out;
}

Eigen::MatrixXd matrix_from_array(
    py::array_t<double, py::array::c_style | py::array::forcecast> a) {
  if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
  Eigen::MatrixXd m(a.shape(0), a.shape(1));
  auto buf = a.unchecked<2>();
  for (py::ssize_t r = 0; r < a.shape(0); ++r)
    for (py::ssize_t c = 0; c < a.shape(1); ++c) m(r, c) = buf(r, c);
  return m;
}

MelConfig mel_config(int sample_rate, double frame_length_s,
                     double frame_shift_s, int n_mels, double fmin_hz,
                     double fmax_hz, double log_floor) {
  MelConfig cfg;
  cfg.sample_rate = sample_rate;
  cfg.frame_length_s = frame_length_s;
  cfg.frame_shift_s = frame_shift_s;
  cfg.n_mels = n_mels;
  cfg.fmin_hz = fmin_hz;
  cfg.fmax_hz = fmax_hz;
  cfg.log_floor = log_floor;
  return cfg;
}

class PyModel {
 public:
  explicit PyModel(const std::string& config_path)
      : cfg_(esdd::load_config(config_path)), model_(cfg_) {}

  void load(const std::string& ckpt) { model_.load(ckpt); }
  void save(const std::string& ckpt) { model_.save(ckpt); }

  MelSpec prepare(py::array_t<double, py::array::c_style |
                                          py::array::forcecast> samples) const {
    Waveform w =
        waveform_from_array(samples, cfg_.frontend.mel.sample_rate);
    return esdd::mel_spectrogram(
        esdd::fix_duration(w, cfg_.frontend.duration_s), cfg_.frontend.mel);
  }

  std::pair<double, double> logits(
      py::array_t<double, py::array::c_style | py::array::forcecast> samples)
      const {
    auto l = model_.logits(prepare(samples));
    return {l[0], l[1]};
  }

  double score(py::array_t<double, py::array::c_style | py::array::forcecast>
                   samples) const {
    return model_.score(prepare(samples));
  }

  std::string config_text() const { return esdd::serialize_config(cfg_); }

 private:
  esdd::ExperimentConfig cfg_;
  esdd::Model model_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "environmental-sound deepfake detection toolkit";

  m.def(
      "fix_duration",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> a,
         int sample_rate, double seconds) {
        Waveform w = esdd::fix_duration(waveform_from_array(a, sample_rate),
                                        seconds);
        return py::array_t<double>(w.samples.size(), w.samples.data());
      },
      py::arg("samples"), py::arg("sample_rate"), py::arg("seconds"),
      "Trim or cyclically repeat to an exact duration.");

  m.def(
      "mel_spectrogram",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> a,
         int sample_rate, double frame_length_s, double frame_shift_s,
         int n_mels, double fmin_hz, double fmax_hz, double log_floor) {
        MelConfig cfg = mel_config(sample_rate, frame_length_s, frame_shift_s,
                                   n_mels, fmin_hz, fmax_hz, log_floor);
        MelSpec mel =
            esdd::mel_spectrogram(waveform_from_array(a, sample_rate), cfg);
        return array_from_matrix(mel.values);
      },
      py::arg("samples"), py::arg("sample_rate") = 16000,
      py::arg("frame_length_s") = 0.025, py::arg("frame_shift_s") = 0.010,
      py::arg("n_mels") = 128, py::arg("fmin_hz") = 0.0,
      py::arg("fmax_hz") = 8000.0, py::arg("log_floor") = 1e-10,
      "Log-mel spectrogram (frames x n_mels).");

  m.def(
      "spec_augment",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> mel,
         int n_freq_masks, int max_freq_width, int n_time_masks,
         int max_time_width, double fill_value, uint64_t seed) {
        MelSpec spec;
        spec.values = matrix_from_array(mel);
        esdd::SpecAugConfig cfg;
        cfg.n_freq_masks = n_freq_masks;
        cfg.max_freq_width = max_freq_width;
        cfg.n_time_masks = n_time_masks;
        cfg.max_time_width = max_time_width;
        cfg.fill_value = fill_value;
        esdd::RngStream rng(seed);
        return array_from_matrix(esdd::spec_augment(spec, cfg, rng).values);
      },
      py::arg("mel"), py::arg("n_freq_masks") = 2,
      py::arg("max_freq_width") = 16, py::arg("n_time_masks") = 2,
      py::arg("max_time_width") = 40, py::arg("fill_value") = std::log(1e-10),
      py::arg("seed") = 0, "Random time/frequency masking.");

  m.def(
      "griffin_lim",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> mel,
         int sample_rate, double frame_length_s, double frame_shift_s,
         double fmin_hz, double fmax_hz, double log_floor, int iterations) {
        MelSpec spec;
        spec.values = matrix_from_array(mel);
        spec.config = mel_config(sample_rate, frame_length_s, frame_shift_s,
                                 static_cast<int>(spec.values.cols()), fmin_hz,
                                 fmax_hz, log_floor);
        esdd::GriffinLimConfig cfg;
        cfg.iterations = iterations;
        Waveform w = esdd::griffin_lim(spec, cfg);
        return py::array_t<double>(w.samples.size(), w.samples.data());
      },
      py::arg("mel"), py::arg("sample_rate") = 16000,
      py::arg("frame_length_s") = 0.025, py::arg("frame_shift_s") = 0.010,
      py::arg("fmin_hz") = 0.0, py::arg("fmax_hz") = 8000.0,
      py::arg("log_floor") = 1e-10, py::arg("iterations") = 32,
      "Mel-to-waveform reconstruction via filterbank pseudo-inverse and "
      "Griffin-Lim phase recovery.");

  m.def(
      "compute_eer",
      [](const std::vector<double>& scores, const std::vector<int>& labels) {
        if (scores.size() != labels.size())
          throw std::invalid_argument("scores and labels differ in length");
        std::vector<esdd::TrialScore> trials(scores.size());
        for (size_t i = 0; i < scores.size(); ++i) {
          trials[i].utt_id = "t" + std::to_string(i);
          trials[i].score = scores[i];
          trials[i].label = labels[i] ? esdd::TrialLabel::kBonafide
                                      : esdd::TrialLabel::kSpoof;
        }
        esdd::EerResult r = esdd::compute_eer(trials);
        return std::make_pair(r.eer, r.threshold);
      },
      py::arg("scores"), py::arg("labels"),
      "Equal error rate; labels: 1 = bonafide, 0 = spoof. Returns "
      "(eer, threshold).");

  m.def(
      "ensemble",
      [](const std::vector<std::vector<double>>& systems,
         const std::vector<double>& weights) {
        if (systems.empty())
          throw std::invalid_argument("need at least one system");
        std::vector<std::vector<esdd::TrialScore>> sys(systems.size());
        for (size_t j = 0; j < systems.size(); ++j) {
          if (systems[j].size() != systems[0].size())
            throw std::invalid_argument("systems differ in length");
          sys[j].resize(systems[j].size());
          for (size_t i = 0; i < systems[j].size(); ++i) {
            sys[j][i].utt_id = "t" + std::to_string(i);
            sys[j][i].score = systems[j][i];
          }
        }
        auto combined = esdd::ensemble_scores(sys, weights);
        std::vector<double> out(combined.size());
        for (size_t i = 0; i < combined.size(); ++i) out[i] = combined[i].score;
        return out;
      },
      py::arg("systems"), py::arg("weights"),
      "Weighted sum of aligned score lists.");

  py::class_<PyModel>(m, "Model")
      .def(py::init<const std::string&>(), py::arg("config_path"))
      .def("load", &PyModel::load, py::arg("checkpoint_path"))
      .def("save", &PyModel::save, py::arg("checkpoint_path"))
      .def("logits", &PyModel::logits, py::arg("samples"),
           "(fake, real) logits for a waveform at the configured rate.")
      .def("score", &PyModel::score, py::arg("samples"),
           "Detection score (real minus fake logit).")
      .def("config_text", &PyModel::config_text);

  py::register_exception<esdd::ConfigError>(m, "ConfigError",
                                            PyExc_ValueError);
  py::register_exception<esdd::DataError>(m, "DataError", PyExc_RuntimeError);
}
