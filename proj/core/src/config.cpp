#include "polartomo/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "polartomo/error.hpp"

namespace polartomo {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& message) { throw StageError("config", message); }

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  if (!obj.is_object()) fail(where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) fail("unknown key '" + key + "' in " + where);
  }
}

MixtureComponent parse_component(const json& c, std::size_t index) {
  const std::string where = "mixture[" + std::to_string(index) + "]";
  if (!c.is_object()) fail(where + " must be an object");
  const std::string kind = c.at("kind").get<std::string>();
  MixtureComponent comp;
  comp.probability = c.at("p").get<double>();
  if (kind == "phase_poly") {
    reject_unknown_keys(c, {"p", "kind", "terms"}, where);
    PhasePolyMode mode;
    for (const auto& t : c.at("terms")) {
      if (!t.is_array() || t.size() != 2) fail(where + ": terms must be [power, coefficient]");
      mode.terms.push_back({t[0].get<int>(), t[1].get<double>()});
    }
    comp.mode = std::move(mode);
  } else if (kind == "hermite_gauss") {
    reject_unknown_keys(c, {"p", "kind", "order", "waist_ratio"}, where);
    comp.mode = HermiteGaussMode{c.at("order").get<int>(), c.value("waist_ratio", 0.15)};
  } else if (kind == "raw") {
    reject_unknown_keys(c, {"p", "kind", "amplitudes"}, where);
    RawMode mode;
    for (const auto& a : c.at("amplitudes")) {
      if (!a.is_array() || a.size() != 2) fail(where + ": amplitudes must be [re, im]");
      mode.amplitudes.emplace_back(a[0].get<double>(), a[1].get<double>());
    }
    comp.mode = std::move(mode);
  } else {
    fail(where + ": unknown mode kind '" + kind + "'");
  }
  return comp;
}

}  // namespace

void PipelineConfig::validate() const {
  try {
    mixture.validate();
    noise.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  if (noise.kind != NoiseKind::none && !seed) {
    fail("a seed is required when noise is enabled");
  }
  if (!(filter_sigma_px >= 0.0)) fail("filter_sigma_px must be non-negative");
  if (k_max > grid.n_cells()) fail("k_max exceeds n_cells");
}

std::size_t PipelineConfig::effective_k_max() const {
  return k_max == 0 ? std::min(mixture.components.size(), grid.n_cells()) : k_max;
}

PipelineConfig parse_config(const std::string& json_text) {
  PipelineConfig cfg;
  try {
    const json j = json::parse(json_text);
    reject_unknown_keys(j,
                        {"grid", "mixture", "noise", "filter_sigma_px", "renormalize",
                         "outputs", "mosaic", "emit_csv", "k_max"},
                        "config");

    const auto& g = j.at("grid");
    reject_unknown_keys(g, {"n_cells", "extent_mm"}, "grid");
    cfg.grid = GridSpec(g.at("n_cells").get<std::size_t>(), g.at("extent_mm").get<double>());

    const auto& m = j.at("mixture");
    if (m.is_string()) {
      const auto name = m.get<std::string>();
      if (name == "phase_only_benchmark") {
        cfg.mixture = phase_only_benchmark_mixture();
      } else if (name == "hermite_gauss_benchmark") {
        cfg.mixture = hermite_gauss_benchmark_mixture();
      } else {
        fail("unknown mixture preset '" + name + "'");
      }
    } else if (m.is_array()) {
      for (std::size_t k = 0; k < m.size(); ++k) {
        cfg.mixture.components.push_back(parse_component(m[k], k));
      }
    } else {
      fail("mixture must be an array or a preset name");
    }

    if (j.contains("noise")) {
      const auto& n = j.at("noise");
      reject_unknown_keys(n, {"kind", "photon_budget", "readout_sigma", "seed"}, "noise");
      cfg.noise.kind = parse_noise_kind(n.value("kind", std::string("none")));
      cfg.noise.photon_budget = n.value("photon_budget", 0.0);
      cfg.noise.readout_sigma = n.value("readout_sigma", 0.0);
      if (n.contains("seed")) cfg.seed = n.at("seed").get<std::uint64_t>();
    }
    cfg.filter_sigma_px = j.value("filter_sigma_px", 0.0);
    cfg.renormalize = j.value("renormalize", true);
    cfg.outputs = j.value("outputs", std::string{});
    cfg.mosaic = j.value("mosaic", false);
    cfg.emit_csv = j.value("emit_csv", false);
    cfg.k_max = j.value("k_max", std::size_t{0});
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    fail(e.what());
  }
  if (cfg.seed) cfg.noise.seed = *cfg.seed;
  cfg.validate();
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void apply_overrides(PipelineConfig& config, const ConfigOverrides& o) {
  if (o.seed) config.seed = o.seed;
  if (o.out) config.outputs = *o.out;
  if (o.no_renormalize) config.renormalize = false;
  if (o.filter_sigma_px) config.filter_sigma_px = *o.filter_sigma_px;
  if (o.budget) {
    config.noise.photon_budget = *o.budget;
    if (config.noise.kind == NoiseKind::none) config.noise.kind = NoiseKind::poisson;
  }
  if (o.emit_csv) config.emit_csv = true;
  if (o.mosaic) config.mosaic = true;
  if (config.seed) config.noise.seed = *config.seed;
  config.validate();
}

}  // namespace polartomo
