#include "seisdiff/seismic_synth.hpp"

#include "seisdiff/dataio.hpp"
#include "seisdiff/rng.hpp"
#include "json.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <fstream>

namespace seisdiff {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kZeroEps = 1e-8;  // |value| below this counts as zero content

uint64_t hash_event(const EventSpec& e) {
  auto mix = [](uint64_t h, uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  };
  uint64_t h = e.kind == EventSpec::Kind::linear ? 1 : 2;
  h = mix(h, std::bit_cast<uint64_t>(e.t0));
  h = mix(h, std::bit_cast<uint64_t>(e.moveout));
  h = mix(h, std::bit_cast<uint64_t>(e.amplitude));
  h = mix(h, std::bit_cast<uint64_t>(e.wavelet_peak_freq));
  h = mix(h, uint64_t(int64_t(e.polarity)));
  return h;
}

double arrival_time(const EventSpec& e, double x_m) {
  if (e.kind == EventSpec::Kind::linear) return e.t0 + e.moveout * x_m;
  double r = x_m / e.moveout;
  return std::sqrt(e.t0 * e.t0 + r * r);
}

struct FamilyProfile {
  double f_lo, f_hi;        // wavelet peak band, Hz
  int ev_lo, ev_hi;         // events per gather
  double v_lo, v_hi;        // hyperbolic velocities, m/s
  double linear_prob;
  double slope_lo, slope_hi;  // s/m
  double amp_lo, amp_hi;
  double t0_lo, t0_hi;      // fraction of the time window
};

// The two families mimic the paper's train-domain vs unseen-domain split:
// disjoint wavelet bands, different event mixes and densities.
FamilyProfile profile_for(Family f) {
  if (f == Family::in_domain)
    return {24.0, 36.0, 10, 16, 1500.0, 3200.0, 0.25, 1.0e-4, 4.0e-4, 0.4, 1.0, 0.05, 0.80};
  return {52.0, 68.0, 18, 28, 1800.0, 4200.0, 0.60, 2.0e-4, 6.0e-4, 0.3, 1.0, 0.05, 0.85};
}

constexpr int kGatherSamples = 256;
constexpr int kGatherTraces = 128;
constexpr double kGatherDt = 0.004;
constexpr double kGatherDx = 12.5;
constexpr int kPatchesPerGather = 4;
constexpr double kNoiseEnergyFraction = 0.5;
constexpr double kDecimationFraction = 0.5;
constexpr int kMultipleOrder = 2;
constexpr double kMultipleAttenuation = 0.55;

std::vector<EventSpec> draw_events(const FamilyProfile& p, double window_s, Rng& rng) {
  int n = p.ev_lo + int(rng.uniform_index(uint64_t(p.ev_hi - p.ev_lo + 1)));
  std::vector<EventSpec> events;
  events.reserve(size_t(n));
  for (int i = 0; i < n; ++i) {
    EventSpec e;
    bool linear = rng.uniform() < p.linear_prob;
    e.kind = linear ? EventSpec::Kind::linear : EventSpec::Kind::hyperbolic;
    e.t0 = (p.t0_lo + (p.t0_hi - p.t0_lo) * rng.uniform()) * window_s;
    e.moveout = linear ? p.slope_lo + (p.slope_hi - p.slope_lo) * rng.uniform()
                       : p.v_lo + (p.v_hi - p.v_lo) * rng.uniform();
    e.amplitude = p.amp_lo + (p.amp_hi - p.amp_lo) * rng.uniform();
    e.wavelet_peak_freq = p.f_lo + (p.f_hi - p.f_lo) * rng.uniform();
    e.polarity = rng.uniform() < 0.5 ? 1 : -1;
    events.push_back(e);
  }
  return events;
}

}  // namespace

double ricker_value(double t, double peak_freq) {
  double a = kPi * kPi * peak_freq * peak_freq * t * t;
  return (1.0 - 2.0 * a) * std::exp(-a);
}

Vector<float> ricker(double peak_freq, double dt, int half_length) {
  require(peak_freq > 0.0 && dt > 0.0, "ricker: peak_freq and dt must be positive");
  Vector<float> w(2 * half_length + 1);
  for (int k = -half_length; k <= half_length; ++k)
    w[k + half_length] = float(ricker_value(k * dt, peak_freq));
  return w;
}

Gather synth_gather(const std::vector<EventSpec>& events, int n_traces, int n_samples,
                    double dt, double dx, uint64_t seed, double amp_jitter) {
  require(n_traces >= 1 && n_samples >= 1 && dt > 0.0 && dx > 0.0, "synth_gather: bad geometry");
  double window_end = (n_samples - 1) * dt;

  Eigen::ArrayXXd acc = Eigen::ArrayXXd::Zero(n_samples, n_traces);
  for (const auto& e : events) {
    require(e.t0 >= 0.0 && std::isfinite(e.amplitude), "synth_gather: bad event");
    require(e.kind == EventSpec::Kind::linear || e.moveout > 0.0,
            "synth_gather: hyperbolic event needs positive velocity");
    double support = 1.1 / e.wavelet_peak_freq;  // envelope below ~1e-4 outside

    double t_min = window_end + 1.0;
    for (int j = 0; j < n_traces; ++j) t_min = std::min(t_min, arrival_time(e, j * dx));
    if (t_min - support > window_end)
      throw std::invalid_argument("synth_gather: event entirely outside the time window");

    // Jitter keyed by the event's own parameters so disjoint event sets
    // superpose exactly.
    double jit = 1.0;
    if (amp_jitter > 0.0) {
      Rng jrng(seed, 0x6a697474ull /* "jitt" */, hash_event(e));
      jit = 1.0 + amp_jitter * (2.0 * jrng.uniform() - 1.0);
    }
    double amp = e.amplitude * e.polarity * jit;

    for (int j = 0; j < n_traces; ++j) {
      double tj = arrival_time(e, j * dx);
      int k0 = std::max(0, int(std::ceil((tj - support) / dt)));
      int k1 = std::min(n_samples - 1, int(std::floor((tj + support) / dt)));
      for (int k = k0; k <= k1; ++k)
        acc(k, j) += amp * ricker_value(k * dt - tj, e.wavelet_peak_freq);
    }
  }

  Gather g;
  g.data = acc.cast<float>();
  g.dt = dt;
  g.dx = dx;
  g.events = events;
  return g;
}

std::vector<EventSpec> add_multiples(const std::vector<EventSpec>& primaries, int order_max,
                                     double attenuation) {
  require(order_max >= 1, "add_multiples: order_max must be >= 1");
  require(attenuation > 0.0 && attenuation < 1.0, "add_multiples: attenuation must be in (0,1)");
  std::vector<EventSpec> out = primaries;
  for (const auto& p : primaries) {
    double amp = p.amplitude;
    for (int k = 1; k <= order_max; ++k) {
      amp *= attenuation;
      EventSpec m = p;
      m.t0 = (k + 1) * p.t0;
      m.amplitude = amp;
      m.polarity = (k % 2 == 1) ? -p.polarity : p.polarity;  // flip per bounce
      if (p.kind == EventSpec::Kind::hyperbolic)
        m.moveout = p.moveout / std::sqrt(double(k + 1));  // slower moveout
      else
        m.moveout = p.moveout * (k + 1);  // steeper dip
      out.push_back(m);
    }
  }
  return out;
}

Patch add_noise(const Patch& x, double energy_fraction, uint64_t seed, bool cap_mode) {
  require(energy_fraction >= 0.0, "add_noise: negative energy fraction");
  Rng rng(seed, 0x6e6f6973ull /* "nois" */);
  double fraction = energy_fraction;
  if (cap_mode) fraction = rng.uniform() * energy_fraction;
  if (fraction == 0.0) return x;

  double ex = x.cast<double>().square().sum();
  if (ex <= 0.0) {
    if (!cap_mode) throw std::invalid_argument("add_noise: zero-energy input in exact mode");
    return x;
  }
  Patch g = rng.normal_patch(x.rows(), x.cols());
  double eg = g.cast<double>().square().sum();
  float scale = float(std::sqrt(fraction * ex / eg));
  return x + scale * g;
}

DecimatedPatch decimate_traces(const Patch& x, double fraction, uint64_t seed) {
  require(fraction >= 0.0 && fraction <= 1.0, "decimate_traces: fraction outside [0,1]");
  int w = int(x.cols());
  int n_remove = int(std::lround(fraction * w));
  if (fraction < 1.0) n_remove = std::min(n_remove, w - 1);

  std::vector<int> idx(size_t(w));
  for (int i = 0; i < w; ++i) idx[size_t(i)] = i;
  Rng rng(seed, 0x6465636dull /* "decm" */);
  for (int i = 0; i < n_remove; ++i)
    std::swap(idx[size_t(i)], idx[size_t(i) + rng.uniform_index(uint64_t(w - i))]);

  DecimatedPatch out;
  out.masked = x;
  out.mask = Patch::Ones(x.rows(), x.cols());
  for (int i = 0; i < n_remove; ++i) {
    out.masked.col(idx[size_t(i)]).setZero();
    out.mask.col(idx[size_t(i)]).setZero();
  }
  return out;
}

std::vector<ExtractedPatch> extract_patches(const std::vector<Gather>& gathers, int count,
                                            int patch_h, int patch_w, double max_zero_fraction,
                                            uint64_t seed) {
  require(count >= 0, "extract_patches: negative count");
  for (const auto& g : gathers)
    require(g.n_samples() >= patch_h && g.n_traces() >= patch_w,
            "extract_patches: patch does not fit inside gather");

  Rng rng(seed, 0x70617463ull /* "patc" */);
  std::vector<std::vector<std::array<int, 2>>> taken(gathers.size());
  std::vector<ExtractedPatch> out;
  int attempts = 0;
  const int max_attempts = std::max(1000, 300 * count);
  while (int(out.size()) < count && attempts < max_attempts) {
    ++attempts;
    int gi = int(rng.uniform_index(gathers.size()));
    const Gather& g = gathers[size_t(gi)];
    int r = int(rng.uniform_index(uint64_t(g.n_samples() - patch_h + 1)));
    int c = int(rng.uniform_index(uint64_t(g.n_traces() - patch_w + 1)));

    bool overlaps = false;
    for (const auto& rc : taken[size_t(gi)]) {
      if (r < rc[0] + patch_h && rc[0] < r + patch_h && c < rc[1] + patch_w && rc[1] < c + patch_w) {
        overlaps = true;
        break;
      }
    }
    if (overlaps) continue;

    Patch cand = g.data.block(r, c, patch_h, patch_w);
    double zero_frac = double((cand.abs() < kZeroEps).count()) / double(cand.size());
    if (zero_frac > max_zero_fraction) continue;

    ExtractedPatch ep;
    ep.norm = cand.abs().maxCoeff();
    ep.data = cand / ep.norm;
    ep.gather_index = gi;
    ep.row = r;
    ep.col = c;
    taken[size_t(gi)].push_back({r, c});
    out.push_back(std::move(ep));
  }
  return out;
}

Family family_from_name(const std::string& name) {
  if (name == "in") return Family::in_domain;
  if (name == "out") return Family::out_of_domain;
  throw std::invalid_argument("unknown family '" + name + "' (expected 'in' or 'out')");
}

PatchDataset build_dataset(Task task, Family family, int count, uint64_t seed,
                           int patch_h, int patch_w) {
  require(count >= 1, "build_dataset: count must be >= 1");
  FamilyProfile prof = profile_for(family);
  double window_s = (kGatherSamples - 1) * kGatherDt;

  PatchDataset ds;
  ds.task = task;
  ds.family = family;
  ds.seed = seed;
  ds.patch_h = patch_h;
  ds.patch_w = patch_w;

  uint64_t fam_key = family == Family::in_domain ? 1 : 2;
  int gather_index = 0;
  const int max_gathers = 64 + count;  // generation is cheap; cap is generous
  while (int(ds.items.size()) < count && gather_index < max_gathers) {
    Rng grng(seed, fam_key, uint64_t(gather_index));
    std::vector<EventSpec> primaries = draw_events(prof, window_s, grng);

    Gather clean = synth_gather(primaries, kGatherTraces, kGatherSamples, kGatherDt, kGatherDx,
                                seed, 0.0);
    Gather infested;
    if (task == Task::demultiple) {
      auto with_mult = add_multiples(primaries, kMultipleOrder, kMultipleAttenuation);
      infested = synth_gather(with_mult, kGatherTraces, kGatherSamples, kGatherDt, kGatherDx,
                              seed, 0.0);
    }

    auto patches = extract_patches({clean}, kPatchesPerGather, patch_h, patch_w, 0.40,
                                   seed ^ (uint64_t(gather_index) * 0x9e3779b97f4a7c15ull + fam_key));
    for (auto& ep : patches) {
      if (int(ds.items.size()) >= count) break;
      uint64_t item_key = uint64_t(ds.items.size());
      DatasetItem item;
      item.x0 = ep.data;
      item.norm = ep.norm;
      item.gather_index = gather_index;
      item.row = ep.row;
      item.col = ep.col;
      item.cond.task = task;
      switch (task) {
        case Task::denoise:
          item.cond.channels = {add_noise(ep.data, kNoiseEnergyFraction, seed ^ (item_key << 20 | fam_key))};
          break;
        case Task::demultiple: {
          // Same window from the multiple-infested twin, on the clean
          // patch's normalization so the pair shares one amplitude scale.
          Patch inf = infested.data.block(ep.row, ep.col, patch_h, patch_w) / ep.norm;
          item.cond.channels = {std::move(inf)};
          break;
        }
        case Task::interpolate: {
          DecimatedPatch d = decimate_traces(ep.data, kDecimationFraction,
                                             seed ^ (item_key << 20 | fam_key));
          item.cond.channels = {std::move(d.masked), std::move(d.mask)};
          break;
        }
      }
      ds.items.push_back(std::move(item));
    }
    ++gather_index;
  }
  require(int(ds.items.size()) == count, "build_dataset: could not place enough patches");
  return ds;
}

void write_dataset(const std::filesystem::path& dir, const PatchDataset& ds) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "clean");
  auto chans = conditioning_channel_names(ds.task);
  for (const auto& ch : chans) fs::create_directories(dir / ch);

  nlohmann::json manifest;
  manifest["format"] = "seisdiff-dataset-v1";
  manifest["task"] = task_name(ds.task);
  manifest["family"] = family_name(ds.family);
  manifest["seed"] = ds.seed;
  manifest["count"] = ds.items.size();
  manifest["patch_h"] = ds.patch_h;
  manifest["patch_w"] = ds.patch_w;
  manifest["channels"] = chans;

  nlohmann::json items = nlohmann::json::array();
  char id[16];
  for (size_t i = 0; i < ds.items.size(); ++i) {
    const auto& item = ds.items[i];
    std::snprintf(id, sizeof id, "%04zu", i);
    write_patch_file(dir / "clean" / (std::string(id) + ".spd"), item.x0);
    for (size_t c = 0; c < chans.size(); ++c)
      write_patch_file(dir / chans[c] / (std::string(id) + ".spd"), item.cond.channels[c]);
    nlohmann::json ji;
    ji["id"] = id;
    ji["norm"] = item.norm;
    ji["gather"] = item.gather_index;
    ji["row"] = item.row;
    ji["col"] = item.col;
    items.push_back(ji);
  }
  manifest["items"] = items;

  std::ofstream out(dir / "manifest.json", std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + (dir / "manifest.json").string());
  out << manifest.dump(2) << "\n";
}

PatchDataset load_dataset(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw std::runtime_error("cannot open " + (dir / "manifest.json").string());
  nlohmann::json manifest = nlohmann::json::parse(in);
  if (manifest.value("format", "") != "seisdiff-dataset-v1")
    throw std::runtime_error(dir.string() + ": not a seisdiff dataset (bad manifest format tag)");

  PatchDataset ds;
  ds.task = task_from_name(manifest.at("task").get<std::string>());
  ds.family = family_from_name(manifest.at("family").get<std::string>());
  ds.seed = manifest.at("seed").get<uint64_t>();
  ds.patch_h = manifest.at("patch_h").get<int>();
  ds.patch_w = manifest.at("patch_w").get<int>();
  auto chans = conditioning_channel_names(ds.task);

  for (const auto& ji : manifest.at("items")) {
    DatasetItem item;
    std::string id = ji.at("id").get<std::string>();
    item.norm = ji.at("norm").get<float>();
    item.gather_index = ji.at("gather").get<int>();
    item.row = ji.at("row").get<int>();
    item.col = ji.at("col").get<int>();
    item.x0 = read_patch_file(dir / "clean" / (id + ".spd"));
    item.cond.task = ds.task;
    for (const auto& ch : chans)
      item.cond.channels.push_back(read_patch_file(dir / ch / (id + ".spd")));
    ds.items.push_back(std::move(item));
  }
  require(!ds.items.empty(), "load_dataset: empty dataset");
  return ds;
}

}  // namespace seisdiff
