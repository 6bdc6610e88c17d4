#pragma once

// Parameter sweeps over j = J/kT and the seeded verification run.

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "qcorr/errors.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/models.hpp"
#include "qcorr/oracle.hpp"
#include "qcorr/random.hpp"
#include "qcorr/textio.hpp"

namespace qcorr {

enum class Model { IsoDM, XXZ };

inline const char* to_string(Model m) { return m == Model::IsoDM ? "isodm" : "xxz"; }

/// One fixed secondary-parameter setting: d for isodm, (delta, b) for xxz.
struct SeriesPoint {
  double d = 0.0;
  double delta = 0.0;
  double b = 0.0;
};

struct SweepSpec {
  Model model = Model::IsoDM;
  double j_start = -5.0;
  double j_end = 5.0;
  std::size_t j_steps = 201;
  std::vector<SeriesPoint> series;

  void validate() const {
    if (j_steps < 2) throw InvalidArgument("sweep: j_steps must be at least 2");
    if (!std::isfinite(j_start) || !std::isfinite(j_end)) throw NonFiniteParameter("sweep: j range must be finite");
    if (!(j_start < j_end)) throw InvalidArgument("sweep: j_start must be below j_end");
    if (series.empty()) throw InvalidArgument("sweep: series must not be empty");
    for (const auto& s : series)
      if (!std::isfinite(s.d) || !std::isfinite(s.delta) || !std::isfinite(s.b))
        throw NonFiniteParameter("sweep: series parameters must be finite");
  }

  double j_at(std::size_t k) const {
    return j_start + (j_end - j_start) * static_cast<double>(k) / static_cast<double>(j_steps - 1);
  }
};

inline std::string series_label(Model model, const SeriesPoint& s) {
  if (model == Model::IsoDM) return "d=" + format_number(s.d);
  return "delta=" + format_number(s.delta) + ";b=" + format_number(s.b);
}

/// Parses "0,2" (isodm: d values) or "0:0,-2:5" (xxz: delta:b pairs).
inline std::vector<SeriesPoint> parse_series(Model model, const std::string& text) {
  std::vector<SeriesPoint> out;
  std::stringstream items(text);
  std::string item;
  const auto number = [](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("series: cannot parse '" + s + "'");
    }
    if (used != s.size()) throw InvalidArgument("series: cannot parse '" + s + "'");
    return v;
  };
  while (std::getline(items, item, ',')) {
    if (item.empty()) throw InvalidArgument("series: empty entry");
    SeriesPoint p;
    if (model == Model::IsoDM) {
      p.d = number(item);
    } else {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw InvalidArgument("series: xxz entries are delta:b");
      p.delta = number(item.substr(0, colon));
      p.b = number(item.substr(colon + 1));
    }
    out.push_back(p);
  }
  return out;
}

struct SweepRow {
  double j = 0.0;
  std::size_t series_index = 0;
  ModelReport measures;
};

inline ModelReport model_measures(Model model, double j, const SeriesPoint& s) {
  return model == Model::IsoDM ? measures_isodm({j, s.d}) : measures_xxz({j, s.delta, s.b});
}

/// Rows ordered by j ascending, then series in input order.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepRow> rows;
  rows.reserve(spec.j_steps * spec.series.size());
  for (std::size_t k = 0; k < spec.j_steps; ++k) {
    const double j = spec.j_at(k);
    for (std::size_t s = 0; s < spec.series.size(); ++s)
      rows.push_back({j, s, model_measures(spec.model, j, spec.series[s])});
  }
  return rows;
}

inline constexpr const char* kSweepHeader = "j,series,C,N,Q,D_exact";

inline std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  std::string out = std::string(kSweepHeader) + "\n";
  for (const auto& r : rows) {
    out += format_number(r.j) + "," + series_label(spec.model, spec.series[r.series_index]) + "," +
           format_number(r.measures.concurrence) + "," + format_number(r.measures.min_value) + "," +
           format_number(r.measures.gmod_lower) + "," + format_number(r.measures.gmod_exact) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verification

inline constexpr double kOracleTol = 1e-4;
inline constexpr double kWitnessTol = 1e-8;
inline constexpr double kLowerBoundTol = 1e-12;

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t count = 100;
  std::size_t grid_points = 2000;
};

struct VerifyResult {
  std::size_t states_checked = 0;
  double max_min_dev = 0.0;          // |min_closed - min_oracle|, all states
  double max_min_dev_x_zero = 0.0;   // same, restricted to marginal-free states
  double max_gmod_dev = 0.0;         // |2 gmod_exact - gmod_oracle|
  double max_lower_excess = 0.0;     // max(gmod_lower - gmod_exact)
  std::size_t witness_disagreements = 0;
  std::size_t order_violations = 0;  // min_oracle < gmod_oracle on x = 0 states
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Draws `count` random states; index i also checks the marginal-free variant
/// of state i so that the grid-search branch of the MIN oracle is exercised.
inline VerifyResult run_verify(const VerifyOptions& opt) {
  if (opt.count == 0) throw InvalidArgument("verify: count must be positive");
  StateSampler sampler(opt.seed);
  const SphereGrid grid = SphereGrid::fibonacci(opt.grid_points);
  VerifyResult res;

  const auto check = [&](const TwoQubitState& state, std::size_t index, const char* kind) {
    ++res.states_checked;
    const auto rep = report(state);
    const auto mo = min_oracle(state, grid);
    const auto go = gmod_oracle(state, grid);
    const double min_dev = std::abs(rep.min_value - mo.value);
    const double gmod_dev = std::abs(2.0 * rep.gmod_exact - go.value);
    const bool entangled = rep.concurrence > kWitnessTol;
    const bool ppt = ppt_entangled(state);
    const double excess = rep.gmod_lower - rep.gmod_exact;

    res.max_min_dev = std::max(res.max_min_dev, min_dev);
    if (rep.branch == MinBranch::XZero) res.max_min_dev_x_zero = std::max(res.max_min_dev_x_zero, min_dev);
    res.max_gmod_dev = std::max(res.max_gmod_dev, gmod_dev);
    res.max_lower_excess = std::max(res.max_lower_excess, excess);

    const auto fail = [&](const std::string& what) {
      res.failures.push_back("index " + std::to_string(index) + " (" + kind + "): " + what);
    };
    if (min_dev > kOracleTol) fail("MIN oracle deviation " + format_number(min_dev));
    if (gmod_dev > kOracleTol) fail("discord oracle deviation " + format_number(gmod_dev));
    if (entangled != ppt) {
      ++res.witness_disagreements;
      fail("PPT witness disagrees with concurrence " + format_number(rep.concurrence));
    }
    if (excess > kLowerBoundTol) fail("lower bound exceeds exact discord by " + format_number(excess));
    if (rep.branch == MinBranch::XZero && mo.value < go.value - 1e-12) {
      ++res.order_violations;
      fail("MIN below discord oracle");
    }
  };

  for (std::size_t i = 0; i < opt.count; ++i) {
    const auto state = sampler.two_qubit_state();
    check(state, i, "random");
    check(zero_marginal_a(state), i, "x=0");
  }
  return res;
}

inline std::string format_verify(const VerifyOptions& opt, const VerifyResult& r) {
  std::string out;
  out += "seed " + std::to_string(opt.seed) + ", count " + std::to_string(opt.count) + ", grid " +
         std::to_string(opt.grid_points) + ", states checked " + std::to_string(r.states_checked) + "\n";
  out += "max |N_closed - N_oracle|          " + format_number(r.max_min_dev) + "\n";
  out += "max |N_closed - N_oracle| (x = 0)  " + format_number(r.max_min_dev_x_zero) + "\n";
  out += "max |2 D_exact - D_oracle|         " + format_number(r.max_gmod_dev) + "\n";
  out += "max (Q - D_exact)                  " + format_number(r.max_lower_excess) + "\n";
  out += "PPT/concurrence disagreements      " + std::to_string(r.witness_disagreements) + "\n";
  for (const auto& f : r.failures) out += "FAIL " + f + "\n";
  out += r.ok() ? "verify: ok\n" : "verify: FAILED\n";
  return out;
}

} // namespace qcorr
