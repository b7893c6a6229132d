#pragma once

#include "volkov/lifetime.hpp"
#include "volkov/output.hpp"
#include "volkov/scenario.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace volkov {

OutputMeta meta_for(const Resolved& r);

// Each command writes its datasets under `out_dir` and returns a short summary.
nlohmann::json run_design(const std::vector<Resolved>& scenarios, const std::string& out_dir);
nlohmann::json run_density(const Resolved& r, const std::string& out_dir, bool slice_norms = false);
nlohmann::json run_trajectories(const Resolved& r, const std::string& out_dir);
nlohmann::json run_lifetime(const Resolved& r, const std::string& out_dir);

nlohmann::json run_figure1(const Resolved& r, const std::string& out_dir);
nlohmann::json run_figure2(const Resolved& r, const std::string& out_dir);
nlohmann::json run_figure3(const Resolved& r, const std::string& out_dir);
nlohmann::json run_figure4(const std::vector<Resolved>& panels, const std::string& out_dir);

// Fast internal consistency checks; returns (name, passed) pairs.
std::vector<std::pair<std::string, bool>> selftest();

// Search window for the edge intersections: four predicted half-lifetimes on each side.
std::pair<double, double> lifetime_search_range(const Resolved& r);
LifetimeReport lifetime_report(const Resolved& r);

struct TrackedPeak {
    double x_minus = 0, x3 = 0, value = 0, contrast = 0, xf3_tilde = 0;
    bool flat = false;
};

std::vector<TrackedPeak> track_peaks(const Resolved& r, const DensityField& field);

} // namespace volkov
