#pragma once

#include "sfwm/resonator.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sfwm
{

struct XYPoint
{
    double x = 0.0;
    double y = 0.0;
    std::optional<double> y_uncertainty;
};

struct XYSeries
{
    std::vector<XYPoint> points;

    bool empty() const { return points.empty(); }
    std::size_t size() const { return points.size(); }
    void add(double x, double y) { points.push_back({x, y, std::nullopt}); }
    void add(double x, double y, double y_uncertainty)
    {
        points.push_back({x, y, y_uncertainty});
    }
};

struct FitParameter
{
    std::string name;
    double value = 0.0;
    double uncertainty = 0.0; // 1 sigma
};

struct FitReport
{
    std::vector<FitParameter> parameters;
    double reduced_chi_square = 0.0;
    std::vector<double> residuals; // y_i - model(x_i), data order after sorting by x
    bool converged = false;
    int iterations = 0;
    std::vector<double> objective_history; // objective after each accepted step

    double value(std::string_view name) const;
    double uncertainty(std::string_view name) const;
};

struct LorentzianDipFit
{
    FitReport report;
    double resonance_frequency_hz = 0.0;
    double q_loaded = 0.0;
    double t_min = 0.0;
    double baseline = 0.0;

    double linewidth_fwhm_hz() const { return resonance_frequency_hz / q_loaded; }
    double q_intrinsic(CouplingBranch branch = CouplingBranch::critical) const;
};

// Fits baseline * [1 - (1 - T_min) / (1 + (2 (nu - nu0) Q_l / nu0)^2)] by
// damped Gauss-Newton. Initial values come from the sample minimum, the
// edge-level baseline and the interpolated half-depth width; steps are
// halved until the objective decreases. Converged when the largest
// relative parameter change drops below 1e-10, at most 200 iterations.
// Throws FitError when the spectrum has no dip distinguishable from the
// baseline noise.
LorentzianDipFit fit_lorentzian_dip(const XYSeries &spectrum);

// Closed-form weighted least squares; parameters "slope", "intercept".
FitReport fit_linear(const XYSeries &data);

// log-log linear regression; parameters "amplitude", "exponent".
// All x and y must be strictly positive.
FitReport fit_power_law(const XYSeries &data);

} // namespace sfwm
