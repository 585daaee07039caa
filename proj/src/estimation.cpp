#include "sfwm/estimation.hpp"

#include "sfwm/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace sfwm
{

namespace
{

struct Sample
{
    double x = 0.0;
    double y = 0.0;
    double weight = 1.0; // 1 / sigma^2
};

std::vector<Sample> prepare_samples(const XYSeries &series, std::size_t min_points,
                                    const char *who)
{
    if (series.size() < min_points)
    {
        throw ValidationError(std::string(who) + ": needs at least " +
                              std::to_string(min_points) + " points");
    }
    std::vector<Sample> samples;
    samples.reserve(series.size());
    for (const XYPoint &p : series.points)
    {
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
        {
            throw ValidationError(std::string(who) + ": non-finite data point");
        }
        Sample s;
        s.x = p.x;
        s.y = p.y;
        if (p.y_uncertainty)
        {
            if (!(*p.y_uncertainty > 0.0))
            {
                throw ValidationError(std::string(who) + ": uncertainties must be > 0");
            }
            s.weight = 1.0 / (*p.y_uncertainty * *p.y_uncertainty);
        }
        samples.push_back(s);
    }
    std::sort(samples.begin(), samples.end(),
              [](const Sample &a, const Sample &b) { return a.x < b.x; });
    return samples;
}

// Gaussian elimination with partial pivoting for the small normal systems.
template <std::size_t N>
std::array<double, N> solve_linear(std::array<std::array<double, N>, N> a,
                                   std::array<double, N> b)
{
    for (std::size_t col = 0; col < N; ++col)
    {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < N; ++row)
        {
            if (std::abs(a[row][col]) > std::abs(a[pivot][col]))
            {
                pivot = row;
            }
        }
        if (a[pivot][col] == 0.0)
        {
            throw FitError("normal equations are singular");
        }
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t row = col + 1; row < N; ++row)
        {
            const double factor = a[row][col] / a[col][col];
            for (std::size_t k = col; k < N; ++k)
            {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    std::array<double, N> x{};
    for (std::size_t i = N; i-- > 0;)
    {
        double sum = b[i];
        for (std::size_t k = i + 1; k < N; ++k)
        {
            sum -= a[i][k] * x[k];
        }
        x[i] = sum / a[i][i];
    }
    return x;
}

template <std::size_t N>
std::array<std::array<double, N>, N> invert(std::array<std::array<double, N>, N> a)
{
    std::array<std::array<double, N>, N> inv{};
    for (std::size_t col = 0; col < N; ++col)
    {
        std::array<double, N> e{};
        e[col] = 1.0;
        const auto column = solve_linear<N>(a, e);
        for (std::size_t row = 0; row < N; ++row)
        {
            inv[row][col] = column[row];
        }
    }
    return inv;
}

struct LorentzianModel
{
    // p = (nu0, q_loaded, t_min, baseline)
    static double eval(const std::array<double, 4> &p, double x)
    {
        const double u = 2.0 * (x - p[0]) * p[1] / p[0];
        return p[3] * (1.0 - (1.0 - p[2]) / (1.0 + u * u));
    }

    static std::array<double, 4> gradient(const std::array<double, 4> &p, double x)
    {
        const double nu0 = p[0];
        const double q = p[1];
        const double t_min = p[2];
        const double baseline = p[3];
        const double u = 2.0 * (x - nu0) * q / nu0;
        const double denom = 1.0 + u * u;
        const double dip = (1.0 - t_min) / denom;
        const double dm_du = baseline * (1.0 - t_min) * 2.0 * u / (denom * denom);
        std::array<double, 4> g{};
        g[0] = dm_du * (-2.0 * q * x / (nu0 * nu0)); // du/dnu0
        g[1] = dm_du * (2.0 * (x - nu0) / nu0);      // du/dQ
        g[2] = baseline / denom;
        g[3] = 1.0 - dip;
        return g;
    }
};

double objective_value(const std::vector<Sample> &samples, const std::array<double, 4> &p)
{
    double sum = 0.0;
    for (const Sample &s : samples)
    {
        const double r = s.y - LorentzianModel::eval(p, s.x);
        sum += s.weight * r * r;
    }
    return sum;
}

// Robust per-sample noise scale from adjacent differences.
double noise_estimate(const std::vector<Sample> &samples)
{
    std::vector<double> diffs;
    diffs.reserve(samples.size());
    for (std::size_t i = 1; i < samples.size(); ++i)
    {
        diffs.push_back(std::abs(samples[i].y - samples[i - 1].y));
    }
    if (diffs.empty())
    {
        return 0.0;
    }
    std::nth_element(diffs.begin(), diffs.begin() + diffs.size() / 2, diffs.end());
    const double median = diffs[diffs.size() / 2];
    return 1.4826 * median / std::numbers::sqrt2;
}

// Interpolated width of the dip at half depth; falls back to a fraction of
// the scanned span when a crossing is missing.
double half_depth_width(const std::vector<Sample> &samples, std::size_t min_index,
                        double baseline)
{
    const double level = 0.5 * (baseline + samples[min_index].y);
    double left = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = min_index; i-- > 0;)
    {
        if (samples[i].y >= level)
        {
            const double x0 = samples[i].x;
            const double x1 = samples[i + 1].x;
            const double y0 = samples[i].y;
            const double y1 = samples[i + 1].y;
            left = (y0 == y1) ? x0 : x0 + (level - y0) * (x1 - x0) / (y1 - y0);
            break;
        }
    }
    double right = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = min_index + 1; i < samples.size(); ++i)
    {
        if (samples[i].y >= level)
        {
            const double x0 = samples[i - 1].x;
            const double x1 = samples[i].x;
            const double y0 = samples[i - 1].y;
            const double y1 = samples[i].y;
            right = (y0 == y1) ? x1 : x0 + (level - y0) * (x1 - x0) / (y1 - y0);
            break;
        }
    }
    const double span = samples.back().x - samples.front().x;
    if (std::isnan(left) || std::isnan(right) || right <= left)
    {
        return span / 4.0;
    }
    return right - left;
}

} // namespace

double FitReport::value(std::string_view name) const
{
    for (const FitParameter &p : parameters)
    {
        if (p.name == name)
        {
            return p.value;
        }
    }
    throw ValidationError("FitReport: unknown parameter " + std::string(name));
}

double FitReport::uncertainty(std::string_view name) const
{
    for (const FitParameter &p : parameters)
    {
        if (p.name == name)
        {
            return p.uncertainty;
        }
    }
    throw ValidationError("FitReport: unknown parameter " + std::string(name));
}

double LorentzianDipFit::q_intrinsic(CouplingBranch branch) const
{
    return intrinsic_q_from_fit(q_loaded, t_min, branch);
}

LorentzianDipFit fit_lorentzian_dip(const XYSeries &spectrum)
{
    const std::vector<Sample> samples = prepare_samples(spectrum, 5, "fit_lorentzian_dip");
    for (std::size_t i = 1; i < samples.size(); ++i)
    {
        if (samples[i].x <= samples[i - 1].x)
        {
            throw ValidationError("fit_lorentzian_dip: frequencies must be distinct");
        }
    }

    // Initial values: edge-decile baseline, sample minimum, half-depth width.
    const std::size_t n = samples.size();
    const std::size_t edge = std::max<std::size_t>(1, n / 10);
    double baseline0 = 0.0;
    for (std::size_t i = 0; i < edge; ++i)
    {
        baseline0 += samples[i].y + samples[n - 1 - i].y;
    }
    baseline0 /= static_cast<double>(2 * edge);

    std::size_t min_index = 0;
    for (std::size_t i = 1; i < n; ++i)
    {
        if (samples[i].y < samples[min_index].y)
        {
            min_index = i;
        }
    }

    const double depth = baseline0 - samples[min_index].y;
    const double noise = noise_estimate(samples);
    if (!(depth > 3.0 * noise) || !(depth > 0.0))
    {
        throw FitError("fit_lorentzian_dip: no dip distinguishable from the baseline");
    }
    if (!(baseline0 > 0.0))
    {
        throw FitError("fit_lorentzian_dip: baseline is not positive");
    }

    std::array<double, 4> p{};
    p[0] = samples[min_index].x;
    const double width0 = half_depth_width(samples, min_index, baseline0);
    p[1] = std::max(p[0] / std::max(width0, 1e-300), 1.0);
    p[2] = std::clamp(samples[min_index].y / baseline0, 0.0, 0.999);
    p[3] = baseline0;

    FitReport report;
    double objective = objective_value(samples, p);
    report.objective_history.push_back(objective);

    constexpr int kMaxIterations = 200;
    constexpr double kTolerance = 1e-10;
    bool converged = false;
    int iteration = 0;
    for (; iteration < kMaxIterations && !converged; ++iteration)
    {
        std::array<std::array<double, 4>, 4> jtj{};
        std::array<double, 4> jtr{};
        for (const Sample &s : samples)
        {
            const double r = s.y - LorentzianModel::eval(p, s.x);
            const auto g = LorentzianModel::gradient(p, s.x);
            for (std::size_t a = 0; a < 4; ++a)
            {
                jtr[a] += s.weight * g[a] * r;
                for (std::size_t b = a; b < 4; ++b)
                {
                    jtj[a][b] += s.weight * g[a] * g[b];
                }
            }
        }
        for (std::size_t a = 0; a < 4; ++a)
        {
            for (std::size_t b = 0; b < a; ++b)
            {
                jtj[a][b] = jtj[b][a];
            }
        }

        // Column scaling keeps the system well conditioned despite the
        // disparate parameter magnitudes (Hz vs dimensionless).
        std::array<double, 4> scale{};
        for (std::size_t a = 0; a < 4; ++a)
        {
            scale[a] = std::sqrt(std::max(jtj[a][a], 1e-300));
        }
        std::array<std::array<double, 4>, 4> scaled{};
        std::array<double, 4> rhs{};
        for (std::size_t a = 0; a < 4; ++a)
        {
            rhs[a] = jtr[a] / scale[a];
            for (std::size_t b = 0; b < 4; ++b)
            {
                scaled[a][b] = jtj[a][b] / (scale[a] * scale[b]);
            }
        }
        std::array<double, 4> step{};
        try
        {
            step = solve_linear<4>(scaled, rhs);
        }
        catch (const FitError &)
        {
            break;
        }
        for (std::size_t a = 0; a < 4; ++a)
        {
            step[a] /= scale[a];
        }

        // Damping: halve the step until the objective decreases.
        double lambda = 1.0;
        std::array<double, 4> candidate{};
        double candidate_objective = objective;
        bool accepted = false;
        for (int halving = 0; halving < 60; ++halving)
        {
            for (std::size_t a = 0; a < 4; ++a)
            {
                candidate[a] = p[a] + lambda * step[a];
            }
            candidate[2] = std::clamp(candidate[2], 0.0, 1.0);
            if (candidate[0] > 0.0 && candidate[1] > 0.0 && candidate[3] > 0.0)
            {
                candidate_objective = objective_value(samples, candidate);
                if (candidate_objective < objective)
                {
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if (!accepted)
        {
            // Stationary within floating precision.
            converged = objective_value(samples, p) <= objective;
            break;
        }

        double max_change = 0.0;
        for (std::size_t a = 0; a < 4; ++a)
        {
            const double denom = std::max(std::abs(p[a]), 1e-300);
            max_change = std::max(max_change, std::abs(lambda * step[a]) / denom);
        }
        p = candidate;
        objective = candidate_objective;
        report.objective_history.push_back(objective);
        if (max_change < kTolerance)
        {
            converged = true;
        }
    }

    report.converged = converged;
    report.iterations = iteration;
    report.residuals.reserve(n);
    for (const Sample &s : samples)
    {
        report.residuals.push_back(s.y - LorentzianModel::eval(p, s.x));
    }

    const double dof = static_cast<double>(n) - 4.0;
    report.reduced_chi_square = dof > 0.0 ? objective / dof : 0.0;

    std::array<double, 4> sigma{};
    if (dof > 0.0)
    {
        std::array<std::array<double, 4>, 4> jtj{};
        for (const Sample &s : samples)
        {
            const auto g = LorentzianModel::gradient(p, s.x);
            for (std::size_t a = 0; a < 4; ++a)
            {
                for (std::size_t b = a; b < 4; ++b)
                {
                    jtj[a][b] += s.weight * g[a] * g[b];
                }
            }
        }
        for (std::size_t a = 0; a < 4; ++a)
        {
            for (std::size_t b = 0; b < a; ++b)
            {
                jtj[a][b] = jtj[b][a];
            }
        }
        try
        {
            const auto cov = invert<4>(jtj);
            for (std::size_t a = 0; a < 4; ++a)
            {
                sigma[a] = std::sqrt(std::max(cov[a][a], 0.0) * report.reduced_chi_square);
            }
        }
        catch (const FitError &)
        {
            // Singular covariance: leave uncertainties at zero.
        }
    }

    report.parameters = {{"nu0", p[0], sigma[0]},
                         {"q_loaded", p[1], sigma[1]},
                         {"t_min", p[2], sigma[2]},
                         {"baseline", p[3], sigma[3]}};

    LorentzianDipFit fit;
    fit.report = std::move(report);
    fit.resonance_frequency_hz = p[0];
    fit.q_loaded = p[1];
    fit.t_min = p[2];
    fit.baseline = p[3];
    return fit;
}

FitReport fit_linear(const XYSeries &data)
{
    const std::vector<Sample> samples = prepare_samples(data, 2, "fit_linear");

    double sw = 0.0;
    double swx = 0.0;
    double swy = 0.0;
    double swxx = 0.0;
    double swxy = 0.0;
    for (const Sample &s : samples)
    {
        sw += s.weight;
        swx += s.weight * s.x;
        swy += s.weight * s.y;
        swxx += s.weight * s.x * s.x;
        swxy += s.weight * s.x * s.y;
    }
    const double denom = sw * swxx - swx * swx;
    const double x_spread = swxx / sw - (swx / sw) * (swx / sw);
    if (!(denom > 0.0) || !(x_spread > 0.0))
    {
        throw FitError("fit_linear: degenerate abscissa (all x equal)");
    }
    const double slope = (sw * swxy - swx * swy) / denom;
    const double intercept = (swxx * swy - swx * swxy) / denom;

    FitReport report;
    report.converged = true;
    report.iterations = 1;
    double objective = 0.0;
    report.residuals.reserve(samples.size());
    for (const Sample &s : samples)
    {
        const double r = s.y - (slope * s.x + intercept);
        report.residuals.push_back(r);
        objective += s.weight * r * r;
    }
    report.objective_history = {objective};
    const double dof = static_cast<double>(samples.size()) - 2.0;
    report.reduced_chi_square = dof > 0.0 ? objective / dof : 0.0;
    const double scale = dof > 0.0 ? report.reduced_chi_square : 0.0;
    const double slope_sigma = std::sqrt(std::max(sw / denom * scale, 0.0));
    const double intercept_sigma = std::sqrt(std::max(swxx / denom * scale, 0.0));
    report.parameters = {{"slope", slope, slope_sigma}, {"intercept", intercept, intercept_sigma}};
    return report;
}

FitReport fit_power_law(const XYSeries &data)
{
    for (const XYPoint &p : data.points)
    {
        if (!(p.x > 0.0) || !(p.y > 0.0))
        {
            throw DomainError("fit_power_law: all x and y must be > 0");
        }
    }
    XYSeries logged;
    logged.points.reserve(data.size());
    for (const XYPoint &p : data.points)
    {
        XYPoint q;
        q.x = std::log(p.x);
        q.y = std::log(p.y);
        if (p.y_uncertainty)
        {
            q.y_uncertainty = *p.y_uncertainty / p.y;
        }
        logged.points.push_back(q);
    }

    const FitReport log_fit = fit_linear(logged);
    const double exponent = log_fit.value("slope");
    const double amplitude = std::exp(log_fit.value("intercept"));

    FitReport report;
    report.converged = log_fit.converged;
    report.iterations = log_fit.iterations;
    report.reduced_chi_square = log_fit.reduced_chi_square;
    report.objective_history = log_fit.objective_history;

    std::vector<Sample> sorted = prepare_samples(data, 2, "fit_power_law");
    report.residuals.reserve(sorted.size());
    for (const Sample &s : sorted)
    {
        report.residuals.push_back(s.y - amplitude * std::pow(s.x, exponent));
    }
    report.parameters = {
        {"amplitude", amplitude, amplitude * log_fit.uncertainty("intercept")},
        {"exponent", exponent, log_fit.uncertainty("slope")}};
    return report;
}

} // namespace sfwm
