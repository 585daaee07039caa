#include "sfwm/csv.hpp"

#include "sfwm/errors.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace sfwm
{

namespace
{

std::string format_double(double value)
{
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::vector<std::string> split_fields(const std::string &line)
{
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ','))
    {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',')
    {
        fields.emplace_back();
    }
    return fields;
}

double parse_double(const std::string &text, const std::filesystem::path &path, std::size_t line)
{
    errno = 0;
    char *end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || (end != nullptr && *end != '\0') || errno == ERANGE)
    {
        throw ValidationError(path.string() + ":" + std::to_string(line) +
                              ": expected a numeric value, got '" + text + "'");
    }
    return value;
}

std::string strip_cr(std::string line)
{
    if (!line.empty() && line.back() == '\r')
    {
        line.pop_back();
    }
    return line;
}

} // namespace

void write_text_file(const std::filesystem::path &path, const std::string &contents)
{
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc | std::ios::binary);
        if (!out)
        {
            throw IoError("cannot open for writing: " + tmp.string());
        }
        out << contents;
        if (!out)
        {
            throw IoError("write failed: " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
    {
        throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                      ec.message());
    }
}

XYSeries read_xy_csv(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ValidationError("cannot open input file: " + path.string());
    }
    std::string line;
    if (!std::getline(in, line))
    {
        throw ValidationError(path.string() + ": empty file, expected a header row");
    }

    XYSeries series;
    std::size_t line_number = 1;
    while (std::getline(in, line))
    {
        ++line_number;
        line = strip_cr(line);
        if (line.empty())
        {
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() < 2 || fields.size() > 3)
        {
            throw ValidationError(path.string() + ":" + std::to_string(line_number) +
                                  ": expected 2 or 3 columns, got " +
                                  std::to_string(fields.size()));
        }
        const double x = parse_double(fields[0], path, line_number);
        const double y = parse_double(fields[1], path, line_number);
        if (fields.size() == 3)
        {
            series.add(x, y, parse_double(fields[2], path, line_number));
        }
        else
        {
            series.add(x, y);
        }
    }
    if (series.empty())
    {
        throw ValidationError(path.string() + ": no data rows");
    }
    return series;
}

void write_xy_csv(const std::filesystem::path &path,
                  const XYSeries &series,
                  const std::string &x_name,
                  const std::string &y_name)
{
    std::string out = x_name + "," + y_name;
    const bool with_uncertainty =
        std::any_of(series.points.begin(), series.points.end(),
                    [](const XYPoint &p) { return p.y_uncertainty.has_value(); });
    if (with_uncertainty)
    {
        out += "," + y_name + "_uncertainty";
    }
    out += "\n";
    for (const XYPoint &p : series.points)
    {
        out += format_double(p.x) + "," + format_double(p.y);
        if (with_uncertainty)
        {
            out += "," + format_double(p.y_uncertainty.value_or(0.0));
        }
        out += "\n";
    }
    write_text_file(path, out);
}

void write_table_csv(const std::filesystem::path &path,
                     std::span<const std::string> header,
                     std::span<const std::vector<double>> rows)
{
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i)
    {
        out += header[i];
        out += (i + 1 < header.size()) ? "," : "";
    }
    out += "\n";
    for (const auto &row : rows)
    {
        if (row.size() != header.size())
        {
            throw ValidationError("write_table_csv: row width does not match header");
        }
        for (std::size_t i = 0; i < row.size(); ++i)
        {
            out += format_double(row[i]);
            out += (i + 1 < row.size()) ? "," : "";
        }
        out += "\n";
    }
    write_text_file(path, out);
}

void write_timetag_csv(const std::filesystem::path &path, const TagStreams &streams)
{
    std::string out = "channel,time_ps\n";
    out.reserve(out.size() + 16 * (streams.signal_ps.size() + streams.idler_ps.size()));
    // Written merged by time, which keeps each channel individually ascending.
    for (const TimeTag &tag : merge_tags(streams))
    {
        out += tag.channel == Channel::signal ? "0," : "1,";
        out += std::to_string(tag.time_ps) + "\n";
    }
    write_text_file(path, out);
}

TagStreams read_timetag_csv(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ValidationError("cannot open input file: " + path.string());
    }
    std::string line;
    if (!std::getline(in, line))
    {
        throw ValidationError(path.string() + ": empty file, expected a header row");
    }

    TagStreams streams;
    std::size_t line_number = 1;
    while (std::getline(in, line))
    {
        ++line_number;
        line = strip_cr(line);
        if (line.empty())
        {
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != 2)
        {
            throw ValidationError(path.string() + ":" + std::to_string(line_number) +
                                  ": expected 2 columns (channel,time_ps)");
        }
        errno = 0;
        char *end = nullptr;
        const unsigned long long channel = std::strtoull(fields[0].c_str(), &end, 10);
        if (end == fields[0].c_str() || *end != '\0' || channel > 1)
        {
            throw ValidationError(path.string() + ":" + std::to_string(line_number) +
                                  ": channel must be 0 (signal) or 1 (idler)");
        }
        end = nullptr;
        const unsigned long long time_ps = std::strtoull(fields[1].c_str(), &end, 10);
        if (end == fields[1].c_str() || *end != '\0' || errno == ERANGE)
        {
            throw ValidationError(path.string() + ":" + std::to_string(line_number) +
                                  ": expected an integer picosecond timestamp");
        }
        auto &stream = channel == 0 ? streams.signal_ps : streams.idler_ps;
        if (!stream.empty() && time_ps < stream.back())
        {
            throw ValidationError(path.string() + ":" + std::to_string(line_number) +
                                  ": timestamps must be ascending within each channel");
        }
        stream.push_back(time_ps);
    }
    return streams;
}

} // namespace sfwm
