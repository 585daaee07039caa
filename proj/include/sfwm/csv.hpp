#pragma once

#include "sfwm/estimation.hpp"
#include "sfwm/montecarlo.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace sfwm
{

// Reads a header + numeric-columns CSV into an XYSeries. Two columns give
// (x, y); a third is taken as the y uncertainty. Throws ValidationError
// with the line number for malformed rows and for files with no data rows.
XYSeries read_xy_csv(const std::filesystem::path &path);

void write_xy_csv(const std::filesystem::path &path,
                  const XYSeries &series,
                  const std::string &x_name,
                  const std::string &y_name);

// Generic numeric table, written at 17 significant digits so values
// round-trip exactly.
void write_table_csv(const std::filesystem::path &path,
                     std::span<const std::string> header,
                     std::span<const std::vector<double>> rows);

// Time-tag file format: header "channel,time_ps", channel 0 = signal and
// 1 = idler, times ascending per channel. Written merged in time order.
void write_timetag_csv(const std::filesystem::path &path, const TagStreams &streams);

TagStreams read_timetag_csv(const std::filesystem::path &path);

// Atomic text write (temp file + rename); used by everything above.
void write_text_file(const std::filesystem::path &path, const std::string &contents);

} // namespace sfwm
