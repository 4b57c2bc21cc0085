#ifndef KICKED_CSV_HPP
#define KICKED_CSV_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "kicked/kick_sim.hpp"

namespace kicked {

// Shortest decimal text that parses back to the same double.
std::string format_double(double x);
double parse_double(std::string_view text);

std::string join_row(const std::vector<double>& values);

// Columns t, P1..Pd, re_a1, im_a1, ..., re_ad, im_ad with a header row.
void write_trajectory_csv(std::ostream& os, const Trajectory& tr);
Trajectory read_trajectory_csv(std::istream& is);

}  // namespace kicked

#endif  // KICKED_CSV_HPP
