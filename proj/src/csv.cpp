#include "kicked/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "kicked/error.hpp"

namespace kicked {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
  double x = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), x);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Error(Errc::InvalidParameter, "cannot parse number '" + std::string(text) + "'");
  }
  return x;
}

std::string join_row(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  const int dim = tr.dim();
  os << 't';
  for (int j = 1; j <= dim; ++j) os << ",P" << j;
  for (int j = 1; j <= dim; ++j) os << ",re_a" << j << ",im_a" << j;
  os << '\n';
  std::vector<double> row;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    row.clear();
    row.push_back(tr.times[i]);
    for (int j = 0; j < dim; ++j) row.push_back(tr.populations[i](j));
    for (int j = 0; j < dim; ++j) {
      row.push_back(tr.states[i](j).real());
      row.push_back(tr.states[i](j).imag());
    }
    os << join_row(row) << '\n';
  }
}

Trajectory read_trajectory_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(Errc::InvalidParameter, "trajectory csv: missing header");
  int columns = 1;
  for (char c : line) columns += c == ',';
  if ((columns - 1) % 3 != 0 || columns < 4) throw Error(Errc::InvalidParameter, "trajectory csv: bad header");
  const int dim = (columns - 1) / 3;
  Trajectory tr;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> v;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      v.push_back(parse_double(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (static_cast<int>(v.size()) != columns) throw Error(Errc::InvalidParameter, "trajectory csv: ragged row");
    Eigen::VectorXcd psi(dim);
    Eigen::VectorXd pop(dim);
    for (int j = 0; j < dim; ++j) {
      pop(j) = v[1 + j];
      psi(j) = {v[1 + dim + 2 * j], v[2 + dim + 2 * j]};
    }
    tr.times.push_back(v[0]);
    tr.states.push_back(psi);
    tr.populations.push_back(pop);
  }
  return tr;
}

}  // namespace kicked
