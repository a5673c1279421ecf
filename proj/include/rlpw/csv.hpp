#pragma once

#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <utility>

#include "rlpw/transform.hpp"

namespace rlpw {

// 17 significant digits: enough to round-trip any double exactly.
inline std::string format_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_kernel_csv(std::ostream& os, const std::string& arg_name,
                             std::span<const std::pair<double, double>> rows) {
  os << "# rlpw-kernel v1\n" << arg_name << ",value\n";
  for (const auto& [arg, value] : rows)
    os << format_g17(arg) << ',' << format_g17(value) << '\n';
}

inline void write_coeffs_csv(std::ostream& os, const CoefficientSet& c) {
  os << "# rlpw-coeffs v1\nj,n,m,re,im\n";
  for (const auto& [idx, value] : c.entries)
    os << idx.j << ',' << idx.n << ',' << idx.m << ',' << format_g17(value.real()) << ','
       << format_g17(value.imag()) << '\n';
}

inline void write_bandpass_csv(std::ostream& os,
                               std::span<const std::pair<long, double>> rows) {
  os << "# rlpw-bandpass v1\nn_max,rel_l2_error\n";
  for (const auto& [n_max, err] : rows) os << n_max << ',' << format_g17(err) << '\n';
}

}  // namespace rlpw
