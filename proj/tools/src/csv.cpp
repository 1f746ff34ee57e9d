#include "csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <variant>

namespace mbsim {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (res.ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, res.ptr);
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << fields[i];
  }
  out << '\n';
}

std::vector<std::string> trajectory_header(const mbslie::TrajectorySample& sample) {
  std::vector<std::string> h{"t"};
  for (std::size_t i = 0; i < sample.q.size(); ++i) {
    const std::string b = "b" + std::to_string(i + 1) + "_";
    if (std::holds_alternative<mbslie::QuatPos>(sample.q[i])) {
      for (const char* n : {"p0", "p1", "p2", "p3"}) h.push_back(b + n);
    } else {
      for (const char* n : {"rho1", "rho2", "rho3"}) h.push_back(b + n);
    }
    for (const char* n : {"r1", "r2", "r3"}) h.push_back(b + n);
  }
  for (std::size_t i = 0; i < sample.q.size(); ++i) {
    const std::string b = "b" + std::to_string(i + 1) + "_";
    for (const char* n : {"w1", "w2", "w3", "v1", "v2", "v3"}) h.push_back(b + n);
  }
  for (const char* n : {"energy", "gnorm", "gvnorm", "qnorm_err"}) h.emplace_back(n);
  return h;
}

void write_trajectory_csv(std::ostream& out, const mbslie::TrajectoryRecord& rec) {
  if (rec.samples.empty()) return;
  write_row(out, trajectory_header(rec.samples.front()));
  std::vector<std::string> row;
  for (const auto& s : rec.samples) {
    row.clear();
    row.push_back(format_double(s.t));
    for (const auto& q : s.q) {
      if (const auto* qp = std::get_if<mbslie::QuatPos>(&q)) {
        row.push_back(format_double(qp->Q.p0));
        for (int k = 0; k < 3; ++k) row.push_back(format_double(qp->Q.p[k]));
        for (int k = 0; k < 3; ++k) row.push_back(format_double(qp->r[k]));
      } else {
        const auto& ap = std::get<mbslie::AxisAnglePos>(q);
        for (int k = 0; k < 3; ++k) row.push_back(format_double(ap.rho[k]));
        for (int k = 0; k < 3; ++k) row.push_back(format_double(ap.r[k]));
      }
    }
    for (Eigen::Index k = 0; k < s.V.size(); ++k) row.push_back(format_double(s.V[k]));
    row.push_back(format_double(s.energy));
    row.push_back(format_double(s.gnorm));
    row.push_back(format_double(s.gvnorm));
    double qerr = 0.0;
    for (double e : s.qnorm_err) qerr = std::max(qerr, e);
    row.push_back(format_double(qerr));
    write_row(out, row);
  }
}

}  // namespace mbsim
