#include "ecfp/trace.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ecfp {
namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void throw_io_error(const std::string& path, const char* verb) {
  const int err = errno;
  std::ostringstream msg;
  msg << "failed to " << verb << " " << path;
  if (err != 0) msg << ": " << std::strerror(err);
  throw std::runtime_error(msg.str());
}

void emit_csv(const Trace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_io_error(path, "open");
  out << kTraceCsvHeader << "\n";
  for (const TraceRecord& r : trace.records) {
    out << r.t << ',' << format_double(r.gamma) << ','
        << format_double(r.epsilon) << ',' << format_double(r.ne_gap) << ','
        << format_double(r.mce_gap) << ',' << format_double(r.sne_gap) << ','
        << format_double(r.lyapunov_w) << ',' << format_double(r.lyapunov_v)
        << "\n";
  }
  if (!trace.error.empty()) out << "# error: " << trace.error << "\n";
  out.flush();
  if (!out) throw_io_error(path, "write");
}

void emit_json(const Trace& trace, const std::string& path) {
  nlohmann::ordered_json doc;
  doc["records"] = nlohmann::ordered_json::array();
  for (const TraceRecord& r : trace.records) {
    nlohmann::ordered_json row;
    row["t"] = r.t;
    row["gamma"] = r.gamma;
    row["epsilon"] = r.epsilon;
    row["ne_gap"] = r.ne_gap;
    row["mce_gap"] = r.mce_gap;
    row["sne_gap"] = r.sne_gap;
    row["lyapunov_w"] = r.lyapunov_w;
    row["lyapunov_v"] = r.lyapunov_v;
    doc["records"].push_back(std::move(row));
  }
  if (!trace.error.empty()) doc["error"] = trace.error;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_io_error(path, "open");
  out << doc.dump(2) << "\n";
  out.flush();
  if (!out) throw_io_error(path, "write");
}

double parse_double_field(const std::string& field, std::size_t line_no) {
  std::size_t pos = 0;
  const double v = std::stod(field, &pos);
  if (pos != field.size()) {
    throw std::invalid_argument("trace line " + std::to_string(line_no) +
                                ": malformed number '" + field + "'");
  }
  return v;
}

}  // namespace

void emit_trace(const Trace& trace, const std::string& path,
                TraceFormat format) {
  errno = 0;
  if (format == TraceFormat::csv) {
    emit_csv(trace, path);
  } else {
    emit_json(trace, path);
  }
}

Trace read_trace_csv(const std::string& path) {
  errno = 0;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_io_error(path, "open");
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument(path + ": missing trace header");
  }
  if (line != kTraceCsvHeader) {
    throw std::invalid_argument(path + ": unexpected trace header '" + line +
                                "'");
  }
  Trace trace;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.rfind("# error: ", 0) == 0) {
      trace.error = line.substr(9);
      continue;
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    if (fields.size() != 8) {
      throw std::invalid_argument("trace line " + std::to_string(line_no) +
                                  ": expected 8 fields, got " +
                                  std::to_string(fields.size()));
    }
    TraceRecord r;
    r.t = std::stoll(fields[0]);
    r.gamma = parse_double_field(fields[1], line_no);
    r.epsilon = parse_double_field(fields[2], line_no);
    r.ne_gap = parse_double_field(fields[3], line_no);
    r.mce_gap = parse_double_field(fields[4], line_no);
    r.sne_gap = parse_double_field(fields[5], line_no);
    r.lyapunov_w = parse_double_field(fields[6], line_no);
    r.lyapunov_v = parse_double_field(fields[7], line_no);
    trace.records.push_back(r);
  }
  return trace;
}

ConvergenceReport summarize(const Trace& trace,
                            const GapThresholds& thresholds) {
  if (trace.records.empty()) {
    throw std::invalid_argument("cannot summarize an empty trace");
  }
  ConvergenceReport report;
  const TraceRecord& last = trace.records.back();
  report.final_ne_gap = last.ne_gap;
  report.final_mce_gap = last.mce_gap;
  report.final_sne_gap = last.sne_gap;
  report.min_mce_gap = trace.records.front().mce_gap;
  report.min_sne_gap = trace.records.front().sne_gap;
  for (const TraceRecord& r : trace.records) {
    if (r.mce_gap < report.min_mce_gap) report.min_mce_gap = r.mce_gap;
    if (r.sne_gap < report.min_sne_gap) report.min_sne_gap = r.sne_gap;
    if (report.ne_first_crossing < 0 && r.ne_gap <= thresholds.ne) {
      report.ne_first_crossing = r.t;
    }
    if (report.mce_first_crossing < 0 && r.mce_gap <= thresholds.mce) {
      report.mce_first_crossing = r.t;
    }
    if (report.sne_first_crossing < 0 && r.sne_gap <= thresholds.sne) {
      report.sne_first_crossing = r.t;
    }
  }
  report.ne_converged = report.ne_first_crossing >= 0;
  report.mce_converged = report.mce_first_crossing >= 0;
  report.sne_converged = report.sne_first_crossing >= 0;
  return report;
}

}  // namespace ecfp
