#ifndef ECFP_TRACE_HPP
#define ECFP_TRACE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ecfp {

struct TraceRecord {
  std::int64_t t = 0;
  double gamma = 0.0;
  double epsilon = 0.0;
  double ne_gap = 0.0;
  double mce_gap = 0.0;
  double sne_gap = 0.0;
  double lyapunov_w = 0.0;
  double lyapunov_v = 0.0;
};

// error is empty on a clean run; an aborted run keeps the records produced
// so far and carries the failure message here.
struct Trace {
  std::vector<TraceRecord> records;
  std::string error;
};

enum class TraceFormat { csv, json };

inline constexpr const char* kTraceCsvHeader =
    "t,gamma,epsilon,ne_gap,mce_gap,sne_gap,lyapunov_w,lyapunov_v";

// CSV columns follow kTraceCsvHeader with floats at 17 significant digits,
// so emit followed by read restores every record bit for bit. JSON holds the
// same records as an array of objects under "records". A trace error is a
// trailing "# error:" line in CSV and an "error" member in JSON.
void emit_trace(const Trace& trace, const std::string& path,
                TraceFormat format);
Trace read_trace_csv(const std::string& path);

struct GapThresholds {
  double ne = 0.05;
  double mce = 0.05;
  double sne = 0.05;
};

struct ConvergenceReport {
  double final_ne_gap = 0.0;
  double final_mce_gap = 0.0;
  double final_sne_gap = 0.0;
  double min_mce_gap = 0.0;
  double min_sne_gap = 0.0;
  bool ne_converged = false;
  bool mce_converged = false;
  bool sne_converged = false;
  // Iteration of the first record at or below the threshold; -1 if none.
  std::int64_t ne_first_crossing = -1;
  std::int64_t mce_first_crossing = -1;
  std::int64_t sne_first_crossing = -1;
};

ConvergenceReport summarize(const Trace& trace,
                            const GapThresholds& thresholds);

}  // namespace ecfp

#endif  // ECFP_TRACE_HPP
