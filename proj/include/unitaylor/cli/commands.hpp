#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace unitaylor::cli {

// Exit codes: 0 success/pass, 1 configuration error, 2 mathematical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitFail = 2;

int cmd_construct(const std::string& scene_path, const std::string& schedule_path, const std::string& out_path,
                  std::ostream& out, std::ostream& err);

// The JSON report goes to report_path (default: <cert_path>.report.json), text to `out`.
int cmd_verify(const std::string& cert_path, const std::string& scene_path, const std::string& schedule_path,
               double resolution, const std::optional<std::string>& report_path, std::ostream& out,
               std::ostream& err);

int cmd_check(const std::string& scene_path, std::ostream& out, std::ostream& err);

struct ScanOptions {
  std::string zeta;  // default: the scene center stored in f
  std::string z;
  std::string grid = "-4,4,-4,4,1";  // x0,x1,y0,y1,cell
  std::optional<std::int64_t> horizon;
  std::optional<std::string> csv_path;
};

int cmd_scan(const std::string& cert_path, const ScanOptions& opt, std::ostream& out, std::ostream& err);

int cmd_exhaustion(const std::string& scene_path, int n, std::size_t factor,
                   const std::optional<std::string>& csv_path, std::ostream& out, std::ostream& err);

}  // namespace unitaylor::cli
