#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace basecat {

enum class Status { Pass, Fail, Skip };

std::string_view to_string(Status s) noexcept;

struct ClaimEntry {
  std::string claim;
  Status status = Status::Pass;
  std::string detail;
};

/// Ordered claim results. Exit code 0 iff nothing failed.
class Report {
 public:
  explicit Report(std::string command = {}) : command_(std::move(command)) {}

  void add(std::string claim, Status status, std::string detail = {});
  void pass(std::string claim, std::string detail = {}) { add(std::move(claim), Status::Pass, std::move(detail)); }
  void fail(std::string claim, std::string detail = {}) { add(std::move(claim), Status::Fail, std::move(detail)); }
  void skip(std::string claim, std::string detail = {}) { add(std::move(claim), Status::Skip, std::move(detail)); }
  void append(const Report& other);

  const std::string& command() const noexcept { return command_; }
  const std::vector<ClaimEntry>& entries() const noexcept { return entries_; }
  std::size_t count(Status s) const;
  bool ok() const { return count(Status::Fail) == 0; }
  int exit_code() const { return ok() ? 0 : 1; }

  /// One tab-separated line per claim, then a summary line.
  std::string machine() const;
  std::string human(bool color = false) const;

 private:
  std::string command_;
  std::vector<ClaimEntry> entries_;
};

}  // namespace basecat
