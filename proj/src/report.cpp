#include "basecat/report.hpp"

#include <algorithm>

namespace basecat {

std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skip: return "skip";
  }
  return "?";
}

void Report::add(std::string claim, Status status, std::string detail) {
  // Details stay on one line so the machine format remains line-oriented.
  std::replace(detail.begin(), detail.end(), '\n', ' ');
  std::replace(detail.begin(), detail.end(), '\t', ' ');
  entries_.push_back({std::move(claim), status, std::move(detail)});
}

void Report::append(const Report& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

std::size_t Report::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [s](const ClaimEntry& e) { return e.status == s; }));
}

std::string Report::machine() const {
  std::string out;
  if (!command_.empty()) out += "# " + command_ + "\n";
  for (const auto& e : entries_) {
    out += e.claim;
    out += '\t';
    out += to_string(e.status);
    out += '\t';
    out += e.detail;
    out += '\n';
  }
  out += "summary\t" + std::string(ok() ? "pass" : "fail") + "\tpass=" + std::to_string(count(Status::Pass)) +
         " fail=" + std::to_string(count(Status::Fail)) + " skip=" + std::to_string(count(Status::Skip)) + "\n";
  return out;
}

std::string Report::human(bool color) const {
  auto paint = [&](Status s) -> std::string {
    std::string tag = s == Status::Pass ? "PASS" : s == Status::Fail ? "FAIL" : "SKIP";
    if (!color) return "[" + tag + "]";
    const char* code = s == Status::Pass ? "32" : s == Status::Fail ? "31" : "33";
    return "\x1b[" + std::string(code) + "m[" + tag + "]\x1b[0m";
  };
  std::string out;
  if (!command_.empty()) out += command_ + "\n";
  for (const auto& e : entries_) {
    out += paint(e.status) + " " + e.claim;
    if (!e.detail.empty()) out += "  " + e.detail;
    out += '\n';
  }
  out += std::to_string(count(Status::Pass)) + " passed, " + std::to_string(count(Status::Fail)) + " failed, " +
         std::to_string(count(Status::Skip)) + " skipped\n";
  return out;
}

}  // namespace basecat
