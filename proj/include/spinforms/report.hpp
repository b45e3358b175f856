#pragma once

#include <string>
#include <vector>

namespace spinforms {

/// One named check. `anchor` names the identity or equivalence being checked
/// and `quote` states it as a formula, so a report reads on its own.
struct ReportEntry {
  std::string name;
  std::string anchor;
  std::string quote;
  double value = 0;      // residual norm, defect, or count, depending on the entry
  double tolerance = 0;
  bool pass = true;
  std::string note;
};

struct ResidualReport {
  std::string title;
  std::vector<ReportEntry> entries;

  ReportEntry &add(ReportEntry e) {
    entries.push_back(std::move(e));
    return entries.back();
  }

  [[nodiscard]] bool passed() const {
    for (const auto &e : entries)
      if (!e.pass) return false;
    return true;
  }

  [[nodiscard]] const ReportEntry *find(const std::string &name) const {
    for (const auto &e : entries)
      if (e.name == name) return &e;
    return nullptr;
  }
};

} // namespace spinforms
