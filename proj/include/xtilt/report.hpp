#pragma once

#include <string>
#include <vector>

#include "xtilt/rootsys.hpp"

namespace xtilt {

struct ReportEntry {
  std::string check;
  Weight weight;
  bool passed = true;
  std::string witness;
};

/// Ordered list of (check-id, weight, status, witness).
struct Report {
  std::vector<ReportEntry> entries;

  void add(std::string check, Weight w, bool ok, std::string witness = "") {
    entries.push_back({std::move(check), std::move(w), ok, std::move(witness)});
  }
  void append(const Report& other) { entries.insert(entries.end(), other.entries.begin(), other.entries.end()); }
  bool passed() const {
    for (const auto& e : entries)
      if (!e.passed) return false;
    return true;
  }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.passed ? 0 : 1;
    return n;
  }
  /// Failed entries, one per line.
  std::string summary() const {
    std::string s;
    for (const auto& e : entries)
      if (!e.passed) s += e.check + " @ " + weight_to_string(e.weight) + ": " + e.witness + "\n";
    return s;
  }
};

}  // namespace xtilt
