#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace twofold {

enum class Verdict { Pass, Fail, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

/// One named residual. A pass means value <= threshold.
struct CheckEntry {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  Verdict verdict = Verdict::Pass;
  std::string detail;

  bool operator==(const CheckEntry&) const = default;
};

struct CheckReport {
  std::vector<CheckEntry> entries;

  CheckEntry& add(std::string name, double value, double threshold, std::string detail = {}) {
    // NaN compares false and therefore fails.
    const Verdict v = (value <= threshold) ? Verdict::Pass : Verdict::Fail;
    entries.push_back({std::move(name), value, threshold, v, std::move(detail)});
    return entries.back();
  }

  CheckEntry& add_inconclusive(std::string name, double value, double threshold, std::string detail = {}) {
    entries.push_back({std::move(name), value, threshold, Verdict::Inconclusive, std::move(detail)});
    return entries.back();
  }

  /// Adds an entry that is inconclusive when `conclusive` is false.
  CheckEntry& add_if(bool conclusive, std::string name, double value, double threshold, std::string detail = {}) {
    return conclusive ? add(std::move(name), value, threshold, std::move(detail))
                      : add_inconclusive(std::move(name), value, threshold, std::move(detail));
  }

  void append(const CheckReport& other, const std::string& prefix = {}) {
    for (auto e : other.entries) {
      e.name = prefix + e.name;
      entries.push_back(std::move(e));
    }
  }

  const CheckEntry* find(const std::string& name) const {
    for (const auto& e : entries) {
      if (e.name == name) return &e;
    }
    return nullptr;
  }

  /// Value of the named entry; NaN when absent.
  double value(const std::string& name) const {
    const auto* e = find(name);
    return e ? e->value : std::nan("");
  }

  bool passed(const std::string& name) const {
    const auto* e = find(name);
    return e && e->verdict == Verdict::Pass;
  }

  bool any(Verdict v) const {
    for (const auto& e : entries) {
      if (e.verdict == v) return true;
    }
    return false;
  }
  bool all_pass() const { return !any(Verdict::Fail) && !any(Verdict::Inconclusive); }
  bool any_fail() const { return any(Verdict::Fail); }

  /// Largest value among entries whose verdict is not inconclusive.
  double max_value() const {
    double m = 0.0;
    for (const auto& e : entries) {
      if (e.verdict != Verdict::Inconclusive) m = std::fmax(m, e.value);
    }
    return m;
  }

  bool operator==(const CheckReport&) const = default;
};

}  // namespace twofold
