#include "spectriple/rewriting.hpp"

#include <algorithm>
#include <chrono>
#include <deque>

namespace spectriple {

bool shortlex_less(const Alphabet& alpha, const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    int sa = alpha.slot_of(a[i]);
    int sb = alpha.slot_of(b[i]);
    if (sa != sb) return sa < sb;
  }
  return false;
}

std::string RewritingSystem::reduce(std::string w) const {
  std::size_t maxlhs = 1;
  for (const auto& r : rules) maxlhs = std::max(maxlhs, r.lhs.size());
  std::size_t i = 0;
  while (i < w.size()) {
    bool fired = false;
    for (const auto& r : rules) {
      if (r.lhs.size() <= w.size() - i && w.compare(i, r.lhs.size(), r.lhs) == 0) {
        w.replace(i, r.lhs.size(), r.rhs);
        i = (i >= maxlhs) ? i - maxlhs + 1 : 0;
        fired = true;
        break;
      }
    }
    if (!fired) ++i;
  }
  return w;
}

namespace {

struct Completion {
  const Alphabet& alpha;
  const CompletionBudget& budget;
  std::vector<RewritingSystem::Rule> rules;
  std::vector<bool> active;
  std::deque<std::pair<std::string, std::string>> pending;
  bool exceeded = false;
  long long iterations = 0;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  explicit Completion(const Alphabet& a, const CompletionBudget& b) : alpha(a), budget(b) {}

  std::string reduce(std::string w) const {
    std::size_t maxlhs = 1;
    for (std::size_t j = 0; j < rules.size(); ++j)
      if (active[j]) maxlhs = std::max(maxlhs, rules[j].lhs.size());
    std::size_t i = 0;
    while (i < w.size()) {
      bool fired = false;
      for (std::size_t j = 0; j < rules.size(); ++j) {
        if (!active[j]) continue;
        const auto& r = rules[j];
        if (r.lhs.size() <= w.size() - i && w.compare(i, r.lhs.size(), r.lhs) == 0) {
          w.replace(i, r.lhs.size(), r.rhs);
          i = (i >= maxlhs) ? i - maxlhs + 1 : 0;
          fired = true;
          break;
        }
      }
      if (!fired) ++i;
    }
    return w;
  }

  bool over_time() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >
           budget.max_seconds;
  }

  std::size_t active_count() const {
    return static_cast<std::size_t>(std::count(active.begin(), active.end(), true));
  }

  // Critical pairs from overlaps of lhs(i) suffix with lhs(j) prefix, and from
  // lhs(i) occurring inside lhs(j).
  void queue_pairs(std::size_t i, std::size_t j) {
    const std::string& l1 = rules[i].lhs;
    const std::string& l2 = rules[j].lhs;
    for (std::size_t k = 1; k < std::min(l1.size(), l2.size()); ++k) {
      if (l1.compare(l1.size() - k, k, l2, 0, k) != 0) continue;
      // word: l1[0..) followed by l2[k..)
      std::string left = rules[i].rhs + l2.substr(k);
      std::string right = l1.substr(0, l1.size() - k) + rules[j].rhs;
      pending.emplace_back(std::move(left), std::move(right));
    }
    if (i != j && l1.size() < l2.size()) {
      for (std::size_t pos = 0; pos + l1.size() <= l2.size(); ++pos) {
        if (l2.compare(pos, l1.size(), l1) != 0) continue;
        std::string inner = l2.substr(0, pos) + rules[i].rhs + l2.substr(pos + l1.size());
        pending.emplace_back(inner, rules[j].rhs);
      }
    }
  }

  void run(const std::vector<std::string>& relators) {
    for (int s = 0; s < alpha.size(); ++s) {
      std::string lhs{alpha.symbol(s), alpha.symbol(alpha.inverse(s))};
      pending.emplace_back(lhs, "");
    }
    for (const auto& r : relators) pending.emplace_back(r, "");

    while (!pending.empty()) {
      if (++iterations > budget.max_iterations || over_time()) {
        exceeded = true;
        break;
      }
      auto [u, v] = pending.front();
      pending.pop_front();
      u = reduce(u);
      v = reduce(v);
      if (u == v) continue;
      if (shortlex_less(alpha, u, v)) std::swap(u, v);
      if (u.size() > static_cast<std::size_t>(budget.max_rule_length)) {
        exceeded = true;  // dropped equation: confluence can no longer be claimed
        continue;
      }
      if (active_count() >= static_cast<std::size_t>(budget.max_rules)) {
        exceeded = true;
        break;
      }
      std::size_t idx = rules.size();
      rules.push_back({u, v});
      active.push_back(true);
      for (std::size_t j = 0; j < idx; ++j) {
        if (!active[j]) continue;
        if (rules[j].lhs.find(u) != std::string::npos) {
          active[j] = false;
          pending.emplace_back(rules[j].lhs, rules[j].rhs);
        } else if (rules[j].rhs.find(u) != std::string::npos) {
          rules[j].rhs = reduce(rules[j].rhs);
        }
      }
      for (std::size_t j = 0; j < rules.size(); ++j) {
        if (!active[j]) continue;
        queue_pairs(idx, j);
        if (j != idx) queue_pairs(j, idx);
      }
    }
    if (!pending.empty()) exceeded = true;
  }
};

}  // namespace

RewritingSystem kb_complete(const Alphabet& alpha, const std::vector<std::string>& relators,
                            const CompletionBudget& budget) {
  Completion c(alpha, budget);
  c.run(relators);
  RewritingSystem rs;
  rs.alphabet = alpha;
  for (std::size_t j = 0; j < c.rules.size(); ++j)
    if (c.active[j]) rs.rules.push_back(c.rules[j]);
  rs.status = c.exceeded ? RewritingSystem::Status::Incomplete : RewritingSystem::Status::Confluent;
  return rs;
}

bool all_critical_pairs_resolve(const RewritingSystem& rs) {
  auto joinable = [&](const std::string& a, const std::string& b) {
    return rs.reduce(a) == rs.reduce(b);
  };
  for (std::size_t i = 0; i < rs.rules.size(); ++i) {
    for (std::size_t j = 0; j < rs.rules.size(); ++j) {
      const std::string& l1 = rs.rules[i].lhs;
      const std::string& l2 = rs.rules[j].lhs;
      for (std::size_t k = 1; k < std::min(l1.size(), l2.size()); ++k) {
        if (l1.compare(l1.size() - k, k, l2, 0, k) != 0) continue;
        std::string left = rs.rules[i].rhs + l2.substr(k);
        std::string right = l1.substr(0, l1.size() - k) + rs.rules[j].rhs;
        if (!joinable(left, right)) return false;
      }
      if (i != j && l1.size() <= l2.size()) {
        for (std::size_t pos = 0; pos + l1.size() <= l2.size(); ++pos) {
          if (l2.compare(pos, l1.size(), l1) != 0) continue;
          std::string inner = l2.substr(0, pos) + rs.rules[i].rhs + l2.substr(pos + l1.size());
          if (!joinable(inner, rs.rules[j].rhs)) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace spectriple
